use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use twinkit_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { tk_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tk_last_error()) }.to_str().unwrap().to_string()
}

fn model(config: &str) -> Result<*mut TkModel, (TkStatus, String)> {
    let c = CString::new(config).unwrap();
    let mut m = ptr::null_mut();
    match unsafe { tk_model_new(c.as_ptr(), &mut m) } {
        TkStatus::Ok => Ok(m),
        s => {
            assert!(m.is_null());
            Err((s, last_error()))
        }
    }
}

#[test]
fn sl3_model_round_trip() {
    let m = model(r#"{"model": "sl", "n": 3, "p": 2}"#).unwrap();
    let mut count = 0usize;
    assert_eq!(
        unsafe { tk_model_chamber_count(m, TkSign::Minus, &mut count) },
        TkStatus::Ok
    );
    assert_eq!(count, 21);
    let mut word = ptr::null_mut();
    assert_eq!(
        unsafe { tk_model_distance(m, TkSign::Plus, 0, 0, &mut word) },
        TkStatus::Ok
    );
    assert_eq!(take(word), "e");
    assert_eq!(unsafe { tk_model_codistance(m, 0, 0, &mut word) }, TkStatus::Ok);
    assert!(!take(word).is_empty());
    assert_eq!(
        unsafe { tk_model_distance(m, TkSign::Plus, 0, 21, &mut word) },
        TkStatus::OutOfRange
    );
    assert!(last_error().contains("out of range"));

    let suites = CString::new("axioms,strata").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { tk_model_check(m, suites.as_ptr(), 3, &mut report) },
        TkStatus::Ok
    );
    let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["config"]["seed"], 3);
    assert_eq!(report["suites"].as_object().unwrap().len(), 2);
    unsafe { tk_model_free(m) };
}

#[test]
fn kac_moody_models_have_no_chambers() {
    let m = model(r#"{"model": "kac_moody", "type": "A2", "height": 2}"#).unwrap();
    let mut count = 0usize;
    assert_eq!(
        unsafe { tk_model_chamber_count(m, TkSign::Plus, &mut count) },
        TkStatus::NotABuilding
    );
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { tk_model_check(m, ptr::null(), 0, &mut report) }, TkStatus::Ok);
    assert!(take(report).contains("\"algebra\""));
    unsafe { tk_model_free(m) };
}

#[test]
fn bad_input_is_reported() {
    assert_eq!(model("{").unwrap_err().0, TkStatus::InvalidInput);
    let (status, msg) = model(r#"{"model": "sl", "n": 3, "p": 4}"#).unwrap_err();
    assert_eq!(status, TkStatus::InvalidInput);
    assert!(!msg.is_empty());
    assert_eq!(
        unsafe { tk_model_new(ptr::null(), &mut ptr::null_mut()) },
        TkStatus::NullPointer
    );
    let mut count = 0usize;
    assert_eq!(
        unsafe { tk_model_chamber_count(ptr::null(), TkSign::Plus, &mut count) },
        TkStatus::NullPointer
    );

    let m = model(r#"{"model": "thin", "type": "A2"}"#).unwrap();
    let suites = CString::new("rgd").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { tk_model_check(m, suites.as_ptr(), 0, &mut report) },
        TkStatus::InvalidInput
    );
    assert!(report.is_null());
    unsafe { tk_model_free(m) };
    unsafe { tk_model_free(ptr::null_mut()) };
    unsafe { tk_string_free(ptr::null_mut()) };
}

#[test]
fn decompositions() {
    let antidiagonal = [0i64, 0, 1, 0, -1, 0, 1, 0, 0];
    let mut out = ptr::null_mut();
    let s = unsafe { tk_decompose(TkDecomposition::Bruhat, 3, 3, antidiagonal.as_ptr(), &mut out) };
    assert_eq!(s, TkStatus::Ok, "{}", last_error());
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["w"].as_array().unwrap().len(), 3);

    let s_hat = [0i64, 1, -1, 0];
    assert_eq!(
        unsafe { tk_decompose(TkDecomposition::Ult, 3, 2, s_hat.as_ptr(), &mut out) },
        TkStatus::CheckFailed
    );
    assert!(take(out).contains("NotInBigCell"));

    let singular = [1i64, 1, 1, 1];
    assert_eq!(
        unsafe { tk_decompose(TkDecomposition::Birkhoff, 3, 2, singular.as_ptr(), &mut out) },
        TkStatus::InvalidInput
    );
    assert_eq!(
        unsafe { tk_decompose(TkDecomposition::Bruhat, 3, 2, ptr::null(), &mut out) },
        TkStatus::NullPointer
    );
}

#[test]
fn dynkin_codes_ignore_labelling() {
    let b3 = [2i64, -1, 0, -1, 2, -1, 0, -2, 2];
    let relabelled = [2i64, -2, 0, -1, 2, -1, 0, -1, 2];
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { tk_dynkin_code(3, b3.as_ptr(), &mut a) }, TkStatus::Ok);
    assert_eq!(unsafe { tk_dynkin_code(3, relabelled.as_ptr(), &mut b) }, TkStatus::Ok);
    assert_eq!(take(a), take(b));
    let cycle = [2i64, -1, -1, -1, 2, -1, -1, -1, 2];
    assert_eq!(
        unsafe { tk_dynkin_code(3, cycle.as_ptr(), &mut a) },
        TkStatus::InvalidInput
    );
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(tk_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "twinkit.h"

int main(void) {
    TkModel *m = NULL;
    if (tk_model_new("{\"model\": \"sl\", \"n\": 2, \"p\": 3}", &m) != TK_STATUS_OK) return 10;
    size_t count = 0;
    if (tk_model_chamber_count(m, TK_SIGN_PLUS, &count) != TK_STATUS_OK || count != 4) return 11;
    char *report = NULL;
    if (tk_model_check(m, "axioms", 0, &report) != TK_STATUS_OK) return 12;
    if (strstr(report, "\"passed\": true") == NULL) return 13;
    tk_string_free(report);
    tk_model_free(m);
    if (tk_model_new("{\"model\": \"nope\"}", &m) != TK_STATUS_INVALID_INPUT || m != NULL) return 14;
    if (strlen(tk_last_error()) == 0) return 15;
    printf("%s\n", tk_version());
    return 0;
}
"#;

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libtwinkit_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn header_compiles_and_links_from_c() {
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .expect("C compiler");
    assert!(status.success());

    let Some(lib) = static_lib() else {
        eprintln!("static library not built; link step not exercised");
        return;
    };
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8(run.stdout).unwrap().trim(), env!("CARGO_PKG_VERSION"));
}
