//! C ABI over twinkit.
//!
//! Every fallible call returns a [`TkStatus`]. On failure the message is
//! available from [`tk_last_error`] on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and released
//! with [`tk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twinkit::building::{Chamber, Sign};
use twinkit::cartan::Gcm;
use twinkit::classification::{canonical_hex, dynkin_of_gcm};
use twinkit::cli::{self, DecomposeKind, Model, RunConfig, EXIT_PASS};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TkStatus {
    Ok = 0,
    /// A check or decomposition ran and reported a failure.
    CheckFailed = 1,
    InvalidInput = 2,
    NullPointer = 3,
    /// The model has no chambers (Kac-Moody models).
    NotABuilding = 4,
    OutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TkSign {
    Plus = 0,
    Minus = 1,
}

impl From<TkSign> for Sign {
    fn from(s: TkSign) -> Sign {
        match s {
            TkSign::Plus => Sign::Plus,
            TkSign::Minus => Sign::Minus,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TkDecomposition {
    Bruhat = 0,
    Birkhoff = 1,
    Ult = 2,
}

/// Opaque model handle.
pub struct TkModel {
    config: RunConfig,
    model: Model,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: TkStatus, msg: impl AsRef<str>) -> TkStatus {
    set_error(msg.as_ref());
    status
}

fn guard(f: impl FnOnce() -> TkStatus) -> TkStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(e) => {
            let msg = e
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| e.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(TkStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, TkStatus> {
    if s.is_null() {
        return Err(fail(TkStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(TkStatus::InvalidInput, "string is not UTF-8"))
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> TkStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            TkStatus::Ok
        }
        Err(_) => fail(TkStatus::Panic, "interior NUL in output"),
    }
}

unsafe fn read_square(n: usize, entries: *const i64) -> Result<Vec<Vec<i64>>, TkStatus> {
    if entries.is_null() {
        return Err(fail(TkStatus::NullPointer, "null matrix"));
    }
    if n == 0 {
        return Err(fail(TkStatus::InvalidInput, "empty matrix"));
    }
    let flat = std::slice::from_raw_parts(entries, n * n);
    Ok(flat.chunks(n).map(<[i64]>::to_vec).collect())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failing call on this thread; empty after success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn tk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a model from a run configuration in JSON, e.g.
/// `{"model": "sl", "n": 3, "p": 2}`.
///
/// # Safety
/// `config_json` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tk_model_new(config_json: *const c_char, out: *mut *mut TkModel) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return fail(TkStatus::NullPointer, "null out");
        }
        *out = ptr::null_mut();
        let text = match read_str(config_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let config: RunConfig = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(e) => return fail(TkStatus::InvalidInput, e.to_string()),
        };
        match config.build() {
            Ok(model) => {
                *out = Box::into_raw(Box::new(TkModel { config, model }));
                TkStatus::Ok
            }
            Err(e) => fail(TkStatus::InvalidInput, e.to_string()),
        }
    })
}

/// # Safety
/// `model` is null or a live handle from [`tk_model_new`].
#[no_mangle]
pub unsafe extern "C" fn tk_model_free(model: *mut TkModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

unsafe fn with_model(model: *const TkModel, f: impl FnOnce(&TkModel) -> TkStatus) -> TkStatus {
    guard(|| match model.as_ref() {
        Some(m) => f(m),
        None => fail(TkStatus::NullPointer, "null model"),
    })
}

/// # Safety
/// `model` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tk_model_chamber_count(model: *const TkModel, sign: TkSign, out: *mut usize) -> TkStatus {
    with_model(model, |m| {
        let Some(b) = m.model.building() else {
            return fail(TkStatus::NotABuilding, "model has no chambers");
        };
        if out.is_null() {
            return fail(TkStatus::NullPointer, "null out");
        }
        *out = b.chamber_count(sign.into());
        TkStatus::Ok
    })
}

/// `delta(x, y)` within one half, as a dotted word (`"e"`, `"1.2"`).
///
/// # Safety
/// `model` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tk_model_distance(
    model: *const TkModel,
    sign: TkSign,
    x: usize,
    y: usize,
    out: *mut *mut c_char,
) -> TkStatus {
    with_model(model, |m| {
        let Some(b) = m.model.building() else {
            return fail(TkStatus::NotABuilding, "model has no chambers");
        };
        if out.is_null() {
            return fail(TkStatus::NullPointer, "null out");
        }
        let count = b.chamber_count(sign.into());
        if x >= count || y >= count {
            return fail(TkStatus::OutOfRange, format!("chamber index out of range 0..{count}"));
        }
        give_string(out, b.distance(sign.into(), x, y).to_string())
    })
}

/// `delta*(plus, minus)` between chambers of opposite halves.
///
/// # Safety
/// `model` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tk_model_codistance(
    model: *const TkModel,
    plus: usize,
    minus: usize,
    out: *mut *mut c_char,
) -> TkStatus {
    with_model(model, |m| {
        let Some(b) = m.model.building() else {
            return fail(TkStatus::NotABuilding, "model has no chambers");
        };
        if out.is_null() {
            return fail(TkStatus::NullPointer, "null out");
        }
        if plus >= b.chamber_count(Sign::Plus) || minus >= b.chamber_count(Sign::Minus) {
            return fail(TkStatus::OutOfRange, "chamber index out of range");
        }
        let x = Chamber {
            sign: Sign::Plus,
            index: plus,
        };
        let y = Chamber {
            sign: Sign::Minus,
            index: minus,
        };
        give_string(out, b.codistance(x, y).to_string())
    })
}

/// Run check suites and write the JSON report. `suites` is a comma separated
/// list or null for every suite the model supports. Returns `Ok` when all
/// suites pass and `CheckFailed` otherwise; the report is written in both
/// cases.
///
/// # Safety
/// `model` is a live handle, `suites` is null or NUL-terminated and
/// `report_json` is writable.
#[no_mangle]
pub unsafe extern "C" fn tk_model_check(
    model: *const TkModel,
    suites: *const c_char,
    seed: u64,
    report_json: *mut *mut c_char,
) -> TkStatus {
    with_model(model, |m| {
        if report_json.is_null() {
            return fail(TkStatus::NullPointer, "null out");
        }
        let mut cfg = m.config.clone();
        cfg.seed = seed;
        if !suites.is_null() {
            match read_str(suites) {
                Ok(s) => {
                    cfg.suites = s
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(String::from)
                        .collect()
                }
                Err(e) => return e,
            }
        }
        let report = match cli::check_model(&cfg, &m.model) {
            Ok(r) => r,
            Err(e) => return fail(TkStatus::InvalidInput, e.to_string()),
        };
        let text = serde_json::to_string_pretty(&report).expect("serializable report");
        let status = give_string(report_json, text);
        if status == TkStatus::Ok && !report.passed {
            return fail(TkStatus::CheckFailed, report.failure.unwrap_or_default());
        }
        status
    })
}

/// Decompose the row-major `n x n` integer matrix over `F_p` and write the
/// JSON witness. `CheckFailed` means an `Ult` input outside the big cell.
///
/// # Safety
/// `entries` points to `n * n` values and `out_json` is writable.
#[no_mangle]
pub unsafe extern "C" fn tk_decompose(
    kind: TkDecomposition,
    p: u32,
    n: usize,
    entries: *const i64,
    out_json: *mut *mut c_char,
) -> TkStatus {
    guard(|| {
        if out_json.is_null() {
            return fail(TkStatus::NullPointer, "null out");
        }
        let rows = match read_square(n, entries) {
            Ok(r) => r,
            Err(s) => return s,
        };
        let kind = match kind {
            TkDecomposition::Bruhat => DecomposeKind::Bruhat,
            TkDecomposition::Birkhoff => DecomposeKind::Birkhoff,
            TkDecomposition::Ult => DecomposeKind::Ult,
        };
        match cli::decompose(kind, p, &rows) {
            Ok((value, code)) => {
                let status = give_string(out_json, value.to_string());
                if status == TkStatus::Ok && code != EXIT_PASS {
                    return fail(TkStatus::CheckFailed, "not in the big cell");
                }
                status
            }
            Err(e) => fail(TkStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Canonical code of the Dynkin tree of a row-major `n x n` GCM.
///
/// # Safety
/// `gcm` points to `n * n` values and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tk_dynkin_code(n: usize, gcm: *const i64, out: *mut *mut c_char) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return fail(TkStatus::NullPointer, "null out");
        }
        let rows = match read_square(n, gcm) {
            Ok(r) => r,
            Err(s) => return s,
        };
        let code = Gcm::new(rows)
            .map_err(|e| e.to_string())
            .and_then(|a| dynkin_of_gcm(&a).map_err(|e| e.to_string()))
            .and_then(|t| canonical_hex(&t).map_err(|e| e.to_string()));
        match code {
            Ok(c) => give_string(out, c),
            Err(e) => fail(TkStatus::InvalidInput, e),
        }
    })
}
