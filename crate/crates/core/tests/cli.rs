use std::path::Path;

use serde_json::Value;
use twinkit::building::io::export_json;
use twinkit::cli::{run, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use twinkit::matrix_groups::{SlGroup, SlTwinBuilding};

fn cli(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&args, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_reference_models() {
    for args in [
        &["check", "thin", "A_2"][..],
        &["check", "sl_3", "p=2"],
        &["check", "--model", "sl_2", "--p", "5"],
    ] {
        let (code, out, err) = cli(args);
        assert_eq!(code, EXIT_PASS, "{args:?}: {out}{err}");
        let report = json(&out);
        assert_eq!(report["passed"], true);
        assert_eq!(report["config"]["seed"], 0);
    }
}

#[test]
fn suites_are_sorted_and_selectable() {
    let (code, out, _) = cli(&["check", "sl_3", "p=2", "--suite", "strata,axioms"]);
    assert_eq!(code, EXIT_PASS);
    let report = json(&out);
    let names: Vec<&String> = report["suites"].as_object().unwrap().keys().collect();
    assert_eq!(names, ["axioms", "strata"]);
    assert_eq!(report["config"]["suites"], serde_json::json!(["axioms", "strata"]));
}

#[test]
fn reports_are_byte_stable() {
    let a = cli(&["check", "kac_moody", "A_2", "H=2", "--seed", "7"]);
    let b = cli(&["check", "kac_moody", "A_2", "H=2", "--seed", "7"]);
    assert_eq!(a.0, EXIT_PASS);
    assert_eq!(a.1, b.1);
    assert_eq!(json(&a.1)["config"]["seed"], 7);
}

#[test]
fn corrupted_codistance_is_a_tw1_failure() {
    let b = SlTwinBuilding::new(SlGroup::new(3, 2).unwrap()).unwrap();
    let mut doc = json(&export_json(&b));
    let entry = &mut doc["codistance"]["plus_minus"][0][0];
    let word = entry.as_array().unwrap().clone();
    *entry = if word.is_empty() {
        serde_json::json!([1])
    } else {
        serde_json::json!([])
    };
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("corrupt.json");
    std::fs::write(&file, doc.to_string()).unwrap();
    let (code, out, err) = cli(&["check", "table", path(&file), "--suite", "axioms"]);
    assert_eq!(code, EXIT_FAIL, "{err}");
    let report = json(&out);
    assert_eq!(report["passed"], false);
    let witness = report["suites"]["axioms"]["checks"]["Bu1-3, Tw1-3"]["witness"]
        .as_str()
        .unwrap();
    assert!(witness.starts_with("Tw1"), "{witness}");
    assert!(report["failure"].as_str().unwrap().contains("Tw1"));
}

#[test]
fn exported_table_round_trips_through_check() {
    let b = SlTwinBuilding::new(SlGroup::new(2, 3).unwrap()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sl2.json");
    std::fs::write(&file, export_json(&b)).unwrap();
    let (code, out, err) = cli(&["check", "table", path(&file)]);
    assert_eq!(code, EXIT_PASS, "{out}{err}");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"model\": \"thin\", \"nonsense\": 1}").unwrap();
    for args in [
        &["check"][..],
        &["check", "sl_3"],
        &["check", "sl_3", "p=4"],
        &["check", "thin", "Q_7"],
        &["check", "thin", "A_2", "--suite", "rgd"],
        &["check", "--config", path(&bad)],
        &["check", "table", "/nonexistent/table.json"],
        &["frobnicate"],
        &["decompose", "bruhat", "--matrix", "[[1,1],[0,2]]", "--p", "3"],
        &["decompose", "bruhat", "--matrix", "[[1,0,0],[0,1,0]]", "--p", "3"],
        &["report", "census", "kac_moody", "A_2"],
        &["dynkin", "enumerate"],
    ] {
        let (code, _, err) = cli(args);
        assert_eq!(code, EXIT_INPUT, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"model": "sl", "n": 2, "p": 3, "suites": ["axioms"], "seed": 11}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let (code, out, _) = cli(&["check", "--config", path(&cfg), "--p", "5", "--out", path(&out_dir)]);
    assert_eq!(code, EXIT_PASS);
    let report = json(&out);
    assert_eq!(report["config"]["p"], 5);
    assert_eq!(report["config"]["seed"], 11);
    assert_eq!(report["certified"]["chambers"], serde_json::json!([6, 6]));
    let saved = std::fs::read_to_string(out_dir.join("report.json")).unwrap();
    assert_eq!(saved, out);
}

#[test]
fn decompose_examples() {
    let (code, out, _) = cli(&[
        "decompose",
        "bruhat",
        "--matrix",
        "[[1,0,0],[0,1,0],[0,0,1]]",
        "--p",
        "5",
    ]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(json(&out)["w"], serde_json::json!([]));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("antidiagonal.json");
    std::fs::write(&file, r#"{"p": 2, "matrix": [[0,0,1],[0,1,0],[1,0,0]]}"#).unwrap();
    let (code, out, _) = cli(&["decompose", "birkhoff", path(&file)]);
    assert_eq!(code, EXIT_PASS);
    let w = json(&out)["w"].as_array().unwrap().len();
    assert_eq!(w, 3);

    let (code, out, _) = cli(&["decompose", "ult", "--matrix", "[[0,1],[-1,0]]", "--p", "3"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(json(&out)["error"], "NotInBigCell");

    let (code, out, _) = cli(&["decompose", "ult", "--matrix", "[[1,1],[1,2]]", "--p", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert!(json(&out)["witness"]["u_plus"].is_array());
}

#[test]
fn report_examples() {
    let (code, out, _) = cli(&["report", "census", "sl_3", "p=2"]);
    assert_eq!(code, EXIT_PASS);
    let census = &json(&out)["census"];
    assert_eq!(census["schubert_total"], 21);
    assert_eq!(census["co_schubert_total"], 21);

    let (code, out, _) = cli(&["report", "dynkin", "enumerate", "n=3"]);
    assert_eq!(code, EXIT_PASS);
    let report = json(&out);
    assert_eq!(report["count"], 15);
    let classes = report["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 15);
    assert!(classes.iter().all(|c| c["code"].is_string()));

    let (code, out, _) = cli(&["strata", "thin", "A_2", "--dot"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("digraph"));
    let nodes = out.lines().filter(|l| l.contains("[label=")).count();
    assert_eq!(nodes, 6);
}

#[test]
fn dynkin_of_a_gcm_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b3.json");
    std::fs::write(&file, r#"{"cartan": [[2,-1,0],[-1,2,-1],[0,-2,2]]}"#).unwrap();
    let (code, out, err) = cli(&["dynkin", "gcm", path(&file)]);
    assert_eq!(code, EXIT_PASS, "{err}");
    let report = json(&out);
    assert_eq!(report["gcm"], serde_json::json!([[2, -1, 0], [-1, 2, -1], [0, -2, 2]]));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(cli(&["--help"]).0, EXIT_PASS);
    assert_eq!(cli(&["--version"]).0, EXIT_PASS);
}
