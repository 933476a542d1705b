//! Command-line front end: `check`, `decompose` and `report`.
//!
//! Exit codes: 0 when everything passes, 1 on a check failure (the report
//! carries a witness), 2 on malformed input.

pub mod config;
pub mod suites;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::building::census::schubert_census;
use crate::building::strata::{stratification, to_dot};
use crate::building::Chamber;
use crate::cartan::{Gcm, GcmDocument};
use crate::classification::foundation::collapse_foundation;
use crate::classification::{canonical_hex, dynkin_of_gcm, enumerate_trees, gcm_of_dynkin, DynkinTree};
use crate::kac_moody::checks::dump;
use crate::matrix::FpMatrix;
use crate::matrix_groups::{ult_factor, MatrixGroupError, SlGroup};

pub use config::{InputError, Model, RunConfig};
use suites::{certified, run_suites, Options, SuiteResult};

pub const TOOL: &str = "twinkit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const REPORT_ALIASES: [&str; 5] = ["algebra", "census", "dynkin", "foundation", "strata"];

#[derive(Parser, Debug)]
#[command(
    name = "twinkit",
    version,
    about = "Exact checks on twin buildings, twin BN-pairs and Kac-Moody data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default, Clone)]
struct Flags {
    /// JSON run configuration; flags and positional words override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// thin, sl_N, table or kac_moody.
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    /// Generalized Cartan matrix as JSON.
    #[arg(long, value_name = "FILE")]
    gcm: Option<PathBuf>,
    /// Length cap for thin models.
    #[arg(long)]
    cap: Option<usize>,
    /// Window height for Kac-Moody models.
    #[arg(long)]
    height: Option<usize>,
    #[arg(long, value_name = "NAME[,NAME...]", value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Print DOT instead of JSON where a diagram exists.
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run check suites on a model, e.g. `check thin A_2` or `check sl_3 p=2`.
    Check {
        words: Vec<String>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Decompose a matrix given as `{"p": P, "matrix": [[..], ..]}`.
    Decompose {
        kind: DecomposeKind,
        input: Option<PathBuf>,
        /// Inline matrix rows as JSON.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Emit a census, stratification, Dynkin classification, foundation or algebra dump.
    Report {
        kind: ReportKind,
        words: Vec<String>,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum DecomposeKind {
    Bruhat,
    Birkhoff,
    Ult,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportKind {
    Census,
    Strata,
    Dynkin,
    Foundation,
    Algebra,
}

impl ReportKind {
    fn name(self) -> &'static str {
        match self {
            ReportKind::Census => "census",
            ReportKind::Strata => "strata",
            ReportKind::Dynkin => "dynkin",
            ReportKind::Foundation => "foundation",
            ReportKind::Algebra => "algebra",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub passed: bool,
    pub certified: suites::Certified,
    pub suites: BTreeMap<String, SuiteResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

/// Run the CLI on `args` (without the program name); returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut argv = vec![TOOL.to_string()];
    if args.first().is_some_and(|a| REPORT_ALIASES.contains(&a.as_str())) {
        argv.push("report".into());
    }
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_PASS
            } else {
                let _ = write!(err, "{e}");
                EXIT_INPUT
            };
        }
    };
    let result = match cli.command {
        Command::Check { words, flags } => cmd_check(&words, &flags, out),
        Command::Decompose { kind, input, matrix, p } => cmd_decompose(kind, input.as_deref(), matrix, p, out),
        Command::Report { kind, words, flags } => cmd_report(kind, &words, &flags, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn resolve(words: &[String], flags: &Flags) -> Result<RunConfig, InputError> {
    let mut cfg = match &flags.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(m) = &flags.model {
        cfg.apply_words(std::slice::from_ref(m))?;
    }
    cfg.apply_words(words)?;
    cfg.n = flags.n.or(cfg.n);
    cfg.p = flags.p.or(cfg.p);
    cfg.gcm = flags.gcm.clone().or(cfg.gcm);
    cfg.cap = flags.cap.or(cfg.cap);
    cfg.height = flags.height.or(cfg.height);
    cfg.out = flags.out.clone().or(cfg.out);
    cfg.seed = flags.seed.unwrap_or(cfg.seed);
    cfg.dot |= flags.dot;
    if !flags.suite.is_empty() {
        cfg.suites = flags.suite.clone();
    }
    Ok(cfg)
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), InputError> {
    let text = serde_json::to_string_pretty(value).expect("serializable report");
    writeln!(out, "{text}").map_err(|e| bad(e.to_string()))?;
    Ok(())
}

fn save(dir: Option<&Path>, name: &str, contents: &str) -> Result<(), InputError> {
    let Some(dir) = dir else { return Ok(()) };
    std::fs::create_dir_all(dir).map_err(|e| bad(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| bad(format!("{}: {e}", path.display())))
}

/// Build a model and run the selected suites; the report is byte-stable
/// for a fixed configuration.
pub fn check(cfg: &RunConfig) -> Result<Report, InputError> {
    check_model(cfg, &cfg.build()?)
}

/// Run the suites named in `cfg` against an already built model.
pub fn check_model(cfg: &RunConfig, model: &Model) -> Result<Report, InputError> {
    let available = suites::available(model);
    let mut names: Vec<String> = if cfg.suites.is_empty() {
        available.iter().map(|s| s.to_string()).collect()
    } else {
        cfg.suites.clone()
    };
    names.sort();
    names.dedup();
    if let Some(unknown) = names.iter().find(|n| !available.contains(&n.as_str())) {
        return Err(bad(format!(
            "suite {unknown} is not available; choose from {}",
            available.join(", ")
        )));
    }
    let opts = Options {
        seed: cfg.seed,
        p: cfg.p.unwrap_or(2),
    };
    let results = run_suites(model, &names, &opts);
    let failure = results
        .iter()
        .find_map(|(name, r)| r.witness().map(|w| format!("{name}/{w}")));
    let mut echo = cfg.clone();
    echo.suites = names;
    echo.dot = false;
    Ok(Report {
        tool: TOOL,
        version: VERSION,
        command: "check".into(),
        config: echo,
        passed: results.values().all(|r| !r.failed()),
        certified: certified(model),
        suites: results,
        failure,
    })
}

fn cmd_check(words: &[String], flags: &Flags, out: &mut dyn Write) -> Result<i32, InputError> {
    let cfg = resolve(words, flags)?;
    let report = check(&cfg)?;
    let text = serde_json::to_string_pretty(&report).expect("serializable report");
    save(cfg.out.as_deref(), "report.json", &format!("{text}\n"))?;
    writeln!(out, "{text}").map_err(|e| bad(e.to_string()))?;
    Ok(if report.passed { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixInput {
    p: u32,
    matrix: Vec<Vec<i64>>,
}

fn signed_rows(m: &FpMatrix) -> Vec<Vec<i64>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| x.signed()).collect())
        .collect()
}

fn cmd_decompose(
    kind: DecomposeKind,
    input: Option<&Path>,
    matrix: Option<String>,
    p: Option<u32>,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    let parsed: MatrixInput = match (input, matrix) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?
        }
        (None, Some(rows)) => MatrixInput {
            p: p.ok_or_else(|| bad("--matrix needs --p"))?,
            matrix: serde_json::from_str(&rows).map_err(|e| bad(format!("--matrix: {e}")))?,
        },
        _ => return Err(bad("give exactly one of FILE or --matrix")),
    };
    let (merged, code) = decompose(kind, parsed.p, &parsed.matrix)?;
    write_json(out, &merged)?;
    Ok(code)
}

/// Decompose an `SL_n(F_p)` matrix given by integer rows; the exit code is
/// `EXIT_FAIL` only for an `ult` input outside the big cell.
pub fn decompose(kind: DecomposeKind, p: u32, rows: &[Vec<i64>]) -> Result<(Value, i32), InputError> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(bad("matrix is not square"));
    }
    let group = SlGroup::new(n, p).map_err(|e| bad(e.to_string()))?;
    let g = group.from_i64_rows(rows).map_err(|e| bad(e.to_string()))?;
    group.check(&g).map_err(|e| bad(e.to_string()))?;
    let base = json!({ "tool": TOOL, "version": VERSION, "group": group.name(), "p": p });
    let (value, code) = match kind {
        DecomposeKind::Bruhat | DecomposeKind::Birkhoff => {
            let d = if matches!(kind, DecomposeKind::Bruhat) {
                crate::matrix_groups::decompose::bruhat_decompose(&group, &g)
            } else {
                crate::matrix_groups::decompose::birkhoff_decompose(&group, &g)
            };
            let witness = json!({
                "left": signed_rows(&d.left),
                "w_hat": signed_rows(&group.w_hat(&d.w)),
                "right": signed_rows(&d.right),
            });
            (json!({ "w": d.w, "witness": witness }), EXIT_PASS)
        }
        DecomposeKind::Ult => match ult_factor(&group, &g) {
            Ok((u_plus, t, u_minus)) => {
                let witness = json!({
                    "u_plus": signed_rows(&u_plus),
                    "t": signed_rows(&t),
                    "u_minus": signed_rows(&u_minus),
                });
                (json!({ "witness": witness }), EXIT_PASS)
            }
            Err(MatrixGroupError::NotInBigCell) => (json!({ "error": "NotInBigCell" }), EXIT_FAIL),
            Err(e) => return Err(bad(e.to_string())),
        },
    };
    let mut merged = base;
    merged["kind"] = json!(format!("{kind:?}").to_lowercase());
    if let (Value::Object(dst), Value::Object(src)) = (&mut merged, value) {
        dst.extend(src);
    }
    Ok((merged, code))
}

fn header(kind: ReportKind, cfg: &RunConfig) -> Value {
    let mut echo = cfg.clone();
    echo.dot = false;
    json!({ "tool": TOOL, "version": VERSION, "kind": kind.name(), "config": echo })
}

fn emit(
    kind: ReportKind,
    cfg: &RunConfig,
    body: Value,
    dot: Option<String>,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    let mut report = header(kind, cfg);
    if let (Value::Object(dst), Value::Object(src)) = (&mut report, body) {
        dst.extend(src);
    }
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(&report).expect("serializable report")
    );
    save(cfg.out.as_deref(), &format!("{}.json", kind.name()), &text)?;
    if let Some(d) = &dot {
        save(cfg.out.as_deref(), &format!("{}.dot", kind.name()), d)?;
    }
    let shown = match (&dot, cfg.dot) {
        (Some(d), true) => d.clone(),
        (None, true) => return Err(bad(format!("{} reports have no DOT form", kind.name()))),
        _ => text,
    };
    out.write_all(shown.as_bytes()).map_err(|e| bad(e.to_string()))?;
    Ok(EXIT_PASS)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
}

fn dynkin_entry(t: &DynkinTree) -> Result<Value, InputError> {
    let code = canonical_hex(t).map_err(|e| bad(e.to_string()))?;
    let gcm = gcm_of_dynkin(t).map_err(|e| bad(e.to_string()))?;
    Ok(json!({ "code": code, "tree": t, "gcm": gcm.rows() }))
}

fn cmd_dynkin(words: &[String], flags: &Flags, out: &mut dyn Write) -> Result<i32, InputError> {
    let mut cfg = match &flags.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let mut action = None;
    let mut file = None;
    for w in words {
        match w.split_once('=') {
            Some(("n", v)) => cfg.n = Some(v.parse().map_err(|_| bad(format!("bad number in {w}")))?),
            Some(_) => return Err(bad(format!("unknown parameter {w}"))),
            None if action.is_none() => action = Some(w.clone()),
            None if file.is_none() => file = Some(PathBuf::from(w)),
            None => return Err(bad(format!("unexpected argument {w}"))),
        }
    }
    cfg.n = flags.n.or(cfg.n);
    cfg.gcm = flags.gcm.clone().or(cfg.gcm);
    cfg.out = flags.out.clone().or(cfg.out);
    cfg.dot |= flags.dot;
    let action = action.unwrap_or_else(|| {
        if cfg.gcm.is_some() {
            "gcm".into()
        } else {
            "enumerate".into()
        }
    });
    match action.as_str() {
        "enumerate" => {
            let n = cfg.n.ok_or_else(|| bad("dynkin enumerate needs n"))?;
            let trees = enumerate_trees(n).map_err(|e| bad(e.to_string()))?;
            let entries = trees.iter().map(dynkin_entry).collect::<Result<Vec<_>, _>>()?;
            let dot: String = trees.iter().map(|t| t.to_dot()).collect();
            emit(
                ReportKind::Dynkin,
                &cfg,
                json!({ "n": n, "count": trees.len(), "classes": entries }),
                Some(dot),
                out,
            )
        }
        "code" => {
            let path = file.ok_or_else(|| bad("dynkin code needs a tree file"))?;
            let tree: DynkinTree = read_json(&path)?;
            tree.validate().map_err(|e| bad(e.to_string()))?;
            let dot = tree.to_dot();
            emit(ReportKind::Dynkin, &cfg, dynkin_entry(&tree)?, Some(dot), out)
        }
        "gcm" => {
            let path = file
                .or(cfg.gcm.clone())
                .ok_or_else(|| bad("dynkin gcm needs a GCM file"))?;
            let doc: GcmDocument = read_json(&path)?;
            let gcm = Gcm::from_document(&doc).map_err(|e| bad(e.to_string()))?;
            let tree = dynkin_of_gcm(&gcm).map_err(|e| bad(e.to_string()))?;
            let dot = tree.to_dot();
            emit(ReportKind::Dynkin, &cfg, dynkin_entry(&tree)?, Some(dot), out)
        }
        other => Err(bad(format!(
            "unknown dynkin action {other}; use enumerate, code or gcm"
        ))),
    }
}

fn cmd_report(kind: ReportKind, words: &[String], flags: &Flags, out: &mut dyn Write) -> Result<i32, InputError> {
    if kind == ReportKind::Dynkin {
        return cmd_dynkin(words, flags, out);
    }
    let cfg = resolve(words, flags)?;
    let model = cfg.build()?;
    let err = |e: &dyn std::fmt::Display| bad(e.to_string());
    match (kind, &model) {
        (ReportKind::Algebra, Model::KacMoody(alg)) => emit(kind, &cfg, json!({ "algebra": dump(alg) }), None, out),
        (ReportKind::Algebra, _) => Err(bad("algebra reports need a kac_moody model")),
        (_, Model::KacMoody(_)) => Err(bad(format!("{} reports need a building model", kind.name()))),
        (ReportKind::Census, _) => {
            let b = model.building().expect("building model");
            let census =
                schubert_census(b, Chamber::plus(0), cfg.cap.filter(|_| b.is_truncated())).map_err(|e| err(&e))?;
            emit(kind, &cfg, json!({ "model": b.name(), "census": census }), None, out)
        }
        (ReportKind::Strata, _) => {
            let b = model.building().expect("building model");
            let st = stratification(b, Chamber::minus(0)).map_err(|e| err(&e))?;
            let dot = to_dot(&st);
            emit(
                kind,
                &cfg,
                json!({ "model": b.name(), "stratification": st }),
                Some(dot),
                out,
            )
        }
        (ReportKind::Foundation, _) => {
            let b = model.building().expect("building model");
            let orientation = b.system().cartan().clone();
            let f = collapse_foundation(b, Chamber::plus(0), Some(&orientation)).map_err(|e| err(&e))?;
            let dot = f.dynkin_tree().ok().map(|t| t.to_dot());
            emit(kind, &cfg, json!({ "foundation": f }), dot, out)
        }
        (ReportKind::Dynkin, _) => unreachable!("handled above"),
    }
}
