//! Check suites over a model and their merged outcome.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::building::axioms::check_axioms;
use crate::building::census::{gallery_space, schubert_census};
use crate::building::panel_mul::panel_mul_suite;
use crate::building::properties::{
    check_opposite_witness, codistance_subexpression, common_opposite, coprojection_adjacent_agree, PropertyReport,
};
use crate::building::strata::stratification;
use crate::building::{is_thick, Chamber, Sign, TwinBuildingModel};
use crate::kac_moody::checks::{
    chevalley_check, integrality_check, invariant_subspace_check, jacobi_check, real_root_check, relations_check,
};
use crate::kac_moody::rank2::rank2_rgd_check;
use crate::kac_moody::{KmAlgebra, KmError};
use crate::matrix_groups::rgd::Check;
use crate::matrix_groups::{
    coproj_formula_check, flip_lang, rgd_axiom_check, rho_check, transpose_inverse, MatrixGroupError, SlTwinBuilding,
};

use super::config::Model;

pub const BUILDING_SUITES: [&str; 6] = ["axioms", "census", "galleries", "panel_mul", "properties", "strata"];
pub const SL_SUITES: [&str; 4] = ["coproj_formula", "lang", "rgd", "rho"];
pub const KM_SUITES: [&str; 4] = ["algebra", "integrality", "rank2", "subspaces"];

/// Exhaustive Jacobi up to this many basis vectors, sampled above.
const JACOBI_EXHAUSTIVE_DIM: usize = 40;
const JACOBI_SAMPLES: usize = 20_000;
const ELEMENT_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckStatus {
    pub status: Status,
    pub instances: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl CheckStatus {
    fn of(passed: bool, instances: u64, witness: Option<String>, skipped: Option<String>) -> CheckStatus {
        let status = match (&skipped, passed) {
            (Some(_), _) => Status::Skipped,
            (None, true) => Status::Pass,
            (None, false) => Status::Fail,
        };
        CheckStatus {
            status,
            instances,
            witness,
            reason: skipped,
        }
    }

    fn flag(ok: bool, instances: u64, witness: impl FnOnce() -> String) -> CheckStatus {
        CheckStatus::of(ok, instances, (!ok).then(witness), None)
    }

    fn skipped(why: impl Into<String>) -> CheckStatus {
        CheckStatus::of(true, 0, None, Some(why.into()))
    }

    fn error(e: impl std::fmt::Display) -> CheckStatus {
        CheckStatus::of(false, 0, Some(e.to_string()), None)
    }
}

impl From<&Check> for CheckStatus {
    fn from(c: &Check) -> CheckStatus {
        CheckStatus::of(c.passed, c.instances, c.witness.clone(), c.skipped.clone())
    }
}

impl From<Check> for CheckStatus {
    fn from(c: Check) -> CheckStatus {
        CheckStatus::from(&c)
    }
}

impl From<PropertyReport> for CheckStatus {
    fn from(r: PropertyReport) -> CheckStatus {
        CheckStatus::of(r.passed, r.instances, r.witness, r.skipped)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub status: Status,
    pub checks: BTreeMap<String, CheckStatus>,
}

impl SuiteResult {
    fn new(checks: BTreeMap<String, CheckStatus>) -> SuiteResult {
        let status = if checks.values().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if checks.values().all(|c| c.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        };
        SuiteResult { status, checks }
    }

    fn single(name: &str, c: CheckStatus) -> SuiteResult {
        SuiteResult::new(BTreeMap::from([(name.to_string(), c)]))
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// First failing check as `check: witness`.
    pub fn witness(&self) -> Option<String> {
        self.checks
            .iter()
            .find(|(_, c)| c.status == Status::Fail)
            .map(|(name, c)| format!("{name}: {}", c.witness.as_deref().unwrap_or("no witness")))
    }
}

/// Suites available for a model, sorted by name.
pub fn available(model: &Model) -> Vec<&'static str> {
    let mut out: Vec<&str> = match model {
        Model::Thin(_) | Model::Table(_) => BUILDING_SUITES.to_vec(),
        Model::Sl(_) => BUILDING_SUITES.iter().chain(SL_SUITES.iter()).copied().collect(),
        Model::KacMoody(_) => KM_SUITES.to_vec(),
    };
    out.sort_unstable();
    out
}

pub struct Options {
    pub seed: u64,
    pub p: u32,
}

/// Run `names` in parallel; the map keeps them sorted.
pub fn run_suites(model: &Model, names: &[String], opts: &Options) -> BTreeMap<String, SuiteResult> {
    names
        .par_iter()
        .map(|name| {
            let start = Instant::now();
            let result = run_one(model, name, opts);
            eprintln!("{name}: {:?} in {:.3}s", result.status, start.elapsed().as_secs_f64());
            (name.clone(), result)
        })
        .collect()
}

fn run_one(model: &Model, name: &str, opts: &Options) -> SuiteResult {
    match (model, name) {
        (Model::KacMoody(alg), _) => km_suite(alg, name, opts),
        (Model::Sl(b), "coproj_formula" | "lang" | "rgd" | "rho") => sl_suite(b, name),
        (_, _) => building_suite(model.building().expect("building model"), name),
    }
}

fn building_suite(b: &dyn TwinBuildingModel, name: &str) -> SuiteResult {
    match name {
        "axioms" => match check_axioms(b) {
            Ok(r) => {
                let witness = r
                    .violation
                    .as_ref()
                    .map(|v| format!("{} at [{}]: {}", v.axiom, v.chambers.join(", "), v.detail));
                let instances = r.checked.values().sum();
                let mut checks = BTreeMap::new();
                checks.insert(
                    "Bu1-3, Tw1-3".to_string(),
                    CheckStatus::of(r.passed, instances, witness, None),
                );
                SuiteResult::new(checks)
            }
            Err(e) => SuiteResult::single("Bu1-3, Tw1-3", CheckStatus::error(e)),
        },
        "census" => census_suite(b),
        "galleries" => galleries_suite(b),
        "panel_mul" => SuiteResult::single(
            "panel multiplication",
            match is_thick(b).then(|| panel_mul_suite(b)) {
                None => CheckStatus::skipped("model is not thick"),
                Some(Ok(r)) if r.configurations == 0 => CheckStatus::skipped("no pair of generators with m >= 3"),
                Some(Ok(r)) => CheckStatus::of(r.passed(), r.configurations, r.first_failure.clone(), None),
                Some(Err(e)) => CheckStatus::error(e),
            },
        ),
        "properties" => {
            let mut checks = BTreeMap::new();
            let mut put = |name: &str, c: CheckStatus| {
                checks.insert(name.to_string(), c);
            };
            put(
                "coprojection_adjacent_agree",
                coprojection_adjacent_agree(b).map_or_else(CheckStatus::error, CheckStatus::from),
            );
            put("common_opposite", common_opposite(b).into());
            put("codistance_subexpression", codistance_subexpression(b).into());
            put(
                "opposite_witness",
                check_opposite_witness(b).map_or_else(CheckStatus::error, CheckStatus::from),
            );
            SuiteResult::new(checks)
        }
        "strata" => strata_suite(b),
        other => SuiteResult::single(other, CheckStatus::skipped("not available for this model")),
    }
}

/// `q + 1` when every panel has the same size.
fn uniform_panel_size(b: &dyn TwinBuildingModel) -> Option<usize> {
    let mut size = None;
    for sign in Sign::both() {
        for x in 0..b.chamber_count(sign) {
            let c = Chamber::new(sign, x);
            if !b.is_interior(c) {
                continue;
            }
            for s in 0..b.system().rank() {
                let k = b.panel(c, s).len();
                if *size.get_or_insert(k) != k {
                    return None;
                }
            }
        }
    }
    size
}

fn census_suite(b: &dyn TwinBuildingModel) -> SuiteResult {
    let mut checks = BTreeMap::new();
    let base = Chamber::plus(0);
    let census = match schubert_census(b, base, None) {
        Ok(c) => c,
        Err(e) => return SuiteResult::single("census", CheckStatus::error(e)),
    };
    if b.is_truncated() {
        checks.insert("partition".to_string(), CheckStatus::skipped("truncated model"));
    } else {
        checks.insert(
            "partition".to_string(),
            CheckStatus::flag(census.partition, 2, || {
                format!(
                    "totals {} + {} vs half sizes {} + {}",
                    census.schubert_total, census.co_schubert_total, census.half_size, census.opposite_half_size
                )
            }),
        );
    }
    let sizes = match uniform_panel_size(b) {
        Some(k) if !b.is_truncated() => {
            let q = (k - 1) as u128;
            let bad = census
                .schubert
                .iter()
                .find(|cell| cell.size as u128 != q.pow(cell.length as u32));
            CheckStatus::flag(bad.is_none(), census.schubert.len() as u64, || {
                let cell = bad.expect("failing cell");
                format!("|E_{}(c)| = {}, expected {}^{}", cell.w, cell.size, q, cell.length)
            })
        }
        Some(_) => CheckStatus::skipped("truncated model"),
        None => CheckStatus::skipped("panels of different sizes"),
    };
    checks.insert("|E_w| = q^l(w)".to_string(), sizes);
    SuiteResult::new(checks)
}

fn galleries_suite(b: &dyn TwinBuildingModel) -> SuiteResult {
    let sys = b.system();
    let word = match sys.longest_element() {
        Some(w) => w.word(),
        None => (0..2.min(sys.rank() * 2)).map(|i| i % sys.rank()).collect(),
    };
    let r = match gallery_space(b, &word, Chamber::plus(0)) {
        Ok(r) => r,
        Err(e) => return SuiteResult::single("gallery space", CheckStatus::error(e)),
    };
    let mut checks = BTreeMap::new();
    checks.insert(
        "|Gall| = product of panel sizes".to_string(),
        CheckStatus::flag(r.fibration, r.count, || format!("level counts {:?}", r.level_counts)),
    );
    let opt = |v: Option<bool>, what: &str| match v {
        Some(ok) => CheckStatus::flag(ok, 1, || format!("{what} fails for word {:?}", r.word)),
        None => CheckStatus::skipped("word is not reduced"),
    };
    checks.insert(
        "endpoints form the Schubert variety".to_string(),
        opt(r.endpoints_are_schubert_variety, "endpoint map"),
    );
    checks.insert(
        "unique non-stammering gallery".to_string(),
        opt(r.unique_non_stammering, "uniqueness"),
    );
    SuiteResult::new(checks)
}

fn strata_suite(b: &dyn TwinBuildingModel) -> SuiteResult {
    if b.is_truncated() {
        return SuiteResult::single("strata", CheckStatus::skipped("truncated model"));
    }
    let st = match stratification(b, Chamber::minus(0)) {
        Ok(st) => st,
        Err(e) => return SuiteResult::single("strata", CheckStatus::error(e)),
    };
    let mut checks = BTreeMap::new();
    let bad_profile = st.profiles.iter().find(|p| p.longer != 1);
    checks.insert(
        "panel profiles".to_string(),
        CheckStatus::flag(st.profiles_ok, st.profiles.len() as u64, || {
            let p = bad_profile.expect("failing profile");
            format!(
                "w = {}, s = {}: {} longer, {} shorter",
                p.w,
                p.generator + 1,
                p.longer,
                p.shorter
            )
        }),
    );
    let bad_filter = st.comparisons.iter().find(|c| !c.equal);
    checks.insert(
        "closure is Bruhat filter".to_string(),
        CheckStatus::flag(st.closure_is_bruhat_filter, st.comparisons.len() as u64, || {
            let c = bad_filter.expect("failing stratum");
            format!(
                "stratum {} reaches {} elements, filter has {}",
                c.w,
                c.reachable.len(),
                c.bruhat_filter.len()
            )
        }),
    );
    SuiteResult::new(checks)
}

fn sl_suite(b: &SlTwinBuilding, name: &str) -> SuiteResult {
    let wrap = |r: Result<Check, MatrixGroupError>| match r {
        Ok(c) => CheckStatus::from(c),
        Err(MatrixGroupError::TooLarge(n)) => CheckStatus::skipped(format!("more than {n} elements")),
        Err(e) => CheckStatus::error(e),
    };
    match name {
        "coproj_formula" => SuiteResult::single("formula = brute force", wrap(coproj_formula_check(b))),
        "rho" => SuiteResult::single(
            "x in B+ w rho_w(x), rho_1 = pi",
            wrap(rho_check(b.group(), ELEMENT_LIMIT)),
        ),
        "rgd" => match rgd_axiom_check(b.group()) {
            Ok(r) => SuiteResult::new(r.checks.iter().map(|(k, c)| (k.clone(), c.into())).collect()),
            Err(e) => SuiteResult::single("RGD", CheckStatus::error(e)),
        },
        "lang" => SuiteResult::single(
            "stratum equivalence",
            match flip_lang(b, "transpose-inverse", &transpose_inverse) {
                Ok(r) => CheckStatus::of(r.equivalence_holds, r.elements as u64, r.counterexample.clone(), None),
                Err(e) => CheckStatus::error(e),
            },
        ),
        other => SuiteResult::single(other, CheckStatus::skipped("not available for this model")),
    }
}

fn km_suite(alg: &KmAlgebra, name: &str, opts: &Options) -> SuiteResult {
    let mut checks = BTreeMap::new();
    match name {
        "algebra" => {
            let samples = (alg.dim() > JACOBI_EXHAUSTIVE_DIM).then_some((JACOBI_SAMPLES, opts.seed));
            checks.insert("jacobi".to_string(), jacobi_check(alg, samples).into());
            checks.insert("chevalley involution".to_string(), chevalley_check(alg).into());
            checks.insert("relations".to_string(), relations_check(alg).into());
            checks.insert("real root spaces".to_string(), real_root_check(alg).into());
        }
        "integrality" => {
            let c = integrality_check(alg).map_or_else(CheckStatus::error, CheckStatus::from);
            checks.insert("divided powers".to_string(), c);
        }
        "subspaces" => {
            checks.insert("invariant subspaces".to_string(), invariant_subspace_check(alg).into());
        }
        "rank2" => match rank2_rgd_check(alg.gcm(), opts.p) {
            Ok(r) => checks.extend(r.checks.iter().map(|(k, c)| (k.clone(), c.into()))),
            Err(KmError::NotRankTwoFinite(why)) => {
                checks.insert(
                    "rank2".to_string(),
                    CheckStatus::skipped(format!("not rank-2 finite type: {why}")),
                );
            }
            Err(e) => {
                checks.insert("rank2".to_string(), CheckStatus::error(e));
            }
        },
        other => {
            checks.insert(other.to_string(), CheckStatus::skipped("not available for this model"));
        }
    }
    SuiteResult::new(checks)
}

/// Chamber counts and interior of a building model.
#[derive(Debug, Clone, Serialize)]
pub struct Region {
    pub chambers: [usize; 2],
    pub interior: [usize; 2],
    pub truncated: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Certified {
    Building(Region),
    Window { height: usize, dim: usize, complete: bool },
}

pub fn certified(model: &Model) -> Certified {
    match model {
        Model::KacMoody(alg) => Certified::Window {
            height: alg.window(),
            dim: alg.dim(),
            complete: alg.is_complete(),
        },
        _ => {
            let b = model.building().expect("building model");
            let count = |sign| b.chamber_count(sign);
            let interior = |sign| {
                (0..count(sign))
                    .filter(|&x| b.is_interior(Chamber::new(sign, x)))
                    .count()
            };
            Certified::Building(Region {
                chambers: [count(Sign::Plus), count(Sign::Minus)],
                interior: [interior(Sign::Plus), interior(Sign::Minus)],
                truncated: b.is_truncated(),
            })
        }
    }
}
