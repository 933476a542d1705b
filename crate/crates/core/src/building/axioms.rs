//! Exhaustive verification of (Bu1)-(Bu3) and (Tw1)-(Tw3).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{chambers, BuildingError, Chamber, Sign, TwinBuildingModel};
use crate::coxeter::CoxeterElement;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub chambers: Vec<String>,
    #[serde(skip)]
    pub witness: Vec<Chamber>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Region {
    pub plus: usize,
    pub minus: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub model: String,
    pub passed: bool,
    pub truncated: bool,
    pub chambers: Region,
    /// Chambers whose panels were fully checked.
    pub interior: Region,
    pub checked: BTreeMap<String, u64>,
    pub violation: Option<Violation>,
}

/// Neighbours `(s, z)` with `delta(y, z) = s`, per chamber of one half.
pub(crate) fn neighbours<B: TwinBuildingModel + ?Sized>(b: &B, sign: Sign) -> Vec<Vec<(usize, usize)>> {
    let rank = b.system().rank();
    (0..b.chamber_count(sign))
        .map(|y| {
            let mut out = Vec::new();
            for s in 0..rank {
                for z in b.panel(Chamber::new(sign, y), s) {
                    if z != y {
                        out.push((s, z));
                    }
                }
            }
            out
        })
        .collect()
}

type Outcome = (u64, Option<Violation>);

fn violation(b: &(impl TwinBuildingModel + ?Sized), axiom: &str, witness: Vec<Chamber>, detail: String) -> Violation {
    Violation {
        axiom: axiom.to_string(),
        chambers: witness.iter().map(|&c| b.label(c)).collect(),
        witness,
        detail,
    }
}

fn merge(results: Vec<Outcome>) -> Outcome {
    let mut total = 0;
    let mut first = None;
    for (n, v) in results {
        total += n;
        if first.is_none() {
            first = v;
        }
    }
    (total, first)
}

pub fn check_axioms<B: TwinBuildingModel + ?Sized>(b: &B) -> Result<AxiomReport, BuildingError> {
    let count = |sign| b.chamber_count(sign);
    let interior = |sign| chambers(b, sign).filter(|&c| b.is_interior(c)).count();
    let interior_region = Region {
        plus: interior(Sign::Plus),
        minus: interior(Sign::Minus),
    };
    if interior_region.plus == 0 || interior_region.minus == 0 {
        return Err(BuildingError::RegionTooSmall);
    }
    let nbrs = [neighbours(b, Sign::Plus), neighbours(b, Sign::Minus)];
    let mut checked = BTreeMap::new();
    let mut found = None;
    let suites: [(&str, &dyn Fn() -> Outcome); 6] = [
        ("Bu1", &|| bu1(b)),
        ("Bu2", &|| bu2(b, &nbrs)),
        ("Bu3", &|| bu3(b, &nbrs)),
        ("Tw1", &|| tw1(b)),
        ("Tw2", &|| tw2(b, &nbrs)),
        ("Tw3", &|| tw3(b, &nbrs)),
    ];
    for (name, run) in suites {
        let (n, v) = run();
        checked.insert(name.to_string(), n);
        if found.is_none() {
            found = v;
        }
        if found.is_some() {
            break;
        }
    }
    Ok(AxiomReport {
        model: b.name(),
        passed: found.is_none(),
        truncated: b.is_truncated(),
        chambers: Region {
            plus: count(Sign::Plus),
            minus: count(Sign::Minus),
        },
        interior: interior_region,
        checked,
        violation: found,
    })
}

fn bu1<B: TwinBuildingModel + ?Sized>(b: &B) -> Outcome {
    let mut results = Vec::new();
    for sign in Sign::both() {
        let n = b.chamber_count(sign);
        results.extend(
            (0..n)
                .into_par_iter()
                .map(|x| {
                    for y in 0..n {
                        let w = b.distance(sign, x, y);
                        if w.is_identity() != (x == y) {
                            return (
                                (y + 1) as u64,
                                Some(violation(
                                    b,
                                    "Bu1",
                                    vec![Chamber::new(sign, x), Chamber::new(sign, y)],
                                    format!("delta = {w}"),
                                )),
                            );
                        }
                    }
                    (n as u64, None)
                })
                .collect::<Vec<_>>(),
        );
    }
    merge(results)
}

fn bu2<B: TwinBuildingModel + ?Sized>(b: &B, nbrs: &[Vec<Vec<(usize, usize)>>; 2]) -> Outcome {
    let sys = b.system();
    let mut results = Vec::new();
    for sign in Sign::both() {
        let n = b.chamber_count(sign);
        let nb = &nbrs[sign.slot()];
        results.extend(
            (0..n)
                .into_par_iter()
                .map(|x| {
                    let mut k = 0;
                    for y in 0..n {
                        if !b.is_interior(Chamber::new(sign, y)) {
                            continue;
                        }
                        let w = b.distance(sign, x, y);
                        for &(s, z) in &nb[y] {
                            k += 1;
                            let ws = sys.multiply_generator(&w, s);
                            let got = b.distance(sign, x, z);
                            let ok = if ws.len() > w.len() {
                                got == ws
                            } else {
                                got == ws || got == w
                            };
                            if !ok {
                                let c = |i| Chamber::new(sign, i);
                                return (
                                    k,
                                    Some(violation(
                                        b,
                                        "Bu2",
                                        vec![c(x), c(y), c(z)],
                                        format!("delta(x,y) = {w}, s = {}, delta(x,z) = {got}", s + 1),
                                    )),
                                );
                            }
                        }
                    }
                    (k, None)
                })
                .collect::<Vec<_>>(),
        );
    }
    merge(results)
}

fn bu3<B: TwinBuildingModel + ?Sized>(b: &B, nbrs: &[Vec<Vec<(usize, usize)>>; 2]) -> Outcome {
    let sys = b.system();
    let rank = sys.rank();
    let mut results = Vec::new();
    for sign in Sign::both() {
        let n = b.chamber_count(sign);
        let nb = &nbrs[sign.slot()];
        results.extend(
            (0..n)
                .into_par_iter()
                .map(|x| {
                    let mut k = 0;
                    for y in 0..n {
                        if !b.is_interior(Chamber::new(sign, y)) {
                            continue;
                        }
                        let w = b.distance(sign, x, y);
                        for s in 0..rank {
                            k += 1;
                            let ws = sys.multiply_generator(&w, s);
                            let exists = nb[y].iter().any(|&(t, z)| t == s && b.distance(sign, x, z) == ws);
                            if !exists {
                                return (
                                    k,
                                    Some(violation(
                                        b,
                                        "Bu3",
                                        vec![Chamber::new(sign, x), Chamber::new(sign, y)],
                                        format!("no z with delta(y,z) = {} and delta(x,z) = {ws}", s + 1),
                                    )),
                                );
                            }
                        }
                    }
                    (k, None)
                })
                .collect::<Vec<_>>(),
        );
    }
    merge(results)
}

fn tw1<B: TwinBuildingModel + ?Sized>(b: &B) -> Outcome {
    let sys = b.system();
    let np = b.chamber_count(Sign::Plus);
    let nm = b.chamber_count(Sign::Minus);
    let results = (0..np)
        .into_par_iter()
        .map(|x| {
            for y in 0..nm {
                let (cx, cy) = (Chamber::plus(x), Chamber::minus(y));
                let w = b.codistance(cx, cy);
                let back = b.codistance(cy, cx);
                if back != sys.inverse(&w) {
                    return (
                        (y + 1) as u64,
                        Some(violation(
                            b,
                            "Tw1",
                            vec![cx, cy],
                            format!("delta*(x,y) = {w}, delta*(y,x) = {back}"),
                        )),
                    );
                }
            }
            (nm as u64, None)
        })
        .collect();
    merge(results)
}

/// Shared loop for (Tw2)/(Tw3): `x` in one half, interior `y` in the other.
fn tw_pairs<B, F>(b: &B, check: F) -> Outcome
where
    B: TwinBuildingModel + ?Sized,
    F: Fn(Chamber, Chamber, &CoxeterElement) -> (u64, Option<Violation>) + Sync,
{
    let mut results = Vec::new();
    for sign in Sign::both() {
        let n = b.chamber_count(sign);
        let other = sign.opposite();
        let m = b.chamber_count(other);
        results.extend(
            (0..n)
                .into_par_iter()
                .map(|x| {
                    let mut k = 0;
                    for y in 0..m {
                        let (cx, cy) = (Chamber::new(sign, x), Chamber::new(other, y));
                        if !b.is_interior(cy) {
                            continue;
                        }
                        let w = b.codistance(cx, cy);
                        let (n, v) = check(cx, cy, &w);
                        k += n;
                        if v.is_some() {
                            return (k, v);
                        }
                    }
                    (k, None)
                })
                .collect::<Vec<_>>(),
        );
    }
    merge(results)
}

fn tw2<B: TwinBuildingModel + ?Sized>(b: &B, nbrs: &[Vec<Vec<(usize, usize)>>; 2]) -> Outcome {
    let sys = b.system();
    tw_pairs(b, |cx, cy, w| {
        let mut k = 0;
        for &(s, z) in &nbrs[cy.sign.slot()][cy.index] {
            let ws = sys.multiply_generator(w, s);
            if ws.len() > w.len() {
                continue;
            }
            k += 1;
            let cz = Chamber::new(cy.sign, z);
            let got = b.codistance(cx, cz);
            if got != ws {
                return (
                    k,
                    Some(violation(
                        b,
                        "Tw2",
                        vec![cx, cy, cz],
                        format!("delta*(x,y) = {w}, s = {}, delta*(x,z) = {got}", s + 1),
                    )),
                );
            }
        }
        (k, None)
    })
}

fn tw3<B: TwinBuildingModel + ?Sized>(b: &B, nbrs: &[Vec<Vec<(usize, usize)>>; 2]) -> Outcome {
    let sys = b.system();
    let rank = sys.rank();
    tw_pairs(b, |cx, cy, w| {
        for s in 0..rank {
            let ws = sys.multiply_generator(w, s);
            let exists = nbrs[cy.sign.slot()][cy.index]
                .iter()
                .any(|&(t, z)| t == s && b.codistance(cx, Chamber::new(cy.sign, z)) == ws);
            if !exists {
                return (
                    (s + 1) as u64,
                    Some(violation(
                        b,
                        "Tw3",
                        vec![cx, cy],
                        format!("no z with delta(y,z) = {} and delta*(x,z) = {ws}", s + 1),
                    )),
                );
            }
        }
        (rank as u64, None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::TableBuilding;
    use crate::coxeter::CoxeterSystem;
    use crate::thin::ThinTwinBuilding;

    #[test]
    fn thin_models_pass() {
        for (name, cap) in [("A2", 3), ("B2", 4), ("A1~", 5)] {
            let b = ThinTwinBuilding::new(CoxeterSystem::named(name).unwrap(), cap);
            let r = check_axioms(&b).unwrap();
            assert!(r.passed, "{name}: {:?}", r.violation);
        }
    }

    #[test]
    fn swapped_codistance_fails_tw1() {
        let b = ThinTwinBuilding::new(CoxeterSystem::named("A2").unwrap(), 3);
        let mut t = TableBuilding::from_model(&b);
        let (x, y) = (Chamber::plus(0), Chamber::minus(1));
        let (u, v) = (Chamber::plus(0), Chamber::minus(2));
        let a = t.codistance(x, y);
        let c = t.codistance(u, v);
        t.set_codistance(x, y, c);
        t.set_codistance(u, v, a);
        let r = check_axioms(&t).unwrap();
        assert!(!r.passed);
        assert_eq!(r.violation.unwrap().axiom, "Tw1");
    }

    #[test]
    fn region_too_small() {
        let b = ThinTwinBuilding::new(CoxeterSystem::named("A1~").unwrap(), 0);
        assert!(matches!(check_axioms(&b), Err(BuildingError::RegionTooSmall)));
    }
}
