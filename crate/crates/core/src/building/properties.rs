//! Exhaustive checks of combinatorial twin-building properties.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::projection::coproj_panel;
use super::{chambers, is_thick, BuildingError, Chamber, Sign, TwinBuildingModel};
use crate::coxeter::{CoxeterElement, CoxeterSystem};

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub passed: bool,
    pub instances: u64,
    pub skipped: Option<String>,
    pub witness: Option<String>,
}

impl PropertyReport {
    fn new(name: &str) -> PropertyReport {
        PropertyReport {
            name: name.to_string(),
            passed: true,
            instances: 0,
            skipped: None,
            witness: None,
        }
    }

    fn skip(name: &str, why: &str) -> PropertyReport {
        PropertyReport {
            skipped: Some(why.to_string()),
            ..PropertyReport::new(name)
        }
    }

    fn absorb(&mut self, (n, witness): (u64, Option<String>)) {
        self.instances += n;
        if witness.is_some() && self.witness.is_none() {
            self.passed = false;
            self.witness = witness;
        }
    }
}

/// Opposite-sign pairs are checked from both halves.
fn both_signs() -> [(Sign, Sign); 2] {
    [(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)]
}

/// Adjacent `c1, c2` of type `s`, `d` opposite both, `t != s`: the
/// co-projections of `c1` and `c2` onto `P_t(d)` agree.
pub fn coprojection_adjacent_agree<B: TwinBuildingModel + ?Sized>(b: &B) -> Result<PropertyReport, BuildingError> {
    let rank = b.system().rank();
    let mut report = PropertyReport::new("coprojection_adjacent_agree");
    if rank < 2 {
        return Ok(PropertyReport::skip("coprojection_adjacent_agree", "rank one"));
    }
    for (near, far) in both_signs() {
        let results: Vec<Result<(u64, Option<String>), BuildingError>> = (0..b.chamber_count(near))
            .into_par_iter()
            .map(|x| {
                let c1 = Chamber::new(near, x);
                let mut n = 0;
                for s in 0..rank {
                    for c2 in b.panel(c1, s) {
                        let c2 = Chamber::new(near, c2);
                        if c2 == c1 {
                            continue;
                        }
                        for d in chambers(b, far).filter(|&d| b.is_interior(d)) {
                            if !b.codistance(c1, d).is_identity() || !b.codistance(c2, d).is_identity() {
                                continue;
                            }
                            for t in (0..rank).filter(|&t| t != s) {
                                n += 1;
                                let a1 = coproj_panel(b, d, t, c1)?;
                                let a2 = coproj_panel(b, d, t, c2)?;
                                if a1 != a2 {
                                    return Ok((
                                        n,
                                        Some(format!(
                                            "c1 = {}, c2 = {}, d = {}, t = {}",
                                            b.label(c1),
                                            b.label(c2),
                                            b.label(d),
                                            t + 1
                                        )),
                                    ));
                                }
                            }
                        }
                    }
                }
                Ok((n, None))
            })
            .collect();
        for r in results {
            report.absorb(r?);
        }
    }
    Ok(report)
}

/// Every pair of chambers in one half has a common opposite (thick models).
pub fn common_opposite<B: TwinBuildingModel + ?Sized>(b: &B) -> PropertyReport {
    if !is_thick(b) {
        return PropertyReport::skip("common_opposite", "model is not thick");
    }
    let mut report = PropertyReport::new("common_opposite");
    for (near, far) in both_signs() {
        let n = b.chamber_count(near);
        let opp: Vec<BTreeSet<usize>> = (0..n)
            .map(|x| {
                chambers(b, far)
                    .filter(|&d| b.codistance(Chamber::new(near, x), d).is_identity())
                    .map(|d| d.index)
                    .collect()
            })
            .collect();
        for x in 0..n {
            for y in x..n {
                report.absorb((
                    1,
                    opp[x].is_disjoint(&opp[y]).then(|| {
                        format!(
                            "{} and {} have no common opposite",
                            b.label(Chamber::new(near, x)),
                            b.label(Chamber::new(near, y))
                        )
                    }),
                ));
            }
        }
    }
    report
}

/// Elements represented by subexpressions of a reduced word of `v`.
fn subexpression_values(sys: &CoxeterSystem, v: &CoxeterElement) -> BTreeSet<CoxeterElement> {
    let word = v.word();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << word.len()) {
        let sub: Vec<usize> = word
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        out.insert(sys.normal_form(&sub).expect("valid word"));
    }
    out
}

/// `delta*(c, e) = w v'` with `v'` a subexpression of `v = delta(d, e)`,
/// where `w = delta*(c, d)`.
pub fn codistance_subexpression<B: TwinBuildingModel + ?Sized>(b: &B) -> PropertyReport {
    let sys = b.system();
    let mut report = PropertyReport::new("codistance_subexpression");
    let mut cache: HashMap<CoxeterElement, BTreeSet<CoxeterElement>> = HashMap::new();
    for (near, far) in both_signs() {
        let m = b.chamber_count(far);
        for d in 0..m {
            for e in 0..m {
                let v = b.distance(far, d, e);
                cache.entry(v.clone()).or_insert_with(|| subexpression_values(sys, &v));
            }
        }
        let results: Vec<(u64, Option<String>)> = (0..b.chamber_count(near))
            .into_par_iter()
            .map(|x| {
                let c = Chamber::new(near, x);
                let mut n = 0;
                for d in 0..m {
                    let w = b.codistance(c, Chamber::new(far, d));
                    let w_inv = sys.inverse(&w);
                    for e in 0..m {
                        n += 1;
                        let v = b.distance(far, d, e);
                        let got = b.codistance(c, Chamber::new(far, e));
                        let v_prime = sys.multiply(&w_inv, &got);
                        if !cache[&v].contains(&v_prime) {
                            return (
                                n,
                                Some(format!(
                                    "c = {}, d = {}, e = {}: w = {w}, v = {v}, delta*(c,e) = {got}",
                                    b.label(c),
                                    b.label(Chamber::new(far, d)),
                                    b.label(Chamber::new(far, e))
                                )),
                            );
                        }
                    }
                }
                (n, None)
            })
            .collect();
        for r in results {
            report.absorb(r);
        }
    }
    report
}

/// Constructive witness: `a_0 = c_-`, then `a_i` in `P_{s_i}(a_{i-1})`
/// avoiding `a_{i-1}` and the co-projection of `c_+`.
pub fn opposite_witness<B: TwinBuildingModel + ?Sized>(
    b: &B,
    c_plus: Chamber,
    c_minus: Chamber,
    word: &[usize],
) -> Result<Option<Chamber>, BuildingError> {
    let mut a = c_minus;
    for &s in &word[..word.len().saturating_sub(1)] {
        let avoid = coproj_panel(b, a, s, c_plus)?;
        match b.panel(a, s).into_iter().find(|&y| y != a.index && y != avoid.index) {
            Some(y) => a = Chamber::new(a.sign, y),
            None => return Ok(None),
        }
    }
    Ok(Some(a))
}

/// Verify the witness for all opposite pairs and all reduced words.
pub fn check_opposite_witness<B: TwinBuildingModel + ?Sized>(b: &B) -> Result<PropertyReport, BuildingError> {
    if !is_thick(b) {
        return Ok(PropertyReport::skip("opposite_witness", "model is not thick"));
    }
    let sys = b.system();
    let mut report = PropertyReport::new("opposite_witness");
    let elements: Vec<CoxeterElement> = (0..b.chamber_count(Sign::Minus))
        .flat_map(|y| (0..b.chamber_count(Sign::Minus)).map(move |z| (y, z)))
        .map(|(y, z)| b.distance(Sign::Minus, y, z))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter(|w| !w.is_identity())
        .collect();
    let words: Vec<Vec<usize>> = elements.iter().flat_map(|w| sys.reduced_words(w)).collect();
    let pairs: Vec<(usize, usize)> = (0..b.chamber_count(Sign::Plus))
        .flat_map(|x| (0..b.chamber_count(Sign::Minus)).map(move |y| (x, y)))
        .filter(|&(x, y)| b.codistance(Chamber::plus(x), Chamber::minus(y)).is_identity())
        .collect();
    let results: Vec<Result<(u64, Option<String>), BuildingError>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let (cp, cm) = (Chamber::plus(x), Chamber::minus(y));
            let mut n = 0;
            for word in &words {
                n += 1;
                let w = sys.normal_form(word).expect("valid word");
                let last = sys.generator(*word.last().expect("non-empty"));
                let fail = |why: &str| {
                    Some(format!(
                        "c+ = {}, c- = {}, word = {:?}: {why}",
                        b.label(cp),
                        b.label(cm),
                        word.iter().map(|s| s + 1).collect::<Vec<_>>()
                    ))
                };
                let Some(d) = opposite_witness(b, cp, cm, word)? else {
                    return Ok((n, fail("no admissible chamber in a panel")));
                };
                if !b.codistance(cp, d).is_identity() {
                    return Ok((n, fail("witness not opposite c+")));
                }
                for e in chambers(b, Sign::Plus) {
                    if b.codistance(cm, e) == w && b.codistance(e, d) != last {
                        return Ok((n, fail("codistance from E*_w(c-) differs from s_k")));
                    }
                }
            }
            Ok((n, None))
        })
        .collect();
    for r in results {
        report.absorb(r?);
    }
    Ok(report)
}
