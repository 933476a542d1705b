//! Codistance strata relative to a chamber: panel profiles and the
//! reachability poset generated by length-increasing panel steps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Serialize;

use super::{chambers, check_chamber, BuildingError, Chamber, TwinBuildingModel};
use crate::coxeter::CoxeterElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum StepSide {
    #[serde(rename = "left")]
    Left,
    #[serde(rename = "right")]
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Step {
    pub from: CoxeterElement,
    pub to: CoxeterElement,
    pub side: StepSide,
    pub generator: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Profile {
    pub w: CoxeterElement,
    pub generator: usize,
    /// Chambers of the panel at codistance `ws`.
    pub longer: usize,
    /// Chambers of the panel at codistance `w`.
    pub shorter: usize,
    pub panels: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FilterComparison {
    pub w: CoxeterElement,
    pub reachable: Vec<CoxeterElement>,
    pub bruhat_filter: Vec<CoxeterElement>,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stratification {
    pub base: String,
    #[serde(serialize_with = "crate::coxeter::serialize_keyed")]
    pub strata: BTreeMap<CoxeterElement, usize>,
    /// Distinct `(longer, shorter)` pairs over all panels.
    pub profile_shapes: BTreeSet<(usize, usize)>,
    pub profiles: Vec<Profile>,
    /// Every profile has exactly one chamber at `ws`.
    pub profiles_ok: bool,
    pub steps: BTreeSet<Step>,
    pub comparisons: Vec<FilterComparison>,
    /// Reachability equals the realized Bruhat filter for every stratum.
    pub closure_is_bruhat_filter: bool,
}

pub fn stratification<B: TwinBuildingModel + ?Sized>(b: &B, d: Chamber) -> Result<Stratification, BuildingError> {
    check_chamber(b, d)?;
    let sys = b.system();
    let other = d.sign.opposite();
    let cod: Vec<CoxeterElement> = chambers(b, other).map(|c| b.codistance(d, c)).collect();
    let mut strata = BTreeMap::new();
    for w in &cod {
        *strata.entry(w.clone()).or_insert(0usize) += 1;
    }
    let mut steps = BTreeSet::new();
    let mut profiles: BTreeMap<(CoxeterElement, usize), (BTreeSet<(usize, usize)>, usize)> = BTreeMap::new();
    let mut profiles_ok = true;
    // right steps: panels around chambers of the other half
    for c in chambers(b, other).filter(|&c| b.is_interior(c)) {
        let w = &cod[c.index];
        for s in 0..sys.rank() {
            let ws = sys.multiply_generator(w, s);
            if ws.len() < w.len() {
                continue;
            }
            let panel = b.panel(c, s);
            let longer = panel.iter().filter(|&&x| cod[x] == ws).count();
            let shorter = panel.iter().filter(|&&x| cod[x] == *w).count();
            if longer != 1 || longer + shorter != panel.len() {
                profiles_ok = false;
            }
            if longer > 0 {
                steps.insert(Step {
                    from: w.clone(),
                    to: ws.clone(),
                    side: StepSide::Right,
                    generator: s + 1,
                });
            }
            let e = profiles.entry((w.clone(), s)).or_default();
            e.0.insert((longer, shorter));
            e.1 += 1;
        }
    }
    // left steps: move the base chamber inside its panels
    for s in 0..sys.rank() {
        for d2 in b.panel(d, s) {
            if d2 == d.index {
                continue;
            }
            let d2 = Chamber::new(d.sign, d2);
            for c in chambers(b, other) {
                let w = &cod[c.index];
                let sw = sys.generator_multiply(s, w);
                if sw.len() > w.len() && b.codistance(d2, c) == sw {
                    steps.insert(Step {
                        from: w.clone(),
                        to: sw,
                        side: StepSide::Left,
                        generator: s + 1,
                    });
                }
            }
        }
    }
    let realized: Vec<CoxeterElement> = strata.keys().cloned().collect();
    let mut comparisons = Vec::new();
    for w in &realized {
        let mut reach = BTreeSet::from([w.clone()]);
        let mut stack = vec![w.clone()];
        while let Some(x) = stack.pop() {
            for st in steps.iter().filter(|st| st.from == x) {
                if reach.insert(st.to.clone()) {
                    stack.push(st.to.clone());
                }
            }
        }
        let filter: BTreeSet<CoxeterElement> = realized.iter().filter(|v| sys.bruhat_leq(w, v)).cloned().collect();
        comparisons.push(FilterComparison {
            w: w.clone(),
            equal: reach == filter,
            reachable: reach.into_iter().collect(),
            bruhat_filter: filter.into_iter().collect(),
        });
    }
    let mut profile_shapes = BTreeSet::new();
    let profiles: Vec<Profile> = profiles
        .into_iter()
        .map(|((w, s), (shapes, panels))| {
            profile_shapes.extend(shapes.iter().copied());
            let (longer, shorter) = if shapes.len() == 1 {
                *shapes.iter().next().expect("one shape")
            } else {
                profiles_ok = false;
                (usize::MAX, usize::MAX)
            };
            Profile {
                w,
                generator: s + 1,
                longer,
                shorter,
                panels,
            }
        })
        .collect();
    Ok(Stratification {
        base: b.label(d),
        closure_is_bruhat_filter: comparisons.iter().all(|c| c.equal),
        strata,
        profile_shapes,
        profiles,
        profiles_ok,
        steps,
        comparisons,
    })
}

/// DOT rendering of the step poset.
pub fn to_dot(st: &Stratification) -> String {
    let mut out = String::from("digraph strata {\n  rankdir=BT;\n");
    let name = |w: &CoxeterElement| format!("\"{w}\"");
    for (w, n) in &st.strata {
        let _ = writeln!(out, "  {} [label=\"{w} ({n})\"];", name(w));
    }
    let mut edges = BTreeSet::new();
    for s in &st.steps {
        edges.insert((s.from.clone(), s.to.clone()));
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  {} -> {};", name(&a), name(&b));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use crate::thin::ThinTwinBuilding;

    #[test]
    fn thin_profiles_are_two_point() {
        let b = ThinTwinBuilding::new(CoxeterSystem::named("A2").unwrap(), 3);
        let st = stratification(&b, Chamber::plus(0)).unwrap();
        assert!(st.profiles_ok);
        assert_eq!(st.profile_shapes, BTreeSet::from([(1, 1)]));
        assert!(st.closure_is_bruhat_filter);
        assert_eq!(st.strata.len(), 6);
        assert_eq!(to_dot(&st).matches("label=").count(), 6);
    }
}
