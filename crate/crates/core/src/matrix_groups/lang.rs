//! Lang map of an automorphism swapping `B_+` and `B_-`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::building::{Chamber, Sign, TwinBuildingModel};
use crate::coxeter::CoxeterElement;
use crate::matrix::FpMatrix;

use super::{MatrixGroupError, SlGroup, SlTwinBuilding};

pub const MAX_ELEMENTS: usize = 20_000;

/// `theta(g) = (g^T)^-1`.
pub fn transpose_inverse(g: &FpMatrix) -> FpMatrix {
    g.transpose().inverse().expect("invertible")
}

#[derive(Debug, Clone, Serialize)]
pub struct LangEntry {
    pub x: Vec<Vec<u32>>,
    pub tau: Vec<Vec<u32>>,
    pub w: CoxeterElement,
}

#[derive(Debug, Clone, Serialize)]
pub struct LangReport {
    pub group: String,
    pub automorphism: String,
    pub elements: usize,
    /// Lang map table; only kept for groups of order at most 200.
    pub table: Vec<LangEntry>,
    /// Number of group elements `x` with `tau(x)` in `B_- w B_+`.
    #[serde(serialize_with = "crate::coxeter::serialize_keyed")]
    pub element_strata: BTreeMap<CoxeterElement, usize>,
    /// `|Delta_w|`: chambers `c` with `delta*(theta(c), c) = w`.
    #[serde(serialize_with = "crate::coxeter::serialize_keyed")]
    pub strata: BTreeMap<CoxeterElement, usize>,
    pub cod: BTreeSet<CoxeterElement>,
    /// `delta*(theta(xB_+), xB_+) = w` iff `tau(x)` lies in `B_- w B_+`.
    pub equivalence_holds: bool,
    pub counterexample: Option<String>,
}

/// Tabulate `tau(x) = theta(x)^-1 x` and compare its Birkhoff cell with the
/// codistance `delta*(theta(xB_+), xB_+)` for every `x`.
pub fn flip_lang(
    b: &SlTwinBuilding,
    name: &str,
    theta: &dyn Fn(&FpMatrix) -> FpMatrix,
) -> Result<LangReport, MatrixGroupError> {
    let group: &SlGroup = b.group();
    for u in group.borel(true) {
        let image = theta(&u);
        if !image.is_lower_triangular() {
            return Err(MatrixGroupError::NotSwapping(format!(
                "{} maps to {}",
                group.format(&u),
                group.format(&image)
            )));
        }
    }
    let elements = group.elements(MAX_ELEMENTS)?;
    let keep_table = elements.len() <= 200;
    let mut report = LangReport {
        group: group.name(),
        automorphism: name.to_string(),
        elements: elements.len(),
        table: Vec::new(),
        element_strata: BTreeMap::new(),
        strata: BTreeMap::new(),
        cod: BTreeSet::new(),
        equivalence_holds: true,
        counterexample: None,
    };
    for x in &elements {
        let tx = theta(x);
        let tau = group.inverse(&tx).mul(x);
        let w = group.cell_minus_plus(&tau);
        let c = b.chamber_of(Sign::Plus, x);
        let d = b.chamber_of(Sign::Minus, &tx);
        let cod = b.codistance(d, c);
        if cod != w && report.equivalence_holds {
            report.equivalence_holds = false;
            report.counterexample = Some(format!(
                "x = {}: delta* = {cod}, tau(x) in B_- {w} B_+",
                group.format(x)
            ));
        }
        *report.element_strata.entry(w.clone()).or_insert(0) += 1;
        if keep_table {
            report.table.push(LangEntry {
                x: x.to_u32_rows(),
                tau: tau.to_u32_rows(),
                w,
            });
        }
    }
    for i in 0..b.chamber_count(Sign::Plus) {
        let c = Chamber::plus(i);
        let d = b.chamber_of(Sign::Minus, &theta(b.representative(c)));
        let w = b.codistance(d, c);
        report.cod.insert(w.clone());
        *report.strata.entry(w).or_insert(0) += 1;
    }
    Ok(report)
}
