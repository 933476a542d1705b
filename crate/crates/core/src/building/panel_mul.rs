//! Multiplication of punctured panels via four co-projections.

use serde::Serialize;

use super::projection::coproj_panel;
use super::{chambers, check_chamber, BuildingError, Chamber, Sign, TwinBuildingModel};
use crate::cartan::CoxeterLabel;

#[derive(Debug, Clone, Serialize)]
pub struct PanelMulTable {
    pub c_plus: usize,
    pub c_minus: usize,
    pub r: usize,
    pub s: usize,
    pub zero_plus: usize,
    pub zero_minus: usize,
    pub one_minus: usize,
    pub d_plus: usize,
    /// `P_r(c_+) \ {c_+}`.
    pub rows: Vec<usize>,
    /// `P_s(c_-) \ {c_-}`.
    pub cols: Vec<usize>,
    /// `table[i][j] = rows[i] * cols[j]`, as plus-chamber indices.
    pub table: Vec<Vec<usize>>,
}

impl PanelMulTable {
    fn col(&self, y: usize) -> usize {
        self.cols.iter().position(|&c| c == y).expect("column chamber")
    }

    /// `x * 1_- = x` for every row.
    pub fn right_identity(&self) -> bool {
        let j = self.col(self.one_minus);
        self.rows.iter().enumerate().all(|(i, &x)| self.table[i][j] == x)
    }

    /// `x * 0_- = 0_+` for every row.
    pub fn zero_law(&self) -> bool {
        let j = self.col(self.zero_minus);
        self.table.iter().all(|row| row[j] == self.zero_plus)
    }

    /// `x -> x * y` is a permutation of the punctured panel for `y != 0_-`.
    pub fn bijective(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, &y)| {
            if y == self.zero_minus {
                return true;
            }
            let mut image: Vec<usize> = self.table.iter().map(|row| row[j]).collect();
            image.sort_unstable();
            let mut rows = self.rows.clone();
            rows.sort_unstable();
            image == rows
        })
    }

    /// Every product stays in the punctured panel.
    pub fn closed(&self) -> bool {
        self.table.iter().flatten().all(|x| self.rows.contains(x))
    }
}

/// `x * y = proj*_{P_r(c+)} proj*_{P_r(y)} proj*_{P_r(d+)} proj*_{P_r(1-)} (x)`.
pub fn panel_mul<B: TwinBuildingModel + ?Sized>(
    b: &B,
    c_plus: usize,
    c_minus: usize,
    r: usize,
    s: usize,
    one_minus: usize,
) -> Result<PanelMulTable, BuildingError> {
    let cp = Chamber::plus(c_plus);
    let cm = Chamber::minus(c_minus);
    check_chamber(b, cp)?;
    check_chamber(b, cm)?;
    let rank = b.system().rank();
    if r >= rank || s >= rank {
        return Err(BuildingError::GeneratorOutOfRange(r.max(s)));
    }
    let m = b.system().matrix().m(r, s);
    if r == s || matches!(m, CoxeterLabel::Finite(k) if k < 3) {
        return Err(BuildingError::BadGeometry(format!("m_{}{} = {m} < 3", r + 1, s + 1)));
    }
    if !b.codistance(cp, cm).is_identity() {
        return Err(BuildingError::BadGeometry("base chambers are not opposite".into()));
    }
    let zero_plus = coproj_panel(b, cp, r, cm)?;
    let zero_minus = coproj_panel(b, cm, s, cp)?;
    let d_plus = coproj_panel(b, cp, s, cm)?;
    let cols: Vec<usize> = b.panel(cm, s).into_iter().filter(|&y| y != c_minus).collect();
    if !cols.contains(&one_minus) || one_minus == zero_minus.index {
        return Err(BuildingError::BadGeometry(format!(
            "1_- = {} must lie in P_s(c_-) minus {{c_-, 0_-}}",
            b.label(Chamber::minus(one_minus))
        )));
    }
    let rows: Vec<usize> = b.panel(cp, r).into_iter().filter(|&x| x != c_plus).collect();
    let one = Chamber::minus(one_minus);
    let mut table = Vec::with_capacity(rows.len());
    for &x in &rows {
        let a1 = coproj_panel(b, one, r, Chamber::plus(x))?;
        let a2 = coproj_panel(b, d_plus, r, a1)?;
        let mut row = Vec::with_capacity(cols.len());
        for &y in &cols {
            let a3 = coproj_panel(b, Chamber::minus(y), r, a2)?;
            let a4 = coproj_panel(b, cp, r, a3)?;
            row.push(a4.index);
        }
        table.push(row);
    }
    Ok(PanelMulTable {
        c_plus,
        c_minus,
        r,
        s,
        zero_plus: zero_plus.index,
        zero_minus: zero_minus.index,
        one_minus,
        d_plus: d_plus.index,
        rows,
        cols,
        table,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PanelMulReport {
    pub configurations: u64,
    pub right_identity: bool,
    pub zero_law: bool,
    pub bijective: bool,
    pub closed: bool,
    pub first_failure: Option<String>,
}

impl PanelMulReport {
    pub fn passed(&self) -> bool {
        self.configurations > 0 && self.right_identity && self.zero_law && self.bijective && self.closed
    }
}

/// Run [`panel_mul`] on every admissible configuration.
pub fn panel_mul_suite<B: TwinBuildingModel + ?Sized>(b: &B) -> Result<PanelMulReport, BuildingError> {
    use rayon::prelude::*;
    let rank = b.system().rank();
    let mut pairs = Vec::new();
    for r in 0..rank {
        for s in 0..rank {
            if r != s && !matches!(b.system().matrix().m(r, s), CoxeterLabel::Finite(k) if k < 3) {
                pairs.push((r, s));
            }
        }
    }
    let opposite: Vec<(usize, usize)> = chambers(b, Sign::Plus)
        .flat_map(|cp| {
            chambers(b, Sign::Minus)
                .filter(move |&cm| b.codistance(cp, cm).is_identity())
                .map(move |cm| (cp.index, cm.index))
        })
        .filter(|&(p, m)| b.is_interior(Chamber::plus(p)) && b.is_interior(Chamber::minus(m)))
        .collect();
    let results: Vec<Result<Vec<PanelMulTable>, BuildingError>> = opposite
        .par_iter()
        .map(|&(cp, cm)| {
            let mut out = Vec::new();
            for &(r, s) in &pairs {
                let zero_minus = coproj_panel(b, Chamber::minus(cm), s, Chamber::plus(cp))?;
                for one in b.panel(Chamber::minus(cm), s) {
                    if one == cm || one == zero_minus.index {
                        continue;
                    }
                    out.push(panel_mul(b, cp, cm, r, s, one)?);
                }
            }
            Ok(out)
        })
        .collect();
    let mut report = PanelMulReport {
        configurations: 0,
        right_identity: true,
        zero_law: true,
        bijective: true,
        closed: true,
        first_failure: None,
    };
    for tables in results {
        for t in tables? {
            report.configurations += 1;
            let checks = [
                ("identity", t.right_identity()),
                ("zero", t.zero_law()),
                ("bijective", t.bijective()),
                ("closed", t.closed()),
            ];
            report.right_identity &= checks[0].1;
            report.zero_law &= checks[1].1;
            report.bijective &= checks[2].1;
            report.closed &= checks[3].1;
            if let Some((name, _)) = checks.iter().find(|c| !c.1) {
                report.first_failure.get_or_insert_with(|| {
                    format!(
                        "{name} fails at c+ = {}, c- = {}, r = {}, s = {}, 1- = {}",
                        b.label(Chamber::plus(t.c_plus)),
                        b.label(Chamber::minus(t.c_minus)),
                        t.r + 1,
                        t.s + 1,
                        b.label(Chamber::minus(t.one_minus))
                    )
                });
            }
        }
    }
    Ok(report)
}
