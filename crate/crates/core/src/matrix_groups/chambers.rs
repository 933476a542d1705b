//! The twin building `(G/B_+, G/B_-)` with canonical coset representatives.

use std::collections::{HashMap, VecDeque};

use crate::building::{Chamber, Sign, TableBuilding, TwinBuildingModel};
use crate::coxeter::{CoxeterElement, CoxeterSystem};
use crate::field::{Fp, Scalar};
use crate::matrix::FpMatrix;

use super::{MatrixGroupError, Root, SlGroup};

pub const MAX_CHAMBERS: usize = 1000;

impl SlGroup {
    /// Column-reduced representative of `g B_+`.
    ///
    /// Column `j` is cleared at the pivot rows of the earlier columns; its
    /// pivot is the last nonzero entry, scaled to one. The last column is
    /// then rescaled to make the determinant one.
    pub fn canonical_plus(&self, g: &FpMatrix) -> FpMatrix {
        let n = self.n();
        let mut m = g.clone();
        let mut pivots: Vec<usize> = Vec::with_capacity(n);
        for j in 0..n {
            for (k, &r) in pivots.iter().enumerate() {
                let c = m[(r, j)];
                if !c.is_zero() {
                    m.add_col_multiple(j, k, &c.neg());
                }
            }
            let r = (0..n).rev().find(|&i| !m[(i, j)].is_zero()).expect("invertible");
            m.scale_col(j, &m[(r, j)].inv().expect("nonzero"));
            pivots.push(r);
        }
        let det = m.determinant();
        m.scale_col(n - 1, &det.inv().expect("invertible"));
        m
    }

    /// Representative of `h B_-`, via `B_- = w0 B_+ w0^-1`.
    pub fn canonical_minus(&self, h: &FpMatrix) -> FpMatrix {
        let w0 = self.w0_hat();
        self.canonical_plus(&h.mul(&w0)).mul(&self.inverse(&w0))
    }

    pub fn canonical(&self, sign: Sign, g: &FpMatrix) -> FpMatrix {
        match sign {
            Sign::Plus => self.canonical_plus(g),
            Sign::Minus => self.canonical_minus(g),
        }
    }

    pub fn w0_hat(&self) -> FpMatrix {
        self.w_hat(&self.system().longest_element().expect("finite Weyl group"))
    }

    /// `delta_sign(gB, hB)`.
    pub fn distance(&self, sign: Sign, g: &FpMatrix, h: &FpMatrix) -> CoxeterElement {
        let x = self.inverse(g).mul(h);
        match sign {
            Sign::Plus => self.cell_plus_plus(&x),
            Sign::Minus => self.cell_minus_minus(&x),
        }
    }

    /// `delta*(gB_sign, hB_-sign)`.
    pub fn codistance(&self, sign: Sign, g: &FpMatrix, h: &FpMatrix) -> CoxeterElement {
        let x = self.inverse(g).mul(h);
        match sign {
            Sign::Plus => self.cell_plus_minus(&x),
            Sign::Minus => self.cell_minus_plus(&x),
        }
    }

    /// Canonical representatives of every chamber of one half, in
    /// breadth-first order from the standard Borel subgroup.
    pub fn enumerate_chambers(&self, sign: Sign) -> Vec<FpMatrix> {
        let start = self.canonical(sign, &self.identity());
        let mut seen = HashMap::from([(start.clone(), 0usize)]);
        let mut order = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        let steps: Vec<FpMatrix> = (0..self.n() - 1)
            .flat_map(|s| {
                let root = match sign {
                    Sign::Plus => Root::simple(s),
                    Sign::Minus => Root::simple(s).negate(),
                };
                Fp::elements(self.p()).map(move |t| (s, root, t))
            })
            .map(|(s, root, t)| self.root_element(root, t).mul(&self.s_hat(s)))
            .collect();
        while let Some(g) = queue.pop_front() {
            for x in &steps {
                let h = self.canonical(sign, &g.mul(x));
                if !seen.contains_key(&h) {
                    seen.insert(h.clone(), order.len());
                    order.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        order
    }
}

/// Computes every entry from matrices; tabulated once by [`SlTwinBuilding`].
struct MatrixModel<'a> {
    group: &'a SlGroup,
    reps: &'a [Vec<FpMatrix>; 2],
}

impl TwinBuildingModel for MatrixModel<'_> {
    fn name(&self) -> String {
        self.group.name()
    }

    fn system(&self) -> &CoxeterSystem {
        self.group.system()
    }

    fn chamber_count(&self, sign: Sign) -> usize {
        self.reps[sign.slot()].len()
    }

    fn distance(&self, sign: Sign, x: usize, y: usize) -> CoxeterElement {
        let r = &self.reps[sign.slot()];
        self.group.distance(sign, &r[x], &r[y])
    }

    fn codistance(&self, x: Chamber, y: Chamber) -> CoxeterElement {
        assert_ne!(x.sign, y.sign);
        self.group.codistance(
            x.sign,
            &self.reps[x.sign.slot()][x.index],
            &self.reps[y.sign.slot()][y.index],
        )
    }

    fn label(&self, c: Chamber) -> String {
        format!("{}{}", c.sign, self.group.format(&self.reps[c.sign.slot()][c.index]))
    }
}

/// The twin building of `SL_n(F_p)`, fully tabulated.
#[derive(Debug, Clone)]
pub struct SlTwinBuilding {
    group: SlGroup,
    reps: [Vec<FpMatrix>; 2],
    index: [HashMap<FpMatrix, usize>; 2],
    table: TableBuilding,
}

impl SlTwinBuilding {
    pub fn new(group: SlGroup) -> Result<SlTwinBuilding, MatrixGroupError> {
        if group.chamber_count() > MAX_CHAMBERS as u128 {
            return Err(MatrixGroupError::TooLarge(MAX_CHAMBERS));
        }
        let reps = [
            group.enumerate_chambers(Sign::Plus),
            group.enumerate_chambers(Sign::Minus),
        ];
        debug_assert_eq!(reps[0].len() as u128, group.chamber_count());
        let index = [
            reps[0].iter().cloned().enumerate().map(|(i, g)| (g, i)).collect(),
            reps[1].iter().cloned().enumerate().map(|(i, g)| (g, i)).collect(),
        ];
        let table = TableBuilding::from_model(&MatrixModel {
            group: &group,
            reps: &reps,
        });
        Ok(SlTwinBuilding {
            group,
            reps,
            index,
            table,
        })
    }

    pub fn group(&self) -> &SlGroup {
        &self.group
    }

    pub fn table(&self) -> &TableBuilding {
        &self.table
    }

    pub fn representative(&self, c: Chamber) -> &FpMatrix {
        &self.reps[c.sign.slot()][c.index]
    }

    /// The chamber `g B_sign`.
    pub fn chamber_of(&self, sign: Sign, g: &FpMatrix) -> Chamber {
        let canon = self.group.canonical(sign, g);
        Chamber::new(sign, self.index[sign.slot()][&canon])
    }
}

impl TwinBuildingModel for SlTwinBuilding {
    fn name(&self) -> String {
        self.table.name()
    }

    fn system(&self) -> &CoxeterSystem {
        self.table.system()
    }

    fn chamber_count(&self, sign: Sign) -> usize {
        self.table.chamber_count(sign)
    }

    fn distance(&self, sign: Sign, x: usize, y: usize) -> CoxeterElement {
        self.table.distance(sign, x, y)
    }

    fn codistance(&self, x: Chamber, y: Chamber) -> CoxeterElement {
        self.table.codistance(x, y)
    }

    fn label(&self, c: Chamber) -> String {
        self.table.label(c)
    }

    fn panel(&self, c: Chamber, s: usize) -> Vec<usize> {
        self.table.panel(c, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::axioms::check_axioms;
    use crate::building::census::schubert_census;

    #[test]
    fn sl2_f2_codistances() {
        let b = SlTwinBuilding::new(SlGroup::new(2, 2).unwrap()).unwrap();
        assert_eq!(b.chamber_count(Sign::Plus), 3);
        assert!(b.codistance(Chamber::plus(0), Chamber::minus(0)).is_identity());
        for x in 0..3 {
            let opp = (0..3)
                .filter(|&y| b.codistance(Chamber::plus(x), Chamber::minus(y)).is_identity())
                .count();
            assert_eq!(opp, 2);
        }
    }

    #[test]
    fn sl3_f2_is_a_twin_building() {
        let b = SlTwinBuilding::new(SlGroup::new(3, 2).unwrap()).unwrap();
        assert_eq!(b.chamber_count(Sign::Minus), 21);
        assert!(check_axioms(&b).unwrap().passed);
        let census = schubert_census(&b, Chamber::plus(0), None).unwrap();
        let mut sizes: Vec<usize> = census.schubert.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 2, 4, 4, 8]);
    }

    #[test]
    fn canonical_forms_are_coset_invariants() {
        let g = SlGroup::new(3, 3).unwrap();
        let bp = g.borel(true);
        let bm = g.borel(false);
        for x in g.elements(10_000).unwrap().iter().step_by(37) {
            let cp = g.canonical_plus(x);
            let cm = g.canonical_minus(x);
            for (u, v) in bp.iter().zip(&bm).step_by(5) {
                assert_eq!(g.canonical_plus(&x.mul(u)), cp);
                assert_eq!(g.canonical_minus(&x.mul(v)), cm);
            }
        }
    }

    #[test]
    fn odd_characteristic_halves_have_no_repeats() {
        for (n, p, count) in [(2, 3, 4), (2, 5, 6), (3, 3, 52)] {
            let b = SlTwinBuilding::new(SlGroup::new(n, p).unwrap()).unwrap();
            for sign in Sign::both() {
                assert_eq!(b.chamber_count(sign), count, "SL_{n}(F_{p}) {sign:?}");
            }
            assert!(check_axioms(&b).unwrap().passed);
        }
    }
}
