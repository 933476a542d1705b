//! Big-cell factorization, `rho_w`, and the co-projection formula.

use crate::building::{Chamber, Sign, TwinBuildingModel};
use crate::coxeter::CoxeterElement;
use crate::field::Scalar;
use crate::matrix::FpMatrix;

use super::rgd::Check;
use super::{MatrixGroupError, SlGroup, SlTwinBuilding};

/// `x = u_+ t u_-`, as `(u_+, t, u_-)`.
///
/// Eliminates above the diagonal from the last column leftwards; a zero
/// pivot means a trailing principal minor vanishes.
pub fn ult_factor(group: &SlGroup, x: &FpMatrix) -> Result<(FpMatrix, FpMatrix, FpMatrix), MatrixGroupError> {
    let n = group.n();
    let mut m = x.clone();
    let mut u = group.identity();
    for j in (0..n).rev() {
        let Some(inv) = m[(j, j)].inv() else {
            return Err(MatrixGroupError::NotInBigCell);
        };
        for i in 0..j {
            if m[(i, j)].is_zero() {
                continue;
            }
            let c = m[(i, j)].mul(&inv).neg();
            m.add_row_multiple(i, j, &c);
            u.add_row_multiple(i, j, &c);
        }
    }
    let mut t = group.identity();
    for i in 0..n {
        t[(i, i)] = m[(i, i)];
    }
    let u_minus = group.inverse(&t).mul(&m);
    let u_plus = group.inverse(&u);
    debug_assert_eq!(&u_plus.mul(&t).mul(&u_minus), x);
    Ok((u_plus, t, u_minus))
}

/// `pi(u_+ t u_-) = t u_-`.
pub fn pi(group: &SlGroup, x: &FpMatrix) -> Result<FpMatrix, MatrixGroupError> {
    let (_, t, u_minus) = ult_factor(group, x)?;
    Ok(t.mul(&u_minus))
}

/// `rho_w(x) = pi(w_hat^-1 x)` for `x` in `B_+ w B_-`.
pub fn rho_w(group: &SlGroup, w: &CoxeterElement, x: &FpMatrix) -> Result<FpMatrix, MatrixGroupError> {
    rho_with(group, w, &group.w_hat(w), x)
}

/// [`rho_w`] with an arbitrary representative `w_hat` of `w`.
pub fn rho_with(
    group: &SlGroup,
    w: &CoxeterElement,
    w_hat: &FpMatrix,
    x: &FpMatrix,
) -> Result<FpMatrix, MatrixGroupError> {
    let found = group.cell_plus_minus(x);
    if &found != w {
        return Err(MatrixGroupError::WrongCell {
            expected: w.clone(),
            found,
        });
    }
    pi(group, &group.inverse(w_hat).mul(x))
}

/// `proj*_{P_s(hB_-)}(gB_+) = h rho_w(g^-1 h)^-1 s_hat B_-`, as a canonical
/// representative.
pub fn coproj_formula(group: &SlGroup, g: &FpMatrix, h: &FpMatrix, s: usize) -> Result<FpMatrix, MatrixGroupError> {
    let x = group.inverse(g).mul(h);
    let w = group.cell_plus_minus(&x);
    coproj_formula_with(group, g, h, s, &group.w_hat(&w), &group.s_hat(s))
}

/// [`coproj_formula`] with explicit representatives of `w` and `s`.
pub fn coproj_formula_with(
    group: &SlGroup,
    g: &FpMatrix,
    h: &FpMatrix,
    s: usize,
    w_hat: &FpMatrix,
    s_hat: &FpMatrix,
) -> Result<FpMatrix, MatrixGroupError> {
    let x = group.inverse(g).mul(h);
    let w = group.cell_plus_minus(&x);
    let sys = group.system();
    if sys.is_right_descent(&w, s) {
        return Err(MatrixGroupError::LengthCondition { w, s: s + 1 });
    }
    let rho = rho_with(group, &w, w_hat, &x)?;
    Ok(group.canonical_minus(&h.mul(&group.inverse(&rho)).mul(s_hat)))
}

impl SlTwinBuilding {
    /// The co-projection of `c_plus` onto `P_s(c_minus)` by the formula.
    pub fn coproj_formula(&self, c_plus: usize, c_minus: usize, s: usize) -> Result<Chamber, MatrixGroupError> {
        let g = self.representative(Chamber::plus(c_plus));
        let h = self.representative(Chamber::minus(c_minus));
        let m = coproj_formula(self.group(), g, h, s)?;
        let c = self.chamber_of(Sign::Minus, &m);
        debug_assert!(self.panel(Chamber::minus(c_minus), s).contains(&c.index));
        Ok(c)
    }
}

/// Compare the formula with the brute-force co-projection on every
/// `(c_+, c_-, s)` satisfying the length condition.
pub fn coproj_formula_check(b: &SlTwinBuilding) -> Result<Check, MatrixGroupError> {
    let mut check = Check::new();
    let rank = b.system().rank();
    for x in 0..b.chamber_count(Sign::Plus) {
        for y in 0..b.chamber_count(Sign::Minus) {
            for s in 0..rank {
                let c = match b.coproj_formula(x, y, s) {
                    Ok(c) => c,
                    Err(MatrixGroupError::LengthCondition { .. }) => continue,
                    Err(e) => return Err(e),
                };
                let brute = crate::building::projection::coproj_panel(b, Chamber::minus(y), s, Chamber::plus(x))?;
                check.record(c == brute, || {
                    format!(
                        "c+ = {}, c- = {}, s = {}: formula {} vs {}",
                        b.label(Chamber::plus(x)),
                        b.label(Chamber::minus(y)),
                        s + 1,
                        b.label(c),
                        b.label(brute)
                    )
                });
            }
        }
    }
    Ok(check)
}

/// `x` lies in `B_+ w_hat rho_w(x)` for every element, and `rho_1 = pi` on
/// the big cell.
pub fn rho_check(group: &SlGroup, limit: usize) -> Result<Check, MatrixGroupError> {
    let mut check = Check::new();
    for x in group.elements(limit)? {
        let w = group.cell_plus_minus(&x);
        let rho = rho_w(group, &w, &x)?;
        let b = x.mul(&group.inverse(&rho)).mul(&group.inverse(&group.w_hat(&w)));
        check.record(rho.is_lower_triangular() && b.is_upper_triangular(), || {
            format!("x = {} not in B+ w rho_w(x)", group.format(&x))
        });
        if w.is_identity() {
            check.record(pi(group, &x)? == rho, || format!("rho_1 != pi at {}", group.format(&x)));
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::projection::coproj_panel;

    #[test]
    fn ult_examples() {
        let g = SlGroup::new(2, 3).unwrap();
        let upper = g.from_i64_rows(&[vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(
            ult_factor(&g, &upper).unwrap(),
            (upper.clone(), g.identity(), g.identity())
        );
        let lower = g.from_i64_rows(&[vec![1, 0], vec![2, 1]]).unwrap();
        assert_eq!(
            ult_factor(&g, &lower).unwrap(),
            (g.identity(), g.identity(), lower.clone())
        );
        let s = g.from_i64_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(ult_factor(&g, &s), Err(MatrixGroupError::NotInBigCell));
    }

    #[test]
    fn rho_membership_sl2_f3() {
        let g = SlGroup::new(2, 3).unwrap();
        for x in g.elements(100).unwrap() {
            let w = g.cell_plus_minus(&x);
            let rho = rho_w(&g, &w, &x).unwrap();
            assert!(rho.is_lower_triangular());
            let b = x.mul(&g.inverse(&rho)).mul(&g.inverse(&g.w_hat(&w)));
            assert!(b.is_upper_triangular());
        }
    }

    #[test]
    fn formula_matches_brute_force_sl3_f2() {
        let b = SlTwinBuilding::new(SlGroup::new(3, 2).unwrap()).unwrap();
        let mut checked = 0;
        for x in 0..21 {
            for y in 0..21 {
                for s in 0..2 {
                    match b.coproj_formula(x, y, s) {
                        Ok(c) => {
                            let brute = coproj_panel(&b, Chamber::minus(y), s, Chamber::plus(x)).unwrap();
                            assert_eq!(c, brute);
                            checked += 1;
                        }
                        Err(MatrixGroupError::LengthCondition { .. }) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
        assert!(checked > 0);
    }
}
