//! Bruhat and Birkhoff decompositions.

use crate::coxeter::CoxeterElement;
use crate::field::Scalar;
use crate::matrix::FpMatrix;

use super::SlGroup;

/// `g = left * w_hat * right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub w: CoxeterElement,
    pub left: FpMatrix,
    pub right: FpMatrix,
}

/// Row and column operations reducing `g` to a monomial matrix.
///
/// Columns are processed left to right. The pivot is the bottom-most
/// (`top = false`) or top-most (`top = true`) nonzero entry; the rest of its
/// column is cleared by row operations, the rest of its row by column
/// operations from the left. Returns `(L, m, R)` with `m = L g R`.
fn eliminate(g: &FpMatrix, top: bool) -> (FpMatrix, FpMatrix, FpMatrix) {
    let n = g.rows();
    let one = g[(0, 0)].one_like();
    let mut m = g.clone();
    let mut l = FpMatrix::identity(n, &one);
    let mut r = FpMatrix::identity(n, &one);
    for j in 0..n {
        let rows: Vec<usize> = if top { (0..n).collect() } else { (0..n).rev().collect() };
        let i = rows
            .into_iter()
            .find(|&i| !m[(i, j)].is_zero())
            .expect("invertible matrix has a pivot in every column");
        let inv = m[(i, j)].inv().expect("nonzero pivot");
        for k in 0..n {
            if k == i || m[(k, j)].is_zero() {
                continue;
            }
            let c = m[(k, j)].mul(&inv).neg();
            m.add_row_multiple(k, i, &c);
            l.add_row_multiple(k, i, &c);
        }
        for k in j + 1..n {
            if m[(i, k)].is_zero() {
                continue;
            }
            let c = m[(i, k)].mul(&inv).neg();
            m.add_col_multiple(k, j, &c);
            r.add_col_multiple(k, j, &c);
        }
    }
    (l, m, r)
}

fn support(m: &FpMatrix) -> Vec<usize> {
    (0..m.cols())
        .map(|j| (0..m.rows()).find(|&i| !m[(i, j)].is_zero()).expect("monomial"))
        .collect()
}

/// Permutation of the double coset from submatrix ranks.
///
/// Bruhat (`B_+ w B_+`) uses lower-left submatrices, Birkhoff (`B_- w B_+`)
/// upper-left ones.
pub fn rank_permutation(g: &FpMatrix, birkhoff: bool) -> Vec<usize> {
    let n = g.rows();
    let rank = |i: usize, j: usize| -> usize {
        if j == 0 {
            return 0;
        }
        if birkhoff {
            if i == 0 {
                0
            } else {
                g.submatrix(0..i, 0..j).rank()
            }
        } else if i == n {
            0
        } else {
            g.submatrix(i..n, 0..j).rank()
        }
    };
    (0..n)
        .map(|j| {
            if birkhoff {
                n - (1..=n).map(|i| rank(i, j + 1) - rank(i, j)).sum::<usize>()
            } else {
                (1..n).map(|i| rank(i, j + 1) - rank(i, j)).sum()
            }
        })
        .collect()
}

fn decompose(group: &SlGroup, g: &FpMatrix, birkhoff: bool) -> Decomposition {
    let (l, m, r) = eliminate(g, birkhoff);
    let sigma = support(&m);
    assert_eq!(
        sigma,
        rank_permutation(g, birkhoff),
        "rank criterion disagrees with elimination"
    );
    let w = group.element_of_permutation(&sigma);
    let w_hat = group.w_hat(&w);
    let t = group.inverse(&w_hat).mul(&m);
    assert!(t.is_diagonal());
    let left = group.inverse(&l);
    let right = t.mul(&group.inverse(&r));
    debug_assert_eq!(&left.mul(&w_hat).mul(&right), g);
    Decomposition { w, left, right }
}

/// `g = u1 w_hat u2` with `u1, u2` in `B_+`.
pub fn bruhat_decompose(group: &SlGroup, g: &FpMatrix) -> Decomposition {
    decompose(group, g, false)
}

/// `g = b w_hat u` with `b` in `B_-` and `u` in `B_+`.
pub fn birkhoff_decompose(group: &SlGroup, g: &FpMatrix) -> Decomposition {
    decompose(group, g, true)
}

impl SlGroup {
    /// `w` with `g` in `B_+ w B_+`.
    pub fn cell_plus_plus(&self, g: &FpMatrix) -> CoxeterElement {
        bruhat_decompose(self, g).w
    }

    /// `w` with `g` in `B_- w B_-`.
    pub fn cell_minus_minus(&self, g: &FpMatrix) -> CoxeterElement {
        let w0 = self.system().longest_element().expect("finite Weyl group");
        let w0_hat = self.w_hat(&w0);
        let conj = self.inverse(&w0_hat).mul(g).mul(&w0_hat);
        let v = self.cell_plus_plus(&conj);
        let sys = self.system();
        sys.multiply(&sys.multiply(&w0, &v), &w0)
    }

    /// `w` with `g` in `B_- w B_+`.
    pub fn cell_minus_plus(&self, g: &FpMatrix) -> CoxeterElement {
        birkhoff_decompose(self, g).w
    }

    /// `w` with `g` in `B_+ w B_-`.
    pub fn cell_plus_minus(&self, g: &FpMatrix) -> CoxeterElement {
        let v = self.cell_minus_plus(&self.inverse(g));
        self.system().inverse(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let g = SlGroup::new(3, 2).unwrap();
        assert!(bruhat_decompose(&g, &g.identity()).w.is_identity());
        let w0 = g.system().longest_element().unwrap();
        let anti = g.from_i64_rows(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(birkhoff_decompose(&g, &anti).w, w0);
        let lower = g.from_i64_rows(&[vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        assert!(birkhoff_decompose(&g, &lower).w.is_identity());
        assert_eq!(bruhat_decompose(&g, &lower).w, w0);
    }

    #[test]
    fn reconstruction_on_sl3_f3() {
        let g = SlGroup::new(3, 3).unwrap();
        for x in g.elements(10_000).unwrap() {
            for birkhoff in [false, true] {
                let d = decompose(&g, &x, birkhoff);
                assert_eq!(d.left.mul(&g.w_hat(&d.w)).mul(&d.right), x);
                assert!(d.right.is_upper_triangular());
                if birkhoff {
                    assert!(d.left.is_lower_triangular());
                } else {
                    assert!(d.left.is_upper_triangular());
                }
            }
        }
    }
}
