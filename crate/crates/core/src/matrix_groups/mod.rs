//! `SL_n` over prime fields as a group with a twin BN-pair.
//!
//! `B_+` is upper triangular, `B_-` lower triangular, `T` diagonal and `N`
//! monomial. Root groups are the elementary subgroups `x_ij(t) = I + t E_ij`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::cartan::Gcm;
use crate::coxeter::{CoxeterElement, CoxeterSystem};
use crate::field::{is_prime, Fp, Scalar};
use crate::matrix::FpMatrix;

pub mod chambers;
pub mod decompose;
pub mod formula;
pub mod lang;
pub mod rgd;

pub use chambers::SlTwinBuilding;
pub use decompose::{birkhoff_decompose, bruhat_decompose, Decomposition};
pub use formula::{coproj_formula, coproj_formula_check, pi, rho_check, rho_w, ult_factor};
pub use lang::{flip_lang, transpose_inverse, LangReport};
pub use rgd::{rgd_axiom_check, RgdReport};

pub const MAX_PRIME: u32 = 13;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixGroupError {
    #[error("p = {0} is not a prime <= 13")]
    UnsupportedField(u32),
    #[error("degree n = {0} is not supported")]
    UnsupportedDegree(usize),
    #[error("matrix is not in SL_n: {0}")]
    NotInGroup(String),
    #[error("element is not in the big cell B_+B_-")]
    NotInBigCell,
    #[error("element lies in B_+ {found} B_-, not B_+ {expected} B_-")]
    WrongCell {
        expected: CoxeterElement,
        found: CoxeterElement,
    },
    #[error("l(ws) < l(w) for w = {w}, s = {s}")]
    LengthCondition { w: CoxeterElement, s: usize },
    #[error("automorphism does not swap B_+ and B_-: {0}")]
    NotSwapping(String),
    #[error("enumeration exceeds {0} elements")]
    TooLarge(usize),
    #[error(transparent)]
    Building(#[from] crate::building::BuildingError),
}

/// A root `e_i - e_j` of type `A_{n-1}`, stored as the pair `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Root {
        assert_ne!(i, j);
        Root { i, j }
    }

    pub fn simple(s: usize) -> Root {
        Root::new(s, s + 1)
    }

    pub fn is_positive(self) -> bool {
        self.i < self.j
    }

    pub fn negate(self) -> Root {
        Root::new(self.j, self.i)
    }

    /// Image under the simple reflection `s_k`.
    pub fn reflect(self, k: usize) -> Root {
        let t = |x: usize| {
            if x == k {
                k + 1
            } else if x == k + 1 {
                k
            } else {
                x
            }
        };
        Root::new(t(self.i), t(self.j))
    }

    pub fn vector(self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        v[self.i] = 1;
        v[self.j] = -1;
        v
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i + 1, self.j + 1)
    }
}

/// `SL_n(F_p)` with its standard twin BN-pair.
#[derive(Debug, Clone)]
pub struct SlGroup {
    n: usize,
    p: u32,
    system: CoxeterSystem,
}

impl SlGroup {
    pub fn new(n: usize, p: u32) -> Result<SlGroup, MatrixGroupError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(MatrixGroupError::UnsupportedField(p));
        }
        if !(2..=6).contains(&n) {
            return Err(MatrixGroupError::UnsupportedDegree(n));
        }
        Ok(SlGroup {
            n,
            p,
            system: CoxeterSystem::from_gcm(Gcm::type_a(n - 1)),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn name(&self) -> String {
        format!("SL_{}(F_{})", self.n, self.p)
    }

    pub fn scalar(&self, v: i64) -> Fp {
        Fp::new(v, self.p)
    }

    pub fn identity(&self) -> FpMatrix {
        FpMatrix::identity(self.n, &Fp::one(self.p))
    }

    pub fn from_i64_rows(&self, rows: &[Vec<i64>]) -> Result<FpMatrix, MatrixGroupError> {
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
            return Err(MatrixGroupError::NotInGroup(format!(
                "expected a {0}x{0} matrix",
                self.n
            )));
        }
        let g = FpMatrix::from_i64_rows(rows, self.p);
        self.check(&g)?;
        Ok(g)
    }

    pub fn check(&self, g: &FpMatrix) -> Result<(), MatrixGroupError> {
        if g.rows() != self.n || !g.is_square() {
            return Err(MatrixGroupError::NotInGroup(format!(
                "expected a {0}x{0} matrix",
                self.n
            )));
        }
        if g.modulus() != self.p {
            return Err(MatrixGroupError::NotInGroup(format!("entries are not in F_{}", self.p)));
        }
        let det = g.determinant();
        if det != Fp::one(self.p) {
            return Err(MatrixGroupError::NotInGroup(format!("determinant {det}")));
        }
        Ok(())
    }

    pub fn inverse(&self, g: &FpMatrix) -> FpMatrix {
        g.inverse().expect("group elements are invertible")
    }

    /// `|SL_n(F_p)|`.
    pub fn order(&self) -> u128 {
        let q = self.p as u128;
        let mut order = q.pow((self.n * (self.n - 1) / 2) as u32);
        for k in 2..=self.n as u32 {
            order *= q.pow(k) - 1;
        }
        order
    }

    /// `|G/B_+|`.
    pub fn chamber_count(&self) -> u128 {
        let q = self.p as u128;
        (1..=self.n as u32).map(|k| (q.pow(k) - 1) / (q - 1)).product()
    }

    /// Elementary root element `x_ij(t)`.
    pub fn root_element(&self, a: Root, t: Fp) -> FpMatrix {
        let mut m = self.identity();
        m[(a.i, a.j)] = t;
        m
    }

    pub fn roots(&self) -> Vec<Root> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    out.push(Root::new(i, j));
                }
            }
        }
        out
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        self.roots().into_iter().filter(|a| a.is_positive()).collect()
    }

    /// `s_i` as the identity with block `[[0,1],[-1,0]]` at `(i, i+1)`.
    pub fn s_hat(&self, i: usize) -> FpMatrix {
        let mut m = self.identity();
        let z = Fp::zero(self.p);
        m[(i, i)] = z;
        m[(i + 1, i + 1)] = z;
        m[(i, i + 1)] = Fp::one(self.p);
        m[(i + 1, i)] = Fp::new(-1, self.p);
        m
    }

    /// Product of the `s_hat` along the normal-form word of `w`.
    pub fn w_hat(&self, w: &CoxeterElement) -> FpMatrix {
        w.word().iter().fold(self.identity(), |acc, &s| acc.mul(&self.s_hat(s)))
    }

    /// `diag(d)`; `None` unless the product of `d` is one.
    pub fn torus_element(&self, d: &[Fp]) -> Option<FpMatrix> {
        let mut m = self.identity();
        let mut det = Fp::one(self.p);
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = *x;
            det = det.mul(x);
        }
        (d.len() == self.n && det == Fp::one(self.p)).then_some(m)
    }

    pub fn torus(&self) -> Vec<FpMatrix> {
        let units: Vec<Fp> = Fp::units(self.p).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.n - 1];
        loop {
            let mut d: Vec<Fp> = idx.iter().map(|&k| units[k]).collect();
            let prod = d.iter().fold(Fp::one(self.p), |a, x| a.mul(x));
            d.push(prod.inv().expect("unit"));
            out.push(self.torus_element(&d).expect("det one"));
            if !odometer(&mut idx, units.len()) {
                break;
            }
        }
        out
    }

    /// Unipotent radical `U_+` (or `U_-`) listed by its entries.
    pub fn unipotent(&self, positive: bool) -> Vec<FpMatrix> {
        let slots: Vec<Root> = self
            .roots()
            .into_iter()
            .filter(|a| a.is_positive() == positive)
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; slots.len()];
        loop {
            let mut m = self.identity();
            for (a, &v) in slots.iter().zip(&idx) {
                m[(a.i, a.j)] = self.scalar(v as i64);
            }
            out.push(m);
            if !odometer(&mut idx, self.p as usize) {
                break;
            }
        }
        out
    }

    /// `B_+ = T U_+` or `B_- = T U_-`.
    pub fn borel(&self, positive: bool) -> Vec<FpMatrix> {
        let u = self.unipotent(positive);
        let mut out = Vec::new();
        for t in self.torus() {
            for x in &u {
                out.push(t.mul(x));
            }
        }
        out
    }

    /// All of `SL_n(F_p)` by brute force over matrices.
    pub fn elements(&self, limit: usize) -> Result<Vec<FpMatrix>, MatrixGroupError> {
        if self.order() > limit as u128 {
            return Err(MatrixGroupError::TooLarge(limit));
        }
        let cells = self.n * self.n;
        let mut idx = vec![0usize; cells];
        let mut out = Vec::new();
        loop {
            let rows: Vec<Vec<i64>> = idx
                .chunks(self.n)
                .map(|r| r.iter().map(|&v| v as i64).collect())
                .collect();
            let g = FpMatrix::from_i64_rows(&rows, self.p);
            if g.determinant() == Fp::one(self.p) {
                out.push(g);
            }
            if !odometer(&mut idx, self.p as usize) {
                break;
            }
        }
        Ok(out)
    }

    /// `sigma` with `w_hat` supported on `(sigma(j), j)`.
    pub fn permutation(&self, w: &CoxeterElement) -> Vec<usize> {
        let mut sigma: Vec<usize> = (0..self.n).collect();
        for s in w.word() {
            sigma.swap(s, s + 1);
        }
        sigma
    }

    pub fn element_of_permutation(&self, sigma: &[usize]) -> CoxeterElement {
        let mut sigma = sigma.to_vec();
        let mut word = Vec::new();
        while let Some(i) = (0..self.n - 1).find(|&i| sigma[i] > sigma[i + 1]) {
            sigma.swap(i, i + 1);
            word.push(i);
        }
        word.reverse();
        self.system.normal_form(&word).expect("valid word")
    }

    /// Signed rows for display.
    pub fn format(&self, g: &FpMatrix) -> String {
        let rows: Vec<String> = g
            .row_vecs()
            .iter()
            .map(|r| {
                let entries: Vec<String> = r.iter().map(|x| x.signed().to_string()).collect();
                format!("[{}]", entries.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Advance a mixed-radix counter; false once it wraps around.
fn odometer(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Subgroup generated by `gens`, by breadth-first closure.
pub fn closure(identity: &FpMatrix, gens: &[FpMatrix], limit: usize) -> Result<HashSet<FpMatrix>, MatrixGroupError> {
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity.clone()]);
    while let Some(g) = queue.pop_front() {
        for x in gens {
            let h = g.mul(x);
            if !seen.contains(&h) {
                if seen.len() >= limit {
                    return Err(MatrixGroupError::TooLarge(limit));
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_enumeration() {
        let g = SlGroup::new(2, 3).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.elements(1000).unwrap().len(), 24);
        assert_eq!(g.chamber_count(), 4);
        let g = SlGroup::new(3, 2).unwrap();
        assert_eq!(g.order(), 168);
        assert_eq!(g.chamber_count(), 21);
        assert_eq!(g.borel(true).len(), 8);
        assert!(SlGroup::new(2, 4).is_err());
    }

    #[test]
    fn permutations_round_trip() {
        let g = SlGroup::new(4, 2).unwrap();
        for w in g.system().elements_upto(6) {
            let sigma = g.permutation(&w);
            assert_eq!(g.element_of_permutation(&sigma), w);
            let m = g.w_hat(&w);
            for (j, &i) in sigma.iter().enumerate() {
                assert!(!m[(i, j)].is_zero());
            }
        }
    }
}
