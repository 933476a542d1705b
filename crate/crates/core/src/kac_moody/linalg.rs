//! Exact rational linear algebra on sparse and dense vectors.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

/// Sparse vector over the global basis.
pub type Vector = BTreeMap<usize, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn add_scaled(acc: &mut Vector, v: &Vector, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(Q::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

pub fn scaled(v: &Vector, c: &Q) -> Vector {
    let mut out = Vector::new();
    add_scaled(&mut out, v, c);
    out
}

pub fn unit(k: usize) -> Vector {
    Vector::from([(k, Q::one())])
}

/// Incremental row echelon form that remembers how each reduced row is
/// combined from the accepted input rows.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Q>, Vec<Q>)>,
    accepted: usize,
}

pub enum Reduced {
    /// The row was independent and became accepted row number `.0`.
    New(usize),
    /// Coefficients over the accepted rows.
    Dependent(Vec<Q>),
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.accepted
    }

    fn reduce(&self, v: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let mut r = v.to_vec();
        let mut comb = vec![Q::zero(); self.accepted];
        for (p, row, c) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = &r[*p] / &row[*p];
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &f * y;
            }
            for (x, y) in comb.iter_mut().zip(c) {
                *x += &f * y;
            }
        }
        (r, comb)
    }

    /// Coefficients of `v` over the accepted rows, if it is in their span.
    pub fn solve(&self, v: &[Q]) -> Option<Vec<Q>> {
        let (r, comb) = self.reduce(v);
        r.iter().all(Zero::is_zero).then_some(comb)
    }

    pub fn insert(&mut self, v: &[Q]) -> Reduced {
        let (r, comb) = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => Reduced::Dependent(comb),
            Some(p) => {
                let k = self.accepted;
                self.accepted += 1;
                let mut c: Vec<Q> = comb.into_iter().map(|x| -x).collect();
                c.push(Q::one());
                for (_, _, old) in self.rows.iter_mut() {
                    old.push(Q::zero());
                }
                self.rows.push((p, r, c));
                Reduced::New(k)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_tracks_combinations() {
        let mut e = Echelon::new();
        assert!(matches!(e.insert(&[q(1), q(2)]), Reduced::New(0)));
        assert!(matches!(e.insert(&[q(0), q(1)]), Reduced::New(1)));
        match e.insert(&[q(2), q(7)]) {
            Reduced::Dependent(c) => assert_eq!(c, vec![q(2), q(3)]),
            Reduced::New(_) => panic!("dependent"),
        }
    }
}
