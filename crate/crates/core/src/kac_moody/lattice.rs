//! Integral form of the window: the smallest lattice containing the
//! Chevalley generators and closed under the divided powers
//! `(ad e_i)^k / k!` and `(ad f_i)^k / k!`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::algebra::{Generator, KmAlgebra};
use super::linalg::{add_scaled, q, scaled, unit, Vector, Q};
use super::KmError;

/// Hermite normal form of the row lattice; zero rows dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let Some(cols) = m.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut r = 0;
    for c in 0..cols {
        loop {
            let pivot = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].div_floor(&m[r][c]);
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let f = m[i][c].div_floor(&m[r][c]);
                if f.is_zero() {
                    continue;
                }
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

fn rational_hnf(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let d = rows.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| (x * Q::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    hnf(&ints)
        .into_iter()
        .map(|r| r.into_iter().map(|x| Q::new(x, d.clone())).collect())
        .collect()
}

/// Coordinates of `v` over `rows` (a basis in echelon form), if in the span.
fn coordinates(rows: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let mut r = v.to_vec();
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let p = row.iter().position(|x| !x.is_zero())?;
        let f = &r[p] / &row[p];
        for (x, y) in r.iter_mut().zip(row) {
            *x -= &f * y;
        }
        out.push(f);
    }
    r.iter().all(Zero::is_zero).then_some(out)
}

#[derive(Debug, Clone)]
struct Component {
    indices: Vec<usize>,
    rows: Vec<Vec<Q>>,
}

#[derive(Debug, Clone)]
pub struct IntegralForm {
    comps: BTreeMap<Vec<i64>, Component>,
    /// Integral basis in the global order, as window vectors.
    basis: Vec<Vector>,
    /// Basis index ranges per degree.
    ranges: BTreeMap<Vec<i64>, (usize, usize)>,
}

fn divided_powers(alg: &KmAlgebra, g: Generator, x: &Vector) -> Vec<Vector> {
    let mut out = Vec::new();
    let mut y = x.clone();
    for k in 1.. {
        let mut next = Vector::new();
        for (b, c) in &y {
            if alg.is_boundary(*b) {
                continue;
            }
            let image = alg.ad_generator(g, *b).expect("window vector");
            add_scaled(&mut next, &image, c);
        }
        next.retain(|b, _| !alg.is_boundary(*b));
        y = scaled(&next, &Q::new(1.into(), k.into()));
        if y.is_empty() {
            break;
        }
        out.push(y.clone());
    }
    out
}

impl IntegralForm {
    pub fn new(alg: &KmAlgebra) -> Result<IntegralForm, KmError> {
        let n = alg.rank();
        let mut comps: BTreeMap<Vec<i64>, Component> = BTreeMap::new();
        let mut queue: Vec<Vector> = Vec::new();
        for i in 0..n {
            for g in [Generator::E(i), Generator::F(i), Generator::H(i)] {
                queue.push(unit(alg.generator(g)));
            }
        }
        while let Some(v) = queue.pop() {
            let Some((&first, _)) = v.iter().next() else { continue };
            let degree = alg.degree(first);
            let comp = comps.entry(degree.clone()).or_insert_with(|| Component {
                indices: alg.component(&degree),
                rows: Vec::new(),
            });
            let dense: Vec<Q> = comp
                .indices
                .iter()
                .map(|k| v.get(k).cloned().unwrap_or_else(Q::zero))
                .collect();
            if let Some(c) = coordinates(&comp.rows, &dense) {
                if c.iter().all(|x| x.is_integer()) {
                    continue;
                }
            }
            let mut rows = comp.rows.clone();
            rows.push(dense);
            let new_rows = rational_hnf(&rows);
            let added: Vec<Vector> = new_rows
                .iter()
                .map(|r| {
                    comp.indices
                        .iter()
                        .zip(r)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (*k, x.clone()))
                        .collect()
                })
                .collect();
            comp.rows = new_rows;
            for x in added {
                for i in 0..n {
                    for g in [Generator::E(i), Generator::F(i)] {
                        queue.extend(divided_powers(alg, g, &x));
                    }
                }
            }
            if comps.values().map(|c| c.rows.len()).sum::<usize>() > alg.dim() {
                return Err(KmError::WindowTooLarge("integral form exceeds the window".into()));
            }
        }
        let mut order: Vec<(&Vec<i64>, &Component)> = comps.iter().collect();
        order.sort_by_key(|(_, c)| c.indices.first().copied());
        let mut basis = Vec::new();
        let mut ranges = BTreeMap::new();
        for (degree, c) in order {
            let start = basis.len();
            for r in &c.rows {
                basis.push(
                    c.indices
                        .iter()
                        .zip(r)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (*k, x.clone()))
                        .collect(),
                );
            }
            ranges.insert(degree.clone(), (start, basis.len()));
        }
        Ok(IntegralForm { comps, basis, ranges })
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Integral basis vectors of the component of degree `alpha`.
    pub fn component(&self, alpha: &[i64]) -> Vec<Vector> {
        self.ranges
            .get(alpha)
            .map(|&(a, b)| self.basis[a..b].to_vec())
            .unwrap_or_default()
    }

    /// Coordinates of a window vector over the integral basis (rational in
    /// general). Boundary components are dropped.
    pub fn coordinates(&self, alg: &KmAlgebra, v: &Vector) -> Option<Vec<Q>> {
        let mut by_degree: BTreeMap<Vec<i64>, Vector> = BTreeMap::new();
        for (k, c) in v {
            if alg.is_boundary(*k) {
                continue;
            }
            by_degree.entry(alg.degree(*k)).or_default().insert(*k, c.clone());
        }
        let mut out = vec![Q::zero(); self.basis.len()];
        for (degree, part) in by_degree {
            let comp = self.comps.get(&degree)?;
            let dense: Vec<Q> = comp
                .indices
                .iter()
                .map(|k| part.get(k).cloned().unwrap_or_else(Q::zero))
                .collect();
            let c = coordinates(&comp.rows, &dense)?;
            let (start, _) = self.ranges[&degree];
            for (j, x) in c.into_iter().enumerate() {
                out[start + j] = x;
            }
        }
        Some(out)
    }

    /// Whether the Cartan part of the lattice is exactly `Z h_1 + ... + Z h_n`.
    pub fn cartan_is_standard(&self, alg: &KmAlgebra) -> bool {
        let n = alg.rank();
        let cartan = self.component(&vec![0; n]);
        let h: Vec<Vec<Q>> = cartan
            .iter()
            .map(|v| {
                (0..n)
                    .map(|i| v.get(&alg.generator(Generator::H(i))).cloned().unwrap_or_else(Q::zero))
                    .collect()
            })
            .collect();
        let identity: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect())
            .collect();
        h == identity
    }

    /// Matrix of `(ad g)^k / k!` on the integral basis, columns indexed by
    /// basis vectors, for `k = 1, 2, ...` until it vanishes.
    pub fn divided_power_matrices(&self, alg: &KmAlgebra, g: Generator) -> Vec<Vec<Vec<Q>>> {
        let images: Vec<Vec<Vector>> = self.basis.iter().map(|b| divided_powers(alg, g, b)).collect();
        let depth = images.iter().map(Vec::len).max().unwrap_or(0);
        (0..depth)
            .map(|k| {
                let cols: Vec<Vec<Q>> = images
                    .iter()
                    .map(|im| match im.get(k) {
                        Some(v) => self.coordinates(alg, v).expect("lattice is closed"),
                        None => vec![Q::zero(); self.basis.len()],
                    })
                    .collect();
                (0..self.basis.len())
                    .map(|i| cols.iter().map(|c| c[i].clone()).collect())
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Gcm;
    use crate::kac_moody::build_algebra;

    #[test]
    fn hnf_small() {
        let rows = vec![
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(3), BigInt::from(5)],
        ];
        let h = hnf(&rows);
        assert_eq!(
            h,
            vec![
                vec![BigInt::from(1), BigInt::from(1)],
                vec![BigInt::from(0), BigInt::from(2)]
            ]
        );
    }

    #[test]
    fn integral_forms() {
        for (name, h) in [("A1", 1), ("A2", 2), ("B2", 3), ("G2", 5), ("A1~", 4)] {
            let alg = build_algebra(&Gcm::named(name).unwrap(), h).unwrap();
            let form = IntegralForm::new(&alg).unwrap();
            assert_eq!(form.len(), alg.dim(), "{name}");
            assert!(form.cartan_is_standard(&alg), "{name}");
            for i in 0..alg.rank() {
                for g in [Generator::E(i), Generator::F(i)] {
                    for m in form.divided_power_matrices(&alg, g) {
                        assert!(m.iter().flatten().all(|x| x.is_integer()));
                    }
                }
            }
        }
    }
}
