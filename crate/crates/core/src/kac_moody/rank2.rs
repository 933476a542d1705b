//! Root group data of rank-2 finite types realized by adjoint unipotent
//! matrices over `F_p`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::cartan::Gcm;
use crate::field::Fp;
use crate::matrix::FpMatrix;
use crate::matrix_groups::rgd::{Check, MAX_EXHAUSTIVE_ORDER};
use crate::matrix_groups::{closure, MatrixGroupError};

use super::algebra::{build_algebra, KmAlgebra};
use super::lattice::IntegralForm;
use super::linalg::{q, scaled, Vector};
use super::operators::{divided_power_matrices, ModularAdjoint};
use super::roots::{height, positive_real_roots, reflect};
use super::KmError;

#[derive(Debug, Clone, Serialize)]
pub struct Rank2Report {
    pub gcm: Vec<Vec<i64>>,
    pub label: u32,
    pub p: u32,
    pub dim: usize,
    pub roots: Vec<Vec<i64>>,
    pub passed: bool,
    pub checks: BTreeMap<String, Check>,
}

impl Rank2Report {
    pub fn check(&self, name: &str) -> &Check {
        &self.checks[name]
    }
}

/// Adjoint Chevalley group of a rank-2 finite type over `F_p` with its root
/// groups.
#[derive(Debug, Clone)]
pub struct AdjointRank2 {
    pub alg: KmAlgebra,
    pub roots: Vec<Vec<i64>>,
    /// `D_k` per root: `x_beta(r) = 1 + sum_k r^k D_k`.
    powers: Vec<Vec<Vec<Vec<num_rational::BigRational>>>>,
    modular: ModularAdjoint,
    label: u32,
}

fn label_of(gcm: &Gcm) -> Result<u32, KmError> {
    if gcm.rank() != 2 {
        return Err(KmError::NotRankTwoFinite(format!("rank {}", gcm.rank())));
    }
    match gcm.entry(0, 1) * gcm.entry(1, 0) {
        1 => Ok(3),
        2 => Ok(4),
        3 => Ok(6),
        prod => Err(KmError::NotRankTwoFinite(format!("a12 a21 = {prod}"))),
    }
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// Predicted order of the adjoint Chevalley group.
pub fn adjoint_order(label: u32, p: u32) -> u128 {
    let p = p as u128;
    let pw = |e: u32| p.pow(e);
    match label {
        3 => pw(3) * (pw(2) - 1) * (pw(3) - 1) / if (p - 1) % 3 == 0 { 3 } else { 1 },
        4 => pw(4) * (pw(2) - 1) * (pw(4) - 1) / if p == 2 { 1 } else { 2 },
        6 => pw(6) * (pw(2) - 1) * (pw(6) - 1),
        _ => unreachable!("rank-2 finite labels"),
    }
}

impl AdjointRank2 {
    pub fn new(gcm: &Gcm, p: u32) -> Result<AdjointRank2, KmError> {
        let label = label_of(gcm)?;
        let positive = positive_real_roots(gcm, 16).coords();
        let top = positive.iter().map(|r| height(r)).max().unwrap_or(1) as usize;
        let alg = build_algebra(gcm, top)?;
        let form = IntegralForm::new(&alg)?;
        let modular = ModularAdjoint::new(&alg, &form, p)?;
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| neg(r)));
        let mut vectors: HashMap<Vec<i64>, Vector> = HashMap::new();
        for beta in &positive {
            let e = form.component(beta).pop().expect("real root space");
            let mut f = form.component(&neg(beta)).pop().expect("real root space");
            let h = alg.bracket(&e, &f)?;
            let he = alg.bracket(&h, &e)?;
            if he == scaled(&e, &q(-2)) {
                f = scaled(&f, &q(-1));
            } else if he != scaled(&e, &q(2)) {
                return Err(KmError::NotInvariant(format!(
                    "root vectors of {beta:?} do not span an sl_2-triple"
                )));
            }
            vectors.insert(beta.clone(), e);
            vectors.insert(neg(beta), f);
        }
        let powers = roots
            .iter()
            .map(|b| divided_power_matrices(&alg, &form, &vectors[b]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AdjointRank2 {
            alg,
            roots,
            powers,
            modular,
            label,
        })
    }

    pub fn p(&self) -> u32 {
        self.modular.p()
    }

    pub fn dim(&self) -> usize {
        self.modular.dim()
    }

    pub fn index(&self, beta: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == beta)
    }

    /// `x_beta(r)` on the integral basis.
    pub fn x(&self, beta: &[i64], r: Fp) -> FpMatrix {
        let k = self.index(beta).expect("root");
        self.modular
            .exponential(&self.powers[k], r)
            .expect("integral divided powers")
    }

    pub fn root_group(&self, beta: &[i64]) -> Vec<FpMatrix> {
        Fp::elements(self.p()).map(|r| self.x(beta, r)).collect()
    }

    /// Roots `i alpha + j beta` with `i, j >= 1`.
    pub fn open_interval(&self, a: &[i64], b: &[i64]) -> Vec<Vec<i64>> {
        self.roots
            .iter()
            .filter(|g| (1..=3).any(|i| (1..=3).any(|j| (0..2).all(|k| g[k] == i * a[k] + j * b[k]))))
            .cloned()
            .collect()
    }
}

fn commutator(a: &FpMatrix, b: &FpMatrix, ai: &FpMatrix, bi: &FpMatrix) -> FpMatrix {
    a.mul(b).mul(ai).mul(bi)
}

fn inverse(m: &FpMatrix) -> FpMatrix {
    m.inverse().expect("group element")
}

fn fmt_root(v: &[i64]) -> String {
    format!("({},{})", v[0], v[1])
}

/// Check RGD0-3, RGD1 on every pair `beta != +-alpha`, RGD2 via `mu`, and
/// that the adjoint image has the order of the adjoint group.
pub fn rank2_rgd_check(gcm: &Gcm, p: u32) -> Result<Rank2Report, KmError> {
    let g = AdjointRank2::new(gcm, p)?;
    let id = g.modular.identity();
    let mut checks = BTreeMap::new();
    let groups: HashMap<Vec<i64>, Vec<FpMatrix>> = g.roots.iter().map(|b| (b.clone(), g.root_group(b))).collect();

    let mut rgd0 = Check::new();
    for b in &g.roots {
        let distinct: HashSet<&FpMatrix> = groups[b].iter().collect();
        rgd0.record(distinct.len() == p as usize, || {
            format!("U_{} is not isomorphic to F_p", fmt_root(b))
        });
    }
    checks.insert("RGD0".to_string(), rgd0);

    let mut rgd1 = Check::new();
    let mut spans: HashMap<Vec<Vec<i64>>, HashSet<FpMatrix>> = HashMap::new();
    for a in &g.roots {
        for b in &g.roots {
            if a == b || *b == neg(a) {
                continue;
            }
            let interval = g.open_interval(a, b);
            let span = spans.entry(interval.clone()).or_insert_with(|| {
                let gens: Vec<FpMatrix> = interval.iter().map(|c| g.x(c, Fp::one(p))).collect();
                closure(&id, &gens, 1 << 20).expect("nilpotent subgroup")
            });
            for r in Fp::units(p) {
                for s in Fp::units(p) {
                    let (x, y) = (g.x(a, r), g.x(b, s));
                    let c = commutator(&x, &y, &inverse(&x), &inverse(&y));
                    rgd1.record(span.contains(&c), || {
                        format!(
                            "[x_{}({r}), x_{}({s})] outside <U_c : c in ({}, {})>",
                            fmt_root(a),
                            fmt_root(b),
                            fmt_root(a),
                            fmt_root(b)
                        )
                    });
                }
            }
        }
    }
    checks.insert("RGD1".to_string(), rgd1);

    let mut rgd2 = Check::new();
    for s in 0..2 {
        let alpha: Vec<i64> = (0..2).map(|k| i64::from(k == s)).collect();
        for r in Fp::units(p) {
            let u = g.x(&alpha, r);
            let found = Fp::units(p).any(|a| {
                Fp::units(p).any(|b| {
                    let m = g.x(&neg(&alpha), a).mul(&u).mul(&g.x(&neg(&alpha), b));
                    let mi = inverse(&m);
                    g.roots.iter().all(|beta| {
                        let image: HashSet<FpMatrix> = groups[beta].iter().map(|x| m.mul(x).mul(&mi)).collect();
                        let target: HashSet<FpMatrix> = groups[&reflect(gcm, s, beta)].iter().cloned().collect();
                        image == target
                    })
                })
            });
            rgd2.record(found, || format!("no mu for x_{}({r})", fmt_root(&alpha)));
        }
    }
    checks.insert("RGD2".to_string(), rgd2);

    let positive: Vec<Vec<i64>> = g.roots.iter().filter(|r| r.iter().all(|&x| x >= 0)).cloned().collect();
    let u_plus = closure(
        &id,
        &positive.iter().map(|b| g.x(b, Fp::one(p))).collect::<Vec<_>>(),
        1 << 20,
    )
    .map_err(|e: MatrixGroupError| KmError::WindowTooLarge(e.to_string()))?;
    let mut rgd3 = Check::new();
    for s in 0..2 {
        let alpha: Vec<i64> = (0..2).map(|k| -i64::from(k == s)).collect();
        rgd3.record(!u_plus.contains(&g.x(&alpha, Fp::one(p))), || {
            format!("U_{} lies in U_+", fmt_root(&alpha))
        });
    }
    let mut u_plus_order = Check::new();
    u_plus_order.record(u_plus.len() as u128 == (p as u128).pow(positive.len() as u32), || {
        format!("|U_+| = {}", u_plus.len())
    });
    checks.insert("RGD3".to_string(), rgd3);
    checks.insert("|U_+| = p^N".to_string(), u_plus_order);

    let expected = adjoint_order(g.label, p);
    let injective = if expected > MAX_EXHAUSTIVE_ORDER {
        Check::skip(&format!(
            "adjoint group order {expected} exceeds {MAX_EXHAUSTIVE_ORDER}"
        ))
    } else {
        let gens: Vec<FpMatrix> = (0..2)
            .flat_map(|s| {
                let alpha: Vec<i64> = (0..2).map(|k| i64::from(k == s)).collect();
                [g.x(&alpha, Fp::one(p)), g.x(&neg(&alpha), Fp::one(p))]
            })
            .collect();
        let mut c = Check::new();
        match closure(&id, &gens, expected as usize + 1) {
            Ok(all) => c.record(all.len() as u128 == expected, || {
                format!("adjoint image has order {}, expected |G/Z| = {expected}", all.len())
            }),
            Err(_) => c.record(false, || format!("adjoint image exceeds |G/Z| = {expected}")),
        }
        c
    };
    checks.insert("injective mod centre".to_string(), injective);

    let passed = checks.values().all(|c| c.passed);
    Ok(Rank2Report {
        gcm: gcm.rows(),
        label: g.label,
        p,
        dim: g.dim(),
        roots: g.roots.clone(),
        passed,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_commutator_is_a_root_element() {
        let gcm = Gcm::named("A2").unwrap();
        let g = AdjointRank2::new(&gcm, 2).unwrap();
        let one = Fp::one(2);
        let (x, y) = (g.x(&[1, 0], one), g.x(&[0, 1], one));
        let c = commutator(&x, &y, &inverse(&x), &inverse(&y));
        assert_eq!(c, g.x(&[1, 1], one));
    }

    #[test]
    fn labels_over_f2() {
        for name in ["A2", "B2", "G2"] {
            let report = rank2_rgd_check(&Gcm::named(name).unwrap(), 2).unwrap();
            assert!(report.passed, "{name}: {:?}", report.checks);
        }
    }

    #[test]
    fn rejects_affine() {
        assert!(matches!(
            rank2_rgd_check(&Gcm::named("A1~").unwrap(), 2),
            Err(KmError::NotRankTwoFinite(_))
        ));
    }
}
