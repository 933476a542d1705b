//! Exhaustive verification of the root group datum of `SL_n(F_p)` and of
//! the twin BN-pair it induces.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::coxeter::CoxeterElement;
use crate::field::{Fp, Scalar};
use crate::matrix::FpMatrix;

use super::{closure, MatrixGroupError, Root, SlGroup};

/// Above this order the generation and product checks are skipped.
pub const MAX_EXHAUSTIVE_ORDER: u128 = 100_000;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub passed: bool,
    pub instances: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub(crate) fn new() -> Check {
        Check {
            passed: true,
            instances: 0,
            skipped: None,
            witness: None,
        }
    }

    pub(crate) fn skip(why: &str) -> Check {
        Check {
            skipped: Some(why.to_string()),
            ..Check::new()
        }
    }

    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RgdReport {
    pub group: String,
    pub deleted: Vec<String>,
    pub passed: bool,
    pub checks: BTreeMap<String, Check>,
}

impl RgdReport {
    pub fn check(&self, name: &str) -> &Check {
        &self.checks[name]
    }
}

/// Root groups, with some of them replaced by the trivial group.
struct Family<'a> {
    group: &'a SlGroup,
    deleted: &'a [Root],
}

impl Family<'_> {
    fn root_group(&self, a: Root) -> Vec<FpMatrix> {
        if self.deleted.contains(&a) {
            return vec![self.group.identity()];
        }
        Fp::elements(self.group.p())
            .map(|t| self.group.root_element(a, t))
            .collect()
    }

    fn generators(&self, roots: &[Root]) -> Vec<FpMatrix> {
        roots.iter().flat_map(|&a| self.root_group(a)).collect()
    }

    fn generated(&self, roots: &[Root], extra: &[FpMatrix]) -> Result<HashSet<FpMatrix>, MatrixGroupError> {
        let mut gens = self.generators(roots);
        gens.extend(extra.iter().cloned());
        closure(&self.group.identity(), &gens, self.group.order() as usize + 1)
    }

    /// `mu_s(x(t)) = x_-(-1/t) x(t) x_-(-1/t)`.
    fn mu(&self, s: usize, t: Fp) -> FpMatrix {
        let a = Root::simple(s);
        let back = self.group.root_element(a.negate(), t.inv().expect("nonzero").neg());
        back.mul(&self.group.root_element(a, t)).mul(&back)
    }
}

/// Roots strictly inside the cone spanned by `a` and `b`.
fn open_interval(n: usize, roots: &[Root], a: Root, b: Root) -> Vec<Root> {
    let (va, vb) = (a.vector(n), b.vector(n));
    let minor = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| va[i] * vb[j] - va[j] * vb[i] != 0);
    let Some((i, j)) = minor else {
        return Vec::new();
    };
    let det = va[i] * vb[j] - va[j] * vb[i];
    roots
        .iter()
        .copied()
        .filter(|&g| g != a && g != b)
        .filter(|&g| {
            let vg = g.vector(n);
            // Cramer's rule: vg = (x va + y vb) with x = xn/det, y = yn/det
            let xn = vg[i] * vb[j] - vg[j] * vb[i];
            let yn = va[i] * vg[j] - va[j] * vg[i];
            let positive = xn * det > 0 && yn * det > 0;
            positive && (0..n).all(|k| xn * va[k] + yn * vb[k] == det * vg[k])
        })
        .collect()
}

fn set(xs: Vec<FpMatrix>) -> HashSet<FpMatrix> {
    xs.into_iter().collect()
}

/// Positive roots in the order induced by the normal-form word of `w0`.
pub fn ordered_positive_roots(group: &SlGroup) -> Vec<Root> {
    let w0 = group.system().longest_element().expect("finite Weyl group");
    let word = w0.word();
    (0..word.len())
        .map(|k| word[..k].iter().rev().fold(Root::simple(word[k]), |r, &s| r.reflect(s)))
        .collect()
}

/// Verify the root group datum axioms, the twin BN-pair axioms, bounded
/// products of rank-one groups, and the ordered product parametrization.
pub fn rgd_axiom_check(group: &SlGroup) -> Result<RgdReport, MatrixGroupError> {
    rgd_axiom_check_family(group, &[])
}

/// As [`rgd_axiom_check`], with the root groups of `deleted` replaced by
/// the trivial group.
pub fn rgd_axiom_check_family(group: &SlGroup, deleted: &[Root]) -> Result<RgdReport, MatrixGroupError> {
    let fam = Family { group, deleted };
    let n = group.n();
    let rank = n - 1;
    let sys = group.system();
    let roots = group.roots();
    let positive: Vec<Root> = group.positive_roots();
    let negative: Vec<Root> = positive.iter().map(|a| a.negate()).collect();
    let torus = group.torus();
    let exhaustive = group.order() <= MAX_EXHAUSTIVE_ORDER;
    let fmt = |g: &FpMatrix| group.format(g);
    let mut checks = BTreeMap::new();

    let mut c = Check::new();
    for &a in &roots {
        c.record(fam.root_group(a).len() > 1, || format!("U_{a} is trivial"));
    }
    checks.insert("RGD0".to_string(), c);

    let mut c = Check::new();
    for &a in &roots {
        for &b in &roots {
            if a == b || a == b.negate() {
                continue;
            }
            let inner = open_interval(n, &roots, a, b);
            let h = fam.generated(&inner, &[])?;
            for u in fam.root_group(a) {
                for v in fam.root_group(b) {
                    let comm = u.mul(&v).mul(&group.inverse(&u)).mul(&group.inverse(&v));
                    c.record(h.contains(&comm), || {
                        format!("[{}, {}] = {} not in <U_]{a},{b}[>", fmt(&u), fmt(&v), fmt(&comm))
                    });
                }
            }
        }
    }
    checks.insert("RGD1".to_string(), c);

    let mut c = Check::new();
    let mut mus = Vec::new();
    for s in 0..rank {
        let a = Root::simple(s);
        let minus = fam.root_group(a.negate());
        for u in fam.root_group(a) {
            if u.is_identity() {
                continue;
            }
            let t = u[(a.i, a.j)];
            let mu = fam.mu(s, t);
            let in_double_coset = minus.iter().any(|x| minus.iter().any(|y| x.mul(&u).mul(y) == mu));
            c.record(in_double_coset, || {
                format!("mu_{}({}) not in U_-a u U_-a", s + 1, fmt(&u))
            });
            let mu_inv = group.inverse(&mu);
            for &b in &roots {
                let image = set(fam.root_group(b).iter().map(|x| mu.mul(x).mul(&mu_inv)).collect());
                let target = set(fam.root_group(b.reflect(s)));
                c.record(image == target, || {
                    format!("mu_{}({}) U_{b} mu^-1 != U_{}", s + 1, fmt(&u), b.reflect(s))
                });
            }
            mus.push(mu);
        }
    }
    checks.insert("RGD2".to_string(), c);

    let u_plus = fam.generated(&positive, &[])?;
    let mut c = Check::new();
    for s in 0..rank {
        let a = Root::simple(s).negate();
        let escapes = fam.root_group(a).iter().any(|x| !u_plus.contains(x));
        c.record(escapes, || format!("U_{a} is contained in U_+"));
    }
    checks.insert("RGD3".to_string(), c);

    if exhaustive {
        let mut c = Check::new();
        let all = fam.generated(&roots, &torus)?;
        c.record(all.len() as u128 == group.order(), || {
            format!("T<U_a> has {} elements, |G| = {}", all.len(), group.order())
        });
        checks.insert("RGD4".to_string(), c);
    } else {
        checks.insert(
            "RGD4".to_string(),
            Check::skip("group too large for exhaustive generation"),
        );
    }

    let mut c = Check::new();
    for t in &torus {
        let t_inv = group.inverse(t);
        for &a in &roots {
            let ua = set(fam.root_group(a));
            let image = set(ua.iter().map(|x| t.mul(x).mul(&t_inv)).collect());
            c.record(image == ua, || format!("{} does not normalise U_{a}", fmt(t)));
        }
    }
    checks.insert("RGD5".to_string(), c);

    // the induced BN-pair
    let b_plus = fam.generated(&positive, &torus)?;
    let b_minus = fam.generated(&negative, &torus)?;
    let n_group = closure(
        &group.identity(),
        &[torus.clone(), mus.clone()].concat(),
        group.order() as usize + 1,
    )?;
    let t_set = set(torus.clone());
    let mut c = Check::new();
    let monomial = n_group
        .iter()
        .all(|g| (0..n).all(|j| (0..n).filter(|&i| !g[(i, j)].is_zero()).count() == 1));
    c.record(monomial, || "N contains a non-monomial matrix".into());
    let bn_plus: HashSet<FpMatrix> = b_plus.intersection(&n_group).cloned().collect();
    let bn_minus: HashSet<FpMatrix> = b_minus.intersection(&n_group).cloned().collect();
    c.record(bn_plus == t_set, || "B_+ and N meet outside T".into());
    c.record(bn_minus == t_set, || "B_- and N meet outside T".into());
    let normal = n_group.iter().all(|g| {
        let g_inv = group.inverse(g);
        torus.iter().all(|t| t_set.contains(&g.mul(t).mul(&g_inv)))
    });
    c.record(normal, || "T is not normal in N".into());
    let factorial: usize = (1..=n).product();
    c.record(n_group.len() == t_set.len() * factorial, || {
        format!("|N/T| = {} != {factorial}", n_group.len() / t_set.len().max(1))
    });
    checks.insert("N/T".to_string(), c);

    if exhaustive {
        let mut c = Check::new();
        let mut gens: Vec<FpMatrix> = b_plus.iter().cloned().collect();
        gens.extend(mus.iter().cloned());
        let g = closure(&group.identity(), &gens, group.order() as usize + 1)?;
        c.record(g.len() as u128 == group.order(), || {
            format!("<B, N> has {} elements", g.len())
        });
        checks.insert("G=<B,N>".to_string(), c);
    } else {
        checks.insert(
            "G=<B,N>".to_string(),
            Check::skip("group too large for exhaustive generation"),
        );
    }

    let weyl = sys.elements_upto(usize::MAX);
    let sorted = |b: &HashSet<FpMatrix>| {
        let mut v: Vec<FpMatrix> = b.iter().cloned().collect();
        v.sort_by_key(|m| m.to_u32_rows());
        v
    };
    let borels = [("+", sorted(&b_plus)), ("-", sorted(&b_minus))];
    for (eps, borel) in &borels {
        let same = |g: &FpMatrix| -> CoxeterElement {
            if *eps == "+" {
                group.cell_plus_plus(g)
            } else {
                group.cell_minus_minus(g)
            }
        };
        let opposite = |g: &FpMatrix| -> CoxeterElement {
            if *eps == "+" {
                group.cell_plus_minus(g)
            } else {
                group.cell_minus_plus(g)
            }
        };
        let in_borel = |g: &FpMatrix| {
            if *eps == "+" {
                g.is_upper_triangular()
            } else {
                g.is_lower_triangular()
            }
        };
        let mut bn1 = Check::new();
        let mut bn2 = Check::new();
        let mut tbn1 = Check::new();
        for s in 0..rank {
            let s_hat = group.s_hat(s);
            for w in &weyl {
                let w_hat = group.w_hat(w);
                let ws = sys.multiply_generator(w, s);
                let sw = sys.generator_multiply(s, w);
                let descent = sw.len() < w.len();
                for b in borel {
                    let cell = same(&w_hat.mul(b).mul(&s_hat));
                    bn1.record(cell == ws || cell == *w, || {
                        format!("w = {w}, s = {}, b = {}: cell {cell}", s + 1, fmt(b))
                    });
                    if descent {
                        let cell = opposite(&s_hat.mul(b).mul(&w_hat));
                        tbn1.record(cell == sw, || {
                            format!("w = {w}, s = {}, b = {}: cell {cell}, expected {sw}", s + 1, fmt(b))
                        });
                    }
                }
            }
            let escapes = borel.iter().any(|b| !in_borel(&s_hat.mul(b).mul(&s_hat)));
            bn2.record(escapes, || format!("s_{} B s_{} is contained in B", s + 1, s + 1));
        }
        checks.insert(format!("BN1{eps}"), bn1);
        checks.insert(format!("BN2{eps}"), bn2);
        checks.insert(format!("TBN1{eps}"), tbn1);
    }

    let mut c = Check::new();
    for s in 0..rank {
        let s_hat = group.s_hat(s);
        for b in &borels[0].1 {
            let x = b.mul(&s_hat);
            c.record(!b_minus.contains(&x), || {
                format!("{} lies in B_+ s_{} and B_-", fmt(&x), s + 1)
            });
        }
    }
    checks.insert("TBN2".to_string(), c);

    if exhaustive {
        checks.insert("bounded products".to_string(), bounded_products(&fam, &torus, 3)?);
    } else {
        checks.insert(
            "bounded products".to_string(),
            Check::skip("group too large for exhaustive products"),
        );
    }
    checks.insert("ordered products".to_string(), ordered_products(&fam, &torus, &u_plus));

    Ok(RgdReport {
        group: group.name(),
        deleted: deleted.iter().map(|a| a.to_string()).collect(),
        passed: checks.values().all(|c| c.passed),
        checks,
    })
}

/// `T G_{a_1} ... G_{a_k}` lies in the union of `B w B` with `l(w) <= k`,
/// for both Borel subgroups and every sequence of simple roots.
fn bounded_products(fam: &Family, torus: &[FpMatrix], max_len: usize) -> Result<Check, MatrixGroupError> {
    let group = fam.group;
    let rank = group.n() - 1;
    let rank_one: Vec<Vec<FpMatrix>> = (0..rank)
        .map(|s| {
            let a = Root::simple(s);
            fam.generated(&[a, a.negate()], &[]).map(|g| g.into_iter().collect())
        })
        .collect::<Result<_, _>>()?;
    let mut c = Check::new();
    let mut frontier: Vec<(Vec<usize>, HashSet<FpMatrix>)> = vec![(Vec::new(), set(torus.to_vec()))];
    for k in 1..=max_len {
        let mut next = Vec::new();
        for (seq, prod) in &frontier {
            for (s, gs) in rank_one.iter().enumerate() {
                let mut out = HashSet::new();
                for x in prod {
                    for g in gs {
                        out.insert(x.mul(g));
                    }
                }
                let mut seq = seq.clone();
                seq.push(s);
                for x in &out {
                    for (eps, w) in [("+", group.cell_plus_plus(x)), ("-", group.cell_minus_minus(x))] {
                        c.record(w.len() <= k, || {
                            let seq: Vec<usize> = seq.iter().map(|s| s + 1).collect();
                            format!("sequence {seq:?}: {} in B{eps} {w} B{eps}", group.format(x))
                        });
                    }
                }
                next.push((seq, out));
            }
        }
        frontier = next;
    }
    Ok(c)
}

/// The ordered product `U_b1 x ... x U_bN -> U_+` is a bijection, and
/// `(t, x_1, ..., x_N) -> t x_1 ... x_N` is injective into `B_+`.
fn ordered_products(fam: &Family, torus: &[FpMatrix], u_plus: &HashSet<FpMatrix>) -> Check {
    let group = fam.group;
    let order = ordered_positive_roots(group);
    let mut products: Vec<FpMatrix> = vec![group.identity()];
    for &b in &order {
        let ub = fam.root_group(b);
        products = products.iter().flat_map(|x| ub.iter().map(move |u| x.mul(u))).collect();
    }
    let mut c = Check::new();
    let distinct = set(products.clone());
    c.record(distinct.len() == products.len(), || {
        "ordered product is not injective".into()
    });
    c.record(&distinct == u_plus, || "ordered product does not cover U_+".into());
    let mut with_torus = HashSet::new();
    for t in torus {
        for x in &products {
            with_torus.insert(t.mul(x));
        }
    }
    c.record(with_torus.len() == torus.len() * products.len(), || {
        "(t, x_1, ..., x_N) -> t x_1 ... x_N is not injective".into()
    });
    c.record(with_torus.iter().all(|x| x.is_upper_triangular()), || {
        "product leaves B_+".into()
    });
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl3_f2_passes() {
        let g = SlGroup::new(3, 2).unwrap();
        let r = rgd_axiom_check(&g).unwrap();
        for (name, c) in &r.checks {
            assert!(c.passed, "{name}: {:?}", c.witness);
            assert!(c.skipped.is_none());
        }
    }

    #[test]
    fn deleting_a_root_group_breaks_generation() {
        let g = SlGroup::new(2, 3).unwrap();
        let r = rgd_axiom_check_family(&g, &[Root::new(1, 0)]).unwrap();
        assert!(!r.check("RGD4").passed);
        assert!(!r.passed);
    }

    #[test]
    fn interval_of_simple_roots() {
        let g = SlGroup::new(3, 2).unwrap();
        let roots = g.roots();
        assert_eq!(
            open_interval(3, &roots, Root::simple(0), Root::simple(1)),
            vec![Root::new(0, 2)]
        );
        assert!(open_interval(3, &roots, Root::new(0, 1), Root::new(0, 2)).is_empty());
    }
}
