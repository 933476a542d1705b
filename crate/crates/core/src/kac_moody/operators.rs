//! Exact adjoint operators on certified carriers: unipotent exponentials,
//! torus elements and the invariant subspaces `V^v_alpha`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::field::{reduce_mod, Fp, Scalar};
use crate::matrix::Matrix;

use super::algebra::{Generator, KmAlgebra};
use super::lattice::IntegralForm;
use super::linalg::{add_scaled, scaled, Echelon, Reduced, Vector, Q};
use super::roots::pairing;
use super::KmError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootSign {
    Positive,
    Negative,
}

impl RootSign {
    fn generator(self, i: usize) -> Generator {
        match self {
            RootSign::Positive => Generator::E(i),
            RootSign::Negative => Generator::F(i),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum TorusFlavour {
    /// `t` is given on the basis dual to the `h_i`.
    #[default]
    SimplyConnected,
    /// `t` is given on the simple roots `c_i`.
    Adjoint,
}

/// Exponents of the torus parameters `u_1..u_n` in `t(alpha)`.
pub fn character(alg: &KmAlgebra, flavour: TorusFlavour, alpha: &[i64]) -> Vec<i64> {
    match flavour {
        TorusFlavour::Adjoint => alpha.to_vec(),
        TorusFlavour::SimplyConnected => (0..alg.rank()).map(|i| pairing(alg.gcm(), alpha, i)).collect(),
    }
}

fn power<T: Scalar>(u: &T, e: i64) -> T {
    let base = if e < 0 {
        u.inv().expect("torus parameters are units")
    } else {
        u.clone()
    };
    (0..e.unsigned_abs()).fold(u.one_like(), |acc, _| acc.mul(&base))
}

fn evaluate<T: Scalar>(u: &[T], exps: &[i64]) -> T {
    u.iter()
        .zip(exps)
        .fold(u[0].one_like(), |acc, (x, &e)| acc.mul(&power(x, e)))
}

/// A subspace of the window known to be closed under the operators that
/// act on it.
#[derive(Debug, Clone)]
pub struct Carrier {
    basis: Vec<Vector>,
    echelon: Echelon,
    ambient: usize,
    label: String,
}

impl Carrier {
    fn empty(alg: &KmAlgebra, label: String) -> Carrier {
        Carrier {
            basis: Vec::new(),
            echelon: Echelon::new(),
            ambient: alg.ambient_dim(),
            label,
        }
    }

    /// The whole window, on the standard basis.
    pub fn window(alg: &KmAlgebra) -> Carrier {
        let mut c = Carrier::empty(alg, format!("window H={}", alg.window()));
        for x in 0..alg.dim() {
            c.try_add(&Vector::from([(x, Q::from_integer(1.into()))]));
        }
        c
    }

    fn dense(&self, v: &Vector) -> Vec<Q> {
        let mut d = vec![Q::zero(); self.ambient];
        for (k, x) in v {
            d[*k] = x.clone();
        }
        d
    }

    fn try_add(&mut self, v: &Vector) -> bool {
        let d = self.dense(v);
        match self.echelon.insert(&d) {
            Reduced::New(_) => {
                self.basis.push(v.clone());
                true
            }
            Reduced::Dependent(_) => false,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coordinates(&self, v: &Vector) -> Option<Vec<Q>> {
        self.echelon.solve(&self.dense(v))
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether every vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Carrier) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

/// Exact operator matrix on a carrier basis (columns are images).
#[derive(Debug, Clone, Serialize)]
pub struct AdOperator<T> {
    pub matrix: Matrix<T>,
    pub provenance: String,
}

/// `(ad g)^k / k!` applied to `v`, for `k = 1, 2, ...` until zero.
pub fn divided_power_terms(alg: &KmAlgebra, g: Generator, v: &Vector) -> Result<Vec<Vector>, KmError> {
    let mut out = Vec::new();
    let mut y = v.clone();
    for k in 1.. {
        let mut next = Vector::new();
        for (b, c) in &y {
            add_scaled(&mut next, &alg.ad_generator(g, *b)?, c);
        }
        y = scaled(&next, &Q::new(1.into(), k.into()));
        if y.is_empty() {
            break;
        }
        out.push(y.clone());
    }
    Ok(out)
}

fn on_carrier<F>(carrier: &Carrier, mut f: F, provenance: String) -> Result<AdOperator<Q>, KmError>
where
    F: FnMut(&Vector) -> Result<Vector, KmError>,
{
    let d = carrier.dim();
    let mut m = Matrix::zeros(d, d, &Q::zero());
    for (j, b) in carrier.basis.iter().enumerate() {
        let image = f(b)?;
        let c = carrier
            .coordinates(&image)
            .ok_or_else(|| KmError::NotInvariant(format!("{provenance} leaves the carrier {}", carrier.label)))?;
        for (i, x) in c.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    Ok(AdOperator { matrix: m, provenance })
}

/// `Ad(x_{+-alpha_i}(r)) = sum_k (ad e_i)^k / k! r^k` (resp. `f_i`) over Q.
pub fn ad_unipotent(
    alg: &KmAlgebra,
    i: usize,
    sign: RootSign,
    r: &Q,
    carrier: &Carrier,
) -> Result<AdOperator<Q>, KmError> {
    let g = sign.generator(i);
    let provenance = format!("exp({r} ad {g:?})");
    let not_invariant = || KmError::NotInvariant(format!("{provenance} leaves the carrier {}", carrier.label));
    on_carrier(
        carrier,
        |b| {
            let terms = divided_power_terms(alg, g, b).map_err(|_| not_invariant())?;
            let mut out = b.clone();
            let mut rk = r.clone();
            for t in &terms {
                if !carrier.contains(t) {
                    return Err(not_invariant());
                }
                add_scaled(&mut out, t, &rk);
                rk = &rk * r;
            }
            Ok(out)
        },
        provenance.clone(),
    )
}

/// Diagonal torus action over Q: `g_alpha` is scaled by `t(alpha)`.
pub fn torus_ad(alg: &KmAlgebra, flavour: TorusFlavour, u: &[Q], carrier: &Carrier) -> Result<AdOperator<Q>, KmError> {
    let provenance = format!(
        "Ad(t) {flavour:?} u={}",
        u.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    );
    on_carrier(
        carrier,
        |b| {
            let mut out = Vector::new();
            for (k, c) in b {
                let s = evaluate(u, &character(alg, flavour, &alg.degree(*k)));
                out.insert(*k, c * s);
            }
            Ok(out)
        },
        provenance.clone(),
    )
}

/// Closure of `span{v}` under `(ad e_i)^k / k!` and `(ad f_i)^k / k!` for all
/// `i` in `alphas`.
pub fn invariant_subspace(alg: &KmAlgebra, v: &Vector, alphas: &[usize]) -> Result<Carrier, KmError> {
    if let Some(k) = v.keys().find(|k| alg.is_boundary(**k) || **k >= alg.ambient_dim()) {
        return Err(KmError::WindowExceeded(format!(
            "basis vector {k} is outside the window"
        )));
    }
    let mut idx: Vec<usize> = alphas.to_vec();
    idx.sort_unstable();
    idx.dedup();
    let labels: Vec<String> = alphas.iter().map(|i| format!("a{}", i + 1)).collect();
    let mut carrier = Carrier::empty(alg, format!("V^v_({})", labels.join(",")));
    let mut queue = Vec::new();
    if !v.is_empty() && carrier.try_add(v) {
        queue.push(v.clone());
    }
    while let Some(x) = queue.pop() {
        for &i in &idx {
            for g in [Generator::E(i), Generator::F(i)] {
                let terms = divided_power_terms(alg, g, &x)?;
                for t in terms {
                    if let Some(k) = t.keys().find(|k| alg.is_boundary(**k)) {
                        return Err(KmError::WindowExceeded(format!(
                            "closure reaches {} outside the window of height {}; use a larger height",
                            alg.label(*k),
                            alg.window()
                        )));
                    }
                    if carrier.try_add(&t) {
                        queue.push(t);
                    }
                }
            }
        }
    }
    Ok(carrier)
}

/// Adjoint operators over `F_p` on the integral basis of a complete window.
#[derive(Debug, Clone)]
pub struct ModularAdjoint {
    p: u32,
    dim: usize,
    degrees: Vec<Vec<i64>>,
}

impl ModularAdjoint {
    pub fn new(alg: &KmAlgebra, form: &IntegralForm, p: u32) -> Result<ModularAdjoint, KmError> {
        if !alg.is_complete() {
            return Err(KmError::NotInvariant(format!(
                "the window of height {} is not closed; operators over F_{p} need a finite-dimensional algebra",
                alg.window()
            )));
        }
        let degrees = form
            .basis()
            .iter()
            .map(|b| alg.degree(*b.keys().next().expect("nonzero basis vector")))
            .collect();
        Ok(ModularAdjoint {
            p,
            dim: form.len(),
            degrees,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> Matrix<Fp> {
        Matrix::identity(self.dim, &Fp::one(self.p))
    }

    /// `sum_k r^k D_k` for integral divided-power matrices `D_k`.
    pub fn exponential(&self, powers: &[Vec<Vec<Q>>], r: Fp) -> Result<Matrix<Fp>, KmError> {
        let mut m = self.identity();
        let mut rk = r;
        for d in powers {
            for (i, row) in d.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if Zero::is_zero(x) {
                        continue;
                    }
                    let x = reduce_mod(x, self.p)
                        .ok_or_else(|| KmError::NotInvariant(format!("non-integral divided power entry {x}")))?;
                    m[(i, j)] = m[(i, j)].add(&x.mul(&rk));
                }
            }
            rk = rk.mul(&r);
        }
        Ok(m)
    }

    pub fn torus(&self, alg: &KmAlgebra, flavour: TorusFlavour, u: &[Fp]) -> Matrix<Fp> {
        let mut m = self.identity();
        for (k, d) in self.degrees.iter().enumerate() {
            m[(k, k)] = evaluate(u, &character(alg, flavour, d));
        }
        m
    }
}

/// `(ad x)^k / k!` on the integral basis for an arbitrary window element.
pub fn divided_power_matrices(alg: &KmAlgebra, form: &IntegralForm, x: &Vector) -> Result<Vec<Vec<Vec<Q>>>, KmError> {
    let n = form.len();
    let mut cols: Vec<Vec<Vec<Q>>> = Vec::new();
    for (j, b) in form.basis().iter().enumerate() {
        let mut y = b.clone();
        for k in 1.. {
            y = scaled(&alg.bracket(x, &y)?, &Q::new(1.into(), k.into()));
            if y.is_empty() {
                break;
            }
            let c = form
                .coordinates(alg, &y)
                .ok_or_else(|| KmError::NotInvariant("divided power leaves the lattice span".into()))?;
            if cols.len() < k {
                cols.push(vec![vec![Q::zero(); n]; n]);
            }
            for (i, v) in c.into_iter().enumerate() {
                cols[k - 1][i][j] = v;
            }
        }
    }
    Ok(cols)
}

/// `Ad(x_{+-alpha_i}(r))` over `F_p` on the integral basis.
pub fn ad_unipotent_fp(
    alg: &KmAlgebra,
    form: &IntegralForm,
    i: usize,
    sign: RootSign,
    r: Fp,
) -> Result<AdOperator<Fp>, KmError> {
    let modular = ModularAdjoint::new(alg, form, r.modulus())?;
    let g = sign.generator(i);
    let powers = form.divided_power_matrices(alg, g);
    Ok(AdOperator {
        matrix: modular.exponential(&powers, r)?,
        provenance: format!("exp({r} ad {g:?}) mod {}", r.modulus()),
    })
}

/// Diagonal torus action over `F_p` on the integral basis.
pub fn torus_ad_fp(
    alg: &KmAlgebra,
    form: &IntegralForm,
    flavour: TorusFlavour,
    u: &[Fp],
) -> Result<AdOperator<Fp>, KmError> {
    let modular = ModularAdjoint::new(alg, form, u[0].modulus())?;
    Ok(AdOperator {
        matrix: modular.torus(alg, flavour, u),
        provenance: format!("Ad(t) {flavour:?} mod {}", u[0].modulus()),
    })
}

/// Graded pieces of a carrier: dimension of its intersection with each
/// window component spanned by its homogeneous basis vectors.
pub fn carrier_degrees(alg: &KmAlgebra, carrier: &Carrier) -> BTreeMap<Vec<i64>, usize> {
    let mut out = BTreeMap::new();
    for b in carrier.basis() {
        let degrees: std::collections::BTreeSet<Vec<i64>> = b.keys().map(|k| alg.degree(*k)).collect();
        if degrees.len() == 1 {
            *out.entry(degrees.into_iter().next().expect("one degree")).or_insert(0) += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Gcm;
    use crate::kac_moody::build_algebra;
    use crate::kac_moody::linalg::{q, unit};

    #[test]
    fn a1_exponential() {
        let alg = build_algebra(&Gcm::named("A1").unwrap(), 1).unwrap();
        let c = Carrier::window(&alg);
        let op = ad_unipotent(&alg, 0, RootSign::Positive, &q(1), &c).unwrap();
        let (e, h, f) = (
            alg.generator(Generator::E(0)),
            alg.generator(Generator::H(0)),
            alg.generator(Generator::F(0)),
        );
        let col = |x: usize| -> Vector {
            let mut v = Vector::new();
            for i in 0..3 {
                if !Zero::is_zero(&op.matrix[(i, x)]) {
                    v.insert(i, op.matrix[(i, x)].clone());
                }
            }
            v
        };
        assert_eq!(col(e), unit(e));
        assert_eq!(col(h), Vector::from([(e, q(-2)), (h, q(1))]));
        assert_eq!(col(f), Vector::from([(e, q(-1)), (h, q(1)), (f, q(1))]));
    }

    #[test]
    fn torus_on_a1() {
        let alg = build_algebra(&Gcm::named("A1").unwrap(), 1).unwrap();
        let c = Carrier::window(&alg);
        let op = torus_ad(&alg, TorusFlavour::Adjoint, &[q(3)], &c).unwrap();
        let (e, h, f) = (
            alg.generator(Generator::E(0)),
            alg.generator(Generator::H(0)),
            alg.generator(Generator::F(0)),
        );
        assert_eq!(op.matrix[(e, e)], q(3));
        assert_eq!(op.matrix[(h, h)], q(1));
        assert_eq!(op.matrix[(f, f)], Q::new(1.into(), 3.into()));
    }

    #[test]
    fn invariant_subspaces() {
        let a1 = build_algebra(&Gcm::named("A1").unwrap(), 1).unwrap();
        let e = unit(a1.generator(Generator::E(0)));
        assert_eq!(invariant_subspace(&a1, &e, &[0]).unwrap().dim(), 3);
        let h = unit(a1.generator(Generator::H(0)));
        assert_eq!(invariant_subspace(&a1, &h, &[]).unwrap().dim(), 1);
        let a2 = build_algebra(&Gcm::named("A2").unwrap(), 2).unwrap();
        let e1 = unit(a2.generator(Generator::E(0)));
        assert_eq!(invariant_subspace(&a2, &e1, &[0, 1]).unwrap().dim(), 8);
        let at = build_algebra(&Gcm::named("A1~").unwrap(), 4).unwrap();
        let e1 = unit(at.generator(Generator::E(0)));
        assert_eq!(invariant_subspace(&at, &e1, &[0]).unwrap().dim(), 3);
        assert!(matches!(
            invariant_subspace(&at, &e1, &[0, 1]),
            Err(KmError::WindowExceeded(_))
        ));
    }

    #[test]
    fn incomplete_window_is_not_invariant() {
        let at = build_algebra(&Gcm::named("A1~").unwrap(), 3).unwrap();
        let c = Carrier::window(&at);
        assert!(matches!(
            ad_unipotent(&at, 0, RootSign::Positive, &q(1), &c),
            Err(KmError::NotInvariant(_))
        ));
    }

    #[test]
    fn modular_one_parameter_law() {
        let alg = build_algebra(&Gcm::named("B2").unwrap(), 3).unwrap();
        let form = IntegralForm::new(&alg).unwrap();
        let p = 3;
        for r in Fp::elements(p) {
            for s in Fp::elements(p) {
                let a = ad_unipotent_fp(&alg, &form, 1, RootSign::Negative, r).unwrap();
                let b = ad_unipotent_fp(&alg, &form, 1, RootSign::Negative, s).unwrap();
                let c = ad_unipotent_fp(&alg, &form, 1, RootSign::Negative, r.add(&s)).unwrap();
                assert_eq!(a.matrix.mul(&b.matrix), c.matrix);
            }
        }
    }
}
