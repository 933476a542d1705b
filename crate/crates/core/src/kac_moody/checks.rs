//! Exact consistency checks and a serializable dump of a truncated algebra.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::matrix_groups::rgd::Check;

use super::algebra::{Generator, KmAlgebra};
use super::lattice::IntegralForm;
use super::linalg::{add_scaled, q, unit, Vector};
use super::operators::{invariant_subspace, TorusFlavour};
use super::roots::positive_real_roots;
use super::KmError;

fn jacobi_at(alg: &KmAlgebra, x: usize, y: usize, z: usize) -> Option<bool> {
    let cyc = |a: usize, b: usize, c: usize| -> Option<Vector> {
        let bc = alg.bracket_basis(b, c).ok()?;
        alg.bracket(&unit(a), &bc).ok()
    };
    let mut sum = cyc(x, y, z)?;
    add_scaled(&mut sum, &cyc(y, z, x)?, &q(1));
    add_scaled(&mut sum, &cyc(z, x, y)?, &q(1));
    Some(sum.is_empty())
}

/// Jacobi identity on all window triples whose brackets stay in the window,
/// or on `samples` random triples when given.
pub fn jacobi_check(alg: &KmAlgebra, samples: Option<(usize, u64)>) -> Check {
    let d = alg.dim();
    let triples: Vec<(usize, usize, usize)> = match samples {
        None => (0..d)
            .flat_map(|x| (0..d).flat_map(move |y| (0..d).map(move |z| (x, y, z))))
            .collect(),
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let idx: Vec<usize> = (0..d).collect();
            (0..count)
                .map(|_| {
                    let pick = |rng: &mut ChaCha8Rng| *idx.choose(rng).expect("nonempty");
                    (pick(&mut rng), pick(&mut rng), pick(&mut rng))
                })
                .collect()
        }
    };
    let mut c = Check::new();
    for (x, y, z) in triples {
        if let Some(ok) = jacobi_at(alg, x, y, z) {
            c.record(ok, || {
                format!("Jacobi fails on ({}, {}, {})", alg.label(x), alg.label(y), alg.label(z))
            });
        }
    }
    c
}

/// `omega [x, y] = [omega x, omega y]` on window pairs.
pub fn chevalley_check(alg: &KmAlgebra) -> Check {
    let mut c = Check::new();
    for x in 0..alg.dim() {
        for y in 0..alg.dim() {
            let Ok(xy) = alg.bracket_basis(x, y) else { continue };
            let (wx, wy) = (alg.chevalley_vec(&unit(x)), alg.chevalley_vec(&unit(y)));
            let Ok(rhs) = alg.bracket(&wx, &wy) else { continue };
            c.record(alg.chevalley_vec(&xy) == rhs, || {
                format!("omega does not commute with [{}, {}]", alg.label(x), alg.label(y))
            });
        }
    }
    c
}

/// Defining relations `[h_i, e_j] = a_ij e_j`, `[e_i, f_j] = delta_ij h_i`.
pub fn relations_check(alg: &KmAlgebra) -> Check {
    let mut c = Check::new();
    let n = alg.rank();
    for i in 0..n {
        for j in 0..n {
            let (h, e, f) = (
                alg.generator(Generator::H(i)),
                alg.generator(Generator::E(j)),
                alg.generator(Generator::F(j)),
            );
            let he = alg.bracket_basis(h, e).expect("degree alpha_j");
            let mut want = Vector::new();
            add_scaled(&mut want, &unit(e), &q(alg.gcm().entry(i, j)));
            c.record(he == want, || format!("[h{}, e{}] != a_ij e_j", i + 1, j + 1));
            let ef = alg.bracket_basis(alg.generator(Generator::E(i)), f).expect("degree 0");
            let want = if i == j { unit(h) } else { Vector::new() };
            c.record(ef == want, || format!("[e{}, f{}] != delta h", i + 1, j + 1));
        }
    }
    c
}

/// `dim g_alpha = 1` for every real root in the window, both signs.
pub fn real_root_check(alg: &KmAlgebra) -> Check {
    let mut c = Check::new();
    for r in positive_real_roots(alg.gcm(), alg.window()).roots {
        let minus: Vec<i64> = r.coords.iter().map(|x| -x).collect();
        for alpha in [r.coords.clone(), minus] {
            let d = alg.component_dim(&alpha);
            c.record(d == 1, || format!("dim g_{alpha:?} = {d}"));
        }
    }
    c
}

/// Divided powers of every `ad e_i`, `ad f_i` are integral on the integral
/// form, and its Cartan part is `Z h_1 + ... + Z h_n`.
pub fn integrality_check(alg: &KmAlgebra) -> Result<Check, KmError> {
    let form = IntegralForm::new(alg)?;
    let mut c = Check::new();
    c.record(form.cartan_is_standard(alg), || {
        "Cartan lattice is not Z h_1 + ... + Z h_n".into()
    });
    for i in 0..alg.rank() {
        for g in [Generator::E(i), Generator::F(i)] {
            for (k, m) in form.divided_power_matrices(alg, g).iter().enumerate() {
                c.record(m.iter().flatten().all(|x| x.is_integer()), || {
                    format!("(ad {g:?})^{} / {}! is not integral", k + 1, k + 1)
                });
            }
        }
    }
    Ok(c)
}

/// Closure properties of `V^v_alpha` for `v` a basis vector and all
/// tuples of simple roots of length at most 2: `V` contains `v`, and
/// `V_alpha` is contained in `V_beta` for `alpha` a sub-tuple of `beta`.
pub fn invariant_subspace_check(alg: &KmAlgebra) -> Check {
    let n = alg.rank();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    tuples.extend((0..n).map(|i| vec![i]));
    tuples.extend((0..n).flat_map(|i| (0..n).map(move |j| vec![i, j])));
    let mut c = Check::new();
    for x in 0..alg.dim() {
        let v = unit(x);
        let spaces: BTreeMap<Vec<usize>, _> = tuples
            .iter()
            .filter_map(|t| invariant_subspace(alg, &v, t).ok().map(|s| (t.clone(), s)))
            .collect();
        for (t, s) in &spaces {
            c.record(s.contains(&v), || format!("{} not in V_{t:?}", alg.label(x)));
            for (u, big) in &spaces {
                if u.len() == t.len() + 1 && u.starts_with(t) {
                    c.record(s.is_subspace_of(big), || {
                        format!("V_{t:?} not inside V_{u:?} for {}", alg.label(x))
                    });
                }
            }
        }
    }
    c
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisEntry {
    pub index: usize,
    pub label: String,
    pub degree: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraDump {
    pub cartan: Vec<Vec<i64>>,
    pub window: usize,
    pub dim: usize,
    pub complete: bool,
    pub torus: TorusFlavour,
    pub n_plus_dims: Vec<usize>,
    pub graded_dims: Vec<(Vec<i64>, usize)>,
    pub basis: Vec<BasisEntry>,
    /// `[x, y] = c z` as `(x, y, z, c)` with `c` written `p/q`.
    pub structure_constants: Vec<(usize, usize, usize, String)>,
}

pub fn dump(alg: &KmAlgebra) -> AlgebraDump {
    AlgebraDump {
        cartan: alg.gcm().rows(),
        window: alg.window(),
        dim: alg.dim(),
        complete: alg.is_complete(),
        torus: TorusFlavour::default(),
        n_plus_dims: alg.n_plus_dims(),
        graded_dims: alg.graded_dims().into_iter().collect(),
        basis: (0..alg.dim())
            .map(|x| BasisEntry {
                index: x,
                label: alg.label(x),
                degree: alg.degree(x),
            })
            .collect(),
        structure_constants: alg
            .structure_constants()
            .into_iter()
            .filter(|(x, y, z, _)| x < y && !alg.is_boundary(*z))
            .map(|(x, y, z, c)| (x, y, z, c.to_string()))
            .collect(),
    }
}
