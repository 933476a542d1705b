//! Independent brute-force oracles for computed values.

use std::collections::{BTreeMap, HashMap, HashSet};

use twinkit::building::{Sign, TwinBuildingModel};
use twinkit::cartan::Gcm;
use twinkit::classification::{all_decorated_trees, canonical_code, enumerate_trees};
use twinkit::coxeter::{CoxeterElement, CoxeterSystem};
use twinkit::kac_moody::{build_algebra, positive_real_roots};
use twinkit::matrix::FpMatrix;
use twinkit::matrix_groups::{SlGroup, SlTwinBuilding};
use twinkit::thin::ThinTwinBuilding;

/// Every matrix over `F_p` with determinant one.
fn brute_sl(n: usize, p: u32) -> Vec<FpMatrix> {
    let cells = n * n;
    let mut out = Vec::new();
    for code in 0..(p as u64).pow(cells as u32) {
        let mut c = code;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let v = (c % p as u64) as i64;
                        c /= p as u64;
                        v
                    })
                    .collect()
            })
            .collect();
        let m = FpMatrix::from_i64_rows(&rows, p);
        if m.determinant().value() == 1 {
            out.push(m);
        }
    }
    out
}

#[test]
fn group_orders_and_flag_counts() {
    for (n, p) in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)] {
        let g = SlGroup::new(n, p).unwrap();
        let all = brute_sl(n, p);
        assert_eq!(all.len() as u128, g.order(), "SL_{n}(F_{p})");
        let enumerated: HashSet<FpMatrix> = g.elements(1 << 20).unwrap().into_iter().collect();
        assert_eq!(enumerated, all.iter().cloned().collect());
        let upper = all.iter().filter(|m| m.is_upper_triangular()).count();
        let b = SlTwinBuilding::new(g.clone()).unwrap();
        for sign in Sign::both() {
            assert_eq!(b.chamber_count(sign) * upper, all.len(), "SL_{n}(F_{p}) {sign:?}");
        }
    }
}

/// `B_x w B_y` by multiplying out, keyed by `w`.
fn double_cosets(g: &SlGroup, left_upper: bool) -> HashMap<FpMatrix, CoxeterElement> {
    let all = brute_sl(g.n(), g.p());
    let upper: Vec<&FpMatrix> = all.iter().filter(|m| m.is_upper_triangular()).collect();
    let lower: Vec<&FpMatrix> = all.iter().filter(|m| m.is_lower_triangular()).collect();
    let left = if left_upper { &upper } else { &lower };
    let mut cell = HashMap::new();
    for w in g.system().elements_upto(usize::MAX >> 1) {
        let w_hat = g.w_hat(&w);
        for a in left {
            let aw = a.mul(&w_hat);
            for b in &upper {
                cell.insert(aw.mul(b), w.clone());
            }
        }
    }
    assert_eq!(cell.len(), all.len());
    cell
}

#[test]
fn bruhat_and_birkhoff_cells_match_multiplication() {
    for (n, p) in [(2, 3), (3, 2), (3, 3)] {
        let g = SlGroup::new(n, p).unwrap();
        for (x, w) in double_cosets(&g, true) {
            assert_eq!(g.cell_plus_plus(&x), w);
        }
        for (x, w) in double_cosets(&g, false) {
            assert_eq!(g.cell_minus_plus(&x), w);
        }
    }
}

#[test]
fn schubert_cells_follow_the_poincare_polynomial() {
    for (n, p) in [(3, 2), (3, 3), (2, 5)] {
        let b = SlTwinBuilding::new(SlGroup::new(n, p).unwrap()).unwrap();
        let mut by_length: BTreeMap<usize, usize> = BTreeMap::new();
        for y in 0..b.chamber_count(Sign::Plus) {
            *by_length.entry(b.distance(Sign::Plus, 0, y).len()).or_insert(0) += 1;
        }
        let counts = b.system().length_counts(usize::MAX >> 1);
        for (l, k) in counts {
            assert_eq!(
                by_length[&l],
                k * (p as usize).pow(l as u32),
                "SL_{n}(F_{p}) length {l}"
            );
        }
    }
}

#[test]
fn thin_models_have_one_chamber_per_element() {
    for (name, order) in [("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24)] {
        let b = ThinTwinBuilding::new(CoxeterSystem::named(name).unwrap(), 20);
        assert_eq!(b.chamber_count(Sign::Plus), order);
    }
    let affine = ThinTwinBuilding::new(CoxeterSystem::named("A1~").unwrap(), 5);
    assert_eq!(affine.chamber_count(Sign::Minus), 11);
}

#[test]
fn tree_classes_match_pruefer_enumeration() {
    for n in 2..=4 {
        let oracle: HashSet<Vec<u8>> = all_decorated_trees(n)
            .iter()
            .map(|t| canonical_code(t).unwrap())
            .collect();
        let classes = enumerate_trees(n).unwrap();
        let codes: HashSet<Vec<u8>> = classes.iter().map(|t| canonical_code(t).unwrap()).collect();
        assert_eq!(codes.len(), classes.len());
        assert_eq!(codes, oracle, "n = {n}");
    }
}

#[test]
fn finite_root_systems() {
    for (name, positive, dim) in [("A2", 3, 8), ("B2", 4, 10), ("G2", 6, 14), ("A3", 6, 15)] {
        let gcm = Gcm::named(name).unwrap();
        assert_eq!(positive_real_roots(&gcm, 20).roots.len(), positive);
        let h = positive_real_roots(&gcm, 20)
            .coords()
            .iter()
            .map(|r| r.iter().sum::<i64>())
            .max()
            .unwrap();
        let alg = build_algebra(&gcm, h as usize).unwrap();
        assert_eq!(alg.dim(), dim, "{name}");
    }
}

const P: u64 = 1_000_003;

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let inv = |a: u64| {
        let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let k = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * k % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for j in 0..cols {
                    rows[r][j] = (rows[r][j] + P * P - f * rows[rank][j]) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn words(content: &[i64]) -> Vec<Vec<usize>> {
    if content.iter().all(|&c| c == 0) {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..content.len() {
        if content[i] > 0 {
            let mut rest = content.to_vec();
            rest[i] -= 1;
            for mut w in words(&rest) {
                w.insert(0, i);
                out.push(w);
            }
        }
    }
    out
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// `(ad e_i)^k e_j` in the free associative algebra.
fn serre(i: usize, j: usize, k: i64) -> Vec<(Vec<usize>, i64)> {
    (0..=k)
        .map(|m| {
            let mut w = vec![i; (k - m) as usize];
            w.push(j);
            w.extend(std::iter::repeat_n(i, m as usize));
            (w, if m % 2 == 0 { binomial(k, m) } else { -binomial(k, m) })
        })
        .collect()
}

/// Graded dimensions of `U(n_+)`: words modulo the ideal generated by the
/// Serre relators, degree by degree.
fn enveloping_dims(gcm: &Gcm, height: usize) -> BTreeMap<Vec<i64>, usize> {
    let n = gcm.rank();
    let relators: Vec<(Vec<i64>, Vec<(Vec<usize>, i64)>)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| {
            let k = 1 - gcm.entry(i, j);
            let mut deg = vec![0; n];
            deg[i] += k;
            deg[j] += 1;
            (deg, serre(i, j, k))
        })
        .collect();
    let mut out = BTreeMap::new();
    let mut stack: Vec<Vec<i64>> = vec![vec![0; n]];
    let mut seen = HashSet::new();
    while let Some(alpha) = stack.pop() {
        let h: i64 = alpha.iter().sum();
        if h as usize > height || !seen.insert(alpha.clone()) {
            continue;
        }
        for i in 0..n {
            let mut next = alpha.clone();
            next[i] += 1;
            stack.push(next);
        }
        if h == 0 {
            continue;
        }
        let basis = words(&alpha);
        let index: HashMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let mut rows = Vec::new();
        for (deg, rel) in &relators {
            let rest: Vec<i64> = alpha.iter().zip(deg).map(|(a, d)| a - d).collect();
            if rest.iter().any(|&x| x < 0) {
                continue;
            }
            for outer in words(&rest) {
                for cut in 0..=outer.len() {
                    let mut row = vec![0u64; basis.len()];
                    for (w, c) in rel {
                        let mut full = outer[..cut].to_vec();
                        full.extend(w);
                        full.extend(&outer[cut..]);
                        let k = index[&full];
                        row[k] = (row[k] as i64 + c).rem_euclid(P as i64) as u64;
                    }
                    rows.push(row);
                }
            }
        }
        out.insert(alpha, basis.len() - rank_mod_p(rows));
    }
    out
}

/// Invert `prod (1 - x^beta)^(-d_beta) = sum u_alpha x^alpha` for `d`.
fn lie_dims_from_enveloping(u: &BTreeMap<Vec<i64>, usize>) -> BTreeMap<Vec<i64>, i64> {
    let mut degrees: Vec<&Vec<i64>> = u.keys().collect();
    degrees.sort_by_key(|a| (a.iter().sum::<i64>(), (*a).clone()));
    let mut d: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for alpha in degrees {
        // coefficient of x^alpha from the d_beta found so far
        let mut series: BTreeMap<Vec<i64>, i64> = BTreeMap::from([(vec![0; alpha.len()], 1)]);
        for (beta, &m) in &d {
            let mut next = BTreeMap::new();
            for (gamma, &c) in &series {
                let mut k = 0i64;
                loop {
                    let deg: Vec<i64> = gamma.iter().zip(beta).map(|(g, b)| g + k * b).collect();
                    if deg.iter().zip(alpha).any(|(x, a)| x > a) {
                        break;
                    }
                    *next.entry(deg).or_insert(0) += c * binomial(m + k - 1, k);
                    k += 1;
                }
            }
            series = next;
        }
        let known = series.get(alpha).copied().unwrap_or(0);
        d.insert(alpha.clone(), u[alpha] as i64 - known);
    }
    d
}

#[test]
fn positive_part_matches_serre_quotient() {
    for (name, h) in [("A2", 3), ("B2", 4), ("G2", 6), ("A1~", 4), ("A3", 3)] {
        let gcm = Gcm::named(name).unwrap();
        let oracle = lie_dims_from_enveloping(&enveloping_dims(&gcm, h));
        let alg = build_algebra(&gcm, h).unwrap();
        let graded = alg.graded_dims();
        for (alpha, &dim) in &oracle {
            let ours = graded.get(alpha).copied().unwrap_or(0) as i64;
            assert_eq!(ours, dim, "{name} degree {alpha:?}");
        }
        let mut per_height = vec![0usize; h];
        for (alpha, &dim) in &oracle {
            per_height[(alpha.iter().sum::<i64>() - 1) as usize] += dim as usize;
        }
        assert_eq!(alg.n_plus_dims(), per_height, "{name}");
    }
}
