use proptest::prelude::*;

use twinkit::cartan::Gcm;
use twinkit::classification::{all_decorated_trees, canonical_code, dynkin_of_gcm, gcm_of_dynkin};
use twinkit::coxeter::CoxeterSystem;
use twinkit::field::{Fp, Scalar};
use twinkit::kac_moody::build_algebra;
use twinkit::kac_moody::linalg::{add_scaled, q};
use twinkit::matrix_groups::{birkhoff_decompose, bruhat_decompose, Root, SlGroup};

const TYPES: [&str; 6] = ["A2", "B2", "G2", "A3", "A1~", "D4"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_forms(ty in 0..TYPES.len(), a in prop::collection::vec(0..4usize, 0..8), b in prop::collection::vec(0..4usize, 0..8), c in prop::collection::vec(0..4usize, 0..8)) {
        let sys = CoxeterSystem::named(TYPES[ty]).unwrap();
        let r = sys.rank();
        let word = |w: &Vec<usize>| sys.normal_form(&w.iter().map(|s| s % r).collect::<Vec<_>>()).unwrap();
        let (x, y, z) = (word(&a), word(&b), word(&c));
        prop_assert!(sys.length(&x) <= a.len());
        prop_assert_eq!(sys.length(&sys.inverse(&x)), sys.length(&x));
        prop_assert_eq!(sys.multiply(&x, &sys.inverse(&x)), sys.identity());
        prop_assert_eq!(sys.multiply(&sys.multiply(&x, &y), &z), sys.multiply(&x, &sys.multiply(&y, &z)));
        let xy = sys.multiply(&x, &y);
        prop_assert!(sys.length(&xy) <= sys.length(&x) + sys.length(&y));
        prop_assert_eq!(sys.length(&xy) % 2, (sys.length(&x) + sys.length(&y)) % 2);
    }

    #[test]
    fn decompositions_reconstruct(np in 0..4usize, factors in prop::collection::vec((0..12usize, 0..12usize, 1..5i64), 1..10)) {
        let (n, p) = [(2, 3), (3, 2), (3, 3), (4, 2)][np];
        let g = SlGroup::new(n, p).unwrap();
        let roots = g.roots();
        let mut m = g.identity();
        for (k, s, t) in factors {
            let a: Root = roots[k % roots.len()];
            m = m.mul(&g.root_element(a, Fp::new(t, p)));
            if s % 3 == 0 {
                m = m.mul(&g.w_hat(&g.system().normal_form(&[s % (n - 1)]).unwrap()));
            }
        }
        let d = bruhat_decompose(&g, &m);
        prop_assert_eq!(d.left.mul(&g.w_hat(&d.w)).mul(&d.right), m.clone());
        prop_assert!(d.left.is_upper_triangular() && d.right.is_upper_triangular());
        let d = birkhoff_decompose(&g, &m);
        prop_assert_eq!(d.left.mul(&g.w_hat(&d.w)).mul(&d.right), m);
        prop_assert!(d.left.is_lower_triangular() && d.right.is_upper_triangular());
    }

    #[test]
    fn canonical_code_ignores_labels(n in 2..6usize, pick in any::<prop::sample::Index>(), perm in Just(()).prop_perturb(|_, mut rng| rng.next_u64())) {
        let trees = all_decorated_trees(n);
        let t = &trees[pick.index(trees.len())];
        let mut labels: Vec<usize> = (0..n).collect();
        let mut state = perm;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            labels.swap(i, (state >> 33) as usize % (i + 1));
        }
        let u = t.relabel(&labels);
        prop_assert_eq!(canonical_code(t).unwrap(), canonical_code(&u).unwrap());
        let back = dynkin_of_gcm(&gcm_of_dynkin(&u).unwrap()).unwrap();
        prop_assert_eq!(canonical_code(&back).unwrap(), canonical_code(t).unwrap());
    }

    #[test]
    fn gcm_documents_round_trip(ty in 0..TYPES.len()) {
        let a = Gcm::named(TYPES[ty]).unwrap();
        let text = serde_json::to_string(&a.to_document()).unwrap();
        let b = Gcm::from_document(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn prime_field_laws(pi in 0..5usize, a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let p = [2, 3, 5, 7, 101][pi];
        let (x, y, z) = (Fp::new(a, p), Fp::new(b, p), Fp::new(c, p));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.sub(&x), Fp::zero(p));
        prop_assert_eq!(x.add(&x.neg()), Fp::zero(p));
        match x.inv() {
            Some(i) => prop_assert_eq!(x.mul(&i), Fp::one(p)),
            None => prop_assert!(x.is_zero()),
        }
        prop_assert_eq!(x.pow(p as u64), x);
    }
}

#[test]
fn brackets_are_antisymmetric() {
    for (name, h) in [("A2", 2), ("B2", 3), ("G2", 5), ("A1~", 4)] {
        let alg = build_algebra(&Gcm::named(name).unwrap(), h).unwrap();
        for x in 0..alg.dim() {
            for y in 0..alg.dim() {
                let (Ok(a), Ok(b)) = (alg.bracket_basis(x, y), alg.bracket_basis(y, x)) else {
                    continue;
                };
                let mut sum = a;
                add_scaled(&mut sum, &b, &q(1));
                assert!(sum.is_empty(), "{name}: [{x}, {y}]");
            }
        }
    }
}
