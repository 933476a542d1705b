//! Acceptance criteria, one line each with its runtime bound.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twinkit::building::axioms::check_axioms;
use twinkit::building::census::{check_dimension_function, gallery_space, schubert_census};
use twinkit::building::panel_mul::panel_mul_suite;
use twinkit::building::properties::{check_opposite_witness, codistance_subexpression, coprojection_adjacent_agree};
use twinkit::building::strata::stratification;
use twinkit::building::{Chamber, TwinBuildingModel};
use twinkit::cartan::{CoxeterLabel, Gcm};
use twinkit::classification::{
    all_decorated_trees, canonical_code, dynkin_of_gcm, enumerate_trees, gcm_of_dynkin, isomorphic,
};
use twinkit::coxeter::CoxeterSystem;
use twinkit::kac_moody::checks::{integrality_check, jacobi_check, real_root_check};
use twinkit::kac_moody::operators::{
    ad_unipotent, character, invariant_subspace, torus_ad, Carrier, RootSign, TorusFlavour,
};
use twinkit::kac_moody::rank2::rank2_rgd_check;
use twinkit::kac_moody::{build_algebra, Generator, KmAlgebra};
use twinkit::matrix_groups::{
    coproj_formula_check, flip_lang, rgd_axiom_check, rho_check, transpose_inverse, SlGroup, SlTwinBuilding,
};
use twinkit::thin::ThinTwinBuilding;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sl(n: usize, p: u32) -> SlTwinBuilding {
    SlTwinBuilding::new(SlGroup::new(n, p).unwrap()).unwrap()
}

fn thin(name: &str, cap: usize) -> ThinTwinBuilding {
    ThinTwinBuilding::new(CoxeterSystem::named(name).unwrap(), cap)
}

fn axioms() -> Outcome {
    let mut models: Vec<Box<dyn TwinBuildingModel>> = vec![
        Box::new(thin("A2", 5)),
        Box::new(thin("B2", 5)),
        Box::new(thin("A1~", 5)),
    ];
    for (n, p) in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)] {
        models.push(Box::new(sl(n, p)));
    }
    for b in &models {
        let r = check_axioms(b.as_ref()).map_err(|e| e.to_string())?;
        ensure(r.passed && !r.checked.is_empty(), || {
            format!("{}: {:?}", b.name(), r.violation)
        })?;
    }
    Ok(())
}

fn coproj_formula() -> Outcome {
    for (n, p) in [(3, 2), (2, 5)] {
        let b = sl(n, p);
        let c = coproj_formula_check(&b).map_err(|e| e.to_string())?;
        ensure(c.passed && c.instances > 0, || format!("{}: {:?}", b.name(), c.witness))?;
    }
    Ok(())
}

fn rho() -> Outcome {
    for (n, p, order) in [(2, 3, 24), (3, 2, 168)] {
        let g = SlGroup::new(n, p).unwrap();
        let c = rho_check(&g, 1 << 16).map_err(|e| e.to_string())?;
        ensure(c.passed && c.instances as usize > order, || {
            format!("{}: {:?}", g.name(), c.witness)
        })?;
    }
    Ok(())
}

fn properties() -> Outcome {
    let b = sl(3, 2);
    let reports = [
        coprojection_adjacent_agree(&b).map_err(|e| e.to_string())?,
        codistance_subexpression(&b),
        check_opposite_witness(&b).map_err(|e| e.to_string())?,
    ];
    for r in reports {
        ensure(r.passed && r.skipped.is_none() && r.instances > 0, || {
            format!("{}: {:?}", r.name, r.witness)
        })?;
    }
    Ok(())
}

fn strata() -> Outcome {
    for (n, p) in [(3, 2), (2, 5)] {
        let b = sl(n, p);
        let st = stratification(&b, Chamber::minus(0)).map_err(|e| e.to_string())?;
        let shapes = BTreeSet::from([(1, p as usize)]);
        ensure(st.profiles_ok && st.profile_shapes == shapes, || {
            format!("{}: {:?}", b.name(), st.profile_shapes)
        })?;
        ensure(st.closure_is_bruhat_filter, || {
            format!("{}: closure differs from the Bruhat filter", b.name())
        })?;
    }
    Ok(())
}

fn census() -> Outcome {
    for (n, p, total) in [(3, 2, 21), (2, 5, 6)] {
        let b = sl(n, p);
        let q = p as usize;
        let c = schubert_census(&b, Chamber::plus(0), None).map_err(|e| e.to_string())?;
        ensure(c.schubert_total == total && c.partition, || {
            format!("{}: total {}", b.name(), c.schubert_total)
        })?;
        for cell in &c.schubert {
            ensure(cell.size == q.pow(cell.length as u32), || {
                format!("|E_{}| = {}", cell.w, cell.size)
            })?;
            let g = gallery_space(&b, &cell.w.word(), Chamber::plus(0)).map_err(|e| e.to_string())?;
            ensure(g.fibration && g.count == (q as u64 + 1).pow(cell.length as u32), || {
                format!("|Gall({:?})| = {}", g.word, g.count)
            })?;
            ensure(g.unique_non_stammering == Some(true), || {
                format!("non-stammering {:?}", g.word)
            })?;
        }
    }
    Ok(())
}

fn panel_mul() -> Outcome {
    for p in [2, 3] {
        let b = sl(3, p);
        let r = panel_mul_suite(&b).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: {:?}", b.name(), r.first_failure))?;
    }
    Ok(())
}

/// Components of the graph joining generators with odd labels.
fn odd_components(sys: &CoxeterSystem) -> Vec<usize> {
    let n = sys.rank();
    let mut comp: Vec<usize> = (0..n).collect();
    for _ in 0..n {
        for i in 0..n {
            for j in 0..n {
                if i != j && matches!(sys.matrix().m(i, j), CoxeterLabel::Finite(m) if m % 2 == 1) {
                    let c = comp[i].min(comp[j]);
                    comp[i] = c;
                    comp[j] = c;
                }
            }
        }
    }
    comp
}

fn dimension_function() -> Outcome {
    for name in ["A2", "B2", "G2", "A1~"] {
        let sys = CoxeterSystem::named(name).unwrap();
        let comp = odd_components(&sys);
        for d in [[1u64, 1], [1, 2], [2, 1], [3, 5]] {
            let r = check_dimension_function(&sys, &d, 8).map_err(|e| e.to_string())?;
            let constant = (0..2).all(|i| (0..2).all(|j| comp[i] != comp[j] || d[i] == d[j]));
            ensure(r.well_defined == constant && r.agrees, || {
                format!("{name} d = {d:?}: {:?}", r.offending)
            })?;
        }
    }
    Ok(())
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// One-parameter law and torus conjugation for every simple root on `carrier`.
fn operator_identities(alg: &KmAlgebra, carrier: &Carrier, roots: &[usize]) -> Outcome {
    let u = [q(2), q(3)];
    let u = &u[..alg.rank()];
    let t = torus_ad(alg, TorusFlavour::SimplyConnected, u, carrier).map_err(|e| e.to_string())?;
    let inv: Vec<BigRational> = u.iter().map(|x| x.recip()).collect();
    let t_inv = torus_ad(alg, TorusFlavour::SimplyConnected, &inv, carrier).map_err(|e| e.to_string())?;
    for &i in roots {
        for sign in [RootSign::Positive, RootSign::Negative] {
            let x = |r: &BigRational| {
                ad_unipotent(alg, i, sign, r, carrier)
                    .map(|o| o.matrix)
                    .map_err(|e| e.to_string())
            };
            let (r, s) = (q(2), BigRational::new((-3).into(), 5.into()));
            ensure(x(&r)?.mul(&x(&s)?) == x(&(&r + &s))?, || {
                format!("{}: x({r})x({s}) != x(r+s)", alg.gcm())
            })?;
            let mut alpha = vec![0i64; alg.rank()];
            alpha[i] = if sign == RootSign::Positive { 1 } else { -1 };
            let chi = character(alg, TorusFlavour::SimplyConnected, &alpha)
                .iter()
                .zip(u)
                .fold(q(1), |acc, (&e, x)| acc * x.pow(e as i32));
            ensure(t.matrix.mul(&x(&r)?).mul(&t_inv.matrix) == x(&(&chi * &r))?, || {
                format!("{}: t x_alpha(r) t^-1 != x_alpha(t(alpha) r)", alg.gcm())
            })?;
        }
    }
    Ok(())
}

fn kac_moody() -> Outcome {
    let a2 = build_algebra(&Gcm::named("A2").unwrap(), 2).map_err(|e| e.to_string())?;
    let b2 = build_algebra(&Gcm::named("B2").unwrap(), 3).map_err(|e| e.to_string())?;
    let g2 = build_algebra(&Gcm::named("G2").unwrap(), 5).map_err(|e| e.to_string())?;
    let at = build_algebra(&Gcm::named("A1~").unwrap(), 4).map_err(|e| e.to_string())?;
    ensure(a2.dim() == 8 && a2.is_complete(), || format!("dim A2 = {}", a2.dim()))?;
    ensure(g2.dim() == 14 && g2.is_complete(), || format!("dim G2 = {}", g2.dim()))?;
    ensure(at.n_plus_dims() == vec![2, 1, 2, 1], || {
        format!("A1~ n_+ = {:?}", at.n_plus_dims())
    })?;
    for alg in [&a2, &b2, &g2, &at] {
        let c = real_root_check(alg);
        ensure(c.passed && c.instances > 0, || {
            format!("{}: {:?}", alg.gcm(), c.witness)
        })?;
        let c = integrality_check(alg).map_err(|e| e.to_string())?;
        ensure(c.passed && c.instances > 0, || {
            format!("{}: {:?}", alg.gcm(), c.witness)
        })?;
    }
    for alg in [&a2, &b2, &g2] {
        let c = jacobi_check(alg, None);
        ensure(c.passed && c.instances as usize == alg.dim().pow(3), || {
            format!("{}: {:?}", alg.gcm(), c.witness)
        })?;
        operator_identities(alg, &Carrier::window(alg), &[0, 1])?;
    }
    let e1 = twinkit::kac_moody::linalg::unit(at.generator(Generator::E(0)));
    let carrier = invariant_subspace(&at, &e1, &[0]).map_err(|e| e.to_string())?;
    operator_identities(&at, &carrier, &[0])
}

fn rgd() -> Outcome {
    for p in [2, 3] {
        let g = SlGroup::new(3, p).unwrap();
        let r = rgd_axiom_check(&g).map_err(|e| e.to_string())?;
        for (name, c) in &r.checks {
            ensure(c.passed && c.skipped.is_none(), || {
                format!("{}: {name}: {:?} {:?}", g.name(), c.witness, c.skipped)
            })?;
        }
        for name in [
            "RGD0",
            "RGD1",
            "RGD2",
            "RGD3",
            "RGD4",
            "RGD5",
            "TBN2",
            "bounded products",
            "ordered products",
        ] {
            ensure(r.checks.contains_key(name), || format!("{}: {name} missing", g.name()))?;
        }
    }
    for name in ["A2", "B2", "G2"] {
        let r = rank2_rgd_check(&Gcm::named(name).unwrap(), 2).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("{name} over F_2: {:?}", r.checks))?;
    }
    Ok(())
}

fn lang() -> Outcome {
    for (n, p) in [(2, 2), (2, 3), (3, 2)] {
        let b = sl(n, p);
        let r = flip_lang(&b, "transpose-inverse", &transpose_inverse).map_err(|e| e.to_string())?;
        let order = b.group().order() as usize;
        ensure(r.equivalence_holds && r.elements == order, || {
            format!("{}: {:?}", b.name(), r.counterexample)
        })?;
    }
    Ok(())
}

fn classification() -> Outcome {
    for (n, expected) in [(2, 3), (3, 15)] {
        let trees = enumerate_trees(n).map_err(|e| e.to_string())?;
        let oracle: HashSet<Vec<u8>> = all_decorated_trees(n)
            .iter()
            .map(|t| canonical_code(t).unwrap())
            .collect();
        ensure(trees.len() == expected && oracle.len() == expected, || {
            format!("n = {n}: {} classes, oracle {}", trees.len(), oracle.len())
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for n in 2..=4 {
        for t in enumerate_trees(n).map_err(|e| e.to_string())? {
            let code = canonical_code(&t).map_err(|e| e.to_string())?;
            let mut perm: Vec<usize> = (0..n).collect();
            for _ in 0..1000 {
                perm.shuffle(&mut rng);
                let relabelled = t.relabel(&perm);
                ensure(canonical_code(&relabelled).unwrap() == code, || {
                    format!("{t:?} under {perm:?}")
                })?;
            }
        }
    }
    for n in 2..=5 {
        for t in enumerate_trees(n).map_err(|e| e.to_string())? {
            let a = gcm_of_dynkin(&t).map_err(|e| e.to_string())?;
            let back = dynkin_of_gcm(&a).map_err(|e| e.to_string())?;
            ensure(isomorphic(&t, &back).unwrap(), || format!("{t:?} -> {a} -> {back:?}"))?;
            ensure(gcm_of_dynkin(&back).unwrap() == a, || {
                format!("GCM round trip fails on {a}")
            })?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("axioms Bu1-3, Tw1-3 on thin and SL_n(F_p) models", 10, axioms),
        ("co-projection formula equals brute force", 30, coproj_formula),
        ("x in B+ w rho_w(x) and rho_1 = pi", 10, rho),
        (
            "adjacent co-projections, codistance subexpressions, opposite witnesses",
            30,
            properties,
        ),
        ("panel profiles and Bruhat filter reachability", 30, strata),
        ("Schubert census and gallery spaces", 10, census),
        ("panel multiplication identities and bijectivity", 30, panel_mul),
        ("dimension function well-definedness", 10, dimension_function),
        (
            "Kac-Moody dimensions, Jacobi, integrality, exp and torus laws",
            60,
            kac_moody,
        ),
        ("RGD system, twin BN-pair and rank-2 adjoint checks", 60, rgd),
        ("Lang map stratum equivalence", 10, lang),
        ("Dynkin tree classification", 10, classification),
    ];
    let mut failures = 0;
    for (k, (name, bound, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let within = elapsed < Duration::from_secs(*bound);
        let status = if result.is_ok() && within { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {status} {name} ({:.2}s, bound {bound}s){}",
            k + 1,
            elapsed.as_secs_f64(),
            match (&result, within) {
                (Err(e), _) => format!(": {e}"),
                (Ok(()), false) => ": runtime bound exceeded".to_string(),
                _ => String::new(),
            }
        );
        if status == "FAIL" {
            failures += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
