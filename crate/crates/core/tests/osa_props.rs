mod support;

use osa_core::osa::solve_for_l;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::scalecheck::*;

#[test]
fn single_mode_soundness_on_concrete_catalog_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let concrete: Vec<_> = catalog()
        .iter()
        .filter(|e| has_concrete_exponents(e))
        .collect();
    assert!(
        concrete.len() >= 10,
        "only {} concrete equations",
        concrete.len()
    );
    for e in concrete {
        for _ in 0..50 {
            let err = single_mode_gap(e, &mut rng);
            assert!(err < 1e-10, "{}: relative error {err:e}", e.id);
        }
    }
}

#[test]
fn single_mode_soundness_with_bound_exponents() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for e in catalog() {
        for _ in 0..20 {
            let err = single_mode_gap(e, &mut rng);
            assert!(err < 1e-10, "{}: relative error {err:e}", e.id);
        }
    }
}

#[test]
fn explicit_branches_satisfy_their_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = back_substitute_branches(&mut rng, 10, 1e-9).unwrap();
    assert!(n >= 30, "{n} branches");
}

#[test]
fn exponent_balance_predicts_numeric_widths() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (id, exps) in balance_cases() {
        let hits = balance_against_roots(id, &exps, &mut rng).unwrap();
        assert!(hits >= 5, "{id} {exps:?}: only {hits} samples had a root");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_keeps_the_roots(idx in 0usize..64, seed in any::<u64>()) {
        let cat = catalog();
        let e = &cat[idx % cat.len()];
        let r = e.analysis.primary();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut env = random_env(&mut rng, &e.params, &exponent_params(r));
        env.sigma = 1.0;
        env.tau = 1.0;
        let (a, b) = (first_root(r, &env), first_root(&r.normalize(), &env));
        match (a, b) {
            (Some(a), Some(b)) => prop_assert!((a / b - 1.0).abs() < 1e-9, "{}: {} vs {}", e.id, a, b),
            (None, None) => {}
            other => prop_assert!(false, "{}: {:?}", e.id, other),
        }
    }

    #[test]
    fn solve_for_l_accepts_normalized_input(idx in 0usize..64) {
        let cat = catalog();
        let e = &cat[idx % cat.len()];
        let r = e.analysis.primary();
        if let (Ok(x), Ok(y)) = (solve_for_l(r), solve_for_l(&r.normalize())) {
            let names = |w: &osa_core::osa::WidthSolution| w.branches.iter().map(|b| b.expression.clone()).collect::<Vec<_>>();
            prop_assert_eq!(names(&x), names(&y));
        }
    }
}
