//! Structural invariants over randomly chosen balanced words.

use proptest::prelude::*;
use qdeform::correlator::{
    finite_lambda_correlator, limit_correlator, take_limit, Dispersion, StateSpec,
};
use qdeform::count_non_crossing;
use qdeform::masterfield::{free_correlator, master_word};
use qdeform::oracle::{
    numeric_eval, numeric_eval_terms, qdef_terms, relative_close, NumericAssignment,
};
use qdeform::symcore::{balanced_patterns, Eps, OperatorWord, ScalarSum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pattern(max_pairs: usize) -> impl Strategy<Value = Vec<Eps>> {
    (1..=max_pairs).prop_flat_map(|n| {
        let all = balanced_patterns(2 * n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn state() -> impl Strategy<Value = StateSpec> {
    prop_oneof![
        Just(StateSpec::Fock),
        Just(StateSpec::Gaussian),
        (0.1f64..5.0).prop_map(|beta| StateSpec::Temperature {
            beta,
            dispersion: Dispersion::Quadratic
        }),
    ]
}

fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn limit_commutes_with_construction(p in pattern(4), s in state()) {
        let w = OperatorWord::from_pattern(&p);
        let limit = limit_correlator(&w, &s);
        prop_assert_eq!(&take_limit(&finite_lambda_correlator(&w, &s)).unwrap(), &limit);
        prop_assert_eq!(&free_correlator(&master_word(&w), &s), &limit);
        prop_assert!(limit.len() <= catalan(p.len() / 2));
        prop_assert!(limit.len() <= count_non_crossing(&p));
    }

    #[test]
    fn sums_survive_json(p in pattern(3), s in state()) {
        let sum = finite_lambda_correlator(&OperatorWord::from_pattern(&p), &s);
        let back: ScalarSum = serde_json::from_str(&serde_json::to_string(&sum).unwrap()).unwrap();
        prop_assert_eq!(back, sum);
    }

    #[test]
    fn raw_rewriting_matches_numerically(p in pattern(3), seed in any::<u64>()) {
        let w = OperatorWord::from_pattern(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = NumericAssignment::random(&w, &StateSpec::Fock, Dispersion::Quadratic, &mut rng);
        let x = numeric_eval(&finite_lambda_correlator(&w, &StateSpec::Fock), &a).unwrap();
        let y = numeric_eval_terms(&qdef_terms(&w), &a).unwrap();
        prop_assert!(relative_close(x, y, 1e-9), "{} vs {}", x, y);
    }

    #[test]
    fn unbalanced_fock_words_vanish(p in pattern(3)) {
        // Dropping the last creator leaves more annihilators than creators.
        let mut q = p.clone();
        let last = q.iter().rposition(|e| *e == Eps::Creation).unwrap();
        q.remove(last);
        let w = OperatorWord::from_pattern(&q);
        prop_assert!(finite_lambda_correlator(&w, &StateSpec::Fock).is_zero());
    }
}
