use num_bigint::BigInt;
use perm132::algebra::RationalFunction;
use perm132::engine::{avoid_gf_closed_for, g_wedge_top_closed, Engine, EngineError};
use perm132::oracle::{series, ConstraintSpec};
use perm132::pattern::{patterns_avoiding_132, Pattern};
use proptest::prelude::*;
use rayon::prelude::*;

fn coeffs(f: &RationalFunction, n: usize) -> Vec<u64> {
    f.series(n)
        .unwrap()
        .to_integers()
        .unwrap()
        .iter()
        .map(|c| u64::try_from(c.clone()).unwrap())
        .collect()
}

#[test]
fn once_matches_oracle_where_supported() {
    let engine = Engine::new();
    let mut supported = 0;
    for k in 1..=5 {
        for tau in patterns_avoiding_132(k) {
            match engine.once_gf(&tau) {
                Ok(g) => {
                    supported += 1;
                    let want = series(&ConstraintSpec::exactly_once(tau.clone()), 8).unwrap().counts;
                    assert_eq!(coeffs(&g, 8), want, "G for {tau}");
                }
                Err(EngineError::UnsupportedPattern { .. }) => {}
                Err(e) => panic!("{tau}: {e}"),
            }
        }
    }
    assert!(supported >= 20, "only {supported} patterns supported");
}

#[test]
fn wedge_tops_match_oracle() {
    let engine = Engine::new();
    for (k, m, p) in [(3, 2, 1), (4, 2, 1), (4, 3, 1), (4, 3, 2), (5, 4, 2), (5, 3, 1)] {
        let tau = Pattern::wedge_top(k, m, p).unwrap();
        let g = engine.once_gf(&tau).unwrap();
        assert_eq!(g, g_wedge_top_closed(k, m, p));
        let want = series(&ConstraintSpec::exactly_once(tau.clone()), 9).unwrap().counts;
        assert_eq!(coeffs(&g, 9), want, "{{{k},{m},{p}}}");
    }
}

#[test]
fn closed_forms_agree_with_recursion() {
    let engine = Engine::new();
    for k in 1..=6 {
        for tau in patterns_avoiding_132(k) {
            match avoid_gf_closed_for(&tau) {
                Ok(f) => assert_eq!(f, engine.avoid_gf(&tau).unwrap(), "{tau}"),
                Err(EngineError::UnsupportedPattern { .. }) => {}
                Err(e) => panic!("{tau}: {e}"),
            }
        }
    }
}

#[test]
fn parallel_callers_see_one_value() {
    let engine = Engine::new();
    let pats = patterns_avoiding_132(6);
    let first: Vec<RationalFunction> = pats.par_iter().map(|p| engine.avoid_gf(p).unwrap()).collect();
    let second: Vec<RationalFunction> = pats.iter().map(|p| Engine::new().avoid_gf(p).unwrap()).collect();
    assert_eq!(first, second);
    assert!(engine.memo_sizes().0 >= pats.len());
}

#[test]
fn large_values_stay_exact() {
    // grows like 3.77^n, past u64 well before n = 60
    let f = Engine::new().avoid_gf(&Pattern::increasing(12)).unwrap();
    let s = f.series(60).unwrap().to_integers().unwrap();
    assert!(s[60] > BigInt::from(u64::MAX));
}

fn any_avoider(max_k: u32) -> impl Strategy<Value = Pattern> {
    (1u32..=max_k).prop_flat_map(|k| {
        let all = patterns_avoiding_132(k);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn avoid_matches_oracle(tau in any_avoider(6)) {
        let f = Engine::shared().avoid_gf(&tau).unwrap();
        let want = series(&ConstraintSpec::avoiding(tau.clone()), 8).unwrap().counts;
        prop_assert_eq!(coeffs(&f, 8), want);
    }

    #[test]
    fn inverse_symmetry(tau in any_avoider(7)) {
        let e = Engine::shared();
        prop_assert_eq!(e.avoid_gf(&tau).unwrap(), e.avoid_gf(&tau.inverse()).unwrap());
    }

    #[test]
    fn avoiding_is_a_catalan_truncation(tau in any_avoider(7)) {
        // a permutation shorter than tau avoids it
        let f = Engine::shared().avoid_gf(&tau).unwrap();
        let catalan = [1u64, 1, 2, 5, 14, 42, 132];
        let k = tau.len();
        prop_assert_eq!(&coeffs(&f, k - 1)[..], &catalan[..k]);
    }
}
