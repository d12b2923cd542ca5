use perm132::pattern::{
    canonical_decompose, classify, flatten, layered_params, parse_pattern, patterns_avoiding_132, FamilySpec, Pattern,
};
use proptest::prelude::*;

fn any_avoider() -> impl Strategy<Value = Pattern> {
    (1u32..=7).prop_flat_map(|k| {
        let all = patterns_avoiding_132(k);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

#[test]
fn parsing_forms() {
    let p = parse_pattern("321").unwrap();
    assert_eq!(p.values(), &[3, 2, 1]);
    assert_eq!(parse_pattern("3,2,1").unwrap(), p);
    assert!(parse_pattern("12x").is_err());
    assert!(parse_pattern("113").is_err());
}

#[test]
fn layered_and_families() {
    let p = Pattern::layered(&[5, 3]).unwrap();
    assert_eq!(p.values(), &[4, 5, 1, 2, 3]);
    assert_eq!(layered_params(&p), Some(vec![5, 3]));
    assert!(matches!(classify(&p), FamilySpec::Layered(_)));
}

proptest! {
    #[test]
    fn decomposition_reassembles(tau in any_avoider()) {
        let d = canonical_decompose(&tau).unwrap();
        prop_assert_eq!(d.interleave(), tau.values().to_vec());
        if d.r() >= 1 {
            prop_assert_eq!(d.prefix(d.r() as isize).unwrap(), tau.clone());
        }
        prop_assert!(d.prefix(-1).unwrap().is_empty());
        prop_assert_eq!(d.suffix(0).unwrap(), tau.clone());
        prop_assert!(d.suffix(d.r() as isize + 1).unwrap().is_empty());
        for i in 0..=d.r() as isize {
            prop_assert!(tau.contains(&d.prefix(i).unwrap()));
            prop_assert!(tau.contains(&d.suffix(i).unwrap()));
        }
    }

    #[test]
    fn inverse_is_involution(tau in any_avoider()) {
        prop_assert_eq!(tau.inverse().inverse(), tau.clone());
        prop_assert!(!tau.inverse().contains(&Pattern::p132()));
    }

    #[test]
    fn flatten_is_idempotent(v in prop::collection::hash_set(1u32..50, 0..8)) {
        let v: Vec<u32> = v.into_iter().collect();
        let p = flatten(&v).unwrap();
        prop_assert_eq!(flatten(p.values()).unwrap(), p.clone());
        prop_assert_eq!(p.len(), v.len());
    }

    #[test]
    fn skew_sum_contains_parts(a in any_avoider(), b in any_avoider()) {
        let s = a.skew_sum(&b);
        prop_assert!(s.contains(&a) && s.contains(&b));
        prop_assert_eq!(s.len(), a.len() + b.len());
    }
}
