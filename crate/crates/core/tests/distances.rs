mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use tsc_core::distance::*;

#[test]
fn worked_examples_match_oracles() {
    assert_eq!(dtw_oracle(&[1.0, 2.0, 3.0], &[2.0, 3.0, 4.0], 1.0), 2.0);
    assert_eq!(dtw_distance(&[1.0, 2.0, 3.0], &[2.0, 3.0, 4.0], 1.0).unwrap(), 2.0);

    assert_eq!(msm_oracle(&[1.0, 2.0], &[1.0, 4.0], 0.1), 2.0);
    assert_eq!(msm_distance(&[1.0, 2.0], &[1.0, 4.0], 0.1).unwrap(), 2.0);

    assert_eq!(twed_oracle(&[1.0, 2.0], &[2.0, 3.0], 0.001, 1.0), 3.0);
    assert_eq!(twed_distance(&[1.0, 2.0], &[2.0, 3.0], 0.001, 1.0).unwrap(), 3.0);

    let l = lcss_oracle(&[1.0, 2.0, 3.0], &[2.0, 2.0, 2.0], 0.5, 2);
    assert!((l - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(erp_oracle(&[1.0], &[2.0], 0.0, 1.0), 1.0);
}

#[test]
fn dp_equals_path_enumeration_on_500_pairs() {
    let mut r = rng(2024);
    for _ in 0..500 {
        let n = r.random_range(1..=6);
        let a: Vec<f64> = (0..n).map(|_| r.random_range(-3.0..3.0)).collect();
        let b: Vec<f64> = (0..n).map(|_| r.random_range(-3.0..3.0)).collect();
        for w in [0.0, 0.5, 1.0] {
            let dp = dtw_distance(&a, &b, w).unwrap();
            assert!((dp - dtw_oracle(&a, &b, w)).abs() < 1e-9, "dtw w={w} {a:?} {b:?}");
            let g = r.random_range(-1.0..1.0);
            let dp = erp_distance(&a, &b, g, w).unwrap();
            assert!((dp - erp_oracle(&a, &b, g, w)).abs() < 1e-9, "erp w={w} g={g} {a:?} {b:?}");
        }
        let c = r.random_range(0.01..2.0);
        assert!((msm_distance(&a, &b, c).unwrap() - msm_oracle(&a, &b, c)).abs() < 1e-9);
        let (nu, lambda) = (r.random_range(0.001..1.0), r.random_range(0.0..1.0));
        assert!((twed_distance(&a, &b, nu, lambda).unwrap() - twed_oracle(&a, &b, nu, lambda)).abs() < 1e-9);
        let (eps, delta) = (r.random_range(0.1..2.0), r.random_range(0..n));
        assert_eq!(lcss_distance(&a, &b, eps, delta).unwrap(), lcss_oracle(&a, &b, eps, delta));
    }
}

fn any_spec() -> impl Strategy<Value = DistanceSpec> {
    prop_oneof![
        Just(DistanceSpec::Euclidean),
        (0.0f64..=1.0).prop_map(|w| DistanceSpec::Dtw { w }),
        (0.0f64..=1.0).prop_map(|w| DistanceSpec::Ddtw { w }),
        (0.0f64..1.0).prop_map(|g| DistanceSpec::Wdtw { g }),
        (0.0f64..1.0).prop_map(|g| DistanceSpec::Wddtw { g }),
        (0.01f64..2.0, 0usize..10).prop_map(|(epsilon, delta)| DistanceSpec::Lcss { epsilon, delta }),
        (0.0f64..2.0, 0.0f64..=1.0).prop_map(|(g, w)| DistanceSpec::Erp { g, w }),
        (0.01f64..100.0).prop_map(|c| DistanceSpec::Msm { c }),
        (0.00001f64..1.0, 0.0f64..0.1).prop_map(|(nu, lambda)| DistanceSpec::Twed { nu, lambda }),
    ]
}

fn pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (3usize..25).prop_flat_map(|n| {
        (
            prop::collection::vec(-10.0f64..10.0, n),
            prop::collection::vec(-10.0f64..10.0, n),
        )
    })
}

proptest! {
    #[test]
    fn identity_and_symmetry(spec in any_spec(), (a, b) in pair()) {
        prop_assert_eq!(spec.distance(&a, &a).unwrap(), 0.0);
        let ab = spec.distance(&a, &b).unwrap();
        let ba = spec.distance(&b, &a).unwrap();
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - ba).abs() <= 1e-9 * (1.0 + ab.abs()), "{} {} {}", spec, ab, ba);
    }

    #[test]
    fn dtw_window_monotone((a, b) in pair(), w1 in 0.0f64..=1.0, w2 in 0.0f64..=1.0) {
        let (lo, hi) = if w1 <= w2 { (w1, w2) } else { (w2, w1) };
        prop_assert!(dtw_distance(&a, &b, lo).unwrap() >= dtw_distance(&a, &b, hi).unwrap());
    }

    #[test]
    fn derivative_variants_are_transforms((a, b) in pair(), w in 0.0f64..=1.0, g in 0.0f64..1.0) {
        let (da, db) = (derivative_transform(&a).unwrap(), derivative_transform(&b).unwrap());
        prop_assert_eq!(DistanceSpec::Ddtw { w }.distance(&a, &b).unwrap(), dtw_distance(&da, &db, w).unwrap());
        prop_assert_eq!(DistanceSpec::Wddtw { g }.distance(&a, &b).unwrap(), wdtw_distance(&da, &db, g).unwrap());
    }

    #[test]
    fn wdtw_with_zero_g_is_half_dtw((a, b) in pair()) {
        let half = 0.5 * dtw_distance(&a, &b, 1.0).unwrap();
        prop_assert!((wdtw_distance(&a, &b, 0.0).unwrap() - half).abs() <= 1e-9 * (1.0 + half));
    }

    #[test]
    fn early_abandon_never_changes_small_results(spec in any_spec(), (a, b) in pair(), slack in 0.0f64..2.0) {
        let (pa, pb) = (spec.prepare(&a).unwrap(), spec.prepare(&b).unwrap());
        let exact = spec.distance_prepared(&pa, &pb, f64::INFINITY);
        let cutoff = exact * slack;
        let cut = spec.distance_prepared(&pa, &pb, cutoff);
        if exact <= cutoff {
            prop_assert_eq!(cut, exact);
        } else {
            prop_assert!(cut == exact || cut == f64::INFINITY);
        }
    }
}
