use blowdown::flow::FlowOptions;
use blowdown::geometry::{DiskSpec, RadialProfile};
use blowdown::jacobi::{conjugate_scan, jacobi_field, sprime_closed, sprime_identity_residual};
use blowdown::scalar::linspace;
use std::f64::consts::FRAC_PI_2;

fn disk(k: f64) -> DiskSpec<f64> {
    DiskSpec::new(1.0, k).unwrap()
}

#[test]
fn classifiers_agree_across_the_threshold() {
    let opts = FlowOptions::<f64>::default();
    for (kr2, simple) in [
        (-0.5, true),
        (0.0, true),
        (0.5, true),
        (0.9, true),
        (0.99, true),
        (1.1, false),
        (1.5, false),
    ] {
        let rep = conjugate_scan(&disk(kr2), 64, &opts).unwrap();
        assert!(rep.criteria_agree);
        assert_eq!(rep.is_simple, simple, "kappa R^2 = {kr2}");
        assert_eq!(rep.conjugate_pairs.is_empty(), simple);
        assert_eq!(rep.tangential_zeros(), 0);
        if kr2 > 0.0 {
            assert!((rep.min_sprime - (1.0 - kr2)).abs() < 1e-6);
            assert!(rep.min_sprime_alpha.abs() < 1e-6);
        }
        for p in &rep.conjugate_pairs {
            assert!(p.t > 0.0 && p.t <= p.tau);
        }
    }
}

#[test]
fn threshold_case_has_conjugate_point_at_exit() {
    let rep = conjugate_scan(&disk(1.0), 33, &FlowOptions::default()).unwrap();
    assert!(!rep.is_simple);
    assert!(rep.min_sprime.abs() < 1e-12);
    assert!(rep
        .conjugate_pairs
        .iter()
        .any(|p| p.alpha == 0.0 && (p.t - p.tau).abs() < 1e-9));
}

#[test]
fn sprime_identity_on_dense_grid() {
    let opts = FlowOptions::<f64>::default();
    let grid = linspace(-FRAC_PI_2 + 1e-3 * 1.01, FRAC_PI_2 - 1e-3 * 1.01, 101);
    for k in [-0.5, 0.0, 0.5, 1.0, 1.5] {
        let d = disk(k);
        let worst = grid
            .iter()
            .map(|&a| sprime_identity_residual(&d, a, &opts).unwrap().residual)
            .fold(0.0, f64::max);
        assert!(worst < 1e-5, "kappa {k}: {worst}");
    }
}

#[test]
fn jacobi_field_is_positive_near_glancing() {
    for k in [0.5, 1.0, 1.5] {
        for a in [1.5, -1.5, 1.55, -1.565] {
            let tr = jacobi_field(&disk(k), a, 4096).unwrap();
            assert!(tr.tau < 0.5);
            assert!(tr.b_values.iter().skip(1).all(|&b| b > 0.0));
        }
    }
}

#[test]
fn sprime_is_positive_at_glancing() {
    for k in [-0.9, 0.0, 2.0] {
        assert!(sprime_closed(&disk(k), FRAC_PI_2) > 0.0);
    }
}

#[test]
fn general_profile_scan_uses_difference_quotient() {
    // a(r) = 1 + 0.8 r² + 0.9 r⁴ has s'(0) < 0: conjugate points
    let p = RadialProfile::new(1.0, |s| 0.8 + 0.9 * s, |_| 0.9).unwrap();
    let opts = FlowOptions::<f64>::with_steps(2048);
    let rep = conjugate_scan(&p, 33, &opts).unwrap();
    assert!(!rep.is_simple && rep.criteria_agree);
    let c = sprime_identity_residual(&p, 0.3, &opts).unwrap();
    assert!(c.residual < 1e-5);
    // a mild profile stays simple
    let q = RadialProfile::new(1.0, |s| 0.2 + 0.1 * s, |_| 0.1).unwrap();
    assert!(conjugate_scan(&q, 33, &opts).unwrap().is_simple);
}
