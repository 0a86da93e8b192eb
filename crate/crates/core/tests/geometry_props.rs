use blowdown::geometry::{DiskSpec, RadialMetric, RadialProfile};
use num_complex::Complex;
use proptest::prelude::*;
use std::f64::consts::TAU;

const KAPPAS: [f64; 5] = [-0.5, 0.0, 0.5, 1.0, 1.5];

#[test]
fn cartesian_metric_matches_polar_form() {
    let mut state = 12345u64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for &k in &KAPPAS {
        let d = DiskSpec::new(1.0, k).unwrap();
        for _ in 0..100 {
            let (r, th) = (next(), TAU * next());
            let g = d.metric_cartesian(r * th.cos(), r * th.sin()).unwrap();
            let dr = [th.cos(), th.sin()];
            let dth = [-r * th.sin(), r * th.cos()];
            let a = d.a(r);
            assert!((g.inner(dr, dr) - a * a).abs() <= 1e-12 * a * a);
            assert!((g.inner(dth, dth) - r * r).abs() <= 1e-12 * r * r.max(1e-300));
            assert!(g.inner(dr, dth).abs() <= 1e-12 * a * r.max(1e-300));
        }
    }
}

#[test]
fn isothermal_roundtrip_on_polar_grid() {
    for &k in &KAPPAS {
        let d = DiskSpec::new(1.0, k).unwrap();
        let mut worst = 0.0f64;
        for i in 0..50 {
            for j in 0..50 {
                let z = Complex::from_polar(i as f64 / 49.0, TAU * j as f64 / 50.0);
                let back = d.isothermal_inverse(d.isothermal(z).unwrap()).unwrap();
                worst = worst.max((back - z).norm());
            }
        }
        assert!(worst < 1e-12, "kappa {k}: {worst}");
    }
}

#[test]
fn frame_is_unit_up_to_the_origin() {
    for &k in &KAPPAS {
        let d = DiskSpec::new(1.0, k).unwrap();
        for n in 0..40 {
            let r = 0.5f64.powi(n);
            for th in [0.0, 0.7, 2.5, 4.0] {
                let (x, y) = (r * f64::cos(th), r * f64::sin(th));
                let e = d.frame_section(x, y).unwrap();
                let g = d.metric_cartesian(x, y).unwrap();
                assert!((g.norm_sq(e) - 1.0).abs() < 1e-12);
            }
        }
        let e0 = d.frame_section(0.0, 0.0).unwrap();
        assert_eq!(e0, [1.0, 0.0]);
    }
}

#[test]
fn flat_curvature_vanishes() {
    let d = DiskSpec::new(2.0, 0.0).unwrap();
    for i in 0..=20 {
        assert_eq!(d.gaussian_curvature(i as f64 / 10.0).unwrap(), 0.0);
    }
}

#[test]
fn curvature_is_continuous() {
    let d = DiskSpec::new(1.0, 1.2).unwrap();
    let mut prev = d.gaussian_curvature(0.0).unwrap();
    for i in 1..=1000 {
        let k = d.gaussian_curvature(i as f64 / 1000.0).unwrap();
        assert!((k - prev).abs() < 1e-2);
        prev = k;
    }
}

#[test]
fn profile_from_model_agrees() {
    let d = DiskSpec::new(1.0, 0.8).unwrap();
    let p = RadialProfile::from_model(&d);
    assert!(p.as_model().is_none());
    for i in 0..=10 {
        let r = i as f64 / 10.0;
        assert!((p.gaussian_curvature(r).unwrap() - d.gaussian_curvature(r).unwrap()).abs() < 1e-14);
        let (c1, dc1) = p.inverse_metric_coeff(r * r);
        let (c2, dc2) = d.inverse_metric_coeff(r * r);
        assert!((c1 - c2).abs() < 1e-14 && (dc1 - dc2).abs() < 1e-14);
    }
}

proptest! {
    #[test]
    fn metric_is_positive_definite(k in -0.99f64..3.0, r in 0.0f64..1.0, th in 0.0f64..TAU) {
        let d = DiskSpec::new(1.0, k).unwrap();
        let g = d.metric_cartesian(r * th.cos(), r * th.sin()).unwrap();
        prop_assert!(g.g11 > 0.0 && g.det() > 0.0);
    }

    #[test]
    fn frame_norm_is_one(k in -0.99f64..3.0, r in 0.0f64..1.0, th in 0.0f64..TAU) {
        let d = DiskSpec::new(1.0, k).unwrap();
        let (x, y) = (r * th.cos(), r * th.sin());
        let e = d.frame_section(x, y).unwrap();
        prop_assert!((d.metric_cartesian(x, y).unwrap().norm_sq(e) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn isothermal_stays_in_r1_disk(k in -0.99f64..3.0, r in 0.0f64..=1.0, th in 0.0f64..TAU) {
        let d = DiskSpec::new(1.0, k).unwrap();
        let zeta = d.isothermal(Complex::from_polar(r, th)).unwrap();
        prop_assert!(zeta.norm() <= d.r1() * (1.0 + 1e-15));
        prop_assert!(d.r2() > d.r1());
    }
}
