use blowdown::flow::{
    cross, integrate_fan_ray, integrate_geodesic, scattering_function_closed, scattering_function_numeric,
    scattering_function_spread, scattering_quadrature_oracle, scattering_relation_numeric, FanBeamCoord,
    FlowOptions, PolarPoint,
};
use blowdown::geometry::{DiskSpec, RadialMetric, RadialProfile};
use blowdown::scalar::{linspace, wrap_pi};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

const KAPPAS: [f64; 5] = [-0.5, 0.0, 0.5, 1.0, 1.5];

fn disk(k: f64) -> DiskSpec<f64> {
    DiskSpec::new(1.0, k).unwrap()
}

fn quartic_profile() -> RadialProfile<f64> {
    RadialProfile::new(1.0, |s| 0.5 + 0.3 * s, |_| 0.3).unwrap()
}

#[test]
fn conservation_along_random_geodesics() {
    let opts = FlowOptions::<f64>::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for &k in &KAPPAS {
        let d = disk(k);
        for _ in 0..25 {
            let pp = PolarPoint {
                r: rng.gen_range(0.0..0.95),
                theta: rng.gen_range(0.0..TAU),
                phi: rng.gen_range(0.0..TAU),
            };
            let tr = integrate_geodesic(&d, pp.to_phase(&d), opts.steps).unwrap();
            assert!(tr.clairaut_drift < 1e-9 * tr.tau.max(1.0), "kappa {k}");
            assert!(tr.speed_drift < 1e-9 * tr.tau.max(1.0), "kappa {k}");
            assert!((tr.exit().radius() - 1.0).abs() < 1e-10);
            assert!(tr.times.windows(2).all(|w| w[1] > w[0]));
        }
    }
}

#[test]
fn involution_on_boundary_grid() {
    let opts = FlowOptions::<f64>::default();
    for &k in &KAPPAS {
        let d = disk(k);
        for j in 0..64 {
            let th = TAU * j as f64 / 64.0;
            let al = -1.4 + 2.8 * ((j * 37) % 64) as f64 / 63.0;
            let fb = FanBeamCoord::new(th, al);
            let out = scattering_relation_numeric(&d, fb, &opts).unwrap();
            assert!((out.alpha - (PI - al)).abs() < 1e-8);
            let back = scattering_relation_numeric(&d, out, &opts).unwrap();
            assert!(wrap_pi(back.theta - th).abs() < 1e-8, "kappa {k} theta {th} alpha {al}");
            assert!(wrap_pi(back.alpha - al).abs() < 1e-8);
        }
    }
}

#[test]
fn numeric_scattering_matches_closed_form() {
    let opts = FlowOptions::<f64>::default();
    let grid = linspace(-FRAC_PI_2 + 0.01, FRAC_PI_2 - 0.01, 41);
    for &k in &KAPPAS {
        let d = disk(k);
        for &al in &grid {
            let s = scattering_function_numeric(&d, al, &opts).unwrap();
            assert!((s - scattering_function_closed(&d, al)).abs() < 1e-8, "kappa {k} alpha {al}");
            let q = scattering_quadrature_oracle(&d, al).unwrap();
            assert!((q - scattering_function_closed(&d, al)).abs() < 1e-10);
        }
    }
}

#[test]
fn scattering_is_odd_and_theta_independent() {
    let opts = FlowOptions::<f64>::default();
    for &k in &KAPPAS {
        let d = disk(k);
        for al in [0.1, 0.6, 1.2, 1.5] {
            let (mean, spread) = scattering_function_spread(&d, al, &opts).unwrap();
            assert!(spread < 1e-9);
            let minus = scattering_function_numeric(&d, -al, &opts).unwrap();
            assert!((mean + minus).abs() < 1e-8);
        }
    }
}

#[test]
fn euclidean_exit_times_are_chords() {
    let d = disk(0.0);
    let opts = FlowOptions::<f64>::default();
    for al in linspace(-1.5, 1.5, 13) {
        let c = cross(&d, FanBeamCoord::new(0.4, al), &opts).unwrap();
        assert!((c.tau - 2.0 * al.cos()).abs() < 1e-12);
    }
}

#[test]
fn general_profile_numeric_matches_quadrature() {
    let p = quartic_profile();
    let opts = FlowOptions::<f64>::default();
    for al in linspace(-1.5, 1.5, 21) {
        let s = scattering_function_numeric(&p, al, &opts).unwrap();
        let q = scattering_quadrature_oracle(&p, al).unwrap();
        assert!((s - q).abs() < 1e-8, "alpha {al}: {s} vs {q}");
    }
}

#[test]
fn general_profile_trajectories_exit() {
    let p = quartic_profile();
    let opts = FlowOptions::<f64>::default();
    let tr = integrate_fan_ray(&p, FanBeamCoord::new(1.0, 0.3), &opts).unwrap();
    assert!(tr.tau.is_finite() && tr.tau > 0.0);
    assert!((tr.exit().radius() - p.radius()).abs() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exit_angle_reflects_incidence(k in -0.9f64..2.0, th in 0.0f64..TAU, al in -1.5f64..1.5) {
        let d = DiskSpec::new(1.0, k).unwrap();
        let c = cross(&d, FanBeamCoord::new(th, al), &FlowOptions::with_steps(2048)).unwrap();
        prop_assert!((c.outgoing.alpha - (PI - al)).abs() < 1e-8);
        let s = scattering_function_closed(&d, al);
        prop_assert!(wrap_pi(c.outgoing.theta - th - PI - 2.0 * s).abs() < 1e-7);
    }
}
