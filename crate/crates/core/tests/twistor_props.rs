use blowdown::twistor::{
    beta_forward, beta_inverse, boundary_jacobian_fd, boundary_jacobian_rescaled, boundary_separation,
    h_c_profile, hermitian_h, hermitian_lower_bound, holomorphicity_residual, holomorphicity_residual_fd,
    sm_restriction,
};
use blowdown::{BallPoint, DiskSpec, FlowOptions, TwistorValue};
use num_complex::Complex;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

type C = Complex<f64>;

const KAPPAS: [f64; 5] = [-0.5, 0.0, 0.5, 1.0, 1.5];

fn disk(kappa: f64) -> DiskSpec<f64> {
    DiskSpec::new(1.0, kappa).unwrap()
}

/// `n × n` grid over the closed chart: `i` runs over `|z|` and `arg ν`,
/// `j` over `arg z` and `|ν|`, with the rim of both discs included.
fn chart_grid(n: usize, z_max: f64, nu_max: f64) -> Vec<BallPoint<f64>> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let s = i as f64 / (n - 1) as f64;
            let t = j as f64 / (n - 1) as f64;
            let z = C::from_polar(z_max * s, TAU * t + 0.1);
            let nu = C::from_polar(nu_max * t, TAU * s + 0.37);
            out.push(BallPoint::new(z, nu));
        }
    }
    out
}

#[test]
fn ad_minus_bc_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let k = rng.gen_range(-0.9..2.0);
        let d = disk(k);
        let z = C::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..TAU));
        let nu = C::from_polar(rng.gen_range(0.0..0.999), rng.gen_range(0.0..TAU));
        let h = hermitian_h(&d, BallPoint::new(z, nu)).unwrap();
        let abc = h.ad_minus_bc();
        assert!((abc - C::new(2.0 + 2.0 * k * z.norm_sqr(), 0.0)).norm() < 1e-12, "{abc} at k={k}");
        assert!(h.h11 >= 0.0 && h.h22 >= 0.0);
    }
}

#[test]
fn exact_lambda_min_has_uniform_margin() {
    for k in KAPPAS {
        let d = disk(k);
        let lb = hermitian_lower_bound(&d);
        assert!(lb > 0.0);
        let min = chart_grid(20, 1.0, 0.99)
            .into_iter()
            .map(|p| hermitian_h(&d, p).unwrap().eigenvalues().0)
            .fold(f64::INFINITY, f64::min);
        assert!(min >= lb, "k={k}: min λ {min} below bound {lb}");
    }
}

#[test]
fn holomorphicity_on_closed_grid() {
    for k in KAPPAS {
        let d = disk(k);
        let mut analytic = 0f64;
        let mut fd = 0f64;
        for p in chart_grid(50, 1.0, 1.0) {
            analytic = analytic.max(holomorphicity_residual(&d, p).max());
            fd = fd.max(holomorphicity_residual_fd(&d, p, 1e-5).max());
        }
        assert!(analytic < 1e-12, "k={k}: analytic {analytic}");
        assert!(fd < 1e-6, "k={k}: fd {fd}");
    }
}

#[test]
fn roundtrip_on_interior_grid() {
    for k in KAPPAS {
        let d = disk(k);
        let mut worst = 0f64;
        for p in chart_grid(20, 0.98, 0.9) {
            let q = beta_inverse(&d, beta_forward(&d, p)).unwrap();
            worst = worst.max((q.z - p.z).norm() + (q.nu - p.nu).norm());
        }
        assert!(worst < 1e-9, "k={k}: {worst}");
    }
}

#[test]
fn w_is_bounded_by_r2() {
    for k in [0.0, 0.5, 1.0, 1.5] {
        let d = disk(k);
        // independent polar grids in z and ν
        let disc: Vec<C> = (0..16)
            .flat_map(|i| (0..32).map(move |j| C::from_polar(i as f64 / 15.0, TAU * j as f64 / 32.0)))
            .collect();
        let max = disc
            .iter()
            .flat_map(|&z| disc.iter().map(move |&nu| BallPoint::new(z, nu)))
            .map(|p| beta_forward(&d, p).w.norm())
            .fold(0f64, f64::max);
        assert!(max > 0.99 * d.r2());
        assert!(max <= d.r2() + 1e-9, "k={k}: {max} > {}", d.r2());
        // attained at z = R, ν = i
        let top = beta_forward(&d, BallPoint::new(C::new(1.0, 0.0), C::new(0.0, 1.0))).w.norm();
        assert!((top - d.r2()).abs() < 1e-12);
    }
}

#[test]
fn h_c_derivative_changes_sign_at_most_once() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let c = C::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let k = rng.gen_range(-0.99..-0.01);
        assert_eq!(h_c_profile(c, k, 0.0).unwrap().1, 1.0);
        let mut changes = 0;
        let mut prev = 1.0f64;
        for i in 1..4000 {
            let u = i as f64 / 4000.0;
            let d = h_c_profile(c, k, u).unwrap().1;
            if d == 0.0 {
                continue;
            }
            if d.signum() != prev.signum() {
                assert!(prev > 0.0, "sign went from - to + at u={u}, c={c}, k={k}");
                changes += 1;
            }
            prev = d;
        }
        assert!(changes <= 1);
    }
}

#[test]
fn w_and_xi_are_constant_along_geodesics() {
    let opts = FlowOptions::default();
    for k in KAPPAS {
        let d = disk(k);
        let w = |r, t, a| sm_restriction(&d, r, t, a).w;
        let xi = |r, t, a| sm_restriction(&d, r, t, a).xi;
        let rw = blowdown::invariants::transport_residual(&d, w, 20, 64, 3, &opts).unwrap();
        let rx = blowdown::invariants::transport_residual(&d, xi, 20, 64, 3, &opts).unwrap();
        assert!(rw < 1e-6 && rx < 1e-6, "k={k}: {rw} {rx}");
    }
}

#[test]
fn boundary_jacobian_squared_form_and_differences() {
    for k in KAPPAS {
        let d = disk(k);
        for i in 0..=40 {
            let a = -FRAC_PI_2 + PI * i as f64 / 40.0;
            let j = boundary_jacobian_rescaled(&d, a);
            assert!(j.squared_residual() < 1e-10 * j.squared_closed_form.max(1.0), "k={k} a={a}");
            assert!(j.rescaled > 0.0);
            if a.cos() > 1e-3 {
                let fd = boundary_jacobian_fd(&d, 0.9, a, 1e-5);
                assert!((fd - j.rescaled).abs() < 1e-6 * j.rescaled, "k={k} a={a}: {fd}");
            }
        }
    }
}

#[test]
fn boundary_is_separated_on_full_grid() {
    for k in KAPPAS {
        let rep = boundary_separation(&disk(k), 64);
        assert!(rep.injective() && rep.min_distance > 1e-3, "k={k}: {rep:?}");
        assert!(rep.ratio_residual < 1e-12);
        assert!(rep.alpha_error < 1e-10 && rep.theta_error < 1e-10, "k={k}: {rep:?}");
    }
}

#[test]
fn out_of_image_values_are_rejected() {
    let d = disk(1.0);
    let sup = chart_grid(40, 1.0, 1.0)
        .into_iter()
        .map(|p| beta_forward(&d, p).xi.norm())
        .fold(0f64, f64::max);
    let t = TwistorValue::new(C::new(0.0, 0.0), C::new(1.01 * sup.max(1.0), 0.0));
    assert!(beta_inverse(&d, t).is_err());
}

proptest! {
    #[test]
    fn prop_roundtrip(k in -0.9f64..1.8, zr in 0.0f64..0.95, zt in 0.0f64..TAU, nr in 0.0f64..0.85, nt in 0.0f64..TAU) {
        let d = disk(k);
        let p = BallPoint::new(C::from_polar(zr, zt), C::from_polar(nr, nt));
        let q = beta_inverse(&d, beta_forward(&d, p)).unwrap();
        prop_assert!((q.z - p.z).norm() < 1e-9 && (q.nu - p.nu).norm() < 1e-9);
    }

    #[test]
    fn prop_holomorphic(k in -0.9f64..2.0, zr in 0.0f64..1.0, zt in 0.0f64..TAU, nr in 0.0f64..1.0, nt in 0.0f64..TAU) {
        let d = disk(k);
        let p = BallPoint::new(C::from_polar(zr, zt), C::from_polar(nr, nt));
        prop_assert!(holomorphicity_residual(&d, p).max() < 1e-12);
    }

    #[test]
    fn prop_sm_restriction_is_chart_pullback(k in -0.9f64..2.0, r in 0.0f64..1.0, t in 0.0f64..TAU, a in -PI..PI) {
        let d = disk(k);
        let s = sm_restriction(&d, r, t, a);
        let f = beta_forward(&d, BallPoint::from_polar(r, t, C::from_polar(1.0, a)));
        prop_assert!(s.distance(&f) < 1e-12);
    }
}
