use crate::check::{all_passed, Check};
use crate::config::RunConfig;
use crate::error::CliResult;
use blowdown::twistor::{
    beta_forward, beta_inverse, boundary_jacobian_fd, boundary_jacobian_rescaled, boundary_separation,
    hermitian_h, hermitian_lower_bound, holomorphicity_residual, holomorphicity_residual_fd,
};
use blowdown::{BallPoint64, Error, TwistorValue64};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

pub const HOLO_TOL: f64 = 1e-12;
pub const HOLO_FD_TOL: f64 = 1e-6;
pub const HOLO_FD_STEP: f64 = 1e-5;
pub const ROUNDTRIP_TOL: f64 = 1e-9;
pub const AD_BC_TOL: f64 = 1e-12;
pub const JACOBIAN_TOL: f64 = 1e-10;
pub const JACOBIAN_FD_TOL: f64 = 1e-6;
pub const RATIO_TOL: f64 = 1e-12;
pub const RECOVERY_TOL: f64 = 1e-10;
/// Random points for the `ad - bc` identity.
pub const AD_BC_SAMPLES: usize = 1000;
/// Side of the `(θ, α)` boundary grid for the separation check.
pub const SEPARATION_GRID: usize = 64;
/// Side of the interior roundtrip grid.
pub const ROUNDTRIP_GRID: usize = 20;
/// Incidence samples of the boundary Jacobian on `[-π/2, π/2]`.
pub const JACOBIAN_SAMPLES: usize = 181;

/// `n × n` chart points pairing `|z|` with `arg ν` and `arg z` with `|ν|`
/// so that both rims are covered.
pub fn chart_grid(n: usize, z_max: f64, nu_max: f64) -> Vec<BallPoint64> {
    let n = n.max(2);
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let s = i as f64 / (n - 1) as f64;
            let t = j as f64 / (n - 1) as f64;
            let z = Complex64::from_polar(z_max * s, TAU * t + 0.1);
            let nu = Complex64::from_polar(nu_max * t, TAU * s + 0.37);
            out.push(BallPoint64::new(z, nu));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub radius: f64,
    pub kappa: f64,
    pub checks: Vec<Check>,
    /// Largest relative distance of the rescaled Jacobian from the
    /// unsquared modulus `4R²|e^{κR²(1-e^{2iα})}|`. Reported, not checked:
    /// the partials give the squared modulus.
    pub unsquared_jacobian_residual: f64,
    pub passed: bool,
}

fn holomorphicity(cfg: &RunConfig, grid: usize) -> (f64, f64) {
    let r = cfg.radius();
    chart_grid(grid, r, 1.0).into_iter().fold((0.0, 0.0), |(a, f), p| {
        (
            a.max(holomorphicity_residual(&cfg.disk, p).max()),
            f.max(holomorphicity_residual_fd(&cfg.disk, p, HOLO_FD_STEP * r).max()),
        )
    })
}

fn roundtrip(cfg: &RunConfig) -> CliResult<f64> {
    let mut worst = 0f64;
    for p in chart_grid(ROUNDTRIP_GRID, 0.98 * cfg.radius(), 0.9) {
        let q = beta_inverse(&cfg.disk, beta_forward(&cfg.disk, p))?;
        worst = worst.max((q.z - p.z).norm() + (q.nu - p.nu).norm());
    }
    Ok(worst)
}

/// Relative `ad - bc` error at random points and the smallest exact
/// `λ_min` over a grid.
fn hermitian(cfg: &RunConfig) -> CliResult<(f64, f64)> {
    let r = cfg.radius();
    let k = cfg.kappa();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ad_bc = 0f64;
    for _ in 0..AD_BC_SAMPLES {
        let z = Complex64::from_polar(r * rng.gen_range(0.0..1.0), rng.gen_range(0.0..TAU));
        let nu = Complex64::from_polar(rng.gen_range(0.0..0.999), rng.gen_range(0.0..TAU));
        let h = hermitian_h(&cfg.disk, BallPoint64::new(z, nu))?;
        let expected = 2.0 + 2.0 * k * z.norm_sqr();
        ad_bc = ad_bc.max((h.ad_minus_bc() - expected).norm() / expected.abs().max(1.0));
    }
    let mut lmin = f64::INFINITY;
    for p in chart_grid(20, r, 0.99) {
        lmin = lmin.min(hermitian_h(&cfg.disk, p)?.eigenvalues().0);
    }
    Ok((ad_bc, lmin))
}

/// Relative residuals against the squared and unsquared closed forms and
/// against finite differences.
fn jacobian(cfg: &RunConfig) -> (f64, f64, f64) {
    let (mut sq, mut unsq, mut fd) = (0f64, 0f64, 0f64);
    for i in 0..JACOBIAN_SAMPLES {
        let a = -FRAC_PI_2 + PI * i as f64 / (JACOBIAN_SAMPLES - 1) as f64;
        let j = boundary_jacobian_rescaled(&cfg.disk, a);
        sq = sq.max(j.squared_residual() / j.squared_closed_form);
        unsq = unsq.max(j.unsquared_residual() / j.unsquared_closed_form);
        if a.cos() > 1e-3 {
            let f = boundary_jacobian_fd(&cfg.disk, 0.9, a, 1e-5);
            fd = fd.max((f - j.rescaled).abs() / j.rescaled);
        }
    }
    (sq, unsq, fd)
}

/// Runs the holomorphicity, roundtrip, Hermitian form, boundary Jacobian and
/// boundary separation suites; `grid` is the side of the holomorphicity grid.
pub fn verify(cfg: &RunConfig, grid: usize) -> CliResult<VerifyReport> {
    let (holo, holo_fd) = holomorphicity(cfg, grid);
    let rt = roundtrip(cfg)?;
    let (ad_bc, lmin) = hermitian(cfg)?;
    let bound = hermitian_lower_bound(&cfg.disk);
    let (jac_sq, jac_unsq, jac_fd) = jacobian(cfg);
    let sep = boundary_separation(&cfg.disk, SEPARATION_GRID);
    let checks = vec![
        Check::below("holomorphicity_analytic", holo, HOLO_TOL),
        Check::below("holomorphicity_fd", holo_fd, HOLO_FD_TOL),
        Check::below("roundtrip", rt, ROUNDTRIP_TOL),
        Check::below("ad_minus_bc", ad_bc, AD_BC_TOL),
        Check::above("lambda_min_lower_bound", bound, 0.0),
        Check::above("lambda_min_over_bound", lmin - bound, 0.0),
        Check::below("boundary_jacobian_squared_form", jac_sq, JACOBIAN_TOL),
        Check::below("boundary_jacobian_fd", jac_fd, JACOBIAN_FD_TOL),
        Check::below("boundary_ratio", sep.ratio_residual, RATIO_TOL),
        Check::below("boundary_alpha_recovery", sep.alpha_error, RECOVERY_TOL),
        Check::below("boundary_theta_recovery", sep.theta_error, RECOVERY_TOL),
        Check::above("boundary_min_distance", sep.min_distance, 0.0),
    ];
    Ok(VerifyReport {
        radius: cfg.radius(),
        kappa: cfg.kappa(),
        passed: all_passed(&checks),
        checks,
        unsquared_jacobian_residual: jac_unsq,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvertStatus {
    Ok,
    NotInImage,
    BoundaryDegenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvertReport {
    pub status: InvertStatus,
    pub w: [f64; 2],
    pub xi: [f64; 2],
    pub z: Option<[f64; 2]>,
    pub nu: Option<[f64; 2]>,
    /// `|β(z, ν) - (w, ξ)|` for the recovered point.
    pub roundtrip_error: Option<f64>,
    pub message: Option<String>,
}

impl InvertReport {
    pub fn passed(&self) -> bool {
        self.status == InvertStatus::Ok
    }
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

/// Inverts `β` at `(w, ξ)`. Values outside the image are reported with a
/// status rather than returned as errors.
pub fn invert(cfg: &RunConfig, w: Complex64, xi: Complex64) -> CliResult<InvertReport> {
    let t = TwistorValue64::new(w, xi);
    let mut rep = InvertReport {
        status: InvertStatus::Ok,
        w: pair(w),
        xi: pair(xi),
        z: None,
        nu: None,
        roundtrip_error: None,
        message: None,
    };
    match beta_inverse(&cfg.disk, t) {
        Ok(p) => {
            rep.z = Some(pair(p.z));
            rep.nu = Some(pair(p.nu));
            rep.roundtrip_error = Some(beta_forward(&cfg.disk, p).distance(&t));
        }
        Err(e @ Error::NotInImage { .. }) => {
            rep.status = InvertStatus::NotInImage;
            rep.message = Some(e.to_string());
        }
        Err(e @ Error::BoundaryDegenerate) => {
            rep.status = InvertStatus::BoundaryDegenerate;
            rep.message = Some(e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(rep)
}
