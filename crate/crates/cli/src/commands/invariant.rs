use crate::check::{all_passed, Check};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use blowdown::invariants::{
    bottom_mode_expected, build_invariant, eta_minus_residual, fiber_fourier, transport_residual,
};
use blowdown::HoloDifferential64;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::TAU;

pub const TRANSPORT_TOL: f64 = 1e-6;
pub const MODE_TOL: f64 = 1e-8;
pub const BOTTOM_TOL: f64 = 1e-8;
pub const PARSEVAL_TOL: f64 = 1e-10;
pub const ETA_TOL: f64 = 1e-5;
/// Fiber samples per base point.
pub const FIBER_SAMPLES: usize = 256;
pub const BASE_POINTS: usize = 20;
/// Central difference samples per geodesic.
pub const TRANSPORT_SAMPLES: usize = 64;
pub const ETA_STEP: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub m: u32,
    pub coeffs: Vec<[f64; 2]>,
    pub warnings: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Builds `u = ξ^m A(w)` on `SM` and checks transport invariance along
/// `n_geodesics` random rays, vanishing of the modes below `m`, the bottom
/// mode, Parseval and the `η₋` identity on random base points.
pub fn invariant(cfg: &RunConfig, m: u32, coeffs: &[Complex64], n_geodesics: usize) -> CliResult<InvariantReport> {
    if n_geodesics == 0 {
        return Err(CliError::Usage("--grid (number of geodesics) must be positive".into()));
    }
    let disk = cfg.disk;
    let r = cfg.radius();
    let diff = HoloDifferential64::new(m, coeffs.to_vec());
    let u = build_invariant(&disk, diff.clone());
    let eval = |r, t, a| u.eval(r, t, a);
    let transport = transport_residual(&disk, eval, n_geodesics, TRANSPORT_SAMPLES, cfg.seed, &cfg.flow())?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut modes, mut bottom, mut parseval) = (0f64, 0f64, 0f64);
    let mut eta_points = Vec::with_capacity(BASE_POINTS);
    for _ in 0..BASE_POINTS {
        let (rr, th) = (r * rng.gen_range(0.0..1.0), rng.gen_range(0.0..TAU));
        let sp = fiber_fourier(eval, rr, th, FIBER_SAMPLES)?;
        modes = modes.max(sp.max_below(m as i64));
        // the fiber transform has its phase origin at α = 0
        bottom = bottom.max((sp.mode(m as i64) - bottom_mode_expected(&disk, &diff, rr, th, 0.0)).norm());
        parseval = parseval.max(sp.parseval_defect());
        let er = r * (0.02 + 0.95 * rng.gen_range(0.0..1.0));
        eta_points.push((er, th, rng.gen_range(-3.0..3.0)));
    }
    let eta = eta_minus_residual(&disk, &diff, &eta_points, ETA_STEP * r)?;
    let checks = vec![
        Check::below("transport_residual", transport, TRANSPORT_TOL),
        Check::below("modes_below_m", modes, MODE_TOL),
        Check::below("bottom_mode", bottom, BOTTOM_TOL),
        Check::below("parseval", parseval, PARSEVAL_TOL),
        Check::below("eta_minus", eta, ETA_TOL),
    ];
    Ok(InvariantReport {
        m,
        coeffs: coeffs.iter().map(|c| [c.re, c.im]).collect(),
        warnings: u.warnings.clone(),
        passed: all_passed(&checks),
        checks,
    })
}
