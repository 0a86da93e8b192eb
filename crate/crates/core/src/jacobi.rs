//! Jacobi fields `b̈ + K(γ(t)) b = 0`, `b(0) = 0`, `ḃ(0) = 1` along rays
//! issued from the boundary, the identity `s'(α) = b(α, τ(α)) / (2R cosα)`,
//! and a simplicity classifier that decides by the sign of `s'` and cross
//! checks against an explicit search for zeros of `b`.

use crate::error::{Error, Result};
use crate::flow::{integrate_fan, rk4, scattering_function_numeric, FanBeamCoord, FlowOptions, RawPath};
use crate::geometry::{DiskSpec, RadialMetric};
use crate::scalar::{linspace, lit, to_f64, Real};
use rayon::prelude::*;

/// Width in time to which zeros of `b` are bisected.
pub const ZERO_TIME_TOL: f64 = 1e-10;

const ZERO_BISECTIONS: usize = 80;

/// `|b(τ)| ≤ EXIT_ZERO_TOL · R` counts as a zero at the exit point. Through
/// `b(τ) = 2R cosα s'(α)` this matches `s' ≤ SPRIME_TOL` at `α = 0`.
pub const EXIT_ZERO_TOL: f64 = 2e-9;

/// Zeros with `|ḃ|` below this are reported as tangential.
pub const TANGENTIAL_TOL: f64 = 1e-6;

/// `min s'` at or below this classifies the disk as non-simple.
pub const SPRIME_TOL: f64 = 1e-9;

/// Step of the central difference used for `s'` on general profiles.
pub const SPRIME_FD_STEP: f64 = 1e-4;

/// A zero `b(t*) = 0` with `t* ∈ (0, τ]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiZero<T> {
    pub t: T,
    pub b_dot: T,
    /// Set when `ḃ` nearly vanishes too, which the theory rules out.
    pub tangential: bool,
}

/// The Jacobi function along one boundary-issued ray.
#[derive(Clone, Debug)]
pub struct JacobiTrace<T> {
    pub alpha: T,
    pub tau: T,
    pub times: Vec<T>,
    pub b_values: Vec<T>,
    pub b_dot_values: Vec<T>,
    pub b_at_exit: T,
    pub zeros: Vec<JacobiZero<T>>,
}

impl<T: Real> JacobiTrace<T> {
    pub fn has_conjugate_point(&self) -> bool {
        !self.zeros.is_empty()
    }
}

fn locate_zeros<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, raw: &RawPath<T>) -> Vec<JacobiZero<T>> {
    let tol = lit::<T>(ZERO_TIME_TOL);
    let half = lit::<T>(0.5);
    let mut zeros = Vec::new();
    let n = raw.states.len();
    for i in 1..n.saturating_sub(1) {
        let b0 = raw.states[i][4];
        let b1 = raw.states[i + 1][4];
        let crosses = (b0 > T::zero() && b1 < T::zero()) || (b0 < T::zero() && b1 > T::zero());
        let exit_interval = i + 2 == n;
        if !crosses || (exit_interval && b1.abs() <= lit::<T>(EXIT_ZERO_TOL) * metric.radius()) {
            continue;
        }
        let base = &raw.states[i];
        let (mut lo, mut hi) = (T::zero(), raw.times[i + 1] - raw.times[i]);
        // capped, since single precision cannot always reach `tol`
        for _ in 0..ZERO_BISECTIONS {
            if hi - lo <= tol {
                break;
            }
            let mid = half * (lo + hi);
            let bm = rk4(metric, base, mid)[4];
            if (bm > T::zero()) == (b0 > T::zero()) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let h = half * (lo + hi);
        let b_dot = rk4(metric, base, h)[5];
        zeros.push(JacobiZero {
            t: raw.times[i] + h,
            b_dot,
            tangential: b_dot.abs() < lit(TANGENTIAL_TOL),
        });
    }
    let exit = raw.exit();
    if n > 1 && exit[4].abs() <= lit::<T>(EXIT_ZERO_TOL) * metric.radius() {
        zeros.push(JacobiZero {
            t: raw.tau(),
            b_dot: exit[5],
            tangential: exit[5].abs() < lit(TANGENTIAL_TOL),
        });
    }
    zeros
}

fn trace_from_raw<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, alpha: T, raw: &RawPath<T>) -> JacobiTrace<T> {
    JacobiTrace {
        alpha,
        tau: raw.tau(),
        times: raw.times.clone(),
        b_values: raw.states.iter().map(|s| s[4]).collect(),
        b_dot_values: raw.states.iter().map(|s| s[5]).collect(),
        b_at_exit: raw.exit()[4],
        zeros: locate_zeros(metric, raw),
    }
}

/// Jacobi function along the ray `(θ, α)`.
pub fn jacobi_along_ray<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    fb: FanBeamCoord<T>,
    opts: &FlowOptions<T>,
) -> Result<JacobiTrace<T>> {
    let raw = integrate_fan(metric, fb, opts)?;
    Ok(trace_from_raw(metric, fb.alpha, &raw))
}

/// Jacobi function along the ray issued at `θ = 0` with incidence `α`.
pub fn jacobi_field<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    alpha: T,
    step_count: usize,
) -> Result<JacobiTrace<T>> {
    jacobi_along_ray(metric, FanBeamCoord::new(T::zero(), alpha), &FlowOptions::with_steps(step_count))
}

/// `s'(α) = 1 - κR² cos 2α` for the model family.
pub fn sprime_closed<T: Real>(disk: &DiskSpec<T>, alpha: T) -> T {
    T::one() - disk.kappa_r2() * (alpha + alpha).cos()
}

/// `s'(α)` from the closed form when available, otherwise from a central
/// difference of the numeric scattering function.
pub fn sprime_reference<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    alpha: T,
    opts: &FlowOptions<T>,
) -> Result<T> {
    if let Some(model) = metric.as_model() {
        return Ok(sprime_closed(&model, alpha));
    }
    let h = lit::<T>(SPRIME_FD_STEP);
    let probe = FlowOptions {
        glancing_band: opts.glancing_band - h,
        ..*opts
    };
    let up = scattering_function_numeric(metric, alpha + h, &probe)?;
    let down = scattering_function_numeric(metric, alpha - h, &probe)?;
    Ok((up - down) / (h + h))
}

/// Both sides of `s'(α) = b(α, τ(α)) / (2R cosα)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SprimeCheck<T> {
    pub reference: T,
    pub from_jacobi: T,
    pub residual: T,
}

pub fn sprime_identity_residual<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    alpha: T,
    opts: &FlowOptions<T>,
) -> Result<SprimeCheck<T>> {
    opts.check_alpha(alpha)?;
    let trace = jacobi_along_ray(metric, FanBeamCoord::new(T::zero(), alpha), opts)?;
    let reference = sprime_reference(metric, alpha, opts)?;
    let from_jacobi = trace.b_at_exit / (lit::<T>(2.0) * metric.radius() * alpha.cos());
    Ok(SprimeCheck {
        reference,
        from_jacobi,
        residual: (reference - from_jacobi).abs(),
    })
}

/// A conjugate pair: the boundary point of the ray `α` and `γ(t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjugatePair<T> {
    pub alpha: T,
    pub t: T,
    pub tau: T,
    pub tangential: bool,
}

/// Outcome of [`conjugate_scan`].
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicityReport<T> {
    /// Decided by the sign of `min s'`.
    pub is_simple: bool,
    pub min_sprime: T,
    pub min_sprime_alpha: T,
    pub conjugate_pairs: Vec<ConjugatePair<T>>,
    pub simple_by_sprime: bool,
    pub simple_by_jacobi: bool,
    pub criteria_agree: bool,
    pub grid_size: usize,
}

impl<T: Real> SimplicityReport<T> {
    pub fn to_f64(&self) -> SimplicityReport<f64> {
        SimplicityReport {
            is_simple: self.is_simple,
            min_sprime: to_f64(self.min_sprime),
            min_sprime_alpha: to_f64(self.min_sprime_alpha),
            conjugate_pairs: self
                .conjugate_pairs
                .iter()
                .map(|p| ConjugatePair {
                    alpha: to_f64(p.alpha),
                    t: to_f64(p.t),
                    tau: to_f64(p.tau),
                    tangential: p.tangential,
                })
                .collect(),
            simple_by_sprime: self.simple_by_sprime,
            simple_by_jacobi: self.simple_by_jacobi,
            criteria_agree: self.criteria_agree,
            grid_size: self.grid_size,
        }
    }

    pub fn tangential_zeros(&self) -> usize {
        self.conjugate_pairs.iter().filter(|p| p.tangential).count()
    }
}

/// Golden section refinement of a minimum bracketed by `[lo, hi]`.
fn refine_minimum<T: Real, F: Fn(T) -> Result<T>>(f: F, lo: T, hi: T) -> Result<(T, T)> {
    let g = lit::<T>((5f64.sqrt() - 1.0) / 2.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
        if b - a <= T::epsilon() * lit(4.0) {
            break;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

/// Scans `α` over `[-π/2 + δ, π/2 - δ]` on an odd symmetric grid, records
/// every Jacobi zero and `min s'`, and classifies simplicity both ways.
///
/// Returns [`Error::InconsistentClassifier`] when the two criteria disagree.
pub fn conjugate_scan<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    alpha_grid_size: usize,
    opts: &FlowOptions<T>,
) -> Result<SimplicityReport<T>> {
    if alpha_grid_size < 16 {
        return Err(crate::error::domain("alpha grid size", alpha_grid_size as f64, ">= 16"));
    }
    // odd, so that the symmetric grid contains α = 0
    let n = alpha_grid_size | 1;
    // stay strictly inside the band after rounding, also in single precision
    let nudge = (opts.glancing_band * lit(1e-9)).max(T::epsilon() * lit(4.0));
    let edge = T::FRAC_PI_2() - opts.glancing_band - nudge;
    let grid = linspace(-edge, edge, n);
    let rows = grid
        .par_iter()
        .map(|&alpha| {
            let trace = jacobi_along_ray(metric, FanBeamCoord::new(T::zero(), alpha), opts)?;
            let sp = sprime_reference(metric, alpha, opts)?;
            Ok((alpha, trace, sp))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut conjugate_pairs = Vec::new();
    let mut best = 0;
    for (j, (alpha, trace, sp)) in rows.iter().enumerate() {
        if *sp < rows[best].2 {
            best = j;
        }
        conjugate_pairs.extend(trace.zeros.iter().map(|z| ConjugatePair {
            alpha: *alpha,
            t: z.t,
            tau: trace.tau,
            tangential: z.tangential,
        }));
    }
    let (mut min_alpha, mut min_sprime) = (rows[best].0, rows[best].2);
    if best > 0 && best + 1 < rows.len() {
        let (a, v) = refine_minimum(
            |al| sprime_reference(metric, al, opts),
            rows[best - 1].0,
            rows[best + 1].0,
        )?;
        if v < min_sprime {
            min_alpha = a;
            min_sprime = v;
        }
    }

    let simple_by_sprime = min_sprime > lit(SPRIME_TOL);
    let simple_by_jacobi = conjugate_pairs.is_empty();
    let report = SimplicityReport {
        is_simple: simple_by_sprime,
        min_sprime,
        min_sprime_alpha: min_alpha,
        conjugate_pairs,
        simple_by_sprime,
        simple_by_jacobi,
        criteria_agree: simple_by_sprime == simple_by_jacobi,
        grid_size: n,
    };
    if !report.criteria_agree {
        log::warn!(
            "simplicity criteria disagree: min s' = {}, {} Jacobi zeros",
            report.min_sprime,
            report.conjugate_pairs.len()
        );
        return Err(Error::InconsistentClassifier(Box::new(report.to_f64())));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(kappa: f64) -> DiskSpec<f64> {
        DiskSpec::new(1.0, kappa).unwrap()
    }

    #[test]
    fn flat_jacobi_field_is_time() {
        let tr = jacobi_field(&disk(0.0), 0.4, 4096).unwrap();
        assert_eq!(tr.b_values[0], 0.0);
        assert_eq!(tr.b_dot_values[0], 1.0);
        for (t, b) in tr.times.iter().zip(&tr.b_values) {
            assert!((t - b).abs() < 1e-10);
        }
        assert!((tr.b_at_exit - 2.0 * 0.4f64.cos()).abs() < 1e-10);
        assert!(tr.zeros.is_empty());
    }

    #[test]
    fn exit_values_follow_sprime() {
        let tr = jacobi_field(&disk(1.0), 0.0, 4096).unwrap();
        assert!(tr.b_at_exit.abs() < 1e-9);
        assert_eq!(tr.zeros.len(), 1);
        let tr = jacobi_field(&disk(0.5), 0.0, 4096).unwrap();
        assert!((tr.b_at_exit - 1.0).abs() < 1e-8);
    }

    #[test]
    fn interior_zero_for_large_curvature() {
        let tr = jacobi_field(&disk(1.5), 0.0, 4096).unwrap();
        assert_eq!(tr.zeros.len(), 1);
        let z = tr.zeros[0];
        assert!(z.t > 0.0 && z.t < tr.tau);
        assert!(z.b_dot < 0.0 && !z.tangential);
    }

    #[test]
    fn sprime_closed_examples() {
        assert_eq!(sprime_closed(&disk(0.0), 0.3), 1.0);
        assert!((sprime_closed(&disk(0.7), std::f64::consts::FRAC_PI_2) - 1.7).abs() < 1e-15);
        assert!((sprime_closed(&disk(1.5), 0.0) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn identity_examples() {
        let opts = FlowOptions::default();
        assert!(sprime_identity_residual(&disk(0.0), 0.2, &opts).unwrap().residual < 1e-9);
        assert!(sprime_identity_residual(&disk(0.5), 0.0, &opts).unwrap().residual < 1e-5);
        let c = sprime_identity_residual(&disk(1.5), 0.0, &opts).unwrap();
        assert!(c.residual < 1e-5);
        assert!((c.from_jacobi + 0.5).abs() < 1e-5);
    }

    #[test]
    fn scan_examples() {
        let opts = FlowOptions::with_steps(1024);
        let r = conjugate_scan(&disk(0.5), 17, &opts).unwrap();
        assert!(r.is_simple && r.conjugate_pairs.is_empty());
        assert!((r.min_sprime - 0.5).abs() < 1e-12);
        let r = conjugate_scan(&disk(1.5), 17, &opts).unwrap();
        assert!(!r.is_simple && !r.conjugate_pairs.is_empty());
        assert!(r.conjugate_pairs.iter().any(|p| p.alpha.abs() < 0.3));
        assert!(conjugate_scan(&disk(-0.5), 17, &opts).unwrap().is_simple);
        assert!(conjugate_scan(&disk(0.5), 8, &opts).is_err());
    }

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (a, v) = refine_minimum(|x: f64| Ok((x - 0.3) * (x - 0.3) + 2.0), 0.0, 1.0).unwrap();
        assert!((a - 0.3).abs() < 1e-7 && (v - 2.0).abs() < 1e-14);
    }
}
