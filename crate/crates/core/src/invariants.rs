//! Geodesically invariant, fiberwise holomorphic functions on `SM` built as
//! `u = ξ^m A(w)` from a holomorphic differential `A(ζ) dζ^m`, together with
//! the fiberwise Fourier analysis and transport checks that verify them.
//!
//! Functions on `SM` are evaluated in the polar chart `(r, θ, α)`, where the
//! unit vector is `cos α 𝖾_r + sin α 𝖾_θ`.

use crate::error::{domain, Result};
use crate::flow::{integrate_fan_ray, FanBeamCoord, FlowOptions};
use crate::geometry::{DiskSpec, RadialMetric};
use crate::scalar::{lit, to_f64, Real};
use crate::twistor::sm_restriction;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::{FftNum, FftPlanner};

/// Smallest radius at which the polar form of `η₋` is applied.
pub const ETA_MIN_RADIUS: f64 = 1e-2;

/// Incidence angles of random transport rays stay this far from glancing.
const TRANSPORT_MARGIN: f64 = 0.05;

/// A holomorphic differential `A(ζ) dζ^m` with polynomial `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct HoloDifferential<T> {
    pub m: u32,
    /// `A_0, …, A_d`.
    pub coeffs: Vec<Complex<T>>,
    /// Arguments of `A` beyond this radius trigger a warning.
    pub declared_radius: T,
}

impl<T: Real> HoloDifferential<T> {
    pub fn new(m: u32, coeffs: Vec<Complex<T>>) -> Self {
        Self {
            m,
            coeffs,
            declared_radius: T::infinity(),
        }
    }

    pub fn with_radius(mut self, radius: T) -> Self {
        self.declared_radius = radius;
        self
    }

    pub fn from_real(m: u32, coeffs: &[f64]) -> Self {
        Self::new(m, coeffs.iter().map(|&c| Complex::new(lit(c), T::zero())).collect())
    }

    /// `A(w)` by Horner's rule.
    pub fn eval_a(&self, w: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * w + c)
    }
}

/// `u(r, θ, α) = ξ|SM^m · A(w|SM)`.
#[derive(Clone, Debug)]
pub struct InvariantFunction<T> {
    pub disk: DiskSpec<T>,
    pub diff: HoloDifferential<T>,
    /// Non-fatal notes about the hypotheses under which `u` is invariant.
    pub warnings: Vec<String>,
}

impl<T: Real> InvariantFunction<T> {
    pub fn eval(&self, r: T, theta: T, alpha: T) -> Complex<T> {
        let v = sm_restriction(&self.disk, r, theta, alpha);
        v.xi.powu(self.diff.m) * self.diff.eval_a(v.w)
    }
}

/// Upper bound of `|w|` on `SM`: `R₂ = 2R e^{κR²}` for `κ ≥ 0`, `2R` otherwise.
pub fn w_bound<T: Real>(disk: &DiskSpec<T>) -> T {
    if disk.kappa() >= T::zero() {
        disk.r2()
    } else {
        lit::<T>(2.0) * disk.radius()
    }
}

/// Builds `u = ξ^m A(w)` restricted to `SM`. For `κ < 0` the function is
/// still returned, with a warning, since invariance is only claimed for `κ ≥ 0`.
pub fn build_invariant<T: Real>(disk: &DiskSpec<T>, diff: HoloDifferential<T>) -> InvariantFunction<T> {
    let mut warnings = Vec::new();
    if disk.kappa() < T::zero() {
        warnings.push(format!(
            "kappa = {} < 0: the construction is evaluated but its invariance is not covered by the theory",
            disk.kappa()
        ));
    }
    let bound = w_bound(disk);
    if diff.declared_radius < bound {
        warnings.push(format!(
            "|w| reaches {} on SM, beyond the declared radius {} of A",
            bound, diff.declared_radius
        ));
    }
    if diff.coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        warnings.push("A has non-finite coefficients".to_string());
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    InvariantFunction {
        disk: *disk,
        diff,
        warnings,
    }
}

/// Lowest admissible Fourier mode of [`build_invariant`]:
/// `(e^{iα} e^{iθ} e^{κr²/2})^m A(r e^{iθ} e^{κr²/2})`.
pub fn bottom_mode_expected<T: Real>(disk: &DiskSpec<T>, diff: &HoloDifferential<T>, r: T, theta: T, alpha: T) -> Complex<T> {
    let g = (disk.kappa() * r * r / lit(2.0)).exp();
    let zeta = Complex::from_polar(r * g, theta);
    Complex::from_polar(g, alpha + theta).powu(diff.m) * diff.eval_a(zeta)
}

/// Fourier modes of `α ↦ u(r, θ, α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSpectrum<T> {
    pub r: T,
    pub theta: T,
    pub k_max: usize,
    /// `u_k` for `k = -k_max ..= k_max`.
    pub modes: Vec<Complex<T>>,
    /// Mean of `|u|²` over the samples.
    pub sample_power: T,
    /// `Σ |u_k|²` over every discrete mode, retained or not.
    pub spectral_power: T,
}

impl<T: Real> FourierSpectrum<T> {
    /// `u_k`, zero outside the retained band.
    pub fn mode(&self, k: i64) -> Complex<T> {
        if k.unsigned_abs() as usize > self.k_max {
            return Complex::new(T::zero(), T::zero());
        }
        self.modes[(k + self.k_max as i64) as usize]
    }

    pub fn parseval_defect(&self) -> T {
        (self.sample_power - self.spectral_power).abs()
    }

    /// `max_{k < m} |u_k|` over the retained band.
    pub fn max_below(&self, m: i64) -> T {
        (-(self.k_max as i64)..m)
            .map(|k| self.mode(k).norm())
            .fold(T::zero(), T::max)
    }
}

/// Samples `u` at `n_samples` equispaced fiber angles over `(r, θ)` and returns
/// the modes `u_k = (1/n) Σ u(α_j) e^{-ikα_j}` for `|k| ≤ n/4`.
pub fn fiber_fourier<T, F>(u: F, r: T, theta: T, n_samples: usize) -> Result<FourierSpectrum<T>>
where
    T: Real + FftNum,
    F: Fn(T, T, T) -> Complex<T>,
{
    if n_samples < 64 || !n_samples.is_power_of_two() {
        return Err(domain("fiber samples", n_samples as f64, "a power of two >= 64"));
    }
    let n = n_samples;
    let mut buf: Vec<Complex<T>> = (0..n)
        .map(|j| u(r, theta, T::TAU() * lit(j as f64 / n as f64)))
        .collect();
    let sample_power = buf.iter().fold(T::zero(), |s, v| s + v.norm_sqr()) / lit(n as f64);
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = T::one() / lit(n as f64);
    for v in buf.iter_mut() {
        *v = *v * scale;
    }
    let spectral_power = buf.iter().fold(T::zero(), |s, v| s + v.norm_sqr());
    let k_max = n / 4;
    let modes = (-(k_max as i64)..=k_max as i64)
        .map(|k| buf[k.rem_euclid(n as i64) as usize])
        .collect();
    Ok(FourierSpectrum {
        r,
        theta,
        k_max,
        modes,
        sample_power,
        spectral_power,
    })
}

/// Largest `|du/dt|` along `n_geodesics` random boundary-issued geodesics,
/// estimated by central differences at `n_samples` points of each. Rays are
/// drawn from a ChaCha8 stream seeded with `seed`.
pub fn transport_residual<T, M, F>(
    metric: &M,
    u: F,
    n_geodesics: usize,
    n_samples: usize,
    seed: u64,
    opts: &FlowOptions<T>,
) -> Result<T>
where
    T: Real,
    M: RadialMetric<T> + ?Sized,
    F: Fn(T, T, T) -> Complex<T> + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edge = std::f64::consts::FRAC_PI_2 - TRANSPORT_MARGIN;
    let rays: Vec<FanBeamCoord<T>> = (0..n_geodesics)
        .map(|_| {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let alpha = rng.gen_range(-edge..edge);
            FanBeamCoord::new(lit(theta), lit(alpha))
        })
        .collect();
    let worst = rays
        .par_iter()
        .map(|&fb| {
            let tr = integrate_fan_ray(metric, fb, opts)?;
            let vals: Vec<Complex<T>> = tr
                .states
                .iter()
                .map(|p| {
                    let q = p.polar(metric);
                    u(q.r, q.theta, q.phi)
                })
                .collect();
            // probes spread evenly over the interior samples 1..=interior
            let interior = vals.len().saturating_sub(2);
            let picks = n_samples.max(1).min(interior);
            let mut worst = T::zero();
            for s in 0..picks {
                let j = if picks == 1 {
                    1 + interior / 2
                } else {
                    1 + s * (interior - 1) / (picks - 1)
                };
                let j = j.min(interior);
                let dt = tr.times[j + 1] - tr.times[j - 1];
                worst = worst.max(((vals[j + 1] - vals[j - 1]) / dt).norm());
            }
            Ok(worst)
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(worst.into_iter().fold(T::zero(), T::max))
}

/// `η₋ = (e^{-iα}/2)(𝖾_r + i𝖾_θ - i/(r a) ∂α)` applied by central differences
/// with step `h` to the bottom mode, maximised over `points = (r, θ, α)`.
pub fn eta_minus_residual<T: Real>(
    disk: &DiskSpec<T>,
    diff: &HoloDifferential<T>,
    points: &[(T, T, T)],
    h: T,
) -> Result<T> {
    let big_r = disk.radius();
    let i = Complex::new(T::zero(), T::one());
    let half = lit::<T>(0.5);
    let mut worst = T::zero();
    for &(r, theta, alpha) in points {
        if r < lit(ETA_MIN_RADIUS) || r + h > big_r {
            return Err(domain("eta_- sample radius", to_f64(r), "[1e-2, R - h]"));
        }
        let u = |r, t, a| bottom_mode_expected(disk, diff, r, t, a);
        let two_h = h + h;
        let du_r = (u(r + h, theta, alpha) - u(r - h, theta, alpha)) / two_h;
        let du_t = (u(r, theta + h, alpha) - u(r, theta - h, alpha)) / two_h;
        let du_a = (u(r, theta, alpha + h) - u(r, theta, alpha - h)) / two_h;
        let a = disk.a(r);
        let inner = du_r / a + i * du_t / r - i * du_a / (r * a);
        let val = Complex::from_polar(half, -alpha) * inner;
        worst = worst.max(val.norm());
    }
    Ok(worst)
}
