//! The transport twistor chart `(z, ν) ∈ 𝔻_R × 𝔻` of the model disk, the
//! vector field `Ξ` spanning the distribution together with `∂ν̄`, and the
//! blow-down map
//!
//! `w = (z - z̄ν²) E`, `ξ = ν E`, `E = exp(κ(z z̄ - z̄²ν²)/2)`,
//!
//! with its inverse on the interior, its boundary behaviour on `∂₊SM`, and
//! the Hermitian form controlling the blow-down near `SM`.

use crate::error::{domain, Error, Result};
use crate::geometry::{DiskSpec, RadialMetric};
use crate::numdiff::{wirtinger_fd, WirtingerPartials};
use crate::roots::MonotoneSolver;
use crate::scalar::{lit, to_f64, Real};
use num_complex::Complex;
use rayon::prelude::*;

/// `|ξ|` at or below this is treated as `ξ = 0` by [`beta_inverse`].
pub const XI_ZERO_TOL: f64 = 1e-13;

/// [`beta_inverse`] refuses points whose preimage has `|ν| ≥ 1 - NU_EDGE`.
pub const NU_EDGE: f64 = 1e-9;

/// Number of samples of `h'_c` used to bracket the monotone region.
pub const HC_SCAN: usize = 200;

/// Below this `|cos α|` the rescaled boundary Jacobian is evaluated by
/// continuity at `|α| = π/2 - GLANCING_JACOBIAN`.
pub const GLANCING_JACOBIAN: f64 = 1e-6;

/// A point of the twistor chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallPoint<T> {
    pub z: Complex<T>,
    pub nu: Complex<T>,
}

impl<T: Real> BallPoint<T> {
    pub fn new(z: Complex<T>, nu: Complex<T>) -> Self {
        Self { z, nu }
    }

    /// From the polar chart `z = r e^{iθ}`, `ν = μ e^{iθ}`.
    pub fn from_polar(r: T, theta: T, mu: Complex<T>) -> Self {
        let e = Complex::from_polar(T::one(), theta);
        Self {
            z: e * r,
            nu: mu * e,
        }
    }

    /// Polar fiber coordinate `μ = ν e^{-iθ}`, with `θ = 0` at the origin.
    pub fn mu(&self) -> Complex<T> {
        if self.z.norm() == T::zero() {
            self.nu
        } else {
            self.nu * Complex::from_polar(T::one(), -self.z.arg())
        }
    }

    /// True on the stratum `|ν| = 1` identified with `SM`.
    pub fn on_sm(&self) -> bool {
        (self.nu.norm() - T::one()).abs() <= lit(1e-12)
    }

    /// Checks `|z| ≤ R` and `|ν| ≤ 1` up to `1e-12`.
    pub fn validate(&self, disk: &DiskSpec<T>) -> Result<()> {
        let tol = lit::<T>(1e-12);
        if self.z.norm() > disk.radius() + tol || self.z.norm().is_nan() {
            return Err(domain("|z|", to_f64(self.z.norm()), "<= R"));
        }
        if self.nu.norm() > T::one() + tol || self.nu.norm().is_nan() {
            return Err(domain("|nu|", to_f64(self.nu.norm()), "<= 1"));
        }
        Ok(())
    }
}

/// The image `(w, ξ)` of a chart point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistorValue<T> {
    pub w: Complex<T>,
    pub xi: Complex<T>,
}

impl<T: Real> TwistorValue<T> {
    pub fn new(w: Complex<T>, xi: Complex<T>) -> Self {
        Self { w, xi }
    }

    pub fn distance(&self, other: &Self) -> T {
        ((self.w - other.w).norm_sqr() + (self.xi - other.xi).norm_sqr()).sqrt()
    }
}

/// Coefficients of `Ξ = c_z ∂z + c_z̄ ∂z̄ + c_ν ∂ν + c_ν̄ ∂ν̄`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XiCoefficients<T> {
    pub c_z: Complex<T>,
    pub c_zbar: Complex<T>,
    pub c_nu: Complex<T>,
    pub c_nubar: Complex<T>,
}

impl<T: Real> XiCoefficients<T> {
    /// `Ξ f`.
    pub fn apply(&self, d: &WirtingerPartials<T>) -> Complex<T> {
        self.c_z * d.dz + self.c_zbar * d.dzbar + self.c_nu * d.dnu + self.c_nubar * d.dnubar
    }

    /// `Ξ̄ f`, the conjugate field applied to `f`.
    pub fn apply_conj(&self, d: &WirtingerPartials<T>) -> Complex<T> {
        self.c_zbar.conj() * d.dz
            + self.c_z.conj() * d.dzbar
            + self.c_nubar.conj() * d.dnu
            + self.c_nu.conj() * d.dnubar
    }
}

/// Wirtinger partials of both components of `β`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaPartials<T> {
    pub w: WirtingerPartials<T>,
    pub xi: WirtingerPartials<T>,
}

/// `|Ξw|, |Ξξ|, |∂ν̄w|, |∂ν̄ξ|`; all vanish when `β` is holomorphic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HoloResidual<T> {
    pub xi_w: T,
    pub xi_xi: T,
    pub dnubar_w: T,
    pub dnubar_xi: T,
}

impl<T: Real> HoloResidual<T> {
    pub fn max(&self) -> T {
        self.xi_w.max(self.xi_xi).max(self.dnubar_w).max(self.dnubar_xi)
    }
}

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(lit(re), lit(im))
}

/// `E = exp(κ(z z̄ - z̄²ν²)/2)`.
fn factor<T: Real>(disk: &DiskSpec<T>, z: Complex<T>, nu: Complex<T>) -> Complex<T> {
    let zb = z.conj();
    ((z * zb - zb * zb * nu * nu) * (disk.kappa() / lit(2.0))).exp()
}

pub fn beta_forward<T: Real>(disk: &DiskSpec<T>, p: BallPoint<T>) -> TwistorValue<T> {
    let e = factor(disk, p.z, p.nu);
    TwistorValue {
        w: (p.z - p.z.conj() * p.nu * p.nu) * e,
        xi: p.nu * e,
    }
}

/// Hand derived Wirtinger partials of `w` and `ξ`.
pub fn beta_partials<T: Real>(disk: &DiskSpec<T>, p: BallPoint<T>) -> BetaPartials<T> {
    let k = disk.kappa();
    let half = lit::<T>(0.5);
    let (z, nu) = (p.z, p.nu);
    let zb = z.conj();
    let nu2 = nu * nu;
    let e = factor(disk, z, nu);
    let q = z - zb * nu2;
    // ∂E/E along each coordinate
    let lz = zb * (k * half);
    let lzb = (z - zb * nu2 * lit::<T>(2.0)) * (k * half);
    let lnu = -(zb * zb * nu) * k;
    let zero = Complex::new(T::zero(), T::zero());
    BetaPartials {
        w: WirtingerPartials {
            dz: e * (c::<T>(1.0, 0.0) + q * lz),
            dzbar: e * (-nu2 + q * lzb),
            dnu: e * (-(zb * nu) * lit::<T>(2.0) + q * lnu),
            dnubar: zero,
        },
        xi: WirtingerPartials {
            dz: nu * e * lz,
            dzbar: nu * e * lzb,
            dnu: e * (c::<T>(1.0, 0.0) + nu * lnu),
            dnubar: zero,
        },
    }
}

pub fn xi_vector<T: Real>(disk: &DiskSpec<T>, p: BallPoint<T>) -> XiCoefficients<T> {
    let k = disk.kappa();
    let (z, nu) = (p.z, p.nu);
    let zb = z.conj();
    let nu2 = nu * nu;
    let two_kzz = c::<T>(2.0, 0.0) + z * zb * k;
    let q = (z - nu2 * zb) * k;
    XiCoefficients {
        c_z: two_kzz * nu2 - z * z * k,
        c_zbar: two_kzz - nu2 * zb * zb * k,
        c_nu: -(nu * q),
        c_nubar: nu.conj() * q,
    }
}

fn residual_from<T: Real>(xi: &XiCoefficients<T>, d: &BetaPartials<T>) -> HoloResidual<T> {
    HoloResidual {
        xi_w: xi.apply(&d.w).norm(),
        xi_xi: xi.apply(&d.xi).norm(),
        dnubar_w: d.w.dnubar.norm(),
        dnubar_xi: d.xi.dnubar.norm(),
    }
}

/// Applies `Ξ` and `∂ν̄` to `w` and `ξ` using the analytic partials.
pub fn holomorphicity_residual<T: Real>(disk: &DiskSpec<T>, p: BallPoint<T>) -> HoloResidual<T> {
    residual_from(&xi_vector(disk, p), &beta_partials(disk, p))
}

/// Finite difference partials of `w` and `ξ` with step `h`.
pub fn beta_partials_fd<T: Real>(disk: &DiskSpec<T>, p: BallPoint<T>, h: T) -> BetaPartials<T> {
    let r = disk.radius();
    BetaPartials {
        w: wirtinger_fd(|z, nu| beta_forward(disk, BallPoint::new(z, nu)).w, p.z, p.nu, h, r),
        xi: wirtinger_fd(|z, nu| beta_forward(disk, BallPoint::new(z, nu)).xi, p.z, p.nu, h, r),
    }
}

/// Same residuals with finite difference partials, stencils kept in the
/// closed chart.
pub fn holomorphicity_residual_fd<T: Real>(disk: &DiskSpec<T>, p: BallPoint<T>, h: T) -> HoloResidual<T> {
    residual_from(&xi_vector(disk, p), &beta_partials_fd(disk, p, h))
}

/// `h_c(u) = u exp(κu(c_R²/(1-u) + c_I²/(1+u)))` and its derivative.
pub fn h_c_profile<T: Real>(c: Complex<T>, kappa: T, u: T) -> Result<(T, T)> {
    if !(u >= T::zero() && u < T::one()) {
        return Err(domain("u", to_f64(u), "[0, 1)"));
    }
    Ok(h_c_unchecked(c, kappa, u))
}

fn h_c_unchecked<T: Real>(c: Complex<T>, kappa: T, u: T) -> (T, T) {
    let (cr2, ci2) = (c.re * c.re, c.im * c.im);
    let (m, p) = (T::one() - u, T::one() + u);
    let ex = (kappa * u * (cr2 / m + ci2 / p)).exp();
    let dex = T::one() + kappa * u * (cr2 / (m * m) + ci2 / (p * p));
    (u * ex, dex * ex)
}

/// `lim_{u→1} h_c(u)`, infinite when it diverges.
fn h_c_limit<T: Real>(c: Complex<T>, kappa: T) -> T {
    if kappa == T::zero() || c.norm() == T::zero() {
        T::one()
    } else if c.re == T::zero() {
        (kappa * c.im * c.im / lit(2.0)).exp()
    } else if kappa > T::zero() {
        T::infinity()
    } else {
        T::zero()
    }
}

fn not_in_image<T: Real>(t: &TwistorValue<T>, reason: &'static str) -> Error {
    Error::NotInImage {
        w_re: to_f64(t.w.re),
        w_im: to_f64(t.w.im),
        xi_re: to_f64(t.xi.re),
        xi_im: to_f64(t.xi.im),
        reason,
    }
}

fn solver<T: Real>(target: T) -> MonotoneSolver<T> {
    MonotoneSolver {
        f_tol: lit::<T>(1e-15) * target.max(T::one()),
        bisect_width: lit(1e-6),
        max_iter: 300,
    }
}

/// `z` from `c = w/ξ` and `ν`, via `z = ν(c + c̄|ν|²)/(1 - |ν|⁴)`.
fn z_from<T: Real>(c: Complex<T>, nu: Complex<T>) -> Complex<T> {
    let u = nu.norm_sqr();
    nu * (c + c.conj() * u) / (T::one() - u * u)
}

/// `ν` from `ξ`, `c` and `u = |ν|²`.
fn nu_from<T: Real>(xi: Complex<T>, c: Complex<T>, u: T, kappa: T) -> Complex<T> {
    let ex = (c * c * u + c.norm_sqr()) * (-kappa * u / (lit::<T>(2.0) * (T::one() - u * u)));
    xi * ex.exp()
}

/// Recovers `(z, ν) ∈ 𝔻_R × 𝔻°` from `(w, ξ)`.
///
/// Returns [`Error::NotInImage`] when no admissible preimage exists and
/// [`Error::BoundaryDegenerate`] when the preimage would have `|ν| → 1`.
pub fn beta_inverse<T: Real>(disk: &DiskSpec<T>, t: TwistorValue<T>) -> Result<BallPoint<T>> {
    let k = disk.kappa();
    let r = disk.radius();
    let r_tol = r * (T::one() + lit(1e-9));
    if t.xi.norm() <= lit(XI_ZERO_TOL) {
        let target = t.w.norm_sqr();
        let f = |u: T| {
            let e = (k * u).exp();
            (u * e, (T::one() + k * u) * e)
        };
        let r2 = r * r;
        let top = f(r2).0;
        if target > top * (T::one() + lit(1e-12)) {
            return Err(not_in_image(&t, "|w|^2 exceeds R^2 e^(kappa R^2) with xi = 0"));
        }
        let u = solver(target).solve(f, target.min(top), T::zero(), r2)?;
        let z = t.w * (-k * u / lit(2.0)).exp();
        return Ok(BallPoint::new(z, Complex::new(T::zero(), T::zero())));
    }

    let cc = t.w / t.xi;
    let target = t.xi.norm_sqr();
    let cap = T::one() - lit(NU_EDGE);
    let eval = |u: T| h_c_unchecked(cc, k, u);

    // first sampled sign change of h'_c bounds the admissible monotone region
    let mut upper = cap;
    let mut limited_by_cap = true;
    let mut prev = T::zero();
    for j in 1..=HC_SCAN {
        let u = cap * lit(j as f64 / HC_SCAN as f64);
        if eval(u).1 <= T::zero() {
            let (mut lo, mut hi) = (prev, u);
            for _ in 0..80 {
                let mid = (lo + hi) / lit(2.0);
                if eval(mid).1 > T::zero() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            upper = lo;
            limited_by_cap = false;
            break;
        }
        prev = u;
    }

    let top = eval(upper).0;
    if target > top {
        if !limited_by_cap || target > h_c_limit(cc, k) {
            return Err(not_in_image(&t, "|xi|^2 exceeds the monotone range of h_c"));
        }
        let z_edge = z_from(cc, nu_from(t.xi, cc, upper, k));
        return if z_edge.norm() <= r_tol {
            Err(Error::BoundaryDegenerate)
        } else {
            Err(not_in_image(&t, "preimage leaves the disk before |nu| reaches 1"))
        };
    }
    let u = solver(target).solve(eval, target, T::zero(), upper)?;
    if u >= cap {
        return Err(Error::BoundaryDegenerate);
    }
    let nu = nu_from(t.xi, cc, u, k);
    let z = z_from(cc, nu);
    if z.norm() > r_tol {
        return Err(not_in_image(&t, "reconstructed |z| exceeds R"));
    }
    Ok(BallPoint::new(z, nu))
}

/// `(w, ξ)` restricted to `SM` in the polar chart, with `μ = e^{iα}` the
/// polar fiber angle.
pub fn sm_restriction<T: Real>(disk: &DiskSpec<T>, r: T, theta: T, alpha: T) -> TwistorValue<T> {
    let one = c::<T>(1.0, 0.0);
    let et = Complex::from_polar(T::one(), theta);
    let ea = Complex::from_polar(T::one(), alpha);
    let d = one - ea * ea;
    let e = (d * (disk.kappa() * r * r / lit(2.0))).exp();
    TwistorValue {
        w: et * d * e * r,
        xi: ea * et * e,
    }
}

/// `β` at the boundary vector with fan-beam coordinates `(θ, α)`, i.e. at
/// `(z, ν) = (R e^{iθ}, e^{i(θ + π + α)})`.
pub fn boundary_point<T: Real>(disk: &DiskSpec<T>, theta: T, alpha: T) -> TwistorValue<T> {
    sm_restriction(disk, disk.radius(), theta, alpha + T::PI())
}

/// The rescaled boundary Jacobian together with two closed forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryJacobian<T> {
    pub alpha: T,
    /// `|∂θw ∂αξ - ∂αw ∂θξ|² / cos²α` from analytic partials.
    pub rescaled: T,
    /// `4R² |e^{κR²(1 - e^{2iα})}|`, the unsquared modulus.
    pub unsquared_closed_form: T,
    /// `4R² |e^{κR²(1 - e^{2iα})}|²`, what the partials actually give.
    pub squared_closed_form: T,
}

impl<T: Real> BoundaryJacobian<T> {
    pub fn unsquared_residual(&self) -> T {
        (self.rescaled - self.unsquared_closed_form).abs()
    }

    pub fn squared_residual(&self) -> T {
        (self.rescaled - self.squared_closed_form).abs()
    }
}

/// Analytic `(∂θw, ∂αw, ∂θξ, ∂αξ)` of [`boundary_point`].
pub fn boundary_partials<T: Real>(disk: &DiskSpec<T>, theta: T, alpha: T) -> [Complex<T>; 4] {
    let r = disk.radius();
    let kr2 = disk.kappa_r2();
    let i = c::<T>(0.0, 1.0);
    let one = c::<T>(1.0, 0.0);
    let et = Complex::from_polar(T::one(), theta);
    let ea = Complex::from_polar(T::one(), alpha);
    let e2 = ea * ea;
    let eb = ((one - e2) * (kr2 / lit(2.0))).exp();
    let v = boundary_point(disk, theta, alpha);
    let dw_da = i * et * eb * e2 * (c::<T>(-2.0, 0.0) - one * kr2 + e2 * kr2) * r;
    let dxi_da = -(i * ea * et * eb * (one - e2 * kr2));
    [i * v.w, dw_da, i * v.xi, dxi_da]
}

/// The rescaled Jacobian of `β` on `∂₊SM` at incidence `α ∈ [-π/2, π/2]`.
pub fn boundary_jacobian_rescaled<T: Real>(disk: &DiskSpec<T>, alpha: T) -> BoundaryJacobian<T> {
    let edge = T::FRAC_PI_2() - lit(GLANCING_JACOBIAN);
    let a_eval = if alpha.cos().abs() < lit(GLANCING_JACOBIAN) {
        edge.copysign(alpha)
    } else {
        alpha
    };
    let [dw_t, dw_a, dx_t, dx_a] = boundary_partials(disk, T::zero(), a_eval);
    let det = dw_t * dx_a - dw_a * dx_t;
    let cos = a_eval.cos();
    let one = c::<T>(1.0, 0.0);
    let ea = Complex::from_polar(T::one(), alpha);
    let modulus = ((one - ea * ea) * disk.kappa_r2()).exp().norm();
    let four_r2 = lit::<T>(4.0) * disk.radius() * disk.radius();
    BoundaryJacobian {
        alpha,
        rescaled: det.norm_sqr() / (cos * cos),
        unsquared_closed_form: four_r2 * modulus,
        squared_closed_form: four_r2 * modulus * modulus,
    }
}

/// The rescaled Jacobian from central differences of [`boundary_point`].
pub fn boundary_jacobian_fd<T: Real>(disk: &DiskSpec<T>, theta: T, alpha: T, h: T) -> T {
    let two_h = h + h;
    let f = |t: T, a: T| boundary_point(disk, t, a);
    let dw_t = (f(theta + h, alpha).w - f(theta - h, alpha).w) / two_h;
    let dx_t = (f(theta + h, alpha).xi - f(theta - h, alpha).xi) / two_h;
    let dw_a = (f(theta, alpha + h).w - f(theta, alpha - h).w) / two_h;
    let dx_a = (f(theta, alpha + h).xi - f(theta, alpha - h).xi) / two_h;
    let cos = alpha.cos();
    (dw_t * dx_a - dw_a * dx_t).norm_sqr() / (cos * cos)
}

/// Result of [`boundary_separation`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationReport<T> {
    pub grid_size: usize,
    /// Smallest distance between images of distinct grid points.
    pub min_distance: T,
    /// Largest `|w/ξ - 2iR sinα|`.
    pub ratio_residual: T,
    /// Largest error of `α = asin(Im(w/ξ)/2R)`.
    pub alpha_error: T,
    /// Largest error of the recovered `e^{iθ}`.
    pub theta_error: T,
}

impl<T: Real> SeparationReport<T> {
    pub fn injective(&self) -> bool {
        self.min_distance > T::zero()
    }
}

/// Evaluates `β` on an `n × n` grid of `∂₊SM`, with `θ` uniform on
/// `[0, 2π)` and `α` at cell centres of `[-π/2, π/2]`, and checks that the
/// images are distinct and that `(θ, α)` is recovered from them.
pub fn boundary_separation<T: Real>(disk: &DiskSpec<T>, grid_size: usize) -> SeparationReport<T> {
    let n = grid_size.max(1);
    let two_r = lit::<T>(2.0) * disk.radius();
    let one = c::<T>(1.0, 0.0);
    let i = c::<T>(0.0, 1.0);
    let mut pts = Vec::with_capacity(n * n);
    let mut ratio_residual = T::zero();
    let mut alpha_error = T::zero();
    let mut theta_error = T::zero();
    for j in 0..n {
        let alpha = -T::FRAC_PI_2() + T::PI() * lit((j as f64 + 0.5) / n as f64);
        for k in 0..n {
            let theta = T::TAU() * lit(k as f64 / n as f64);
            let v = boundary_point(disk, theta, alpha);
            let ratio = v.w / v.xi;
            ratio_residual = ratio_residual.max((ratio - i * two_r * alpha.sin()).norm());
            let a_rec = (ratio.im / two_r).max(-T::one()).min(T::one()).asin();
            alpha_error = alpha_error.max((a_rec - alpha).abs());
            let ea = Complex::from_polar(T::one(), a_rec);
            let eb = ((one - ea * ea) * (disk.kappa_r2() / lit(2.0))).exp();
            let et = -v.xi / (ea * eb);
            theta_error = theta_error.max((et - Complex::from_polar(T::one(), theta)).norm());
            pts.push(v);
        }
    }
    let min_distance = (0..pts.len())
        .into_par_iter()
        .map(|a| {
            pts[a + 1..]
                .iter()
                .fold(T::infinity(), |m, q| m.min(pts[a].distance(q)))
        })
        .reduce(T::infinity, T::min);
    SeparationReport {
        grid_size: n,
        min_distance,
        ratio_residual,
        alpha_error,
        theta_error,
    }
}

/// The Hermitian form `H` relating `β*Ω_ℂ²` to the frame `(η₁, η₂)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianForm2<T> {
    pub h11: T,
    pub h12: Complex<T>,
    pub h22: T,
    /// `[a, b, c, d]`.
    pub abcd: [Complex<T>; 4],
    pub a_mod2: T,
}

impl<T: Real> HermitianForm2<T> {
    pub fn ad_minus_bc(&self) -> Complex<T> {
        let [a, b, c, d] = self.abcd;
        a * d - b * c
    }

    pub fn trace(&self) -> T {
        self.h11 + self.h22
    }

    /// `|A|⁴ |ad - bc|²`, free of the cancellation in `H11 H22 - |H12|²`.
    pub fn det(&self) -> T {
        self.a_mod2 * self.a_mod2 * self.ad_minus_bc().norm_sqr()
    }

    /// `(λ_min, λ_max)`.
    pub fn eigenvalues(&self) -> (T, T) {
        let half = lit::<T>(0.5);
        let gap = self.h11 - self.h22;
        let disc = (gap * gap + lit::<T>(4.0) * self.h12.norm_sqr()).sqrt();
        let lmax = half * (self.trace() + disc);
        (self.det() / lmax, lmax)
    }

    /// The lower bound `det(H)/tr(H) ≤ λ_min`.
    pub fn det_over_trace(&self) -> T {
        self.det() / self.trace()
    }
}

pub fn hermitian_h<T: Real>(disk: &DiskSpec<T>, p: BallPoint<T>) -> Result<HermitianForm2<T>> {
    p.validate(disk)?;
    if p.nu.norm() >= T::one() {
        return Err(domain("|nu|", to_f64(p.nu.norm()), "< 1"));
    }
    let k = disk.kappa();
    let (z, nu) = (p.z, p.nu);
    let zb = z.conj();
    let nu2 = nu * nu;
    let zz = z * zb;
    let one = c::<T>(1.0, 0.0);
    let two = lit::<T>(2.0);
    let a = (one + zz * k - nu2 * zb * zb * k) * two;
    let b = -(nu * zb) * two - nu * zb * zb * z * k + nu2 * nu * zb * zb * zb * k;
    let cc = zb * nu * (two * k);
    let d = one - zb * zb * nu2 * k;
    let a_mod2 = factor(disk, z, nu).norm_sqr();
    Ok(HermitianForm2 {
        h11: a_mod2 * (a.norm_sqr() + cc.norm_sqr()),
        h12: (a * b.conj() + cc * d.conj()) * a_mod2,
        h22: a_mod2 * (b.norm_sqr() + d.norm_sqr()),
        abcd: [a, b, cc, d],
        a_mod2,
    })
}

/// Uniform lower bound on `λ_min` assembled from the entry bounds
/// `|a| ≤ 2(1+2|κ|R²)`, `|b| ≤ 2R(1+|κ|R²)`, `|c| ≤ 2|κ|R`, `|d| ≤ 1+|κ|R²`,
/// `|A|² ≥ e^{-2|κ|R²}` and `|ad - bc| ≥ 2` for `κ ≥ 0`, `2 - 2|κ|R²` otherwise.
pub fn hermitian_lower_bound<T: Real>(disk: &DiskSpec<T>) -> T {
    let two = lit::<T>(2.0);
    let r = disk.radius();
    let k = disk.kappa().abs();
    let kr2 = k * r * r;
    let det_lb = if disk.kappa() >= T::zero() {
        two
    } else {
        two - two * kr2
    };
    let a = two * (T::one() + two * kr2);
    let b = two * r * (T::one() + kr2);
    let cc = two * k * r;
    let d = T::one() + kr2;
    (-two * kr2).exp() * det_lb * det_lb / (a * a + b * b + cc * cc + d * d)
}
