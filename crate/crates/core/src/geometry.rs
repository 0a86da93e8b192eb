//! Rotationally invariant metrics `a(r)^2 dr^2 + r^2 dθ^2` on the closed disk
//! of radius `R`, written as `a(r) = 1 + r^2 ã(r^2)` so that every quantity
//! is a smooth function of `s = r^2` and stays regular at the origin.
//!
//! The model family `g_κ` has `ã ≡ κ`; [`DiskSpec`] carries it in closed form
//! and [`RadialProfile`] wraps an arbitrary user supplied `ã`.

use crate::error::{domain, Error, Result};
use crate::roots::MonotoneSolver;
use crate::scalar::{lit, to_f64, Real};
use num_complex::Complex;
use std::fmt;
use std::sync::Arc;

/// Relative slack accepted when a point is supposed to lie in the closed disk.
pub const DISK_SLACK: f64 = 1e-9;

/// Relative overshoot of `|ζ|` past `R₁` that is clamped rather than rejected.
pub const ISOTHERMAL_CLAMP: f64 = 1e-9;

/// A rotationally invariant metric on the disk of radius `R`.
pub trait RadialMetric<T: Real>: Send + Sync {
    fn radius(&self) -> T;

    /// The reduced profile `ã(s)`, `s = r^2`.
    fn a_tilde(&self, s: T) -> T;

    fn a_tilde_prime(&self, s: T) -> T;

    /// The model disk, when this metric is a member of the `g_κ` family.
    fn as_model(&self) -> Option<DiskSpec<T>> {
        None
    }

    fn a_of_s(&self, s: T) -> T {
        T::one() + s * self.a_tilde(s)
    }

    /// `a(r)`.
    fn a(&self, r: T) -> T {
        self.a_of_s(r * r)
    }

    /// `max a` over `[0, R]`, used to size the integration step.
    fn max_a(&self) -> T {
        let n = 256;
        let r = self.radius();
        (0..=n)
            .map(|i| self.a(r * lit(i as f64 / n as f64)))
            .fold(T::zero(), T::max)
    }

    /// Gaussian curvature as a function of `s = r^2`: `K = 2(ã + s ã') / a^3`.
    fn curvature_s(&self, s: T) -> T {
        let a = self.a_of_s(s);
        lit::<T>(2.0) * (self.a_tilde(s) + s * self.a_tilde_prime(s)) / (a * a * a)
    }

    fn gaussian_curvature(&self, r: T) -> Result<T> {
        check_radius(self.radius(), r)?;
        Ok(self.curvature_s(r * r))
    }

    /// `(a^2 - 1) / r^2 = 2ã + s ã^2`, smooth at the origin.
    fn metric_excess(&self, s: T) -> T {
        let at = self.a_tilde(s);
        lit::<T>(2.0) * at + s * at * at
    }

    /// Coefficient `c(s)` and its derivative `c'(s)` of the inverse metric
    /// `g^{ij} = δ_ij - c(s) x_i x_j`, with `c = (a^2 - 1) / (a^2 r^2)`.
    fn inverse_metric_coeff(&self, s: T) -> (T, T) {
        let two = lit::<T>(2.0);
        let at = self.a_tilde(s);
        let atp = self.a_tilde_prime(s);
        let a = T::one() + s * at;
        let da = at + s * atp;
        let num = two * at + s * at * at;
        let dnum = two * atp + at * at + two * s * at * atp;
        let c = num / (a * a);
        let dc = (dnum * a - two * num * da) / (a * a * a);
        (c, dc)
    }

    /// Components of `g` at the Cartesian point `(x, y)` of the closed disk.
    fn metric_cartesian(&self, x: T, y: T) -> Result<MetricMatrix<T>> {
        check_point(self.radius(), x, y)?;
        Ok(self.metric_cartesian_unchecked(x, y))
    }

    fn metric_cartesian_unchecked(&self, x: T, y: T) -> MetricMatrix<T> {
        let e = self.metric_excess(x * x + y * y);
        MetricMatrix {
            g11: T::one() + e * x * x,
            g12: e * x * y,
            g22: T::one() + e * y * y,
        }
    }

    /// The unit section `𝖾 = cosθ 𝖾_r - sinθ 𝖾_θ`, smooth through the origin, in
    /// Cartesian components: `𝖾 = ((1 + y² ã) ∂x - x y ã ∂y) / a`.
    fn frame_section(&self, x: T, y: T) -> Result<[T; 2]> {
        check_point(self.radius(), x, y)?;
        let s = x * x + y * y;
        let at = self.a_tilde(s);
        let a = self.a_of_s(s);
        Ok([(T::one() + y * y * at) / a, -x * y * at / a])
    }
}

fn check_radius<T: Real>(radius: T, r: T) -> Result<()> {
    if r < T::zero() || r > radius * (T::one() + lit(DISK_SLACK)) || r.is_nan() {
        return Err(domain("radius", to_f64(r), "0 <= r <= R"));
    }
    Ok(())
}

fn check_point<T: Real>(radius: T, x: T, y: T) -> Result<()> {
    let s = x * x + y * y;
    let cap = radius * (T::one() + lit(DISK_SLACK));
    if s > cap * cap || s.is_nan() {
        return Err(domain("point", to_f64(s.sqrt()), "x^2 + y^2 <= R^2"));
    }
    Ok(())
}

/// Symmetric components of a metric at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricMatrix<T> {
    pub g11: T,
    pub g12: T,
    pub g22: T,
}

impl<T: Real> MetricMatrix<T> {
    pub fn identity() -> Self {
        Self {
            g11: T::one(),
            g12: T::zero(),
            g22: T::one(),
        }
    }

    pub fn det(&self) -> T {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    /// Lowers an index: `g v`.
    pub fn lower(&self, v: [T; 2]) -> [T; 2] {
        [
            self.g11 * v[0] + self.g12 * v[1],
            self.g12 * v[0] + self.g22 * v[1],
        ]
    }

    pub fn inner(&self, u: [T; 2], v: [T; 2]) -> T {
        let gv = self.lower(v);
        u[0] * gv[0] + u[1] * gv[1]
    }

    pub fn norm_sq(&self, v: [T; 2]) -> T {
        self.inner(v, v)
    }
}

/// The model disk `(𝔻_R, g_κ)`, `a(r) = 1 + κ r^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskSpec<T> {
    radius: T,
    kappa: T,
}

impl<T: Real> DiskSpec<T> {
    /// Requires `R > 0` and `1 + κR² > 0`.
    pub fn new(radius: T, kappa: T) -> Result<Self> {
        let ok = radius > T::zero()
            && radius.is_finite()
            && kappa.is_finite()
            && T::one() + kappa * radius * radius > T::zero();
        if !ok {
            return Err(Error::StandingHypothesis {
                radius: to_f64(radius),
                kappa: to_f64(kappa),
            });
        }
        Ok(Self { radius, kappa })
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    /// `κ R²`, the only dimensionless parameter of the model.
    pub fn kappa_r2(&self) -> T {
        self.kappa * self.radius * self.radius
    }

    /// Radius of the isothermal image disk, `R₁ = R e^{κR²/2}`.
    pub fn r1(&self) -> T {
        self.radius * (self.kappa_r2() * lit(0.5)).exp()
    }

    /// `R₂ = 2R e^{κR²}`, the radius a holomorphic differential must reach.
    pub fn r2(&self) -> T {
        lit::<T>(2.0) * self.radius * self.kappa_r2().exp()
    }

    /// Holomorphic coordinate `ζ = z e^{κ|z|²/2}`.
    pub fn isothermal(&self, z: Complex<T>) -> Result<Complex<T>> {
        check_radius(self.radius, z.norm())?;
        Ok(z * (self.kappa * z.norm_sqr() * lit(0.5)).exp())
    }

    /// Inverse of [`isothermal`](Self::isothermal): solves `ρ e^{κρ²/2} = |ζ|`
    /// on `[0, R]`, then `z = ρ ζ / |ζ|` (which is `ζ e^{-κρ²/2}`).
    pub fn isothermal_inverse(&self, zeta: Complex<T>) -> Result<Complex<T>> {
        let r1 = self.r1();
        let mut target = zeta.norm();
        if target > r1 {
            if target > r1 * (T::one() + lit(ISOTHERMAL_CLAMP)) {
                return Err(domain("|zeta|", to_f64(target), "|zeta| <= R1"));
            }
            target = r1;
        }
        if target == T::zero() {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        let k = self.kappa;
        let half = lit::<T>(0.5);
        let solver = MonotoneSolver {
            f_tol: lit::<T>(1e-14) * (T::one() + r1),
            ..Default::default()
        };
        let rho = solver.solve(
            |p| {
                let e = (k * p * p * half).exp();
                (p * e, (T::one() + k * p * p) * e)
            },
            target,
            T::zero(),
            self.radius,
        )?;
        Ok(zeta * (rho / zeta.norm()))
    }
}

impl<T: Real> RadialMetric<T> for DiskSpec<T> {
    fn radius(&self) -> T {
        self.radius
    }

    fn a_tilde(&self, _s: T) -> T {
        self.kappa
    }

    fn a_tilde_prime(&self, _s: T) -> T {
        T::zero()
    }

    fn as_model(&self) -> Option<DiskSpec<T>> {
        Some(*self)
    }

    fn max_a(&self) -> T {
        self.a(self.radius).max(T::one())
    }

    fn curvature_s(&self, s: T) -> T {
        let a = T::one() + self.kappa * s;
        lit::<T>(2.0) * self.kappa / (a * a * a)
    }
}

type ProfileFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// An arbitrary smooth profile `ã` on `[0, R²]` together with its derivative.
#[derive(Clone)]
pub struct RadialProfile<T> {
    radius: T,
    a_tilde: ProfileFn<T>,
    a_tilde_prime: ProfileFn<T>,
}

impl<T: Real> RadialProfile<T> {
    /// Rejects profiles with `a(r) <= 0` at any of 1025 sample radii.
    pub fn new<F, G>(radius: T, a_tilde: F, a_tilde_prime: G) -> Result<Self>
    where
        F: Fn(T) -> T + Send + Sync + 'static,
        G: Fn(T) -> T + Send + Sync + 'static,
    {
        if radius.is_nan() || radius <= T::zero() || !radius.is_finite() {
            return Err(domain("radius", to_f64(radius), "R > 0"));
        }
        let profile = Self {
            radius,
            a_tilde: Arc::new(a_tilde),
            a_tilde_prime: Arc::new(a_tilde_prime),
        };
        let n = 1024;
        for i in 0..=n {
            let r = radius * lit(i as f64 / n as f64);
            let a = profile.a(r);
            if a.is_nan() || a <= T::zero() {
                return Err(Error::NonPositiveProfile {
                    r: to_f64(r),
                    a: to_f64(a),
                });
            }
        }
        Ok(profile)
    }

    /// The `g_κ` profile expressed through closures; it does not advertise
    /// itself as a model disk, so every closed form is bypassed.
    pub fn from_model(disk: &DiskSpec<T>) -> Self {
        let k = disk.kappa;
        Self {
            radius: disk.radius,
            a_tilde: Arc::new(move |_| k),
            a_tilde_prime: Arc::new(|_| T::zero()),
        }
    }
}

impl<T: Real> fmt::Debug for RadialProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("radius", &self.radius)
            .finish_non_exhaustive()
    }
}

impl<T: Real> RadialMetric<T> for RadialProfile<T> {
    fn radius(&self) -> T {
        self.radius
    }

    fn a_tilde(&self, s: T) -> T {
        (self.a_tilde)(s)
    }

    fn a_tilde_prime(&self, s: T) -> T {
        (self.a_tilde_prime)(s)
    }
}
