//! Unit speed geodesic flow on a radial disk, integrated in the Cartesian
//! Hamiltonian chart `H = ½ g^{ij} p_i p_j` so that rays through the origin
//! need no special treatment. The scalar Jacobi equation `b̈ + K b = 0` is
//! carried along as two extra states on the same RK4 grid.

use crate::error::{domain, Error, Result};
use crate::geometry::{DiskSpec, RadialMetric};
use crate::scalar::{lit, to_f64, wrap_pi, wrap_tau, Real};

/// `[x, y, p_x, p_y, b, ḃ]`.
pub(crate) type State<T> = [T; 6];

/// A point of the unit tangent bundle in Cartesian components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint<T> {
    pub x: T,
    pub y: T,
    pub vx: T,
    pub vy: T,
}

/// Position and fiber angle in the polar chart: `v = cosφ 𝖾_r + sinφ 𝖾_θ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarPoint<T> {
    pub r: T,
    pub theta: T,
    pub phi: T,
}

/// Boundary point `R e^{iθ}` with the vector `-cosα 𝖾_r - sinα 𝖾_θ`.
///
/// Inward vectors have `α ∈ (-π/2, π/2)`; outward vectors are reported with
/// `α ∈ (π/2, 3π/2)`, so that the exit of the ray `(θ, α)` is `(θ', π - α)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FanBeamCoord<T> {
    pub theta: T,
    pub alpha: T,
}

impl<T: Real> FanBeamCoord<T> {
    pub fn new(theta: T, alpha: T) -> Self {
        Self { theta, alpha }
    }

    /// True for `|α| < π/2`, allowing for the representation `α ∈ (3π/2, 2π)`.
    pub fn is_incoming(&self) -> bool {
        wrap_pi(self.alpha).abs() < T::FRAC_PI_2()
    }
}

impl<T: Real> PhasePoint<T> {
    pub fn new(x: T, y: T, vx: T, vy: T) -> Self {
        Self { x, y, vx, vy }
    }

    pub fn position(&self) -> [T; 2] {
        [self.x, self.y]
    }

    pub fn velocity(&self) -> [T; 2] {
        [self.vx, self.vy]
    }

    pub fn radius(&self) -> T {
        self.x.hypot(self.y)
    }

    /// `g(v, v)` at the base point.
    pub fn speed_sq<M: RadialMetric<T> + ?Sized>(&self, metric: &M) -> T {
        metric
            .metric_cartesian_unchecked(self.x, self.y)
            .norm_sq(self.velocity())
    }

    /// Clairaut integral `r sinφ`, equal to the angular momentum `x p_y - y p_x`.
    pub fn clairaut<M: RadialMetric<T> + ?Sized>(&self, metric: &M) -> T {
        let p = metric
            .metric_cartesian_unchecked(self.x, self.y)
            .lower(self.velocity());
        self.x * p[1] - self.y * p[0]
    }

    /// Polar chart coordinates. At the origin the angle `θ` is taken along
    /// the velocity so that `φ = 0`.
    pub fn polar<M: RadialMetric<T> + ?Sized>(&self, metric: &M) -> PolarPoint<T> {
        let r = self.radius();
        if r == T::zero() {
            return PolarPoint {
                r,
                theta: self.vy.atan2(self.vx),
                phi: T::zero(),
            };
        }
        let theta = self.y.atan2(self.x);
        let cos_phi = metric.a(r) * (self.x * self.vx + self.y * self.vy) / r;
        let sin_phi = (self.x * self.vy - self.y * self.vx) / r;
        PolarPoint {
            r,
            theta,
            phi: sin_phi.atan2(cos_phi),
        }
    }

    /// Fan-beam coordinates of a boundary point.
    pub fn to_fan<M: RadialMetric<T> + ?Sized>(&self, metric: &M) -> FanBeamCoord<T> {
        let p = self.polar(metric);
        let alpha = if p.phi.cos() <= T::zero() {
            wrap_pi(p.phi - T::PI())
        } else {
            wrap_tau(p.phi - T::PI())
        };
        FanBeamCoord {
            theta: wrap_tau(p.theta),
            alpha,
        }
    }

    pub(crate) fn to_state<M: RadialMetric<T> + ?Sized>(self, metric: &M) -> State<T> {
        let p = metric
            .metric_cartesian_unchecked(self.x, self.y)
            .lower(self.velocity());
        [self.x, self.y, p[0], p[1], T::zero(), T::one()]
    }

    pub(crate) fn from_state<M: RadialMetric<T> + ?Sized>(metric: &M, st: &State<T>) -> Self {
        let v = velocity_of(metric, st);
        Self {
            x: st[0],
            y: st[1],
            vx: v[0],
            vy: v[1],
        }
    }
}

impl<T: Real> PolarPoint<T> {
    /// Back to Cartesian components.
    pub fn to_phase<M: RadialMetric<T> + ?Sized>(&self, metric: &M) -> PhasePoint<T> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        let a = metric.a(self.r);
        PhasePoint {
            x: self.r * ct,
            y: self.r * st,
            vx: cp * ct / a - sp * st,
            vy: cp * st / a + sp * ct,
        }
    }
}

/// Integration settings shared by every flow based routine.
#[derive(Clone, Copy, Debug)]
pub struct FlowOptions<T> {
    /// RK4 steps per estimated crossing time `2R max a`.
    pub steps: usize,
    /// Integration is abandoned after `time_cap_factor · R`.
    pub time_cap_factor: T,
    /// Incidence angles with `|α| > π/2 - glancing_band` are rejected.
    pub glancing_band: T,
    /// Bisections used to locate the exit inside the last step.
    pub exit_bisections: usize,
}

impl<T: Real> Default for FlowOptions<T> {
    fn default() -> Self {
        Self {
            steps: 4096,
            time_cap_factor: lit(100.0),
            glancing_band: lit(1e-3),
            exit_bisections: 60,
        }
    }
}

impl<T: Real> FlowOptions<T> {
    pub fn with_steps(steps: usize) -> Self {
        Self {
            steps,
            ..Self::default()
        }
    }

    pub(crate) fn check_alpha(&self, alpha: T) -> Result<()> {
        if alpha.is_nan() || alpha.abs() >= T::FRAC_PI_2() - self.glancing_band {
            return Err(Error::Glancing {
                alpha: to_f64(alpha),
                band: to_f64(self.glancing_band),
            });
        }
        Ok(())
    }
}

/// A sampled geodesic from its initial point to its exit through `∂𝔻_R`.
#[derive(Clone, Debug)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<PhasePoint<T>>,
    /// Exit time.
    pub tau: T,
    /// Largest deviation of the Clairaut integral from its initial value.
    pub clairaut_drift: T,
    /// Largest deviation of `g(v, v)` from its initial value.
    pub speed_drift: T,
}

impl<T: Real> Trajectory<T> {
    pub fn exit(&self) -> PhasePoint<T> {
        *self.states.last().expect("trajectory has at least one state")
    }
}

/// Samples of the augmented system on the RK4 grid; the last sample is the
/// bisected exit point.
#[derive(Clone, Debug)]
pub(crate) struct RawPath<T> {
    pub times: Vec<T>,
    pub states: Vec<State<T>>,
}

impl<T: Real> RawPath<T> {
    pub fn tau(&self) -> T {
        *self.times.last().expect("path has at least one sample")
    }

    pub fn exit(&self) -> &State<T> {
        self.states.last().expect("path has at least one sample")
    }
}

fn velocity_of<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, st: &State<T>) -> [T; 2] {
    let (c, _) = metric.inverse_metric_coeff(st[0] * st[0] + st[1] * st[1]);
    let xp = st[0] * st[2] + st[1] * st[3];
    [st[2] - c * st[0] * xp, st[3] - c * st[1] * xp]
}

/// `2H = g^{ij} p_i p_j`.
fn twice_hamiltonian<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, st: &State<T>) -> T {
    let (c, _) = metric.inverse_metric_coeff(st[0] * st[0] + st[1] * st[1]);
    let xp = st[0] * st[2] + st[1] * st[3];
    st[2] * st[2] + st[3] * st[3] - c * xp * xp
}

fn rhs<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, st: &State<T>) -> State<T> {
    let [x, y, px, py, b, bd] = *st;
    let s = x * x + y * y;
    let (c, dc) = metric.inverse_metric_coeff(s);
    let k = metric.curvature_s(s);
    let xp = x * px + y * py;
    let q = dc * xp * xp;
    [
        px - c * x * xp,
        py - c * y * xp,
        q * x + c * xp * px,
        q * y + c * xp * py,
        bd,
        -k * b,
    ]
}

fn axpy<T: Real>(y: &State<T>, h: T, k: &State<T>) -> State<T> {
    std::array::from_fn(|i| y[i] + h * k[i])
}

pub(crate) fn rk4<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, y: &State<T>, h: T) -> State<T> {
    let half = lit::<T>(0.5);
    let k1 = rhs(metric, y);
    let k2 = rhs(metric, &axpy(y, half * h, &k1));
    let k3 = rhs(metric, &axpy(y, half * h, &k2));
    let k4 = rhs(metric, &axpy(y, h, &k3));
    let sixth = h / lit(6.0);
    std::array::from_fn(|i| {
        y[i] + sixth * (k1[i] + lit::<T>(2.0) * (k2[i] + k3[i]) + k4[i])
    })
}

/// RK4 step size for a metric.
pub(crate) fn step_size<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, opts: &FlowOptions<T>) -> T {
    lit::<T>(2.0) * metric.radius() * metric.max_a() / lit(opts.steps.max(1) as f64)
}

/// Integrates the augmented system from `y0` until it leaves the disk.
pub(crate) fn integrate_raw<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    y0: State<T>,
    opts: &FlowOptions<T>,
) -> Result<RawPath<T>> {
    let r = metric.radius();
    let r2 = r * r;
    let level = |st: &State<T>| st[0] * st[0] + st[1] * st[1] - r2;
    let s0 = y0[0] * y0[0] + y0[1] * y0[1];
    if s0 > r2 * lit(1.0 + 4.0 * crate::geometry::DISK_SLACK) {
        return Err(domain("initial point", to_f64(s0.sqrt()), "inside the closed disk"));
    }
    let on_boundary = s0 >= r2 * (T::one() - lit::<T>(1e-12));
    if on_boundary {
        let v = velocity_of(metric, &y0);
        let radial = y0[0] * v[0] + y0[1] * v[1];
        let speed = v[0].hypot(v[1]) * s0.sqrt();
        if radial > T::epsilon() * lit(16.0) * speed {
            return Err(Error::OutwardPointing);
        }
        if radial.abs() <= T::epsilon() * lit(16.0) * speed {
            // tangent to a strictly convex boundary: the geodesic leaves at once
            return Ok(RawPath {
                times: vec![T::zero()],
                states: vec![y0],
            });
        }
    }

    let dt = step_size(metric, opts);
    let t_cap = opts.time_cap_factor * r;
    let max_steps = (to_f64(t_cap / dt).ceil() as usize).max(1);
    let mut times = Vec::with_capacity(opts.steps + 2);
    let mut states = Vec::with_capacity(opts.steps + 2);
    times.push(T::zero());
    states.push(y0);
    let mut y = y0;
    let mut t = T::zero();
    for n in 0..max_steps {
        let next = rk4(metric, &y, dt);
        if level(&next) > T::zero() {
            let (mut lo, mut hi) = (T::zero(), dt);
            let half = lit::<T>(0.5);
            for _ in 0..opts.exit_bisections {
                let mid = half * (lo + hi);
                if level(&rk4(metric, &y, mid)) > T::zero() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let h = half * (lo + hi);
            times.push(t + h);
            states.push(rk4(metric, &y, h));
            return Ok(RawPath { times, states });
        }
        y = next;
        t = dt * lit((n + 1) as f64);
        times.push(t);
        states.push(y);
    }
    Err(Error::NonTrapping {
        time_cap: to_f64(t_cap),
    })
}

fn fan_state<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, fb: FanBeamCoord<T>) -> State<T> {
    let r = metric.radius();
    let (st, ct) = fb.theta.sin_cos();
    let (sa, ca) = fb.alpha.sin_cos();
    let a = metric.a(r);
    // p = g v with g = a² on the radial direction and 1 on the angular one
    let p_r = -ca * a;
    let p_t = -sa;
    [
        r * ct,
        r * st,
        p_r * ct - p_t * st,
        p_r * st + p_t * ct,
        T::zero(),
        T::one(),
    ]
}

/// Integrates a boundary-issued ray, rejecting glancing incidence.
pub(crate) fn integrate_fan<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    fb: FanBeamCoord<T>,
    opts: &FlowOptions<T>,
) -> Result<RawPath<T>> {
    opts.check_alpha(fb.alpha)?;
    integrate_raw(metric, fan_state(metric, fb), opts)
}

/// The unit vector `-cosα 𝖾_r - sinα 𝖾_θ` at `R e^{iθ}` in Cartesian form.
pub fn fan_to_phase<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, fb: FanBeamCoord<T>) -> PhasePoint<T> {
    let r = metric.radius();
    let (st, ct) = fb.theta.sin_cos();
    let (sa, ca) = fb.alpha.sin_cos();
    let a = metric.a(r);
    PhasePoint {
        x: r * ct,
        y: r * st,
        vx: -ca * ct / a + sa * st,
        vy: -ca * st / a - sa * ct,
    }
}

fn trajectory_from_raw<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, raw: RawPath<T>) -> Trajectory<T> {
    let first = raw.states[0];
    let l0 = first[0] * first[3] - first[1] * first[2];
    let h0 = twice_hamiltonian(metric, &first);
    let mut clairaut_drift = T::zero();
    let mut speed_drift = T::zero();
    let states = raw
        .states
        .iter()
        .map(|st| {
            let l = st[0] * st[3] - st[1] * st[2];
            clairaut_drift = clairaut_drift.max((l - l0).abs());
            speed_drift = speed_drift.max((twice_hamiltonian(metric, st) - h0).abs());
            PhasePoint::from_state(metric, st)
        })
        .collect();
    let tau = raw.tau();
    Trajectory {
        times: raw.times,
        states,
        tau,
        clairaut_drift,
        speed_drift,
    }
}

/// Integrates the geodesic through `p0` with `step_count` RK4 steps per
/// crossing time until it leaves the disk.
pub fn integrate_geodesic<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    p0: PhasePoint<T>,
    step_count: usize,
) -> Result<Trajectory<T>> {
    integrate_geodesic_with(metric, p0, &FlowOptions::with_steps(step_count))
}

pub fn integrate_geodesic_with<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    p0: PhasePoint<T>,
    opts: &FlowOptions<T>,
) -> Result<Trajectory<T>> {
    if opts.steps == 0 {
        return Err(domain("step count", 0.0, ">= 1"));
    }
    let speed = p0.speed_sq(metric);
    let tol = lit::<T>(1e-9).max(T::epsilon() * lit(256.0));
    if (speed - T::one()).abs() > tol {
        return Err(domain("g(v, v)", to_f64(speed), "1 (unit speed)"));
    }
    let raw = integrate_raw(metric, p0.to_state(metric), opts)?;
    Ok(trajectory_from_raw(metric, raw))
}

/// Integrates the boundary-issued ray `(θ, α)`.
pub fn integrate_fan_ray<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    fb: FanBeamCoord<T>,
    opts: &FlowOptions<T>,
) -> Result<Trajectory<T>> {
    let raw = integrate_fan(metric, fb, opts)?;
    Ok(trajectory_from_raw(metric, raw))
}

/// Exit data of one boundary-issued ray.
#[derive(Clone, Copy, Debug)]
pub struct Crossing<T> {
    pub outgoing: FanBeamCoord<T>,
    pub tau: T,
    /// Total polar angle swept by the ray, `θ' - θ` without wrapping.
    pub sweep: T,
}

pub(crate) fn sweep_of<T: Real>(raw: &RawPath<T>) -> T {
    let first = raw.states[0];
    let l = first[0] * first[3] - first[1] * first[2];
    let sgn = if l > T::zero() {
        T::one()
    } else if l < T::zero() {
        -T::one()
    } else {
        T::zero()
    };
    let two_pi = T::TAU();
    let mut prev = first[1].atan2(first[0]);
    let mut total = T::zero();
    for st in raw.states.iter().skip(1) {
        let cur = st[1].atan2(st[0]);
        let mut inc = wrap_pi(cur - prev);
        // the polar angle is monotone with the sign of the angular momentum
        if sgn > T::zero() && inc < T::zero() {
            inc = inc + two_pi;
        } else if sgn < T::zero() && inc > T::zero() {
            inc = inc - two_pi;
        }
        total = total + inc;
        prev = cur;
    }
    total
}

fn crossing_of<T: Real, M: RadialMetric<T> + ?Sized>(metric: &M, raw: &RawPath<T>) -> Crossing<T> {
    let exit = PhasePoint::from_state(metric, raw.exit());
    Crossing {
        outgoing: exit.to_fan(metric),
        tau: raw.tau(),
        sweep: sweep_of(raw),
    }
}

/// Follows the incoming ray `(θ, α)` to its exit.
pub fn cross<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    fb: FanBeamCoord<T>,
    opts: &FlowOptions<T>,
) -> Result<Crossing<T>> {
    let raw = integrate_fan(metric, fb, opts)?;
    Ok(crossing_of(metric, &raw))
}

/// The scattering relation on the whole boundary: incoming vectors are sent
/// to their exit vectors and outgoing vectors back to their entry vectors.
pub fn scattering_relation_numeric<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    fb: FanBeamCoord<T>,
    opts: &FlowOptions<T>,
) -> Result<FanBeamCoord<T>> {
    if fb.is_incoming() {
        let alpha = wrap_pi(fb.alpha);
        Ok(cross(metric, FanBeamCoord::new(fb.theta, alpha), opts)?.outgoing)
    } else {
        // run the reversed geodesic and reverse its exit vector
        let reversed = FanBeamCoord::new(fb.theta, wrap_pi(fb.alpha - T::PI()));
        let out = cross(metric, reversed, opts)?.outgoing;
        Ok(FanBeamCoord::new(out.theta, wrap_pi(out.alpha - T::PI())))
    }
}

fn scattering_from_sweep<T: Real>(alpha: T, sweep: T) -> T {
    let sgn = if alpha < T::zero() {
        T::one()
    } else if alpha > T::zero() {
        -T::one()
    } else {
        sweep.signum()
    };
    (sweep - sgn * T::PI()) / lit(2.0)
}

/// `s(α)` from the ray issued at boundary angle `θ`.
pub fn scattering_function_at<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    theta: T,
    alpha: T,
    opts: &FlowOptions<T>,
) -> Result<T> {
    if alpha.abs() == T::FRAC_PI_2() {
        return Ok(alpha);
    }
    let c = cross(metric, FanBeamCoord::new(theta, alpha), opts)?;
    Ok(scattering_from_sweep(alpha, c.sweep))
}

/// `s(α) = (θ' - θ - π) / 2` computed by integrating the ray from `θ = 0`.
/// The glancing endpoints `α = ±π/2` return `±π/2` without integration.
pub fn scattering_function_numeric<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    alpha: T,
    opts: &FlowOptions<T>,
) -> Result<T> {
    scattering_function_at(metric, T::zero(), alpha, opts)
}

/// Angles at which [`scattering_function_spread`] launches rays.
pub const SPREAD_THETAS: [f64; 4] = [0.0, 1.1, 2.7, 4.4];

/// Mean of `s(α)` over four boundary angles and the largest deviation from it.
pub fn scattering_function_spread<T: Real, M: RadialMetric<T> + ?Sized>(
    metric: &M,
    alpha: T,
    opts: &FlowOptions<T>,
) -> Result<(T, T)> {
    let vals = SPREAD_THETAS
        .iter()
        .map(|&th| scattering_function_at(metric, lit(th), alpha, opts))
        .collect::<Result<Vec<T>>>()?;
    let mean = vals.iter().fold(T::zero(), |a, &b| a + b) / lit(vals.len() as f64);
    let dev = vals.iter().fold(T::zero(), |a, &b| a.max((b - mean).abs()));
    Ok((mean, dev))
}

/// Closed form `s(α) = α - (κR²/2) sin 2α` of the model family.
pub fn scattering_function_closed<T: Real>(disk: &DiskSpec<T>, alpha: T) -> T {
    alpha - disk.kappa_r2() / lit(2.0) * (alpha + alpha).sin()
}

/// Requested absolute accuracy of each quadrature panel.
const QUADRATURE_TOL: f64 = 1e-15;

/// `s(α)` from the Clairaut reduction:
/// `s = ρ ∫_0^{R cosα} a(√(u² + ρ²)) / (u² + ρ²) du - π/2`, `ρ = -R sinα`,
/// for `α < 0`, extended to `α > 0` by oddness. Uses double exponential
/// quadrature on panels that grow geometrically away from the vertex scale.
pub fn scattering_quadrature_oracle<M: RadialMetric<f64> + ?Sized>(metric: &M, alpha: f64) -> Result<f64> {
    use std::f64::consts::FRAC_PI_2;
    if alpha.is_nan() || alpha.abs() >= FRAC_PI_2 {
        return Err(domain("alpha", alpha, "(-pi/2, pi/2)"));
    }
    if alpha == 0.0 {
        return Ok(0.0);
    }
    if alpha > 0.0 {
        return scattering_quadrature_oracle(metric, -alpha).map(|s| -s);
    }
    let r = metric.radius();
    let rho = -r * alpha.sin();
    let len = r * alpha.cos();
    let f = |u: f64| {
        let q = u * u + rho * rho;
        rho * metric.a(q.sqrt()) / q
    };
    let mut total = 0.0;
    let mut lo = 0.0;
    let mut hi = rho.min(len);
    loop {
        let out = quadrature::double_exponential::integrate(f, lo, hi, QUADRATURE_TOL);
        if !out.integral.is_finite() || out.error_estimate > 1e-12 {
            return Err(Error::Quadrature {
                estimate: out.error_estimate,
            });
        }
        total += out.integral;
        if hi >= len {
            break;
        }
        lo = hi;
        hi = (hi * 4.0).min(len);
    }
    Ok(total - FRAC_PI_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    fn disk(kappa: f64) -> DiskSpec<f64> {
        DiskSpec::new(1.0, kappa).unwrap()
    }

    #[test]
    fn fan_vectors() {
        let d = disk(1.0);
        let p = fan_to_phase(&d, FanBeamCoord::new(0.0, 0.0));
        assert!((p.vx + 0.5).abs() < 1e-15 && p.vy.abs() < 1e-15);
        let p = fan_to_phase(&d, FanBeamCoord::new(0.0, FRAC_PI_2));
        assert!(p.vx.abs() < 1e-15 && (p.vy + 1.0).abs() < 1e-15);
        let e = disk(0.0);
        let p = fan_to_phase(&e, FanBeamCoord::new(0.0, 0.0));
        assert_eq!((p.vx, p.vy), (-1.0, 0.0));
        for k in [-0.5, 0.0, 1.5] {
            for (th, al) in [(0.3, 0.2), (2.0, -1.0), (5.0, 1.4)] {
                let p = fan_to_phase(&disk(k), FanBeamCoord::new(th, al));
                assert!((p.speed_sq(&disk(k)) - 1.0).abs() < 1e-14);
                let back = p.to_fan(&disk(k));
                assert!((back.theta - th).abs() < 1e-13 && (back.alpha - al).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn polar_roundtrip() {
        let d = disk(0.7);
        let pp = PolarPoint {
            r: 0.6,
            theta: 1.0,
            phi: -2.0,
        };
        let q = pp.to_phase(&d).polar(&d);
        assert!((q.r - 0.6).abs() < 1e-15);
        assert!((q.theta - 1.0).abs() < 1e-14);
        assert!((q.phi + 2.0).abs() < 1e-14);
        assert!((pp.to_phase(&d).speed_sq(&d) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn euclidean_diameter() {
        let e = disk(0.0);
        let tr = integrate_geodesic(&e, PhasePoint::new(1.0, 0.0, -1.0, 0.0), 4096).unwrap();
        assert!((tr.tau - 2.0).abs() < 1e-12);
        let x = tr.exit();
        assert!((x.x + 1.0).abs() < 1e-12 && x.y.abs() < 1e-12);
    }

    #[test]
    fn euclidean_chords() {
        let e = disk(0.0);
        let opts = FlowOptions::default();
        for al in [-1.2, -0.4, 0.0, 0.9] {
            let c = cross(&e, FanBeamCoord::new(0.0, al), &opts).unwrap();
            assert!((c.tau - 2.0 * f64::cos(al)).abs() < 1e-12);
        }
    }

    #[test]
    fn exit_angle_matches_closed_form() {
        let d = disk(0.5);
        let c = cross(&d, FanBeamCoord::new(0.0, FRAC_PI_4), &FlowOptions::default()).unwrap();
        let s = FRAC_PI_4 - 0.25;
        assert!(wrap_pi(c.outgoing.theta - PI - 2.0 * s).abs() < 1e-8);
        assert!((c.outgoing.alpha - (PI - FRAC_PI_4)).abs() < 1e-8);
    }

    #[test]
    fn scattering_relation_examples() {
        let opts = FlowOptions::default();
        let e = disk(0.0);
        let out = scattering_relation_numeric(&e, FanBeamCoord::new(0.5, 0.3), &opts).unwrap();
        assert!((out.theta - (0.5 + PI + 0.6)).abs() < 1e-9);
        assert!((out.alpha - (PI - 0.3)).abs() < 1e-9);
        let d = disk(1.0);
        let out = scattering_relation_numeric(&d, FanBeamCoord::new(0.0, 0.0), &opts).unwrap();
        assert!((out.theta - PI).abs() < 1e-9 && (out.alpha - PI).abs() < 1e-9);
        let back = scattering_relation_numeric(&d, out, &opts).unwrap();
        assert!(wrap_pi(back.theta).abs() < 1e-9 && wrap_pi(back.alpha).abs() < 1e-9);
    }

    #[test]
    fn scattering_function_examples() {
        let opts = FlowOptions::default();
        assert_eq!(scattering_function_numeric(&disk(1.0), 0.0, &opts).unwrap(), 0.0);
        let s = scattering_function_numeric(&disk(0.0), 0.7, &opts).unwrap();
        assert!((s - 0.7).abs() < 1e-10);
        let s = scattering_function_numeric(&disk(1.5), FRAC_PI_6, &opts).unwrap();
        let exact = FRAC_PI_6 - 0.75 * (3f64).sqrt() / 2.0;
        assert!((exact + 0.125_92).abs() < 1e-5);
        assert!((s - exact).abs() < 1e-8);
        assert!((s - scattering_function_closed(&disk(1.5), FRAC_PI_6)).abs() < 1e-8);
        assert_eq!(scattering_function_numeric(&disk(1.5), FRAC_PI_2, &opts).unwrap(), FRAC_PI_2);
        let err = scattering_function_numeric(&disk(1.5), FRAC_PI_2 - 1e-4, &opts).unwrap_err();
        assert!(matches!(err, Error::Glancing { .. }));
    }

    #[test]
    fn closed_form_examples() {
        assert!((scattering_function_closed(&disk(1.0), FRAC_PI_4) - 0.285_398).abs() < 1e-6);
        assert!((scattering_function_closed(&disk(1.3), FRAC_PI_2) - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(scattering_function_closed(&disk(0.0), 0.4), 0.4);
    }

    #[test]
    fn quadrature_examples() {
        let q = scattering_quadrature_oracle(&disk(0.0), -FRAC_PI_4).unwrap();
        assert!((q + FRAC_PI_4).abs() < 1e-13);
        let q = scattering_quadrature_oracle(&disk(1.0), -FRAC_PI_6).unwrap();
        let expect = -FRAC_PI_6 + 0.5 * (3f64).sqrt() / 2.0;
        assert!((q - expect).abs() < 1e-12);
        assert!(scattering_quadrature_oracle(&disk(1.0), -FRAC_PI_2).is_err());
    }

    #[test]
    fn outward_start_is_rejected() {
        let d = disk(0.5);
        let p = PhasePoint::new(1.0, 0.0, 1.0 / 1.5, 0.0);
        assert!(matches!(
            integrate_geodesic(&d, p, 512).unwrap_err(),
            Error::OutwardPointing
        ));
    }

    #[test]
    fn non_unit_speed_is_rejected() {
        let d = disk(0.5);
        assert!(integrate_geodesic(&d, PhasePoint::new(0.0, 0.0, 2.0, 0.0), 512).is_err());
    }

    #[test]
    fn time_cap_reports_trapping() {
        let d = disk(0.5);
        let opts = FlowOptions {
            time_cap_factor: 0.1,
            ..FlowOptions::default()
        };
        let p = fan_to_phase(&d, FanBeamCoord::new(0.0, 0.0));
        assert!(matches!(
            integrate_geodesic_with(&d, p, &opts).unwrap_err(),
            Error::NonTrapping { .. }
        ));
    }

    #[test]
    fn single_precision_flow() {
        let d = DiskSpec::<f32>::new(1.0, 0.5).unwrap();
        let opts = FlowOptions::<f32>::with_steps(1024);
        let s = scattering_function_numeric(&d, 0.4, &opts).unwrap();
        assert!((s - scattering_function_closed(&d, 0.4)).abs() < 1e-4);
    }
}
