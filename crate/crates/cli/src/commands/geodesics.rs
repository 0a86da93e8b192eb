use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{fmt_f64, to_csv};
use crate::svg::{render_fan, PlotArc};
use blowdown::flow::{integrate_fan_ray, scattering_function_closed, scattering_relation_numeric};
use blowdown::jacobi::jacobi_along_ray;
use blowdown::scalar::wrap_pi;
use blowdown::{FanBeamCoord, Trajectory64};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

/// Largest accepted distance of an arc endpoint from the scattering relation.
pub const ENDPOINT_TOL: f64 = 1e-6;

pub const CSV_HEADER: [&str; 4] = ["geodesic_id", "t", "x", "y"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayReport {
    pub geodesic_id: usize,
    pub alpha: f64,
    pub tau: f64,
    pub exit_theta: f64,
    pub exit_alpha: f64,
    /// Distance of the arc endpoint from `scattering_relation_numeric`.
    pub endpoint_err_numeric: f64,
    /// Distance of the arc endpoint from the closed form `(θ + π + 2s(α), π - α)`.
    pub endpoint_err_closed: f64,
    /// Times of the Jacobi zeros along the ray.
    pub jacobi_zeros: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicsReport {
    pub radius: f64,
    pub kappa: f64,
    pub theta: f64,
    pub rays: Vec<RayReport>,
    pub max_endpoint_err: f64,
    pub rays_with_jacobi_zeros: usize,
    pub passed: bool,
}

/// The fan together with its sampled trajectories.
#[derive(Clone, Debug)]
pub struct Fan {
    pub report: GeodesicsReport,
    pub trajectories: Vec<Trajectory64>,
}

fn fan_distance(a: FanBeamCoord<f64>, b: FanBeamCoord<f64>) -> f64 {
    wrap_pi(a.theta - b.theta).abs().max(wrap_pi(a.alpha - b.alpha).abs())
}

/// Position at time `t`, interpolated linearly between samples.
fn position_at(tr: &Trajectory64, t: f64) -> [f64; 2] {
    let k = tr.times.partition_point(|&s| s < t).clamp(1, tr.times.len() - 1);
    let (t0, t1) = (tr.times[k - 1], tr.times[k]);
    let (p0, p1) = (tr.states[k - 1].position(), tr.states[k].position());
    let w = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
    [p0[0] + w * (p1[0] - p0[0]), p0[1] + w * (p1[1] - p0[1])]
}

/// Integrates the fan of `n - 1` rays from boundary angle `theta` with
/// `α_j = -π/2 + jπ/n`, `j = 1..n-1`, and checks every endpoint.
pub fn geodesics(cfg: &RunConfig, theta: f64, n: usize) -> CliResult<Fan> {
    let opts = cfg.flow();
    let n = n.max(2);
    let mut rays = Vec::with_capacity(n - 1);
    let mut trajectories = Vec::with_capacity(n - 1);
    for j in 1..n {
        let alpha = -FRAC_PI_2 + PI * j as f64 / n as f64;
        let fb = FanBeamCoord::new(theta, alpha);
        let tr = integrate_fan_ray(&cfg.disk, fb, &opts)?;
        let exit = tr.exit().to_fan(&cfg.disk);
        let numeric = scattering_relation_numeric(&cfg.disk, fb, &opts)?;
        let s = scattering_function_closed(&cfg.disk, alpha);
        let closed = FanBeamCoord::new(theta + PI + 2.0 * s, PI - alpha);
        let jac = jacobi_along_ray(&cfg.disk, fb, &opts)?;
        rays.push(RayReport {
            geodesic_id: j,
            alpha,
            tau: tr.tau,
            exit_theta: exit.theta,
            exit_alpha: exit.alpha,
            endpoint_err_numeric: fan_distance(exit, numeric),
            endpoint_err_closed: fan_distance(exit, closed),
            jacobi_zeros: jac.zeros.iter().map(|z| z.t).collect(),
        });
        trajectories.push(tr);
    }
    let max_endpoint_err = rays
        .iter()
        .map(|r| r.endpoint_err_numeric.max(r.endpoint_err_closed))
        .fold(0.0, f64::max);
    let rays_with_jacobi_zeros = rays.iter().filter(|r| !r.jacobi_zeros.is_empty()).count();
    Ok(Fan {
        report: GeodesicsReport {
            radius: cfg.radius(),
            kappa: cfg.kappa(),
            theta,
            rays,
            max_endpoint_err,
            rays_with_jacobi_zeros,
            passed: max_endpoint_err < ENDPOINT_TOL,
        },
        trajectories,
    })
}

impl Fan {
    pub fn to_csv(&self) -> CliResult<String> {
        let rows = self.report.rays.iter().zip(&self.trajectories).flat_map(|(ray, tr)| {
            tr.times.iter().zip(&tr.states).map(move |(&t, p)| {
                vec![ray.geodesic_id.to_string(), fmt_f64(t), fmt_f64(p.x), fmt_f64(p.y)]
            })
        });
        to_csv(&CSV_HEADER, rows)
    }

    pub fn to_svg(&self) -> String {
        let arcs: Vec<PlotArc> = self
            .report
            .rays
            .iter()
            .zip(&self.trajectories)
            .map(|(ray, tr)| PlotArc {
                points: tr.states.iter().map(|p| p.position()).collect(),
                marks: ray.jacobi_zeros.iter().map(|&t| position_at(tr, t)).collect(),
            })
            .collect();
        let title = format!("geodesic fan, R = {}, kappa = {}", self.report.radius, self.report.kappa);
        render_fan(self.report.radius, &title, &arcs)
    }
}
