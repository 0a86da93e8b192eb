use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{fmt_f64, to_csv};
use blowdown::flow::{scattering_function_closed, scattering_function_numeric, scattering_quadrature_oracle};
use blowdown::scalar::linspace;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// Largest accepted `|s_numeric - s_closed|`.
pub const SCATTER_TOL: f64 = 1e-6;

/// Distance of the α grid from the glancing directions.
pub const ALPHA_MARGIN: f64 = 0.01;

pub const CSV_HEADER: [&str; 5] = ["alpha", "s_closed", "s_numeric", "s_quadrature", "abs_err"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScatterRow {
    pub alpha: f64,
    pub s_closed: f64,
    pub s_numeric: f64,
    pub s_quadrature: f64,
    /// `|s_numeric - s_closed|`.
    pub abs_err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScatterReport {
    pub rows: Vec<ScatterRow>,
    pub max_abs_err: f64,
    /// Largest distance of the quadrature value from the other two columns.
    pub max_quadrature_err: f64,
    pub passed: bool,
}

impl ScatterReport {
    pub fn to_csv(&self) -> CliResult<String> {
        let rows = self.rows.iter().map(|r| {
            [r.alpha, r.s_closed, r.s_numeric, r.s_quadrature, r.abs_err]
                .into_iter()
                .map(fmt_f64)
                .collect()
        });
        to_csv(&CSV_HEADER, rows)
    }
}

/// Tabulates `s(α)` three ways on `grid` equispaced angles of
/// `[-π/2 + 0.01, π/2 - 0.01]`.
pub fn scatter(cfg: &RunConfig, grid: usize) -> CliResult<ScatterReport> {
    let opts = cfg.flow();
    let edge = FRAC_PI_2 - ALPHA_MARGIN;
    let rows = linspace(-edge, edge, grid.max(2))
        .into_iter()
        .map(|alpha| {
            let s_closed = scattering_function_closed(&cfg.disk, alpha);
            let s_numeric = scattering_function_numeric(&cfg.disk, alpha, &opts)?;
            let s_quadrature = scattering_quadrature_oracle(&cfg.disk, alpha)?;
            Ok(ScatterRow {
                alpha,
                s_closed,
                s_numeric,
                s_quadrature,
                abs_err: (s_numeric - s_closed).abs(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let max_abs_err = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    let max_quadrature_err = rows
        .iter()
        .map(|r| (r.s_quadrature - r.s_closed).abs().max((r.s_quadrature - r.s_numeric).abs()))
        .fold(0.0, f64::max);
    Ok(ScatterReport {
        rows,
        max_abs_err,
        max_quadrature_err,
        passed: max_abs_err < SCATTER_TOL,
    })
}
