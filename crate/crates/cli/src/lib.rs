//! Command-line front end of the `blowdown` library: figure regeneration,
//! scattering tables, simplicity reports, blow-down checks and invariant
//! function reports as deterministic CSV, JSON and SVG.

pub mod args;
pub mod check;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod parse;
pub mod svg;

use args::{BlowdownAction, Cli, Command, Common};
use config::RunConfig;
use error::{CliError, CliResult};
use output::{emit, to_json, write_file};
use std::io::Write;

fn config(c: &Common) -> CliResult<RunConfig> {
    RunConfig::new(c.radius, c.kappa, c.steps, c.seed)
}

fn complex_arg(flag: &str, v: &str) -> CliResult<num_complex::Complex64> {
    parse::parse_complex(v).map_err(|e| CliError::Usage(format!("{flag}: {e}")))
}

/// Runs one command, writing primary output to `--out` or `out` and short
/// diagnostics to `diag`. Returns whether every numerical check passed.
pub fn run(cli: &Cli, out: &mut dyn Write, diag: &mut dyn Write) -> CliResult<bool> {
    match &cli.command {
        Command::Geodesics {
            common,
            theta,
            grid,
            svg,
        } => {
            let cfg = config(common)?;
            let fan = commands::geodesics::geodesics(&cfg, *theta, *grid)?;
            emit(common.out.as_deref(), &fan.to_csv()?, out)?;
            if let Some(path) = svg {
                write_file(path, &fan.to_svg())?;
            }
            let r = &fan.report;
            let _ = writeln!(
                diag,
                "{} rays, max endpoint error {:.3e}, {} with Jacobi zeros",
                r.rays.len(),
                r.max_endpoint_err,
                r.rays_with_jacobi_zeros
            );
            Ok(r.passed)
        }
        Command::Scatter { common, grid } => {
            let cfg = config(common)?;
            let rep = commands::scatter::scatter(&cfg, *grid)?;
            emit(common.out.as_deref(), &rep.to_csv()?, out)?;
            let _ = writeln!(
                diag,
                "max abs_err {:.3e} (tolerance {:.0e}), max quadrature deviation {:.3e}",
                rep.max_abs_err,
                commands::scatter::SCATTER_TOL,
                rep.max_quadrature_err
            );
            Ok(rep.passed)
        }
        Command::Simplicity { common, grid } => {
            let cfg = config(common)?;
            let rep = commands::simplicity::simplicity(&cfg, *grid)?;
            emit(common.out.as_deref(), &to_json(&rep)?, out)?;
            if !rep.criteria_agree {
                let _ = writeln!(diag, "classifiers disagree: min s' sign and Jacobi zeros give different answers");
            }
            Ok(rep.passed())
        }
        Command::Blowdown { action } => match action {
            BlowdownAction::Verify { common, grid } => {
                let cfg = config(common)?;
                let rep = commands::blowdown::verify(&cfg, *grid)?;
                emit(common.out.as_deref(), &to_json(&rep)?, out)?;
                for c in rep.checks.iter().filter(|c| !c.passed) {
                    let _ = writeln!(diag, "check {} failed: {:e} vs {:e}", c.name, c.value, c.threshold);
                }
                Ok(rep.passed)
            }
            BlowdownAction::Invert { common, w, xi } => {
                let cfg = config(common)?;
                let rep = commands::blowdown::invert(&cfg, complex_arg("--w", w)?, complex_arg("--xi", xi)?)?;
                emit(common.out.as_deref(), &to_json(&rep)?, out)?;
                if let Some(m) = &rep.message {
                    let _ = writeln!(diag, "{m}");
                }
                Ok(rep.passed())
            }
        },
        Command::Invariant {
            common,
            m,
            coeffs,
            grid,
        } => {
            let cfg = config(common)?;
            let coeffs = parse::parse_coeffs(coeffs).map_err(|e| CliError::Usage(format!("--coeffs: {e}")))?;
            let rep = commands::invariant::invariant(&cfg, *m, &coeffs, *grid)?;
            emit(common.out.as_deref(), &to_json(&rep)?, out)?;
            for w in &rep.warnings {
                let _ = writeln!(diag, "warning: {w}");
            }
            Ok(rep.passed)
        }
    }
}

/// Process exit code of a finished run.
pub fn exit_code(result: &CliResult<bool>) -> i32 {
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => e.exit_code(),
    }
}
