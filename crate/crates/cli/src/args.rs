use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

/// Geodesics, scattering, conjugate points and the transport twistor
/// blow-down map of the disk family `a(r) = 1 + κr²`.
///
/// Exit codes: 0 all checks pass, 1 numerical check failure, 2 usage or
/// configuration error.
#[derive(Debug, Parser)]
#[command(name = "blowdown", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every command.
#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Disk radius R.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub radius: f64,
    /// Curvature parameter κ; requires 1 + κR² > 0.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: f64,
    /// RK4 steps per estimated crossing time.
    #[arg(long, default_value_t = 4096)]
    pub steps: usize,
    /// Seed for randomized point sets.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fan of geodesics from one boundary point as CSV (geodesic_id,t,x,y)
    /// and optionally SVG.
    Geodesics {
        #[command(flatten)]
        common: Common,
        /// Boundary angle of the fan.
        #[arg(long, default_value_t = std::f64::consts::PI, allow_hyphen_values = true)]
        theta: f64,
        /// Fan subdivisions N; rays are α_j = -π/2 + jπ/N for j = 1..N-1.
        #[arg(long, default_value_t = 24)]
        grid: usize,
        /// SVG output file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Scattering function table as CSV (alpha,s_closed,s_numeric,s_quadrature,abs_err).
    Scatter {
        #[command(flatten)]
        common: Common,
        /// Number of incidence angles.
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Simplicity classification by min s' and by Jacobi zeros, as JSON.
    Simplicity {
        #[command(flatten)]
        common: Common,
        /// Incidence grid size of the scan.
        #[arg(long, default_value_t = 129)]
        grid: usize,
    },
    /// Blow-down map checks and inversion.
    Blowdown {
        #[command(subcommand)]
        action: BlowdownAction,
    },
    /// Invariant function ξ^m A(w) with polynomial A, as JSON.
    Invariant {
        #[command(flatten)]
        common: Common,
        /// Fourier degree m of the bottom mode.
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Coefficients A_0, A_1, ... of A: comma separated reals or
        /// "re+imi" literals, or ";" separated "re,im" pairs.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        coeffs: String,
        /// Number of random geodesics for the transport check.
        #[arg(long, default_value_t = 20)]
        grid: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum BlowdownAction {
    /// Holomorphicity, roundtrip, Hermitian form, boundary Jacobian and
    /// separation suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Side of the (z, ν) holomorphicity grid.
        #[arg(long, default_value_t = 50)]
        grid: usize,
    },
    /// Preimage (z, ν) of a value (w, ξ).
    Invert {
        #[command(flatten)]
        common: Common,
        /// w as "re,im" or "re+imi".
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// ξ as "re,im" or "re+imi".
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
}
