use crate::jacobi::SimplicityReport;
use thiserror::Error;

/// Errors returned by the numerical routines.
///
/// Offending values are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} out of domain: {value} (allowed {allowed})")]
    Domain {
        what: &'static str,
        value: f64,
        allowed: &'static str,
    },

    #[error("standing hypothesis violated: need R > 0 and 1 + kappa R^2 > 0 (kappa > -1/R^2), got R = {radius}, kappa = {kappa}")]
    StandingHypothesis { radius: f64, kappa: f64 },

    #[error("radial profile is not positive: a({r}) = {a}")]
    NonPositiveProfile { r: f64, a: f64 },

    #[error("geodesic did not exit before the time cap {time_cap} (trapped or too slow)")]
    NonTrapping { time_cap: f64 },

    #[error("incidence angle {alpha} is within the glancing band {band} of +-pi/2")]
    Glancing { alpha: f64, band: f64 },

    #[error("initial vector points outward at the boundary")]
    OutwardPointing,

    #[error("root not bracketed on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NotBracketed {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("quadrature did not reach the requested accuracy (error estimate {estimate})")]
    Quadrature { estimate: f64 },

    #[error("point (w, xi) = ({w_re}{w_im:+}i, {xi_re}{xi_im:+}i) is not in the image of the blow-down map: {reason}")]
    NotInImage {
        w_re: f64,
        w_im: f64,
        xi_re: f64,
        xi_im: f64,
        reason: &'static str,
    },

    #[error("preimage lies on the unit-circle stratum |nu| = 1 where pointwise inversion is not defined")]
    BoundaryDegenerate,

    #[error("simplicity classifiers disagree (min s' = {}, {} Jacobi zeros)", .0.min_sprime, .0.conjugate_pairs.len())]
    InconsistentClassifier(Box<SimplicityReport<f64>>),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, allowed: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        allowed,
    }
}
