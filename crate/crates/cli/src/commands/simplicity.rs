use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use blowdown::jacobi::conjugate_scan;
use blowdown::{Error, SimplicityReport64};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairJson {
    pub alpha: f64,
    pub t: f64,
    pub tau: f64,
    pub tangential: bool,
}

/// JSON form of the simplicity classification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplicityJson {
    pub is_simple: bool,
    pub min_sprime: f64,
    pub conjugate_pairs: Vec<PairJson>,
    pub criteria_agree: bool,
    pub min_sprime_alpha: f64,
    pub simple_by_sprime: bool,
    pub simple_by_jacobi: bool,
    pub grid_size: usize,
}

impl SimplicityJson {
    pub fn passed(&self) -> bool {
        self.criteria_agree
    }
}

impl From<&SimplicityReport64> for SimplicityJson {
    fn from(r: &SimplicityReport64) -> Self {
        Self {
            is_simple: r.is_simple,
            min_sprime: r.min_sprime,
            conjugate_pairs: r
                .conjugate_pairs
                .iter()
                .map(|p| PairJson {
                    alpha: p.alpha,
                    t: p.t,
                    tau: p.tau,
                    tangential: p.tangential,
                })
                .collect(),
            criteria_agree: r.criteria_agree,
            min_sprime_alpha: r.min_sprime_alpha,
            simple_by_sprime: r.simple_by_sprime,
            simple_by_jacobi: r.simple_by_jacobi,
            grid_size: r.grid_size,
        }
    }
}

/// Runs the conjugate point scan. A disagreement of the two classifiers is
/// returned as a report with `criteria_agree = false`, not as an error.
pub fn simplicity(cfg: &RunConfig, grid: usize) -> CliResult<SimplicityJson> {
    match conjugate_scan(&cfg.disk, grid, &cfg.flow()) {
        Ok(rep) => Ok((&rep).into()),
        Err(Error::InconsistentClassifier(rep)) => Ok(rep.as_ref().into()),
        Err(e @ Error::Domain { .. }) => Err(CliError::Usage(e.to_string())),
        Err(e) => Err(e.into()),
    }
}
