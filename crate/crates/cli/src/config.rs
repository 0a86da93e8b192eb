use crate::error::{CliError, CliResult};
use blowdown::{DiskSpec64, FlowOptions64};

/// Smallest accepted RK4 step count per crossing time.
pub const MIN_STEPS: usize = 16;

/// Validated settings shared by every command.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub disk: DiskSpec64,
    pub steps: usize,
    pub seed: u64,
}

impl RunConfig {
    /// Rejects `R <= 0` or `1 + κR² <= 0` (the standing hypothesis on the
    /// disk family) and step counts below [`MIN_STEPS`].
    pub fn new(radius: f64, kappa: f64, steps: usize, seed: u64) -> CliResult<Self> {
        let disk = DiskSpec64::new(radius, kappa).map_err(CliError::Config)?;
        if steps < MIN_STEPS {
            return Err(CliError::Usage(format!("--steps must be at least {MIN_STEPS}, got {steps}")));
        }
        Ok(Self { disk, steps, seed })
    }

    pub fn radius(&self) -> f64 {
        blowdown::RadialMetric::radius(&self.disk)
    }

    pub fn kappa(&self) -> f64 {
        self.disk.kappa()
    }

    pub fn flow(&self) -> FlowOptions64 {
        FlowOptions64::with_steps(self.steps)
    }
}
