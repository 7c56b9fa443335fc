//! Algorithm hyperparameters and their defaults.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::surrogate::{Architecture, TrainerConfig};

/// Full hyperparameter set for one optimization run.
///
/// [`SnboConfig::new`] fills in the published defaults; individual fields
/// can be overridden afterwards. Call [`SnboConfig::validate`] before use.
#[derive(Debug, Clone, PartialEq)]
pub struct SnboConfig {
    /// Problem dimension n.
    pub n_dims: usize,
    /// Initial sampling plan size (default `2 * n_dims`).
    pub n_init: usize,
    /// Total evaluation budget.
    pub n_max: usize,
    /// Infill points evaluated per iteration (default 1).
    pub q: usize,
    /// Initial perturbation range, in unit-cube length units (default 1.6).
    pub r_init: f64,
    /// Maximum perturbation range (default 1.6).
    pub r_max: f64,
    /// Minimum perturbation range; crossing it triggers a restart (default 0.025).
    pub r_min: f64,
    /// Consecutive successes before the range doubles (default 3).
    pub max_succ: usize,
    /// Consecutive failures before the range halves (default `ceil(n_dims / q)`).
    pub max_fail: usize,
    /// Exploration set size (default `n_dims * q`).
    pub n_explore: usize,
    /// Per-dimension perturbation probability (default `1 / sqrt(n_dims)`).
    pub p_perturb: f64,
    /// Master RNG seed; all substreams derive from it.
    pub seed: u64,
    /// Hidden layer widths of the surrogate network.
    pub hidden_layers: Vec<usize>,
    /// Surrogate training hyperparameters.
    pub trainer: TrainerConfig,
}

impl SnboConfig {
    /// Defaults for an `n_dims`-dimensional problem with budget `n_max`.
    pub fn new(n_dims: usize, n_max: usize) -> Self {
        let q = 1;
        Self {
            n_dims,
            n_init: 2 * n_dims,
            n_max,
            q,
            r_init: 1.6,
            r_max: 1.6,
            r_min: 0.025,
            max_succ: 3,
            max_fail: n_dims.div_ceil(q),
            n_explore: n_dims * q,
            p_perturb: 1.0 / libm::sqrt(n_dims as f64),
            seed: 0,
            hidden_layers: Architecture::default_hidden_layers(n_dims),
            trainer: TrainerConfig::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn architecture(&self) -> Result<Architecture> {
        Architecture::new(self.n_dims, self.hidden_layers.clone())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_dims == 0 {
            return Err(Error::InvalidConfig(String::from("n_dims must be positive")));
        }
        if self.n_init < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_init must be at least 2, got {}",
                self.n_init
            )));
        }
        if self.n_init > self.n_max {
            return Err(Error::BudgetTooSmall {
                n_init: self.n_init,
                n_max: self.n_max,
            });
        }
        if self.q < 1 {
            return Err(Error::InvalidConfig(String::from("q must be at least 1")));
        }
        if self.n_explore < self.q {
            return Err(Error::InvalidConfig(format!(
                "n_explore ({}) must be at least q ({})",
                self.n_explore, self.q
            )));
        }
        if !(self.r_min > 0.0 && self.r_min < self.r_init && self.r_init <= self.r_max) {
            return Err(Error::InvalidConfig(format!(
                "perturbation ranges must satisfy 0 < r_min < r_init <= r_max, got \
                 r_min={}, r_init={}, r_max={}",
                self.r_min, self.r_init, self.r_max
            )));
        }
        if self.max_succ == 0 || self.max_fail == 0 {
            return Err(Error::InvalidConfig(String::from("max_succ and max_fail must be positive")));
        }
        if !(self.p_perturb > 0.0 && self.p_perturb <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "p_perturb must lie in (0, 1], got {}",
                self.p_perturb
            )));
        }
        self.architecture()?;
        self.trainer.validate()
    }
}
