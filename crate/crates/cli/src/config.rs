//! JSON run and suite configuration files.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use snbo_core::SnboConfig;

/// Optional overrides applied on top of the built-in defaults for a given
/// problem size. Field names match [`SnboConfig`] with the trainer fields
/// inlined.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunOverrides {
    pub n_init: Option<usize>,
    pub q: Option<usize>,
    pub r_init: Option<f64>,
    pub r_max: Option<f64>,
    pub r_min: Option<f64>,
    pub max_succ: Option<usize>,
    pub max_fail: Option<usize>,
    pub n_explore: Option<usize>,
    pub p_perturb: Option<f64>,
    pub seed: Option<u64>,
    pub hidden_layers: Option<Vec<usize>>,
    pub learning_rate: Option<f64>,
    pub max_epochs: Option<usize>,
    pub nrmse_tol: Option<f64>,
    pub batch_size: Option<usize>,
    pub plateau_patience: Option<usize>,
    pub plateau_rel_tol: Option<f64>,
}

impl RunOverrides {
    /// Builds a validated [`SnboConfig`] for the given problem size.
    pub fn build(&self, n_dims: usize, n_max: usize) -> Result<SnboConfig> {
        let mut c = SnboConfig::new(n_dims, n_max);
        if let Some(v) = self.n_init {
            c.n_init = v;
        }
        if let Some(v) = self.q {
            c.q = v;
            // Downstream defaults that depend on q, unless also overridden.
            c.max_fail = n_dims.div_ceil(v);
            c.n_explore = n_dims * v;
        }
        if let Some(v) = self.r_init {
            c.r_init = v;
        }
        if let Some(v) = self.r_max {
            c.r_max = v;
        }
        if let Some(v) = self.r_min {
            c.r_min = v;
        }
        if let Some(v) = self.max_succ {
            c.max_succ = v;
        }
        if let Some(v) = self.max_fail {
            c.max_fail = v;
        }
        if let Some(v) = self.n_explore {
            c.n_explore = v;
        }
        if let Some(v) = self.p_perturb {
            c.p_perturb = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = &self.hidden_layers {
            c.hidden_layers = v.clone();
        }
        if let Some(v) = self.learning_rate {
            c.trainer.learning_rate = v;
        }
        if let Some(v) = self.max_epochs {
            c.trainer.max_epochs = v;
        }
        if let Some(v) = self.nrmse_tol {
            c.trainer.nrmse_tol = v;
        }
        if let Some(v) = self.batch_size {
            c.trainer.batch_size = v;
        }
        if let Some(v) = self.plateau_patience {
            c.trainer.plateau_patience = v;
        }
        if let Some(v) = self.plateau_rel_tol {
            c.trainer.plateau_rel_tol = v;
        }
        c.validate().context("invalid run configuration")?;
        Ok(c)
    }
}

/// Single-run config file: `n_dims` and `n_max` required, everything else
/// defaulted.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub n_dims: usize,
    pub n_max: usize,
    #[serde(flatten)]
    pub overrides: RunOverrides,
}

impl RunConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn build(&self) -> Result<SnboConfig> {
        self.overrides.build(self.n_dims, self.n_max)
    }
}

/// One benchmark problem entry in a suite config.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemEntry {
    /// Built-in problem name: ackley, rastrigin, or levy.
    pub problem: String,
    pub n_dims: usize,
    pub n_max: usize,
    #[serde(flatten)]
    pub overrides: RunOverrides,
}

fn default_repeats() -> usize {
    10
}

fn default_methods() -> Vec<String> {
    vec!["snbo".into(), "random".into()]
}

/// Suite config file for `bench run`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfigFile {
    pub problems: Vec<ProblemEntry>,
    #[serde(default = "default_repeats")]
    pub n_repeats: usize,
    #[serde(default = "default_methods")]
    pub methods: Vec<String>,
    #[serde(default)]
    pub seed: u64,
}

impl SuiteConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading suite config {}", path.display()))?;
        let cfg: Self = serde_json::from_str(&text)
            .with_context(|| format!("parsing suite config {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.problems.is_empty() {
            bail!("suite config lists no problems");
        }
        if self.n_repeats < 1 {
            bail!("n_repeats must be at least 1");
        }
        if self.methods.is_empty() {
            bail!("suite config lists no methods");
        }
        for m in &self.methods {
            if m != "snbo" && m != "random" {
                bail!("unknown method {m:?} (expected \"snbo\" or \"random\")");
            }
        }
        for e in &self.problems {
            if snbo_core::AnalyticalProblem::by_name(&e.problem, e.n_dims).is_none() {
                bail!(
                    "unknown problem {:?} at {} dims (expected ackley, rastrigin, or levy)",
                    e.problem,
                    e.n_dims
                );
            }
            e.overrides.build(e.n_dims, e.n_max)?;
        }
        Ok(())
    }
}
