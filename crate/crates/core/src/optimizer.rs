//! The main search loop and a random-search baseline.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::bounds::{unscale_from_unit, Bounds};
use crate::config::SnboConfig;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::rng::{self, TAG_CAND, TAG_LHS, TAG_NET, TAG_RANDOM, TAG_TRAIN};
use crate::sampling::{generate_exploration_points, latin_hypercube};
use crate::surrogate::{fit_standardizer, predict, train, Network, Standardizer};
use crate::trust::TrustState;

/// A minimization target. `evaluate` receives points in original units.
pub trait Objective {
    fn name(&self) -> &str;
    fn bounds(&self) -> &Bounds;
    fn evaluate(&mut self, x: &[f64]) -> Result<f64>;
}

/// One objective evaluation in the run log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoryEntry {
    /// 1-based evaluation index.
    pub eval_index: usize,
    pub value: f64,
    pub running_best: f64,
}

/// Per-evaluation convergence history plus restart markers and timing.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub history: Vec<HistoryEntry>,
    /// Evaluation counts at which a restart began (first run excluded).
    pub restarts: Vec<usize>,
    /// Filled in by callers that time the run; the core loop has no clock.
    pub wall_time_secs: f64,
    /// Best point in original units and its value.
    pub final_best: (Vec<f64>, f64),
}

/// Final outcome of one optimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_x: Vec<f64>,
    pub best_y: f64,
    pub n_evals_used: usize,
    pub record: RunRecord,
}

/// Budget-tracking evaluator working in unit-cube coordinates.
struct EvalTracker<'a, O: Objective> {
    objective: &'a mut O,
    history: Vec<HistoryEntry>,
    best: Option<(Vec<f64>, f64)>,
}

impl<'a, O: Objective> EvalTracker<'a, O> {
    fn new(objective: &'a mut O) -> Self {
        Self {
            objective,
            history: Vec::new(),
            best: None,
        }
    }

    fn n_evals(&self) -> usize {
        self.history.len()
    }

    fn evaluate_unit(&mut self, u: &[f64]) -> Result<f64> {
        let x = unscale_from_unit(u, self.objective.bounds())?;
        let y = self.objective.evaluate(&x)?;
        if !y.is_finite() {
            return Err(Error::NonFiniteObjective { value: y });
        }
        if self.best.as_ref().is_none_or(|(_, b)| y < *b) {
            self.best = Some((x, y));
        }
        let running_best = self.best.as_ref().expect("set above").1;
        self.history.push(HistoryEntry {
            eval_index: self.history.len() + 1,
            value: y,
            running_best,
        });
        Ok(y)
    }

    fn finish(self, restarts: Vec<usize>) -> Result<RunResult> {
        let (best_x, best_y) = self.best.ok_or(Error::EmptyDataset)?;
        let n_evals_used = self.history.len();
        Ok(RunResult {
            best_x: best_x.clone(),
            best_y,
            n_evals_used,
            record: RunRecord {
                history: self.history,
                restarts,
                wall_time_secs: 0.0,
                final_best: (best_x, best_y),
            },
        })
    }
}

/// The initial Latin hypercube plan the first restart of [`run_snbo`] will
/// use, exposed so other methods can share it.
pub fn initial_plan(config: &SnboConfig) -> Vec<Vec<f64>> {
    let size = config.n_init.min(config.n_max);
    latin_hypercube(
        size,
        config.n_dims,
        rng::derive_seed(config.seed, &[TAG_LHS, 0]),
    )
}

/// The `q` exploration points with the lowest surrogate prediction
/// (ties to the lowest index).
pub fn select_infill(
    network: &Network,
    standardizer: &Standardizer,
    exploration_points: &[Vec<f64>],
    q: usize,
) -> Result<Vec<Vec<f64>>> {
    if exploration_points.len() < q {
        return Err(Error::InsufficientCandidates {
            available: exploration_points.len(),
            requested: q,
        });
    }
    let predictions = predict(network, standardizer, exploration_points)?;
    let mut order: Vec<usize> = (0..exploration_points.len()).collect();
    order.sort_by(|&a, &b| predictions[a].total_cmp(&predictions[b]));
    Ok(order
        .into_iter()
        .take(q)
        .map(|i| exploration_points[i].clone())
        .collect())
}

/// Runs the full restart-wrapped surrogate search.
///
/// Outer loop: fresh Latin hypercube plan, fresh network, fresh trust
/// state. Inner loop per iteration: train the surrogate, generate the
/// exploration set around the incumbent, evaluate the surrogate-best `q`
/// points, and adapt the perturbation range. A restart fires when the
/// range drops below `r_min`; the run ends when the budget is spent.
pub fn run_snbo<O: Objective>(objective: &mut O, config: &SnboConfig) -> Result<RunResult> {
    config.validate()?;
    if objective.bounds().n_dims() != config.n_dims {
        return Err(Error::DimensionMismatch {
            expected: config.n_dims,
            got: objective.bounds().n_dims(),
        });
    }

    let mut tracker = EvalTracker::new(objective);
    let mut restarts = Vec::new();
    let mut restart_index: u64 = 0;

    while tracker.n_evals() < config.n_max {
        if restart_index > 0 {
            restarts.push(tracker.n_evals());
        }

        // A restart that cannot afford the full plan spends what remains.
        let plan_size = config.n_init.min(config.n_max - tracker.n_evals());
        let plan = latin_hypercube(
            plan_size,
            config.n_dims,
            rng::derive_seed(config.seed, &[TAG_LHS, restart_index]),
        );
        let mut data = Dataset::new();
        for u in plan {
            let y = tracker.evaluate_unit(&u)?;
            data.push(u, y)?;
        }

        let mut network = Network::init(
            config.architecture()?,
            rng::derive_seed(config.seed, &[TAG_NET, restart_index]),
        );
        let mut trust = TrustState::new(config.r_init);
        let mut iteration: u64 = 0;

        while tracker.n_evals() < config.n_max && trust.r >= config.r_min {
            let standardizer = fit_standardizer(&data)?;
            train(
                &mut network,
                &data,
                &standardizer,
                &config.trainer,
                rng::derive_seed(config.seed, &[TAG_TRAIN, restart_index, iteration]),
            )?;

            let (_, x_best, y_best) = data.best()?;
            let x_best = x_best.to_vec();
            let exploration = generate_exploration_points(
                config.n_explore,
                trust.r,
                &x_best,
                config.p_perturb,
                rng::derive_seed(config.seed, &[TAG_CAND, restart_index, iteration]),
            )?;

            // Truncate the final batch so the budget is a hard cap.
            let q = config.q.min(config.n_max - tracker.n_evals());
            let infill = select_infill(&network, &standardizer, &exploration, q)?;

            let mut batch_best = f64::INFINITY;
            for u in infill {
                let y = tracker.evaluate_unit(&u)?;
                batch_best = batch_best.min(y);
                data.push(u, y)?;
            }

            let improved = batch_best < y_best;
            let (next, _) = trust.update(improved, config);
            trust = next;
            iteration += 1;
        }
        restart_index += 1;
    }

    tracker.finish(restarts)
}

/// Uniform-sampling baseline with the same logging as [`run_snbo`].
pub fn run_random_search<O: Objective>(
    objective: &mut O,
    n_max: usize,
    seed: u64,
) -> Result<RunResult> {
    run_random_search_from_plan(objective, n_max, seed, &[])
}

/// Random search that first consumes a shared initial plan, so benchmark
/// repeats can start every method from identical evaluations.
pub fn run_random_search_from_plan<O: Objective>(
    objective: &mut O,
    n_max: usize,
    seed: u64,
    initial_plan: &[Vec<f64>],
) -> Result<RunResult> {
    if n_max < 1 {
        return Err(Error::InvalidConfig(String::from(
            "random search needs a budget of at least 1",
        )));
    }
    let n_dims = objective.bounds().n_dims();
    let mut tracker = EvalTracker::new(objective);
    for u in initial_plan.iter().take(n_max) {
        tracker.evaluate_unit(u)?;
    }
    let mut rng = rng::substream(seed, &[TAG_RANDOM]);
    while tracker.n_evals() < n_max {
        let u: Vec<f64> = (0..n_dims).map(|_| rng.random_range(0.0..1.0)).collect();
        tracker.evaluate_unit(&u)?;
    }
    tracker.finish(Vec::new())
}
