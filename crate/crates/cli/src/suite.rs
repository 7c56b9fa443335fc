//! Benchmark suite execution: repeated seeded runs with shared initial
//! plans, percentile bands, and summary statistics.

use std::time::Instant;

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};
use snbo_core::rng::derive_seed;
use snbo_core::{
    initial_plan, run_random_search_from_plan, run_snbo, AnalyticalProblem, RunResult,
};

use crate::config::SuiteConfigFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Snbo,
    Random,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Snbo => "snbo",
            Method::Random => "random",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "snbo" => Ok(Method::Snbo),
            "random" => Ok(Method::Random),
            other => bail!("unknown method {other:?}"),
        }
    }
}

/// One completed run within a suite.
#[derive(Debug, Clone)]
pub struct RunArtifact {
    pub problem: String,
    pub n_dims: usize,
    pub method: Method,
    pub repeat: usize,
    pub seed: u64,
    pub result: RunResult,
}

impl RunArtifact {
    pub fn final_best(&self) -> f64 {
        self.result.best_y
    }

    pub fn running_best_curve(&self) -> Vec<f64> {
        self.result
            .record
            .history
            .iter()
            .map(|e| e.running_best)
            .collect()
    }
}

#[derive(Debug, Default)]
pub struct SuiteReport {
    pub runs: Vec<RunArtifact>,
    /// Human-readable diagnostics for aborted runs (problem/method/repeat
    /// context included); successful runs continue regardless.
    pub failures: Vec<String>,
}

/// Runs every (problem, method, repeat) combination. Each repeat derives
/// its seed from the base seed by (entry index, repeat index), and both
/// methods of a repeat consume the identical initial sampling plan.
pub fn run_suite(config: &SuiteConfigFile, threads: usize) -> Result<SuiteReport> {
    config.validate()?;
    let methods: Vec<Method> = config
        .methods
        .iter()
        .map(|m| Method::parse(m))
        .collect::<Result<_>>()?;

    let mut jobs = Vec::new();
    for (entry_idx, _entry) in config.problems.iter().enumerate() {
        for repeat in 0..config.n_repeats {
            let seed = derive_seed(config.seed, &[entry_idx as u64, repeat as u64]);
            for &method in &methods {
                jobs.push((entry_idx, repeat, seed, method));
            }
        }
    }

    let run_job = |&(entry_idx, repeat, seed, method): &(usize, usize, u64, Method)| {
        let entry = &config.problems[entry_idx];
        execute_run(entry, repeat, seed, method).map_err(|e| {
            format!(
                "{} {}d / {} / repeat {}: {e}",
                entry.problem,
                entry.n_dims,
                method.as_str(),
                repeat
            )
        })
    };

    let outcomes: Vec<std::result::Result<RunArtifact, String>> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?;
        use rayon::prelude::*;
        pool.install(|| jobs.par_iter().map(run_job).collect())
    } else {
        jobs.iter().map(run_job).collect()
    };

    let mut report = SuiteReport::default();
    for outcome in outcomes {
        match outcome {
            Ok(artifact) => report.runs.push(artifact),
            Err(diag) => report.failures.push(diag),
        }
    }
    Ok(report)
}

fn execute_run(
    entry: &crate::config::ProblemEntry,
    repeat: usize,
    seed: u64,
    method: Method,
) -> Result<RunArtifact> {
    let mut snbo_config = entry.overrides.build(entry.n_dims, entry.n_max)?;
    snbo_config.seed = seed;
    let mut problem = AnalyticalProblem::by_name(&entry.problem, entry.n_dims)
        .ok_or_else(|| anyhow::anyhow!("unknown problem {:?}", entry.problem))?;

    let start = Instant::now();
    let mut result = match method {
        Method::Snbo => run_snbo(&mut problem, &snbo_config)?,
        Method::Random => {
            let plan = initial_plan(&snbo_config);
            run_random_search_from_plan(&mut problem, snbo_config.n_max, seed, &plan)?
        }
    };
    result.record.wall_time_secs = start.elapsed().as_secs_f64();

    Ok(RunArtifact {
        problem: entry.problem.clone(),
        n_dims: entry.n_dims,
        method,
        repeat,
        seed,
        result,
    })
}

/// Linear-interpolation percentile of an unsorted sample, `p` in [0, 100].
pub fn percentile(values: &[f64], p: f64) -> f64 {
    assert!(!values.is_empty(), "percentile of an empty sample");
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let h = p / 100.0 * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

/// Pointwise 25th/50th/75th percentile bands over running-best curves.
/// Ragged curves are truncated to the shortest; returns the truncated
/// length alongside the bands.
pub struct Bands {
    pub p25: Vec<f64>,
    pub p50: Vec<f64>,
    pub p75: Vec<f64>,
}

pub fn percentile_bands(curves: &[Vec<f64>]) -> Result<Bands> {
    if curves.is_empty() {
        bail!("no curves to band");
    }
    let len = curves.iter().map(|c| c.len()).min().unwrap();
    if curves.iter().any(|c| c.len() != len) {
        eprintln!("warning: ragged histories truncated to {len} evaluations");
    }
    let mut bands = Bands {
        p25: Vec::with_capacity(len),
        p50: Vec::with_capacity(len),
        p75: Vec::with_capacity(len),
    };
    let mut column = vec![0.0; curves.len()];
    for i in 0..len {
        for (j, c) in curves.iter().enumerate() {
            column[j] = c[i];
        }
        bands.p25.push(percentile(&column, 25.0));
        bands.p50.push(percentile(&column, 50.0));
        bands.p75.push(percentile(&column, 75.0));
    }
    Ok(bands)
}

/// Final-value statistics for one (problem, method) group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub n_dims: usize,
    pub method: Method,
    pub best: f64,
    pub median: f64,
    pub worst: f64,
    pub median_time_min: f64,
}

/// Summary rows grouped by (problem, n_dims, method), in first-seen order.
pub fn summarize(runs: &[RunArtifact]) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, usize, Method)> = Vec::new();
    for r in runs {
        let key = (r.problem.clone(), r.n_dims, r.method);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(problem, n_dims, method)| {
            let finals: Vec<f64> = runs
                .iter()
                .filter(|r| r.problem == problem && r.n_dims == n_dims && r.method == method)
                .map(|r| r.final_best())
                .collect();
            let times: Vec<f64> = runs
                .iter()
                .filter(|r| r.problem == problem && r.n_dims == n_dims && r.method == method)
                .map(|r| r.result.record.wall_time_secs / 60.0)
                .collect();
            SummaryRow {
                problem,
                n_dims,
                method,
                best: finals.iter().copied().fold(f64::INFINITY, f64::min),
                median: percentile(&finals, 50.0),
                worst: finals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                median_time_min: percentile(&times, 50.0),
            }
        })
        .collect()
}
