//! Derivative-free blackbox minimization with an iteratively refined
//! neural-network surrogate.
//!
//! The search loop keeps a dataset of evaluated points in the unit
//! hypercube, fits a small MLP surrogate to it, generates a space-filling
//! exploration set around the current best point, and evaluates the
//! surrogate-best members of that set against the true objective. A
//! perturbation range grows on consecutive successes and shrinks on
//! consecutive failures; when it collapses below a minimum the run
//! restarts from a fresh Latin hypercube design.
//!
//! The crate is `no_std`-compatible (requires `alloc`). All randomness
//! flows through explicit seeds, so every run is reproducible.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod bounds;
pub mod config;
pub mod dataset;
pub mod error;
pub mod optimizer;
pub mod problems;
pub mod rng;
pub mod sampling;
pub mod surrogate;
pub mod trust;

pub use bounds::{scale_to_unit, unscale_from_unit, Bounds};
pub use config::SnboConfig;
pub use dataset::Dataset;
pub use error::{Error, Result};
pub use optimizer::{
    initial_plan, run_random_search, run_random_search_from_plan, run_snbo, select_infill,
    HistoryEntry, Objective, RunRecord, RunResult,
};
pub use problems::AnalyticalProblem;
pub use surrogate::{
    fit_standardizer, gelu, predict, train, Architecture, Gradients, Network, Standardizer,
    TrainReport, TrainerConfig,
};
pub use trust::TrustState;
