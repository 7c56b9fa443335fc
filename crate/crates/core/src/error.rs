use alloc::string::String;
use core::fmt;

/// Errors surfaced by the optimization toolkit.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A point's dimension does not match what the operation expects.
    DimensionMismatch { expected: usize, got: usize },
    /// A coordinate lies outside its admissible interval.
    OutOfBounds { dim: usize, value: f64 },
    /// Lower/upper bound pair is inverted or non-finite.
    InvalidBounds { dim: usize },
    /// A configuration invariant is violated.
    InvalidConfig(String),
    /// Operation requires at least one data point.
    EmptyDataset,
    /// The objective returned a non-finite value.
    NonFiniteObjective { value: f64 },
    /// Training loss became non-finite.
    TrainingDiverged { epoch: usize },
    /// Fewer candidates available than points requested.
    InsufficientCandidates { available: usize, requested: usize },
    /// Evaluation budget cannot cover the initial sampling plan.
    BudgetTooSmall { n_init: usize, n_max: usize },
    /// Failure reported by an external objective.
    Objective(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::OutOfBounds { dim, value } => {
                write!(f, "coordinate {value} out of bounds in dimension {dim}")
            }
            Error::InvalidBounds { dim } => write!(f, "invalid bounds in dimension {dim}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::EmptyDataset => write!(f, "dataset is empty"),
            Error::NonFiniteObjective { value } => {
                write!(f, "objective returned non-finite value {value}")
            }
            Error::TrainingDiverged { epoch } => {
                write!(f, "training loss became non-finite at epoch {epoch}")
            }
            Error::InsufficientCandidates {
                available,
                requested,
            } => write!(
                f,
                "requested {requested} points but only {available} candidates available"
            ),
            Error::BudgetTooSmall { n_init, n_max } => write!(
                f,
                "evaluation budget {n_max} is smaller than the initial plan size {n_init}"
            ),
            Error::Objective(msg) => write!(f, "objective evaluation failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
