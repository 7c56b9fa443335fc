//! Feedforward neural-network surrogate.
//!
//! A fully-connected MLP with GELU hidden activations, trained with
//! minibatch Adam on the mean squared error of standardized data. Training
//! stops early once the NRMSE (RMSE on standardized targets) over the full
//! training set drops below a tolerance, or once it stops improving. Weights and optimizer moments persist across calls, so
//! retraining on a grown dataset warm-starts from the previous state.

mod activation;
mod network;
mod standardize;
mod train;

pub use activation::{gelu, gelu_derivative};
pub use network::{Architecture, Gradients, Network};
pub use standardize::{fit_standardizer, Standardizer};
pub use train::{predict, train, TrainReport, TrainerConfig};
