//! Gaussian error linear unit, exact erf formulation.

use core::f64::consts::{FRAC_1_SQRT_2, PI};

/// Standard normal CDF.
pub(super) fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x * FRAC_1_SQRT_2))
}

/// Standard normal PDF.
pub(super) fn normal_pdf(x: f64) -> f64 {
    libm::exp(-0.5 * x * x) / libm::sqrt(2.0 * PI)
}

/// Derivative of GELU given a precomputed CDF value, avoiding a second
/// erf evaluation in the backward pass.
pub(super) fn gelu_derivative_from_cdf(x: f64, cdf: f64) -> f64 {
    cdf + x * normal_pdf(x)
}

/// GELU activation, `x * Phi(x)`.
pub fn gelu(x: f64) -> f64 {
    x * normal_cdf(x)
}

/// Derivative of GELU, `Phi(x) + x * phi(x)`.
pub fn gelu_derivative(x: f64) -> f64 {
    normal_cdf(x) + x * normal_pdf(x)
}
