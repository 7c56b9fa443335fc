//! Built-in analytical objectives with their standard bounds.
//!
//! Formulas follow the usual benchmark definitions: Ackley with a=20,
//! b=0.2, c=2*pi on [-32.768, 32.768]^n; Rastrigin on [-5.12, 5.12]^n;
//! Levy on [-10, 10]^n.

use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::{E, PI};

use crate::bounds::Bounds;
use crate::error::Result;
use crate::optimizer::Objective;

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (a, b, c) = (20.0, 0.2, 2.0 * PI);
    let mean_sq = x.iter().map(|&v| v * v).sum::<f64>() / n;
    let mean_cos = x.iter().map(|&v| libm::cos(c * v)).sum::<f64>() / n;
    -a * libm::exp(-b * libm::sqrt(mean_sq)) - libm::exp(mean_cos) + a + E
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|&v| v * v - 10.0 * libm::cos(2.0 * PI * v))
            .sum::<f64>()
}

pub fn levy(x: &[f64]) -> f64 {
    let w = |v: f64| 1.0 + (v - 1.0) / 4.0;
    let n = x.len();
    let w1 = w(x[0]);
    let wn = w(x[n - 1]);
    let sin = libm::sin;
    let first = sin(PI * w1) * sin(PI * w1);
    let middle: f64 = x[..n - 1]
        .iter()
        .map(|&v| {
            let wi = w(v);
            let s = sin(PI * wi + 1.0);
            (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s)
        })
        .sum();
    let s = sin(2.0 * PI * wn);
    first + middle + (wn - 1.0) * (wn - 1.0) * (1.0 + s * s)
}

/// A named analytical objective with bounds and its known global minimum
/// (the minimum is for reporting only; the optimizer never reads it).
pub struct AnalyticalProblem {
    name: &'static str,
    bounds: Bounds,
    global_minimum: (Vec<f64>, f64),
    eval_fn: fn(&[f64]) -> f64,
}

impl AnalyticalProblem {
    pub fn ackley(n_dims: usize) -> Option<Self> {
        (n_dims >= 1).then(|| Self {
            name: "ackley",
            bounds: Bounds::symmetric(n_dims, 32.768),
            global_minimum: (vec![0.0; n_dims], 0.0),
            eval_fn: ackley,
        })
    }

    pub fn rastrigin(n_dims: usize) -> Option<Self> {
        (n_dims >= 1).then(|| Self {
            name: "rastrigin",
            bounds: Bounds::symmetric(n_dims, 5.12),
            global_minimum: (vec![0.0; n_dims], 0.0),
            eval_fn: rastrigin,
        })
    }

    pub fn levy(n_dims: usize) -> Option<Self> {
        (n_dims >= 1).then(|| Self {
            name: "levy",
            bounds: Bounds::symmetric(n_dims, 10.0),
            global_minimum: (vec![1.0; n_dims], 0.0),
            eval_fn: levy,
        })
    }

    pub fn by_name(name: &str, n_dims: usize) -> Option<Self> {
        match name {
            "ackley" => Self::ackley(n_dims),
            "rastrigin" => Self::rastrigin(n_dims),
            "levy" => Self::levy(n_dims),
            _ => None,
        }
    }

    pub fn global_minimum(&self) -> (&[f64], f64) {
        (&self.global_minimum.0, self.global_minimum.1)
    }
}

impl Objective for AnalyticalProblem {
    fn name(&self) -> &str {
        self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        Ok((self.eval_fn)(x))
    }
}
