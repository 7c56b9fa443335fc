//! MLP parameters, He initialization, forward pass, and backpropagation.

use alloc::vec::Vec;

use ndarray::{Array1, Array2, Axis};
use rand_distr::{Distribution, Normal};

use super::activation::{gelu, gelu_derivative_from_cdf, normal_cdf as activation_cdf};
use super::train::TrainerConfig;
use crate::error::{Error, Result};
use crate::rng;

/// Layer widths of the surrogate network. Output dimension is always 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Architecture {
    pub input_dim: usize,
    pub hidden_layers: Vec<usize>,
}

impl Architecture {
    pub fn new(input_dim: usize, hidden_layers: Vec<usize>) -> Result<Self> {
        if input_dim == 0 {
            return Err(Error::InvalidConfig(alloc::string::String::from("input dimension must be positive")));
        }
        if hidden_layers.is_empty() || hidden_layers.contains(&0) {
            return Err(Error::InvalidConfig(alloc::string::String::from("hidden layers must be non-empty with positive widths")));
        }
        Ok(Self {
            input_dim,
            hidden_layers,
        })
    }

    /// Two hidden layers: width 128 up to 10 input dimensions, 256 above.
    pub fn default_hidden_layers(input_dim: usize) -> Vec<usize> {
        let width = if input_dim <= 10 { 128 } else { 256 };
        alloc::vec![width, width]
    }

    pub fn for_dims(input_dim: usize) -> Self {
        Self {
            input_dim,
            hidden_layers: Self::default_hidden_layers(input_dim),
        }
    }

    /// (fan_in, fan_out) per affine layer, including the scalar output.
    fn layer_shapes(&self) -> Vec<(usize, usize)> {
        let mut dims = alloc::vec![self.input_dim];
        dims.extend_from_slice(&self.hidden_layers);
        dims.push(1);
        dims.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// One affine layer with its Adam moment accumulators.
#[derive(Debug, Clone, PartialEq)]
struct Layer {
    /// Weights, shape (fan_in, fan_out); forward computes `a.dot(w) + b`.
    w: Array2<f64>,
    b: Array1<f64>,
    m_w: Array2<f64>,
    v_w: Array2<f64>,
    m_b: Array1<f64>,
    v_b: Array1<f64>,
}

/// Gradients mirroring the layer parameters.
pub struct Gradients {
    d_w: Vec<Array2<f64>>,
    d_b: Vec<Array1<f64>>,
}

impl Gradients {
    /// Per-layer (weight, bias) gradient views.
    pub fn layers(&self) -> impl Iterator<Item = (&Array2<f64>, &Array1<f64>)> {
        self.d_w.iter().zip(&self.d_b)
    }
}

/// Network weights plus optimizer state.
///
/// The Adam step counter and moments live with the weights so that
/// repeated training calls resume rather than restart.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    arch: Architecture,
    layers: Vec<Layer>,
    step: u64,
}

impl Network {
    /// He initialization: weights from `N(0, 2/fan_in)`, biases zero,
    /// moments zero. Deterministic for a given seed.
    pub fn init(arch: Architecture, seed: u64) -> Self {
        let mut rng = rng::substream(seed, &[]);
        let layers = arch
            .layer_shapes()
            .into_iter()
            .map(|(fan_in, fan_out)| {
                let normal = Normal::new(0.0, libm::sqrt(2.0 / fan_in as f64))
                    .expect("positive std dev");
                let w =
                    Array2::from_shape_fn((fan_in, fan_out), |_| normal.sample(&mut rng));
                Layer {
                    w,
                    b: Array1::zeros(fan_out),
                    m_w: Array2::zeros((fan_in, fan_out)),
                    v_w: Array2::zeros((fan_in, fan_out)),
                    m_b: Array1::zeros(fan_out),
                    v_b: Array1::zeros(fan_out),
                }
            })
            .collect();
        Self { arch, layers, step: 0 }
    }

    pub fn architecture(&self) -> &Architecture {
        &self.arch
    }

    /// Number of Adam steps taken so far.
    pub fn step_count(&self) -> u64 {
        self.step
    }

    /// Per-layer (weights, biases) views, for checkpointing.
    pub fn parameters(&self) -> Vec<(&Array2<f64>, &Array1<f64>)> {
        self.layers.iter().map(|l| (&l.w, &l.b)).collect()
    }

    /// Mutable parameter views, for finite-difference checks and tests.
    pub fn parameters_mut(&mut self) -> Vec<(&mut Array2<f64>, &mut Array1<f64>)> {
        self.layers.iter_mut().map(|l| (&mut l.w, &mut l.b)).collect()
    }

    fn check_input(&self, x: &Array2<f64>) -> Result<()> {
        if x.ncols() != self.arch.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.arch.input_dim,
                got: x.ncols(),
            });
        }
        Ok(())
    }

    /// Batch forward pass on standardized inputs; returns standardized
    /// predictions, one per row.
    pub fn forward(&self, x: &Array2<f64>) -> Result<Array1<f64>> {
        self.check_input(x)?;
        let mut a = x.clone();
        let last = self.layers.len() - 1;
        for (i, layer) in self.layers.iter().enumerate() {
            let mut z = a.dot(&layer.w) + &layer.b;
            if i < last {
                z.mapv_inplace(gelu);
            }
            a = z;
        }
        Ok(a.index_axis(Axis(1), 0).to_owned())
    }

    /// Forward pass retaining pre-activations and layer inputs, then
    /// backpropagation of the full-batch MSE gradient.
    ///
    /// Returns (predictions, gradients); predictions are pre-update.
    /// Batched forward pass plus analytic MSE gradients.
    pub fn forward_backward(
        &self,
        x: &Array2<f64>,
        y: &Array1<f64>,
    ) -> Result<(Array1<f64>, Gradients)> {
        self.check_input(x)?;
        let n = x.nrows() as f64;
        let last = self.layers.len() - 1;

        // Forward, caching the input of each layer plus the hidden
        // pre-activations and their normal-CDF values (reused by the
        // backward pass, saving an erf per element).
        let mut inputs: Vec<Array2<f64>> = Vec::with_capacity(self.layers.len());
        let mut pre_activations: Vec<Array2<f64>> = Vec::with_capacity(last);
        let mut cdfs: Vec<Array2<f64>> = Vec::with_capacity(last);
        let mut a = x.clone();
        for (i, layer) in self.layers.iter().enumerate() {
            inputs.push(a.clone());
            let z = a.dot(&layer.w) + &layer.b;
            if i < last {
                let cdf = z.mapv(activation_cdf);
                a = &z * &cdf;
                pre_activations.push(z);
                cdfs.push(cdf);
            } else {
                a = z;
            }
        }
        let predictions = a.index_axis(Axis(1), 0).to_owned();

        // d(MSE)/d(pred) = 2 (pred - y) / n, carried as an (n, 1) column.
        let residual = &predictions - y;
        let mut delta = residual
            .mapv(|r| 2.0 * r / n)
            .insert_axis(Axis(1));

        let mut d_w = alloc::vec![Array2::zeros((0, 0)); self.layers.len()];
        let mut d_b = alloc::vec![Array1::zeros(0); self.layers.len()];
        for i in (0..self.layers.len()).rev() {
            d_w[i] = inputs[i].t().dot(&delta);
            d_b[i] = delta.sum_axis(Axis(0));
            if i > 0 {
                let upstream = delta.dot(&self.layers[i].w.t());
                let mut derivative = pre_activations[i - 1].clone();
                ndarray::Zip::from(&mut derivative)
                    .and(&cdfs[i - 1])
                    .for_each(|z, &c| *z = gelu_derivative_from_cdf(*z, c));
                delta = upstream * derivative;
            }
        }
        Ok((predictions, Gradients { d_w, d_b }))
    }

    /// One Adam update with bias correction.
    pub(super) fn adam_step(&mut self, grads: &Gradients, cfg: &TrainerConfig) {
        self.step += 1;
        let t = self.step as i32;
        let bias1 = 1.0 - libm::pow(cfg.adam_beta1, t as f64);
        let bias2 = 1.0 - libm::pow(cfg.adam_beta2, t as f64);
        for (i, layer) in self.layers.iter_mut().enumerate() {
            update_matrix(
                &mut layer.w,
                &mut layer.m_w,
                &mut layer.v_w,
                &grads.d_w[i],
                cfg,
                bias1,
                bias2,
            );
            update_vector(
                &mut layer.b,
                &mut layer.m_b,
                &mut layer.v_b,
                &grads.d_b[i],
                cfg,
                bias1,
                bias2,
            );
        }
    }
}

fn adam_delta(m: f64, v: f64, cfg: &TrainerConfig, bias1: f64, bias2: f64) -> f64 {
    let m_hat = m / bias1;
    let v_hat = v / bias2;
    cfg.learning_rate * m_hat / (libm::sqrt(v_hat) + cfg.adam_eps)
}

fn update_matrix(
    w: &mut Array2<f64>,
    m: &mut Array2<f64>,
    v: &mut Array2<f64>,
    g: &Array2<f64>,
    cfg: &TrainerConfig,
    bias1: f64,
    bias2: f64,
) {
    azip_update(
        w.iter_mut().zip(m.iter_mut()).zip(v.iter_mut()).zip(g.iter()),
        cfg,
        bias1,
        bias2,
    );
}

fn update_vector(
    b: &mut Array1<f64>,
    m: &mut Array1<f64>,
    v: &mut Array1<f64>,
    g: &Array1<f64>,
    cfg: &TrainerConfig,
    bias1: f64,
    bias2: f64,
) {
    azip_update(
        b.iter_mut().zip(m.iter_mut()).zip(v.iter_mut()).zip(g.iter()),
        cfg,
        bias1,
        bias2,
    );
}

fn azip_update<'a, I>(iter: I, cfg: &TrainerConfig, bias1: f64, bias2: f64)
where
    I: Iterator<Item = (((&'a mut f64, &'a mut f64), &'a mut f64), &'a f64)>,
{
    for (((p, m), v), &g) in iter {
        *m = cfg.adam_beta1 * *m + (1.0 - cfg.adam_beta1) * g;
        *v = cfg.adam_beta2 * *v + (1.0 - cfg.adam_beta2) * g * g;
        *p -= adam_delta(*m, *v, cfg, bias1, bias2);
    }
}
