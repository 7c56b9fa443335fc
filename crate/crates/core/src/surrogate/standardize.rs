//! Zero-mean unit-variance standardization of inputs and outputs.

use alloc::vec::Vec;

use ndarray::{Array1, Array2};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Per-dimension input statistics and output statistics (population std).
/// Zero-variance columns get std 1.0 so standardization stays total.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    x_mean: Vec<f64>,
    x_std: Vec<f64>,
    y_mean: f64,
    y_std: f64,
}

/// Fits a [`Standardizer`] to the dataset.
pub fn fit_standardizer(dataset: &Dataset) -> Result<Standardizer> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let n = dataset.len() as f64;
    let dims = dataset.n_dims();
    let mut x_mean = alloc::vec![0.0; dims];
    for p in dataset.points() {
        for (acc, &v) in x_mean.iter_mut().zip(p) {
            *acc += v;
        }
    }
    for m in &mut x_mean {
        *m /= n;
    }
    let mut x_std = alloc::vec![0.0; dims];
    for p in dataset.points() {
        for ((acc, &v), &m) in x_std.iter_mut().zip(p).zip(&x_mean) {
            *acc += (v - m) * (v - m);
        }
    }
    for s in &mut x_std {
        *s = nonzero(libm::sqrt(*s / n));
    }
    let y_mean = dataset.values().iter().sum::<f64>() / n;
    let y_var = dataset
        .values()
        .iter()
        .map(|&y| (y - y_mean) * (y - y_mean))
        .sum::<f64>()
        / n;
    Ok(Standardizer {
        x_mean,
        x_std,
        y_mean,
        y_std: nonzero(libm::sqrt(y_var)),
    })
}

fn nonzero(std: f64) -> f64 {
    if std > 0.0 {
        std
    } else {
        1.0
    }
}

impl Standardizer {
    pub fn n_dims(&self) -> usize {
        self.x_mean.len()
    }

    pub fn output_mean(&self) -> f64 {
        self.y_mean
    }

    pub fn output_std(&self) -> f64 {
        self.y_std
    }

    /// Standardizes a batch of points into a design matrix.
    pub fn transform_inputs(&self, points: &[Vec<f64>]) -> Result<Array2<f64>> {
        let dims = self.n_dims();
        let mut out = Array2::zeros((points.len(), dims));
        for (row, p) in points.iter().enumerate() {
            if p.len() != dims {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    got: p.len(),
                });
            }
            for (col, &v) in p.iter().enumerate() {
                out[[row, col]] = (v - self.x_mean[col]) / self.x_std[col];
            }
        }
        Ok(out)
    }

    /// Standardizes objective values.
    pub fn transform_outputs(&self, values: &[f64]) -> Array1<f64> {
        values.iter().map(|&y| (y - self.y_mean) / self.y_std).collect()
    }

    /// Maps a standardized prediction back to objective scale.
    pub fn restore_output(&self, z: f64) -> f64 {
        z * self.y_std + self.y_mean
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point_dataset() -> Dataset {
        let mut d = Dataset::new();
        d.push(vec![0.0], 4.0).unwrap();
        d.push(vec![1.0], 8.0).unwrap();
        d
    }

    #[test]
    fn two_point_population_statistics() {
        let s = fit_standardizer(&two_point_dataset()).unwrap();
        assert_eq!(s.x_mean, vec![0.5]);
        assert_eq!(s.x_std, vec![0.5]);
        assert_eq!(s.y_mean, 6.0);
        assert_eq!(s.y_std, 2.0);
    }

    #[test]
    fn constant_output_column_gets_unit_std() {
        let mut d = Dataset::new();
        d.push(vec![0.2], 3.0).unwrap();
        d.push(vec![0.8], 3.0).unwrap();
        let s = fit_standardizer(&d).unwrap();
        assert_eq!(s.output_std(), 1.0);
        assert_eq!(s.transform_outputs(&[3.0])[0], 0.0);
    }

    #[test]
    fn standardize_then_restore_is_identity() {
        let s = fit_standardizer(&two_point_dataset()).unwrap();
        for &y in &[-7.3, 0.0, 4.0, 123.456] {
            let z = s.transform_outputs(&[y])[0];
            assert!((s.restore_output(z) - y).abs() <= 1e-12 * y.abs().max(1.0));
        }
    }

    #[test]
    fn empty_dataset_is_rejected() {
        assert_eq!(fit_standardizer(&Dataset::new()), Err(Error::EmptyDataset));
    }
}
