//! Box bounds in original problem units and scaling to/from the unit cube.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Axis-aligned box constraints in original problem units.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (dim, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidBounds { dim });
            }
        }
        Ok(Self { lower, upper })
    }

    /// `[-half, half]` in every dimension.
    pub fn symmetric(n_dims: usize, half: f64) -> Self {
        Self::new(alloc::vec![-half; n_dims], alloc::vec![half; n_dims])
            .expect("symmetric bounds are valid for half > 0")
    }

    /// The unit cube `[0, 1]^n`.
    pub fn unit(n_dims: usize) -> Self {
        Self::new(alloc::vec![0.0; n_dims], alloc::vec![1.0; n_dims])
            .expect("unit bounds are valid")
    }

    pub fn n_dims(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }
}

/// Maps a point in original units onto `[0,1]^n`.
///
/// Points outside the bounds are rejected rather than clamped.
pub fn scale_to_unit(x: &[f64], bounds: &Bounds) -> Result<Vec<f64>> {
    if x.len() != bounds.n_dims() {
        return Err(Error::DimensionMismatch {
            expected: bounds.n_dims(),
            got: x.len(),
        });
    }
    let mut out = Vec::with_capacity(x.len());
    for (dim, &v) in x.iter().enumerate() {
        let (lo, hi) = (bounds.lower[dim], bounds.upper[dim]);
        if v < lo || v > hi {
            return Err(Error::OutOfBounds { dim, value: v });
        }
        out.push((v - lo) / (hi - lo));
    }
    Ok(out)
}

/// Maps a unit-cube point back to original units; inverse of [`scale_to_unit`].
pub fn unscale_from_unit(u: &[f64], bounds: &Bounds) -> Result<Vec<f64>> {
    if u.len() != bounds.n_dims() {
        return Err(Error::DimensionMismatch {
            expected: bounds.n_dims(),
            got: u.len(),
        });
    }
    let mut out = Vec::with_capacity(u.len());
    for (dim, &v) in u.iter().enumerate() {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfBounds { dim, value: v });
        }
        out.push(bounds.lower[dim] + v * (bounds.upper[dim] - bounds.lower[dim]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_maps_to_zero_and_upper_to_one() {
        let b = Bounds::new(vec![-2.0, 1.0], vec![3.0, 4.0]).unwrap();
        assert_eq!(scale_to_unit(&[-2.0, 1.0], &b).unwrap(), vec![0.0, 0.0]);
        assert_eq!(scale_to_unit(&[3.0, 4.0], &b).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn midpoint_of_symmetric_bounds() {
        let b = Bounds::symmetric(3, 5.12);
        assert_eq!(
            scale_to_unit(&[0.0, 0.0, 0.0], &b).unwrap(),
            vec![0.5, 0.5, 0.5]
        );
        let b = Bounds::symmetric(2, 32.768);
        assert_eq!(unscale_from_unit(&[0.5, 0.5], &b).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn unit_corner_unscales_to_upper() {
        let b = Bounds::symmetric(4, 10.0);
        assert_eq!(
            unscale_from_unit(&[1.0; 4], &b).unwrap(),
            vec![10.0, 10.0, 10.0, 10.0]
        );
    }

    #[test]
    fn round_trip_within_tolerance() {
        let b = Bounds::symmetric(2, 5.12);
        let x = [1.7, -3.2];
        let back = unscale_from_unit(&scale_to_unit(&x, &b).unwrap(), &b).unwrap();
        for (a, r) in x.iter().zip(&back) {
            assert!((a - r).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }

    #[test]
    fn out_of_bounds_is_an_error() {
        let b = Bounds::symmetric(1, 1.0);
        assert!(matches!(
            scale_to_unit(&[1.5], &b),
            Err(Error::OutOfBounds { dim: 0, .. })
        ));
        assert!(matches!(
            unscale_from_unit(&[-0.1], &b),
            Err(Error::OutOfBounds { dim: 0, .. })
        ));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let b = Bounds::symmetric(2, 1.0);
        assert!(matches!(
            scale_to_unit(&[0.0], &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverted_bounds_rejected() {
        assert!(matches!(
            Bounds::new(vec![1.0], vec![1.0]),
            Err(Error::InvalidBounds { dim: 0 })
        ));
    }
}
