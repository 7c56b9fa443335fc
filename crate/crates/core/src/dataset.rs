//! Evaluated design points in unit-cube coordinates.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Pairs of unit-cube points and their objective values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset {
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends one evaluated point. Coordinates must lie in `[0, 1]`.
    pub fn push(&mut self, point: Vec<f64>, value: f64) -> Result<()> {
        if let Some(n) = self.points.first().map(Vec::len) {
            if point.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: point.len(),
                });
            }
        }
        for (dim, &c) in point.iter().enumerate() {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::OutOfBounds { dim, value: c });
            }
        }
        self.points.push(point);
        self.values.push(value);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn n_dims(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The entry with minimum value; ties resolve to the first occurrence.
    pub fn best(&self) -> Result<(usize, &[f64], f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (i, &y) in self.values.iter().enumerate() {
            if best.is_none_or(|(_, b)| y < b) {
                best = Some((i, y));
            }
        }
        let (i, y) = best.ok_or(Error::EmptyDataset)?;
        Ok((i, &self.points[i], y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dataset(values: &[f64]) -> Dataset {
        let mut d = Dataset::new();
        for (i, &y) in values.iter().enumerate() {
            d.push(vec![i as f64 / values.len() as f64], y).unwrap();
        }
        d
    }

    #[test]
    fn best_is_argmin() {
        let d = dataset(&[3.0, 1.0, 2.0]);
        let (i, _, y) = d.best().unwrap();
        assert_eq!((i, y), (1, 1.0));
    }

    #[test]
    fn singleton_best() {
        let d = dataset(&[5.0]);
        let (i, _, y) = d.best().unwrap();
        assert_eq!((i, y), (0, 5.0));
    }

    #[test]
    fn ties_resolve_to_first_occurrence() {
        let d = dataset(&[2.0, 2.0]);
        let (i, _, _) = d.best().unwrap();
        assert_eq!(i, 0);
    }

    #[test]
    fn empty_dataset_has_no_best() {
        assert_eq!(Dataset::new().best(), Err(Error::EmptyDataset));
    }

    #[test]
    fn rejects_points_outside_unit_cube() {
        let mut d = Dataset::new();
        assert!(d.push(vec![1.2], 0.0).is_err());
        assert!(d.push(vec![-0.1], 0.0).is_err());
    }
}
