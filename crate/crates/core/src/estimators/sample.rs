use alloc::vec::Vec;

use crate::{Error, Result};

/// Observed pairs `(X_i, Y_i)` with `X_i` in `R^d` and `Y_i >= 0`.
///
/// Covariates are stored row-major in one buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    dimension: usize,
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Sample {
    pub fn new(dimension: usize, xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::domain("sample dimension", "at least 1", 0.0));
        }
        if xs.len() != ys.len() * dimension {
            return Err(Error::DimensionMismatch {
                expected: ys.len() * dimension,
                found: xs.len(),
            });
        }
        for (index, row) in xs.chunks_exact(dimension).enumerate() {
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidPoint {
                    index,
                    reason: "covariate is not finite",
                });
            }
        }
        for (index, &y) in ys.iter().enumerate() {
            if !(y >= 0.0 && y.is_finite()) {
                return Err(Error::InvalidPoint {
                    index,
                    reason: "response must be finite and non-negative",
                });
            }
        }
        Ok(Sample { dimension, xs, ys })
    }

    pub fn univariate(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        Self::new(1, xs, ys)
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let (xs, ys) = pairs.iter().copied().unzip();
        Self::univariate(xs, ys)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }

    pub fn x(&self, i: usize) -> &[f64] {
        &self.xs[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn y(&self, i: usize) -> f64 {
        self.ys[i]
    }

    pub fn responses(&self) -> &[f64] {
        &self.ys
    }

    /// Flat row-major covariate buffer.
    pub fn covariates(&self) -> &[f64] {
        &self.xs
    }

    /// Values of covariate coordinate `axis` across all points.
    pub fn axis(&self, axis: usize) -> impl Iterator<Item = f64> + '_ {
        self.xs.iter().skip(axis).step_by(self.dimension).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.xs.chunks_exact(self.dimension).zip(self.ys.iter().copied())
    }

    /// A copy with every response multiplied by `factor`.
    pub fn scaled_responses(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.dimension,
            self.xs.clone(),
            self.ys.iter().map(|y| y * factor).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_negative_response() {
        let err = Sample::univariate(alloc::vec![0.1, 0.2], alloc::vec![1.0, -0.5]).unwrap_err();
        assert!(matches!(err, Error::InvalidPoint { index: 1, .. }));
    }

    #[test]
    fn rejects_ragged_covariates() {
        assert!(Sample::new(2, alloc::vec![0.1, 0.2, 0.3], alloc::vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn accessors() {
        let s = Sample::new(2, alloc::vec![0.1, 0.2, 0.3, 0.4], alloc::vec![1.0, 2.0]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.x(1), &[0.3, 0.4]);
        assert_eq!(s.axis(1).collect::<Vec<_>>(), alloc::vec![0.2, 0.4]);
        assert_eq!(s.y(0), 1.0);
    }
}
