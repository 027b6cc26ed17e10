use frontier_core::estimators::PointEstimate;

use crate::{Error, Result};

/// Grid L1 distance between an estimate and the truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Error {
    pub error: f64,
    /// Share of grid points where the estimate was undefined.
    pub undefined_fraction: f64,
}

/// `n` equally spaced points on `[0, 1]`, endpoints included.
pub fn unit_grid(size: usize) -> Vec<f64> {
    match size {
        0 => Vec::new(),
        1 => vec![0.5],
        _ => (0..size).map(|i| i as f64 / (size - 1) as f64).collect(),
    }
}

/// Mean of `|estimate(x) - truth(x)|` over the defined grid points, times the
/// grid span. Undefined points are left out of the mean and counted in
/// `undefined_fraction`.
pub fn l1_error<E, T>(estimate: E, truth: T, grid: &[f64]) -> Result<L1Error>
where
    E: Fn(f64) -> Result<PointEstimate>,
    T: Fn(f64) -> Result<f64>,
{
    if grid.len() < 2 {
        return Err(Error::InvalidConfig("L1 grid needs at least 2 points".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidConfig("L1 grid must be strictly increasing".into()));
    }
    let span = grid[grid.len() - 1] - grid[0];
    let mut total = 0.0;
    let mut defined = 0usize;
    for &x in grid {
        if let Some(v) = estimate(x)?.value() {
            total += (v - truth(x)?).abs();
            defined += 1;
        }
    }
    if defined == 0 {
        return Err(Error::AllUndefined);
    }
    Ok(L1Error {
        error: total / defined as f64 * span,
        undefined_fraction: (grid.len() - defined) as f64 / grid.len() as f64,
    })
}
