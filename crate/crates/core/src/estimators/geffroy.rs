use alloc::vec;
use alloc::vec::Vec;

use super::Sample;
use crate::{Error, Result};

/// Axis-aligned box `[lower_k, upper_k]` in each coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Support {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Support {
    pub fn interval(lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower], vec![upper])
    }

    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len().max(1),
                found: upper.len(),
            });
        }
        for (&a, &b) in lower.iter().zip(&upper) {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::domain("support width", "finite and positive", b - a));
            }
        }
        Ok(Support { lower, upper })
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn volume(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(a, b)| b - a).product()
    }
}

/// Geffroy's piecewise-constant estimate: the support is cut into
/// `cells_per_axis^d` equal cells and each cell holds the largest response
/// observed in it. Cells without observations hold 0 and are flagged.
///
/// Cells are half-open `[a, b)` except the last along each axis, which also
/// contains the upper edge of the support.
#[derive(Debug, Clone, PartialEq)]
pub struct GeffroyStep {
    support: Support,
    cells_per_axis: usize,
    values: Vec<f64>,
    counts: Vec<usize>,
}

impl GeffroyStep {
    pub fn cells_per_axis(&self) -> usize {
        self.cells_per_axis
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_empty_cell(&self, cell: usize) -> bool {
        self.counts[cell] == 0
    }

    /// Number of sample points in `cell`.
    pub fn cell_count(&self, cell: usize) -> usize {
        self.counts[cell]
    }

    pub fn empty_cells(&self) -> usize {
        self.counts.iter().filter(|&&c| c == 0).count()
    }

    /// Flat (row-major) index of the cell holding `x`, or `None` outside the
    /// support.
    pub fn cell_index(&self, x: &[f64]) -> Option<usize> {
        if x.len() != self.support.dimension() {
            return None;
        }
        let k = self.cells_per_axis;
        let mut index = 0;
        for ((&v, &a), &b) in x.iter().zip(&self.support.lower).zip(&self.support.upper) {
            if !(v >= a && v <= b) {
                return None;
            }
            let pos = ((v - a) / (b - a) * k as f64) as usize;
            index = index * k + pos.min(k - 1);
        }
        Some(index)
    }

    pub fn value_at(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.support.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.support.dimension(),
                found: x.len(),
            });
        }
        self.cell_index(x)
            .map(|c| self.values[c])
            .ok_or(Error::OutsideSupport { index: 0 })
    }
}

pub fn estimate_geffroy(sample: &Sample, cells_per_axis: usize, support: &Support) -> Result<GeffroyStep> {
    if cells_per_axis == 0 {
        return Err(Error::domain("cell count", "at least 1", 0.0));
    }
    if sample.dimension() != support.dimension() {
        return Err(Error::DimensionMismatch {
            expected: support.dimension(),
            found: sample.dimension(),
        });
    }
    let total = cells_per_axis
        .checked_pow(support.dimension() as u32)
        .ok_or(Error::domain("cell count", "representable", cells_per_axis as f64))?;
    let mut step = GeffroyStep {
        support: support.clone(),
        cells_per_axis,
        values: vec![0.0; total],
        counts: vec![0; total],
    };
    for (index, (x, y)) in sample.iter().enumerate() {
        let cell = step.cell_index(x).ok_or(Error::OutsideSupport { index })?;
        if y > step.values[cell] {
            step.values[cell] = y;
        }
        step.counts[cell] += 1;
    }
    Ok(step)
}
