//! Replicated Monte Carlo comparison of frontier estimators.
//!
//! For every `(estimator, n, gamma)` cell, replication `r = 1..=m` draws a
//! sample of size `n` with seed `base_seed ^ r`, applies the bandwidth and
//! exponent rules, fits the estimator and measures its L1 distance to the true
//! frontier on a grid over `[0, 1]`. A cell reports the mean, minimum and
//! maximum of those distances.
//!
//! Cells share replication seeds, so every estimator sees the same samples.
//! Replications run in parallel, but results are gathered in replication
//! order and reduced sequentially, so reports are bit-reproducible.

mod coverage;
mod diagnostics;
mod l1;
mod report;
mod rules;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use frontier_core::estimators::{
    estimate_frontier, estimate_frontier_corrected, estimate_geffroy, EstimatorConfig, PointEstimate,
    Sample, Support,
};
use frontier_core::kernels::{KernelFamily, KernelSpec};
use frontier_core::simulation::{replication_seed, Covariate, Frontier, FrontierModel};

use crate::{Error, Result};

pub use coverage::{coverage_study, CoverageStudy, PointCoverage};
pub use diagnostics::{audit_inequalities, power_root_limit, InequalityAudit};
pub use l1::{l1_error, unit_grid, L1Error};
pub use report::{CellRecord, ExperimentReport};
pub use rules::{bandwidth_from_spread, rule_bandwidth, rule_power, BANDWIDTH_SCALE};

/// Default number of grid points for the L1 distance.
pub const DEFAULT_GRID_SIZE: usize = 201;

/// Default number of replications per cell.
pub const DEFAULT_REPLICATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EstimatorKind {
    /// Power-kernel estimator with `p = sqrt(n)`.
    PowerKernel,
    /// Power-kernel estimator with `p = 1`.
    PowerKernelP1,
    /// Geffroy's step estimator with `ceil(1/h)` cells.
    Geffroy,
    /// Gamma-corrected power-kernel estimator using the cell's true gamma.
    CorrectedGamma,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 4] = [
        EstimatorKind::PowerKernel,
        EstimatorKind::PowerKernelP1,
        EstimatorKind::Geffroy,
        EstimatorKind::CorrectedGamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::PowerKernel => "power_kernel",
            EstimatorKind::PowerKernelP1 => "power_kernel_p1",
            EstimatorKind::Geffroy => "geffroy",
            EstimatorKind::CorrectedGamma => "corrected_gamma",
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EstimatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown estimator `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_values: Vec<usize>,
    pub gamma_values: Vec<f64>,
    pub covariate: Covariate,
    pub frontier: Frontier,
    pub m: usize,
    pub grid_size: usize,
    pub estimators: Vec<EstimatorKind>,
    pub base_seed: u64,
    pub kernel: KernelFamily,
}

impl Default for ExperimentConfig {
    /// `Beta(2, 2)` covariate, frontier `g2`, `n` in {200, 300, 500, 1000},
    /// gamma in {1, 2, 3}, and the power-kernel (`p = sqrt(n)` and `p = 1`)
    /// and Geffroy estimators.
    fn default() -> Self {
        ExperimentConfig {
            n_values: vec![200, 300, 500, 1000],
            gamma_values: vec![1.0, 2.0, 3.0],
            covariate: Covariate::Beta22,
            frontier: Frontier::G2,
            m: DEFAULT_REPLICATIONS,
            grid_size: DEFAULT_GRID_SIZE,
            estimators: vec![
                EstimatorKind::PowerKernel,
                EstimatorKind::PowerKernelP1,
                EstimatorKind::Geffroy,
            ],
            base_seed: 0,
            kernel: KernelFamily::CosineSquared,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.m == 0 {
            return bad("m must be at least 1");
        }
        if self.grid_size < 2 {
            return bad("grid_size must be at least 2");
        }
        if self.n_values.is_empty() || self.n_values.iter().any(|&n| n < 2) {
            return bad("n_values must be non-empty and all at least 2");
        }
        if self.gamma_values.is_empty() || self.gamma_values.iter().any(|&g| !(g > 0.0 && g.is_finite())) {
            return bad("gamma_values must be non-empty, finite and positive");
        }
        if self.estimators.is_empty() {
            return bad("at least one estimator is required");
        }
        Ok(())
    }

    /// Cells in report order: gamma, then n, then estimator.
    pub fn cells(&self) -> Vec<(EstimatorKind, usize, f64)> {
        let mut cells = Vec::new();
        for &gamma in &self.gamma_values {
            for &n in &self.n_values {
                for &est in &self.estimators {
                    cells.push((est, n, gamma));
                }
            }
        }
        cells
    }

    fn model(&self, gamma: f64, replication: u64) -> Result<FrontierModel> {
        Ok(FrontierModel::new(
            self.frontier.clone(),
            gamma,
            self.covariate,
            replication_seed(self.base_seed, replication),
        )?)
    }
}

/// Fits `estimator` to `sample` with the bandwidth/exponent rules and returns
/// a pointwise evaluator over `[0, 1]`.
pub fn fit(
    estimator: EstimatorKind,
    sample: &Sample,
    gamma: f64,
    kernel: KernelFamily,
) -> Result<Box<dyn Fn(f64) -> Result<PointEstimate> + Send + Sync + '_>> {
    let h = rule_bandwidth(sample)?;
    let n = sample.len();
    let spec = KernelSpec::new(kernel, 1)?;
    Ok(match estimator {
        EstimatorKind::PowerKernel | EstimatorKind::PowerKernelP1 | EstimatorKind::CorrectedGamma => {
            let p = if estimator == EstimatorKind::PowerKernelP1 {
                1.0
            } else {
                rule_power(n)
            };
            let cfg = EstimatorConfig::new(p, h, spec)?;
            if estimator == EstimatorKind::CorrectedGamma {
                Box::new(move |x| Ok(estimate_frontier_corrected(sample, &cfg, gamma, &[x])?))
            } else {
                Box::new(move |x| Ok(estimate_frontier(sample, &cfg, &[x])?))
            }
        }
        EstimatorKind::Geffroy => {
            let cells = (1.0 / h).ceil().max(1.0) as usize;
            let step = estimate_geffroy(sample, cells, &Support::interval(0.0, 1.0)?)?;
            Box::new(move |x| {
                let cell = step
                    .cell_index(&[x])
                    .ok_or(frontier_core::Error::OutsideSupport { index: 0 })?;
                Ok(match step.cell_count(cell) {
                    0 => PointEstimate::undefined(),
                    count => PointEstimate::defined(step.values()[cell], count),
                })
            })
        }
    })
}

/// L1 error of one replication.
pub fn replication_error(
    config: &ExperimentConfig,
    estimator: EstimatorKind,
    n: usize,
    gamma: f64,
    replication: u64,
    grid: &[f64],
) -> Result<L1Error> {
    let model = config.model(gamma, replication)?;
    let sample = model.generate_sample(n)?;
    let estimate = fit(estimator, &sample, gamma, config.kernel)?;
    let frontier = model.frontier();
    l1_error(estimate, |x| Ok(frontier.eval(x)?), grid)
}

/// Summary of one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellStats {
    pub mean_l1: f64,
    pub min_l1: f64,
    pub max_l1: f64,
    pub undefined_fraction: f64,
    /// Per-replication L1 errors, replication 1 first.
    pub errors: Vec<f64>,
}

impl CellStats {
    fn from_replications(reps: &[L1Error]) -> Self {
        let errors: Vec<f64> = reps.iter().map(|r| r.error).collect();
        let m = reps.len() as f64;
        CellStats {
            mean_l1: errors.iter().sum::<f64>() / m,
            min_l1: errors.iter().copied().fold(f64::INFINITY, f64::min),
            max_l1: errors.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            undefined_fraction: reps.iter().map(|r| r.undefined_fraction).sum::<f64>() / m,
            errors,
        }
    }
}

pub fn run_cell(config: &ExperimentConfig, estimator: EstimatorKind, n: usize, gamma: f64) -> Result<CellStats> {
    config.validate()?;
    let grid = unit_grid(config.grid_size);
    let reps = (1..=config.m as u64)
        .into_par_iter()
        .map(|r| replication_error(config, estimator, n, gamma, r, &grid))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Cell {
            estimator: estimator.name(),
            n,
            gamma,
            source: Box::new(e),
        })?;
    Ok(CellStats::from_replications(&reps))
}

/// Runs every cell of `config`. A failing cell is recorded in the report and
/// does not stop the others.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    run_cells_with(config, run_cell)
}

fn run_cells_with<F>(config: &ExperimentConfig, runner: F) -> Result<ExperimentReport>
where
    F: Fn(&ExperimentConfig, EstimatorKind, usize, f64) -> Result<CellStats> + Sync,
{
    config.validate()?;
    let cells = config
        .cells()
        .into_par_iter()
        .map(|(estimator, n, gamma)| CellRecord {
            estimator,
            n,
            gamma,
            outcome: runner(config, estimator, n, gamma).map_err(|e| e.to_string()),
        })
        .collect();
    Ok(ExperimentReport { cells })
}
