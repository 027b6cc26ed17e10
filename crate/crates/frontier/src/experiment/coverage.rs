use rayon::prelude::*;

use frontier_core::estimators::{confidence_band, EstimatorConfig};
use frontier_core::kernels::{KernelFamily, KernelSpec};
use frontier_core::simulation::{replication_seed, FrontierModel};

use super::{rule_bandwidth, rule_power};
use crate::{Error, Result};

/// Empirical coverage of the pointwise band at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCoverage {
    pub x: f64,
    pub truth: f64,
    /// `covered / valid`; NaN when no replication produced a band.
    pub coverage: f64,
    pub covered: usize,
    pub valid: usize,
    /// Replications where the band was undefined (no kernel mass at `x`).
    pub undefined: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageStudy {
    pub n: usize,
    pub level: f64,
    pub m: usize,
    pub points: Vec<PointCoverage>,
}

/// Replicates the band at each point `m` times (seed `model.seed() ^ r`),
/// with the bandwidth/exponent rules, and counts how often it covers `g(x)`.
///
/// The band's asymptotics assume uniformly distributed responses, so the
/// model must have `gamma = 1`.
pub fn coverage_study(
    model: &FrontierModel,
    n: usize,
    level: f64,
    m: usize,
    points: &[f64],
    kernel: KernelFamily,
) -> Result<CoverageStudy> {
    if model.gamma() != 1.0 {
        return Err(Error::InvalidConfig(format!(
            "coverage study requires gamma = 1, got {}",
            model.gamma()
        )));
    }
    if m == 0 {
        return Err(Error::InvalidConfig("coverage study needs m >= 1".into()));
    }
    if points.is_empty() {
        return Err(Error::InvalidConfig("coverage study needs evaluation points".into()));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidConfig(format!("level must lie in (0, 1), got {level}")));
    }
    let truths = points
        .iter()
        .map(|&x| model.frontier().eval(x))
        .collect::<frontier_core::Result<Vec<_>>>()?;
    let spec = KernelSpec::new(kernel, 1)?;

    // Per replication: Some(covered) or None (undefined) for each point.
    let outcomes = (1..=m as u64)
        .into_par_iter()
        .map(|r| {
            let sample = model
                .with_seed(replication_seed(model.seed(), r))
                .generate_sample(n)?;
            let cfg = EstimatorConfig::new(rule_power(n), rule_bandwidth(&sample)?, spec.clone())?;
            points
                .iter()
                .zip(&truths)
                .map(|(&x, &g)| match confidence_band(&sample, &cfg, &[x], level) {
                    Ok(band) => Ok(Some(band.contains(g))),
                    Err(frontier_core::Error::UndefinedEstimate | frontier_core::Error::UndefinedBand) => Ok(None),
                    Err(e) => Err(e.into()),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let points = points
        .iter()
        .zip(&truths)
        .enumerate()
        .map(|(j, (&x, &truth))| {
            let valid = outcomes.iter().filter(|o| o[j].is_some()).count();
            let covered = outcomes.iter().filter(|o| o[j] == Some(true)).count();
            PointCoverage {
                x,
                truth,
                coverage: if valid == 0 { f64::NAN } else { covered as f64 / valid as f64 },
                covered,
                valid,
                undefined: m - valid,
            }
        })
        .collect();
    Ok(CoverageStudy { n, level, m, points })
}
