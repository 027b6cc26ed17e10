use frontier_core::estimators::Sample;
use frontier_core::numerics::sample_stddev;

use crate::{Error, Result};

/// Multiplier in the bandwidth rule `h = 4 sigma_hat(X) n^(-1/2)`.
pub const BANDWIDTH_SCALE: f64 = 4.0;

/// `4 sigma_hat(X) / sqrt(n)`. For multivariate covariates `sigma_hat` is the
/// mean of the per-axis standard deviations.
pub fn rule_bandwidth(sample: &Sample) -> Result<f64> {
    let n = sample.len();
    let d = sample.dimension();
    let mut spread = 0.0;
    for axis in 0..d {
        let values: Vec<f64> = sample.axis(axis).collect();
        spread += sample_stddev(&values)?;
    }
    spread /= d as f64;
    if !(spread > 0.0) {
        return Err(Error::DegenerateBandwidth);
    }
    Ok(bandwidth_from_spread(spread, n))
}

pub fn bandwidth_from_spread(spread: f64, n: usize) -> f64 {
    BANDWIDTH_SCALE * spread / (n as f64).sqrt()
}

/// `p = sqrt(n)`, not rounded.
pub fn rule_power(n: usize) -> f64 {
    (n as f64).sqrt()
}
