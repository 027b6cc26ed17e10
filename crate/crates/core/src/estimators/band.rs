use super::{estimate_frontier, local_sums, EstimatorConfig, Sample};
use crate::numerics::standard_normal_quantile;
use crate::{Error, Result};

/// Pointwise band for `g(x)` from the pivot
/// `sigma^-1 (g_hat / g - 1) ~ N(0, 1)`, inverted for `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceBand {
    center: f64,
    half_width_rel: f64,
    level: f64,
}

impl ConfidenceBand {
    /// Builds the band from the estimate, the plug-in `sigma^-1` and the
    /// nominal level.
    pub fn from_pivot(center: f64, sigma_inv: f64, level: f64) -> Result<Self> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::domain("confidence level", "strictly between 0 and 1", level));
        }
        if !(sigma_inv > 0.0) {
            return Err(Error::domain("sigma^-1", "positive", sigma_inv));
        }
        let z = standard_normal_quantile(0.5 * (1.0 + level))?;
        Ok(ConfidenceBand {
            center,
            half_width_rel: z / sigma_inv,
            level,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// `z_{(1 + level)/2} / sigma^-1`.
    pub fn half_width_rel(&self) -> f64 {
        self.half_width_rel
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn lower(&self) -> f64 {
        self.center / (1.0 + self.half_width_rel)
    }

    /// Infinite once the relative half-width reaches one.
    pub fn upper(&self) -> f64 {
        if self.upper_is_infinite() {
            f64::INFINITY
        } else {
            self.center / (1.0 - self.half_width_rel)
        }
    }

    pub fn upper_is_infinite(&self) -> bool {
        self.half_width_rel >= 1.0
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower() <= value && value <= self.upper()
    }
}

/// Plug-in `((2p + 1) n h^d)^(1/2) (f_hat(x) / int K^2)^(1/2)`.
pub fn sigma_hat_inv(sample: &Sample, cfg: &EstimatorConfig, x: &[f64]) -> Result<f64> {
    let density = local_sums(sample, cfg, x)?.weight / sample.len() as f64;
    sigma_inv_from_density(sample.len(), cfg, density)
}

pub(crate) fn sigma_inv_from_density(n: usize, cfg: &EstimatorConfig, density: f64) -> Result<f64> {
    if !(density > 0.0) {
        return Err(Error::UndefinedBand);
    }
    let h_d = libm::pow(cfg.bandwidth(), cfg.dimension() as f64);
    let scale = (2.0 * cfg.power() + 1.0) * n as f64 * h_d;
    Ok(libm::sqrt(scale) * libm::sqrt(density / cfg.kernel().l2_moment()))
}

pub fn confidence_band(
    sample: &Sample,
    cfg: &EstimatorConfig,
    x: &[f64],
    level: f64,
) -> Result<ConfidenceBand> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::domain("confidence level", "strictly between 0 and 1", level));
    }
    let estimate = estimate_frontier(sample, cfg, x)?;
    let center = estimate.value().ok_or(Error::UndefinedEstimate)?;
    let sigma_inv = sigma_hat_inv(sample, cfg, x)?;
    ConfidenceBand::from_pivot(center, sigma_inv, level)
}
