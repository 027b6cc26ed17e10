//! Frontier estimators.
//!
//! The power-kernel estimator is evaluated in log space: with
//! `w_i = K_h(x - X_i)`,
//!
//! ```text
//! ln g_hat(x) = ( ln(p + 1) + LSE_i(p ln Y_i + ln w_i) - LSE_i(ln w_i) ) / p
//! ```
//!
//! so `Y_i^p` never has to be formed. Points with `w_i = 0` are skipped
//! entirely; when none remain the estimate is reported as undefined rather
//! than as zero.

mod band;
mod geffroy;
mod sample;

use crate::kernels::{check_bandwidth, KernelSpec};
use crate::numerics::{log_beta, LogValue, LogWeightedPowerSum};
use crate::{Error, Result};

pub use band::{confidence_band, sigma_hat_inv, ConfidenceBand};
pub use geffroy::{estimate_geffroy, GeffroyStep, Support};
pub use sample::Sample;

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    power: f64,
    bandwidth: f64,
    kernel: KernelSpec,
    alpha: f64,
}

impl EstimatorConfig {
    /// Configuration with smoothness `alpha = 1`.
    pub fn new(power: f64, bandwidth: f64, kernel: KernelSpec) -> Result<Self> {
        Self::with_alpha(power, bandwidth, kernel, 1.0)
    }

    pub fn with_alpha(power: f64, bandwidth: f64, kernel: KernelSpec, alpha: f64) -> Result<Self> {
        if !(power >= 1.0 && power.is_finite()) {
            return Err(Error::domain("power p", "finite and at least 1", power));
        }
        check_bandwidth(bandwidth)?;
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain("alpha", "in (0, 1]", alpha));
        }
        Ok(EstimatorConfig {
            power,
            bandwidth,
            kernel,
            alpha,
        })
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dimension(&self) -> usize {
        self.kernel.dimension()
    }

    /// Bandwidth `n^(-1/(d + alpha))` and exponent `eps * n^(alpha/(d + alpha))`
    /// satisfying the conditions for asymptotic normality when `eps -> 0`.
    pub fn asymptotic_rates(n: usize, d: usize, alpha: f64, eps: f64) -> (f64, f64) {
        let n = n as f64;
        let denom = d as f64 + alpha;
        (libm::pow(n, -1.0 / denom), eps * libm::pow(n, alpha / denom))
    }
}

/// A frontier estimate at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointEstimate {
    value: f64,
    n_effective: usize,
}

impl PointEstimate {
    pub fn defined(value: f64, n_effective: usize) -> Self {
        debug_assert!(n_effective > 0);
        PointEstimate { value, n_effective }
    }

    /// No sample point carries kernel weight at the evaluation point. The
    /// stored value is NaN and never reads as zero.
    pub fn undefined() -> Self {
        PointEstimate {
            value: f64::NAN,
            n_effective: 0,
        }
    }

    pub fn is_defined(&self) -> bool {
        self.n_effective > 0
    }

    pub fn value(&self) -> Option<f64> {
        self.is_defined().then_some(self.value)
    }

    pub fn raw_value(&self) -> f64 {
        self.value
    }

    /// Number of sample points with positive kernel weight.
    pub fn n_effective(&self) -> usize {
        self.n_effective
    }
}

/// Kernel-weighted sums at one evaluation point, in log units.
#[derive(Debug, Clone)]
pub(crate) struct LocalSums {
    pub(crate) log_weighted_power: LogValue,
    pub(crate) log_weight: LogValue,
    pub(crate) weight: f64,
    pub(crate) n_effective: usize,
}

pub(crate) fn local_sums(sample: &Sample, cfg: &EstimatorConfig, x: &[f64]) -> Result<LocalSums> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let kernel = cfg.kernel();
    kernel.check_dimension(sample.dimension())?;
    kernel.check_dimension(x.len())?;

    let h = cfg.bandwidth();
    let log_h_d = sample.dimension() as f64 * libm::log(h);
    let h_d = libm::pow(h, sample.dimension() as f64);
    let mut power_sum = LogWeightedPowerSum::new(cfg.power());
    let mut log_weights = alloc::vec::Vec::new();
    let mut weight = 0.0;
    let mut diff = alloc::vec![0.0; x.len()];
    for (xi, yi) in sample.iter() {
        for ((d, a), b) in diff.iter_mut().zip(x).zip(xi) {
            *d = a - b;
        }
        let r = crate::kernels::norm(&diff) / h;
        if r > 1.0 {
            continue;
        }
        let k = kernel.eval_radius(r);
        if k <= 0.0 {
            continue;
        }
        let log_w = libm::log(k) - log_h_d;
        weight += k / h_d;
        log_weights.push(log_w);
        power_sum.push_log_weight(log_w, yi);
    }
    Ok(LocalSums {
        log_weighted_power: power_sum.log_total(),
        log_weight: crate::numerics::log_sum_exp(&log_weights),
        weight,
        n_effective: log_weights.len(),
    })
}

/// `(1/n) sum_i K_h(x - X_i) (p + 1) Y_i^p` in log units.
pub fn log_phi_hat(sample: &Sample, cfg: &EstimatorConfig, x: &[f64]) -> Result<LogValue> {
    let sums = local_sums(sample, cfg, x)?;
    Ok(match sums.log_weighted_power {
        LogValue::NegInfinity => LogValue::NegInfinity,
        LogValue::Finite(v) => LogValue::Finite(
            libm::log(cfg.power() + 1.0) + v - libm::log(sample.len() as f64),
        ),
    })
}

/// `(1/n) sum_i K_h(x - X_i) (p + 1) Y_i^p`. May overflow to infinity for
/// large `p`; use [`log_phi_hat`] when that matters.
pub fn phi_hat(sample: &Sample, cfg: &EstimatorConfig, x: &[f64]) -> Result<f64> {
    Ok(log_phi_hat(sample, cfg, x)?.exp())
}

/// Kernel density estimate `(1/n) sum_i K_h(x - X_i)`.
pub fn f_hat(sample: &Sample, cfg: &EstimatorConfig, x: &[f64]) -> Result<f64> {
    let sums = local_sums(sample, cfg, x)?;
    Ok(sums.weight / sample.len() as f64)
}

/// `phi_hat / f_hat`, the estimate of `E((p + 1) Y^p | X = x)`; `None` when
/// `f_hat(x) = 0`.
pub fn r_hat(sample: &Sample, cfg: &EstimatorConfig, x: &[f64]) -> Result<Option<LogValue>> {
    let sums = local_sums(sample, cfg, x)?;
    let Some(den) = sums.log_weight.finite() else {
        return Ok(None);
    };
    Ok(Some(match sums.log_weighted_power {
        LogValue::NegInfinity => LogValue::NegInfinity,
        LogValue::Finite(num) => LogValue::Finite(libm::log(cfg.power() + 1.0) + num - den),
    }))
}

fn estimate_with_log_constant(
    sample: &Sample,
    cfg: &EstimatorConfig,
    x: &[f64],
    log_constant: f64,
) -> Result<PointEstimate> {
    let sums = local_sums(sample, cfg, x)?;
    let Some(den) = sums.log_weight.finite() else {
        return Ok(PointEstimate::undefined());
    };
    let value = match sums.log_weighted_power {
        LogValue::NegInfinity => 0.0,
        LogValue::Finite(num) => libm::exp((log_constant + num - den) / cfg.power()),
    };
    Ok(PointEstimate::defined(value, sums.n_effective))
}

/// The power-kernel frontier estimate `g_hat(x)`.
pub fn estimate_frontier(sample: &Sample, cfg: &EstimatorConfig, x: &[f64]) -> Result<PointEstimate> {
    estimate_with_log_constant(sample, cfg, x, libm::log(cfg.power() + 1.0))
}

/// Frontier estimate tuned to responses with conditional survival
/// `(1 - y / g(x))^gamma`: the factor `p + 1` becomes `1 / (gamma B(1 + p, gamma))`.
///
/// `gamma = 1` reproduces [`estimate_frontier`] bit for bit.
pub fn estimate_frontier_corrected(
    sample: &Sample,
    cfg: &EstimatorConfig,
    gamma: f64,
    x: &[f64],
) -> Result<PointEstimate> {
    let log_constant = corrected_log_constant(cfg.power(), gamma)?;
    estimate_with_log_constant(sample, cfg, x, log_constant)
}

/// `ln(1 / (gamma B(1 + p, gamma)))`.
pub fn corrected_log_constant(power: f64, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::domain("gamma", "finite and positive", gamma));
    }
    if gamma == 1.0 {
        // B(1 + p, 1) = 1 / (1 + p)
        return Ok(libm::log(power + 1.0));
    }
    Ok(-libm::log(gamma) - log_beta(1.0 + power, gamma)?)
}
