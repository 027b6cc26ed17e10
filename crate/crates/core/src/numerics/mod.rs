//! Special functions and floating-point stability helpers.

mod normal;
mod quadrature;

use alloc::vec::Vec;

use crate::{Error, Result};

pub use normal::standard_normal_quantile;
pub use quadrature::integrate_adaptive;

/// Tolerance used by the power/root inequality checks.
pub const INEQUALITY_TOLERANCE: f64 = 1e-12;

/// A logarithm that may be the log of zero.
///
/// Sums of non-negative terms are carried in log units; an empty sum (or a sum
/// of zeros) is `NegInfinity` rather than a floating `-inf` that could leak
/// into arithmetic unnoticed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogValue {
    NegInfinity,
    Finite(f64),
}

impl LogValue {
    pub fn is_neg_infinity(self) -> bool {
        matches!(self, LogValue::NegInfinity)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            LogValue::NegInfinity => None,
            LogValue::Finite(v) => Some(v),
        }
    }

    /// `exp` of the stored logarithm; `NegInfinity` maps to exactly zero.
    pub fn exp(self) -> f64 {
        match self {
            LogValue::NegInfinity => 0.0,
            LogValue::Finite(v) => libm::exp(v),
        }
    }

    /// The logarithm as a plain float, `-inf` for the zero sentinel.
    pub fn to_f64(self) -> f64 {
        match self {
            LogValue::NegInfinity => f64::NEG_INFINITY,
            LogValue::Finite(v) => v,
        }
    }
}

/// `log(sum_i exp(t_i))` with a max shift.
///
/// Terms equal to `-inf` contribute nothing. An empty slice, or one holding
/// only `-inf`, yields [`LogValue::NegInfinity`].
pub fn log_sum_exp(terms: &[f64]) -> LogValue {
    let shift = max_term(terms);
    log_sum_exp_shifted(terms, shift)
}

fn max_term(terms: &[f64]) -> f64 {
    terms.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn log_sum_exp_shifted(terms: &[f64], shift: f64) -> LogValue {
    if shift == f64::NEG_INFINITY {
        return LogValue::NegInfinity;
    }
    if shift == f64::INFINITY {
        return LogValue::Finite(f64::INFINITY);
    }
    let total: f64 = terms.iter().map(|&t| libm::exp(t - shift)).sum();
    LogValue::Finite(shift + libm::log(total))
}

/// Log-domain accumulator for `sum_i w_i * y_i^p`.
///
/// Each pushed pair contributes the term `p * ln(y) + ln(w)`; `shift` tracks
/// the largest term so that every `exp(term - shift)` lies in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct LogWeightedPowerSum {
    power: f64,
    log_terms: Vec<f64>,
    shift: f64,
}

impl LogWeightedPowerSum {
    pub fn new(power: f64) -> Self {
        Self::with_capacity(power, 0)
    }

    pub fn with_capacity(power: f64, capacity: usize) -> Self {
        LogWeightedPowerSum {
            power,
            log_terms: Vec::with_capacity(capacity),
            shift: f64::NEG_INFINITY,
        }
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    /// Adds `weight * value^power` given `ln(weight)`. A zero `value` adds a
    /// `-inf` term.
    pub fn push_log_weight(&mut self, log_weight: f64, value: f64) {
        let term = if value == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.power * libm::log(value) + log_weight
        };
        if term > self.shift {
            self.shift = term;
        }
        self.log_terms.push(term);
    }

    pub fn push(&mut self, weight: f64, value: f64) {
        self.push_log_weight(libm::log(weight), value);
    }

    pub fn log_terms(&self) -> &[f64] {
        &self.log_terms
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn len(&self) -> usize {
        self.log_terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_terms.is_empty()
    }

    /// `ln(sum_i w_i y_i^p)`.
    pub fn log_total(&self) -> LogValue {
        log_sum_exp_shifted(&self.log_terms, self.shift)
    }
}

/// `ln B(a, b) = lgamma(a) + lgamma(b) - lgamma(a + b)`.
///
/// Once an argument reaches [`STIRLING_THRESHOLD`] the gamma differences are
/// formed from Stirling's series with `log1p`, which avoids the cancellation
/// between two large `lgamma` values.
pub fn log_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain("a", "finite and positive", a));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::domain("b", "finite and positive", b));
    }
    let (small, large) = if a <= b { (a, b) } else { (b, a) };
    let sum = small + large;
    if large < STIRLING_THRESHOLD {
        return Ok(libm::lgamma(small) + libm::lgamma(large) - libm::lgamma(sum));
    }
    let ratio = small / large;
    if small < STIRLING_THRESHOLD {
        // lgamma(large) - lgamma(sum)
        let diff = -(large - 0.5) * libm::log1p(ratio) - small * libm::log(sum)
            + small
            + stirling_remainder(large)
            - stirling_remainder(sum);
        return Ok(libm::lgamma(small) + diff);
    }
    let half_log_two_pi = 0.918_938_533_204_672_8;
    Ok(half_log_two_pi - 0.5 * libm::log(sum)
        - (small - 0.5) * libm::log1p(1.0 / ratio)
        - (large - 0.5) * libm::log1p(ratio)
        + stirling_remainder(small)
        + stirling_remainder(large)
        - stirling_remainder(sum))
}

/// Arguments at or above this use Stirling's series in [`log_beta`].
pub const STIRLING_THRESHOLD: f64 = 10.0;

/// `lgamma(x) - ((x - 1/2) ln x - x + ln(2 pi)/2)` for `x >= 10`.
fn stirling_remainder(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0
            - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0)))))
}

/// `|(1 + u)^p - 1| <= 2 p |u|`, valid whenever `p >= 1` and `p |u| <= ln 2`.
pub fn check_power_inequality_i(u: f64, p: f64) -> Result<bool> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::domain("p", "finite and at least 1", p));
    }
    let reach = p * u.abs();
    if !(reach <= core::f64::consts::LN_2) {
        return Err(Error::domain("p*|u|", "at most ln 2", reach));
    }
    let lhs = libm::expm1(p * libm::log1p(u)).abs();
    Ok(lhs <= 2.0 * reach + INEQUALITY_TOLERANCE)
}

/// `|(1 + u)^(1/p) - 1 - u/p| <= (C/p) u^2`, valid whenever `|u| < 1/2`,
/// `p >= 1` and `C >= 2`.
pub fn check_root_inequality_ii(u: f64, p: f64, c: f64) -> Result<bool> {
    if !(u.abs() < 0.5) {
        return Err(Error::domain("|u|", "below 1/2", u.abs()));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::domain("p", "finite and at least 1", p));
    }
    if !(c >= 2.0 && c.is_finite()) {
        return Err(Error::domain("C", "finite and at least 2", c));
    }
    let lhs = (libm::expm1(libm::log1p(u) / p) - u / p).abs();
    Ok(lhs <= c / p * u * u + INEQUALITY_TOLERANCE)
}

/// Square root of the unbiased (divisor `n - 1`) sample variance.
pub fn sample_stddev(values: &[f64]) -> Result<f64> {
    let n = values.len();
    if n < 2 {
        return Err(Error::domain(
            "number of values",
            "at least 2",
            n as f64,
        ));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    Ok(libm::sqrt(ss / (n - 1) as f64))
}
