//! Data-generating processes for benchmarking frontier estimators.
//!
//! Covariates live on `[0, 1]` and follow either `U(0, 1)` or `Beta(2, 2)`.
//! Given `X = x`, the response has survival
//! `P(Y > y | X = x) = (1 - y / g(x))^gamma` on `[0, g(x)]`; `gamma = 1` is the
//! uniform case.
//!
//! # Random streams
//!
//! All draws come from [`SimRng`], a ChaCha8 generator seeded through
//! `rand_core::SeedableRng::seed_from_u64`. Replication `r` of an experiment
//! with base seed `s` uses seed `s ^ r` (see [`replication_seed`]). Uniform
//! variates take the top 53 bits of a `u64`, giving values in `[0, 1)`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::estimators::Sample;
use crate::{Error, Result};

/// A source of `U[0, 1)` variates.
pub trait UniformSource {
    fn next_uniform(&mut self) -> f64;
}

/// The seeded generator behind every simulated sample.
#[derive(Debug, Clone)]
pub struct SimRng(ChaCha8Rng);

impl SimRng {
    pub fn seed_from(seed: u64) -> Self {
        SimRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn for_replication(base_seed: u64, replication: u64) -> Self {
        Self::seed_from(replication_seed(base_seed, replication))
    }
}

impl UniformSource for SimRng {
    fn next_uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

pub fn replication_seed(base_seed: u64, replication: u64) -> u64 {
    base_seed ^ replication
}

fn check_unit(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain("x", "in [0, 1]", x));
    }
    Ok(())
}

/// Continuous frontier on `[0, 1]`, not differentiable at 1/3, 2/3 and 5/6.
pub fn frontier_g1(x: f64) -> Result<f64> {
    check_unit(x)?;
    let e = libm::exp(-5.0 / 12.0);
    Ok(if x <= 1.0 / 3.0 {
        let d = x - 0.25;
        1.0 + libm::exp(-60.0 * d * d)
    } else if x <= 2.0 / 3.0 {
        1.0 + e
    } else if x <= 5.0 / 6.0 {
        1.0 + 5.0 * e - 6.0 * e * x
    } else {
        6.0 * x - 4.0
    })
}

/// Smooth frontier `(1/10 + sin(pi x)) (11/10 - exp(-64 (x - 1/2)^2) / 2)`.
pub fn frontier_g2(x: f64) -> Result<f64> {
    check_unit(x)?;
    let d = x - 0.5;
    Ok((0.1 + libm::sin(core::f64::consts::PI * x)) * (1.1 - 0.5 * libm::exp(-64.0 * d * d)))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Frontier {
    G1,
    G2,
    /// Piecewise-linear through `(x, g(x))` knots, constant beyond the ends.
    UserGrid(Vec<(f64, f64)>),
}

impl Frontier {
    pub fn user_grid(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::InvalidKnots("no knots"));
        }
        if knots.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(Error::InvalidKnots("abscissae must be strictly increasing"));
        }
        if knots.iter().any(|&(x, g)| !(x.is_finite() && g > 0.0 && g.is_finite())) {
            return Err(Error::InvalidKnots("values must be finite and positive"));
        }
        Ok(Frontier::UserGrid(knots))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            Frontier::G1 => frontier_g1(x),
            Frontier::G2 => frontier_g2(x),
            Frontier::UserGrid(knots) => {
                if !x.is_finite() {
                    return Err(Error::domain("x", "finite", x));
                }
                let first = knots[0];
                let last = knots[knots.len() - 1];
                if x <= first.0 {
                    return Ok(first.1);
                }
                if x >= last.0 {
                    return Ok(last.1);
                }
                let i = knots.partition_point(|k| k.0 <= x);
                let (x0, g0) = knots[i - 1];
                let (x1, g1) = knots[i];
                Ok(g0 + (g1 - g0) * (x - x0) / (x1 - x0))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Frontier::G1 => "g1",
            Frontier::G2 => "g2",
            Frontier::UserGrid(_) => "grid",
        }
    }
}

impl fmt::Display for Frontier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Covariate {
    Uniform01,
    /// `Beta(2, 2)`, drawn as the median of three uniforms.
    Beta22,
}

impl Covariate {
    pub fn name(self) -> &'static str {
        match self {
            Covariate::Uniform01 => "uniform",
            Covariate::Beta22 => "beta22",
        }
    }

    pub fn sample<R: UniformSource + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            Covariate::Uniform01 => rng.next_uniform(),
            Covariate::Beta22 => {
                let a = rng.next_uniform();
                let b = rng.next_uniform();
                let c = rng.next_uniform();
                a.max(b).min(a.min(b).max(c))
            }
        }
    }

    pub fn cdf(self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        match self {
            Covariate::Uniform01 => x,
            Covariate::Beta22 => x * x * (3.0 - 2.0 * x),
        }
    }
}

impl fmt::Display for Covariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownName(pub &'static str);

impl fmt::Display for UnknownName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown name (expected {})", self.0)
    }
}

impl FromStr for Covariate {
    type Err = UnknownName;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Covariate::Uniform01),
            "beta22" => Ok(Covariate::Beta22),
            _ => Err(UnknownName("uniform or beta22")),
        }
    }
}

impl FromStr for Frontier {
    type Err = UnknownName;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "g1" => Ok(Frontier::G1),
            "g2" => Ok(Frontier::G2),
            _ => Err(UnknownName("g1 or g2")),
        }
    }
}

/// Full description of a simulated design.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontierModel {
    frontier: Frontier,
    gamma: f64,
    covariate: Covariate,
    seed: u64,
}

impl FrontierModel {
    pub fn new(frontier: Frontier, gamma: f64, covariate: Covariate, seed: u64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::domain("gamma", "finite and positive", gamma));
        }
        Ok(FrontierModel {
            frontier,
            gamma,
            covariate,
            seed,
        })
    }

    pub fn frontier(&self) -> &Frontier {
        &self.frontier
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn covariate(&self) -> Covariate {
        self.covariate
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The same design with another seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        FrontierModel {
            seed,
            ..self.clone()
        }
    }

    pub fn sample_covariate<R: UniformSource + ?Sized>(&self, rng: &mut R) -> f64 {
        self.covariate.sample(rng)
    }

    /// `g(x) (1 - V^(1/gamma))` with `V ~ U[0, 1)`.
    pub fn sample_response<R: UniformSource + ?Sized>(&self, x: f64, rng: &mut R) -> Result<f64> {
        let g = self.frontier.eval(x)?;
        let v = rng.next_uniform();
        Ok(response_from_uniform(g, self.gamma, v))
    }

    /// `n` pairs drawn from a fresh stream seeded with `self.seed()`.
    pub fn generate_sample(&self, n: usize) -> Result<Sample> {
        if n == 0 {
            return Err(Error::domain("sample size", "at least 1", 0.0));
        }
        let mut rng = SimRng::seed_from(self.seed);
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for _ in 0..n {
            let x = self.sample_covariate(&mut rng);
            ys.push(self.sample_response(x, &mut rng)?);
            xs.push(x);
        }
        Sample::univariate(xs, ys)
    }
}

pub(crate) fn response_from_uniform(g: f64, gamma: f64, v: f64) -> f64 {
    let root = if gamma == 1.0 { v } else { libm::pow(v, 1.0 / gamma) };
    g * (1.0 - root)
}

pub fn generate_sample(model: &FrontierModel, n: usize) -> Result<Sample> {
    model.generate_sample(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_relative_eq;

    struct Fixed(Vec<f64>);

    impl UniformSource for Fixed {
        fn next_uniform(&mut self) -> f64 {
            self.0.remove(0)
        }
    }

    fn ks_distance(mut draws: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
        draws.sort_by(f64::total_cmp);
        let n = draws.len() as f64;
        draws
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
            })
            .fold(0.0, f64::max)
    }

    /// Asymptotic one-sample Kolmogorov-Smirnov critical value at 1%.
    fn ks_critical_1pct(n: usize) -> f64 {
        1.627_6 / (n as f64).sqrt()
    }

    #[test]
    fn g1_values() {
        assert_eq!(frontier_g1(0.25).unwrap(), 2.0);
        assert_relative_eq!(frontier_g1(0.5).unwrap(), 1.0 + (-5.0f64 / 12.0).exp(), max_relative = 1e-15);
        assert_relative_eq!(frontier_g1(0.5).unwrap(), 1.659_24, max_relative = 1e-5);
        assert_eq!(frontier_g1(1.0).unwrap(), 2.0);
        assert!(frontier_g1(-0.1).is_err());
        assert!(frontier_g1(1.1).is_err());
    }

    #[test]
    fn g1_continuity_at_breakpoints() {
        for b in [1.0 / 3.0, 2.0 / 3.0, 5.0 / 6.0] {
            let left = frontier_g1(b).unwrap();
            let right = frontier_g1(f64::from_bits(b.to_bits() + 1)).unwrap();
            assert!((left - right).abs() <= 1e-12, "b={b}: {left} vs {right}");
        }
    }

    #[test]
    fn g2_values() {
        assert_relative_eq!(frontier_g2(0.5).unwrap(), 0.66, max_relative = 1e-14);
        let edge = 0.1 * (1.1 - (-16.0f64).exp() / 2.0);
        assert_relative_eq!(frontier_g2(0.0).unwrap(), edge, max_relative = 1e-14);
        assert!((frontier_g2(1.0).unwrap() - edge).abs() < 1e-15);
        assert!(frontier_g2(2.0).is_err());
    }

    #[test]
    fn g2_is_positive() {
        let min = (0..10_000)
            .map(|i| frontier_g2(i as f64 / 9_999.0).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(min > 0.0);
    }

    #[test]
    fn user_grid_interpolates_and_clamps() {
        let g = Frontier::user_grid(vec![(0.0, 1.0), (1.0, 3.0), (2.0, 2.0)]).unwrap();
        assert_eq!(g.eval(0.5).unwrap(), 2.0);
        assert_eq!(g.eval(1.5).unwrap(), 2.5);
        assert_eq!(g.eval(-4.0).unwrap(), 1.0);
        assert_eq!(g.eval(9.0).unwrap(), 2.0);
        assert_eq!(g.eval(1.0).unwrap(), 3.0);
        assert!(Frontier::user_grid(vec![]).is_err());
        assert!(Frontier::user_grid(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(Frontier::user_grid(vec![(0.0, 0.0)]).is_err());
    }

    #[test]
    fn covariate_draw_examples() {
        let model = FrontierModel::new(Frontier::G2, 1.0, Covariate::Uniform01, 0).unwrap();
        assert_eq!(model.sample_covariate(&mut Fixed(vec![0.37])), 0.37);
        let model = FrontierModel::new(Frontier::G2, 1.0, Covariate::Beta22, 0).unwrap();
        assert_eq!(model.sample_covariate(&mut Fixed(vec![0.1, 0.9, 0.4])), 0.4);
        assert_eq!(model.sample_covariate(&mut Fixed(vec![0.9, 0.1, 0.4])), 0.4);
        assert_eq!(model.sample_covariate(&mut Fixed(vec![0.4, 0.9, 0.1])), 0.4);
        assert_eq!(model.sample_covariate(&mut Fixed(vec![0.2, 0.3, 0.1])), 0.2);
    }

    #[test]
    fn beta22_mean_and_distribution() {
        let mut rng = SimRng::seed_from(7);
        let draws: Vec<f64> = (0..100_000).map(|_| Covariate::Beta22.sample(&mut rng)).collect();
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        assert!((mean - 0.5).abs() < 0.005, "{mean}");
        let n = 10_000;
        let d = ks_distance(draws[..n].to_vec(), |x| Covariate::Beta22.cdf(x));
        assert!(d < ks_critical_1pct(n), "KS {d}");
    }

    #[test]
    fn response_examples() {
        let model = FrontierModel::new(Frontier::G2, 2.5, Covariate::Uniform01, 0).unwrap();
        let g = frontier_g2(0.3).unwrap();
        assert_eq!(model.sample_response(0.3, &mut Fixed(vec![1.0])).unwrap(), 0.0);
        assert_eq!(model.sample_response(0.3, &mut Fixed(vec![0.0])).unwrap(), g);
        let uniform = FrontierModel::new(Frontier::G2, 1.0, Covariate::Uniform01, 0).unwrap();
        assert_eq!(uniform.sample_response(0.3, &mut Fixed(vec![0.25])).unwrap(), g * 0.75);
    }

    #[test]
    fn response_survival_matches_ks() {
        for gamma in [1.0, 2.0, 3.0, 0.5] {
            let model = FrontierModel::new(Frontier::G1, gamma, Covariate::Uniform01, 0).unwrap();
            let mut rng = SimRng::seed_from(11 + gamma as u64);
            let g = frontier_g1(0.7).unwrap();
            let n = 10_000;
            let pivots: Vec<f64> = (0..n)
                .map(|_| {
                    let y = model.sample_response(0.7, &mut rng).unwrap();
                    (1.0 - y / g).powf(gamma)
                })
                .collect();
            let d = ks_distance(pivots, |u| u.clamp(0.0, 1.0));
            assert!(d < ks_critical_1pct(n), "gamma={gamma}: KS {d}");
        }
    }

    #[test]
    fn generated_samples_respect_support_and_law() {
        let model = FrontierModel::new(Frontier::G2, 2.0, Covariate::Beta22, 99).unwrap();
        let n = 4000;
        let s = model.generate_sample(n).unwrap();
        assert_eq!(s.len(), n);
        let mut ratios = Vec::new();
        for (x, y) in s.iter() {
            let g = frontier_g2(x[0]).unwrap();
            assert!((0.0..=g).contains(&y));
            ratios.push(y / g);
        }
        for level in [0.25, 0.5, 0.75] {
            let emp = ratios.iter().filter(|&&r| r > level).count() as f64 / n as f64;
            let expect = (1.0f64 - level).powf(2.0);
            assert!((emp - expect).abs() < 3.0 / (n as f64).sqrt(), "level {level}: {emp} vs {expect}");
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let model = FrontierModel::new(Frontier::G1, 3.0, Covariate::Uniform01, 123).unwrap();
        let a = model.generate_sample(500).unwrap();
        let b = model.generate_sample(500).unwrap();
        let bits = |s: &Sample| s.iter().map(|(x, y)| (x[0].to_bits(), y.to_bits())).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
        let c = model.with_seed(124).generate_sample(500).unwrap();
        assert_ne!(bits(&a), bits(&c));
        assert!(model.generate_sample(0).is_err());
    }

    #[test]
    fn replication_streams() {
        assert_eq!(replication_seed(42, 3), 41);
        let mut a = SimRng::for_replication(42, 3);
        let mut b = SimRng::seed_from(41);
        assert_eq!(a.next_uniform(), b.next_uniform());
    }

    #[test]
    fn model_validation_and_names() {
        assert!(FrontierModel::new(Frontier::G1, 0.0, Covariate::Beta22, 0).is_err());
        assert_eq!("beta22".parse::<Covariate>(), Ok(Covariate::Beta22));
        assert_eq!("g1".parse::<Frontier>(), Ok(Frontier::G1));
        assert!("g3".parse::<Frontier>().is_err());
    }
}
