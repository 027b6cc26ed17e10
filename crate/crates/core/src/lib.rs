//! Frontier estimation from samples of a random pair `(X, Y)` whose support is
//! `{(x, y) : 0 <= y <= g(x)}`.
//!
//! The main estimator is a kernel regression on power-transformed responses:
//!
//! ```text
//! g_hat(x) = ( (p + 1) * sum_i K_h(x - X_i) Y_i^p / sum_i K_h(x - X_i) )^(1/p)
//! ```
//!
//! where the exponent `p` grows with the sample size and the bandwidth `h`
//! shrinks. The crate also provides the gamma-corrected variant for responses
//! with survival `(1 - y/g(x))^gamma`, Geffroy's step estimator, pointwise
//! confidence bands, and the data-generating processes used to benchmark them.
//!
//! Everything here is pure computation over `alloc`; file formats, the Monte
//! Carlo harness and the command-line tool live in the `frontier` crate.
//!
//! ```
//! use frontier_core::estimators::{estimate_frontier, EstimatorConfig, Sample};
//! use frontier_core::kernels::{KernelFamily, KernelSpec};
//!
//! let sample = Sample::univariate(vec![0.5, 0.5], vec![1.0, 0.5]).unwrap();
//! let kernel = KernelSpec::new(KernelFamily::CosineSquared, 1).unwrap();
//! let cfg = EstimatorConfig::new(1.0, 0.5, kernel).unwrap();
//! let est = estimate_frontier(&sample, &cfg, &[0.5]).unwrap();
//! assert!((est.value().unwrap() - 1.5).abs() < 1e-12);
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod estimators;
pub mod kernels;
pub mod numerics;
pub mod simulation;

pub use error::{Error, Result};
