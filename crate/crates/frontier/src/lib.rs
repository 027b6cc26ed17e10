//! I/O, Monte Carlo harness and command-line front end for
//! [`frontier_core`].
//!
//! * [`io`]: `x,y` sample files.
//! * [`experiment`]: bandwidth/exponent rules, grid L1 errors, replicated
//!   estimator comparisons and confidence-band coverage studies.
//! * [`config`]: flat `key=value` experiment files.
//! * [`cli`]: the `frontier` binary.

pub mod cli;
pub mod config;
mod error;
pub mod experiment;
pub mod io;

pub use error::{Error, Result};
pub use frontier_core as core;
