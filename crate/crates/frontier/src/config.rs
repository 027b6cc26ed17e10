//! Flat `key=value` experiment files.
//!
//! ```text
//! # Beta(2,2) design
//! n_values = 200, 300, 500, 1000
//! gamma_values = 1, 2, 3
//! covariate = beta22
//! frontier = g2
//! m = 100
//! grid_size = 201
//! estimators = power_kernel, power_kernel_p1, geffroy
//! base_seed = 42
//! kernel = cosine2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Keys left out keep
//! their defaults.

use std::str::FromStr;

use crate::experiment::{EstimatorKind, ExperimentConfig};
use crate::{Error, Result};

pub fn parse_experiment_config(text: &str) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| Error::Config {
            line,
            message: format!("expected key=value, found `{trimmed}`"),
        })?;
        apply(&mut cfg, key.trim(), value.trim()).map_err(|message| Error::Config { line, message })?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn apply(cfg: &mut ExperimentConfig, key: &str, value: &str) -> std::result::Result<(), String> {
    match key {
        "n_values" => cfg.n_values = parse_list(value)?,
        "gamma_values" => cfg.gamma_values = parse_list(value)?,
        "covariate" => cfg.covariate = value.parse().map_err(|e| format!("{e}"))?,
        "frontier" => cfg.frontier = value.parse().map_err(|e| format!("{e}"))?,
        "m" => cfg.m = parse_one(value)?,
        "grid_size" => cfg.grid_size = parse_one(value)?,
        "estimators" => {
            cfg.estimators = value
                .split(',')
                .map(|s| s.trim().parse::<EstimatorKind>().map_err(|e| e.to_string()))
                .collect::<std::result::Result<_, _>>()?
        }
        "base_seed" => cfg.base_seed = parse_one(value)?,
        "kernel" => cfg.kernel = value.parse().map_err(|e| format!("{e}"))?,
        other => return Err(format!("unknown key `{other}`")),
    }
    Ok(())
}

fn parse_one<T: FromStr>(value: &str) -> std::result::Result<T, String> {
    value.parse().map_err(|_| format!("cannot parse `{value}`"))
}

pub(crate) fn parse_list<T: FromStr>(value: &str) -> std::result::Result<Vec<T>, String> {
    value.split(',').map(|s| parse_one(s.trim())).collect()
}
