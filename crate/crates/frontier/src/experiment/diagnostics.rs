use frontier_core::numerics::{check_power_inequality_i, check_root_inequality_ii, log_sum_exp};
use frontier_core::simulation::{FrontierModel, SimRng, UniformSource};

use crate::Result;

/// `((p + 1) mean_i (Y_i / g(x))^p)^(1/p)` over `draws` responses at fixed
/// `x`, for each exponent in `powers`. Tends to 1 as `p` grows whatever the
/// conditional law on `[0, g(x)]`.
pub fn power_root_limit(
    model: &FrontierModel,
    x: f64,
    powers: &[f64],
    draws: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let g = model.frontier().eval(x)?;
    let mut rng = SimRng::seed_from(seed);
    let log_ratios = (0..draws)
        .map(|_| Ok((model.sample_response(x, &mut rng)? / g).ln()))
        .collect::<Result<Vec<f64>>>()?;
    let mut terms = vec![0.0; draws];
    Ok(powers
        .iter()
        .map(|&p| {
            for (t, lr) in terms.iter_mut().zip(&log_ratios) {
                *t = p * lr;
            }
            let log_mean = log_sum_exp(&terms).to_f64() - (draws as f64).ln();
            (((p + 1.0).ln() + log_mean) / p).exp()
        })
        .collect())
}

/// Outcome of checking the power and root inequalities on random inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InequalityAudit {
    pub checked: usize,
    pub power_failures: usize,
    pub root_failures: usize,
}

impl InequalityAudit {
    pub fn passed(&self) -> bool {
        self.power_failures == 0 && self.root_failures == 0
    }
}

/// Draws `draws` pairs `(u, p)` with `p` in `[1, 1000]` for each inequality:
/// `p |u| <= ln 2` for the power bound, `|u| < 1/2` and `C = 2` for the root
/// bound.
pub fn audit_inequalities(draws: usize, seed: u64) -> Result<InequalityAudit> {
    let mut rng = SimRng::seed_from(seed);
    let mut audit = InequalityAudit {
        checked: draws,
        power_failures: 0,
        root_failures: 0,
    };
    for _ in 0..draws {
        let p = 1.0 + 999.0 * rng.next_uniform();
        let u = (2.0 * rng.next_uniform() - 1.0) * std::f64::consts::LN_2 / p;
        if !check_power_inequality_i(u, p)? {
            audit.power_failures += 1;
        }
        let p = 1.0 + 999.0 * rng.next_uniform();
        let u = (rng.next_uniform() - 0.5) * 0.999_999;
        if !check_root_inequality_ii(u, p, 2.0)? {
            audit.root_failures += 1;
        }
    }
    Ok(audit)
}
