//! The UCB1 index and its argmax selector.

use super::stats::ArmStats;
use crate::{Error, Result};

/// Upper confidence bound for one arm: `mean + C * sqrt(ln(n_total) / n_arm)`.
///
/// `n_arm = 0` is a caller bug (unvisited arms go through the forced first
/// pull in [`ucb1_select`]), so it panics rather than dividing by zero.
pub fn ucb1_value(mean: f64, n_arm: u64, n_total: u64, c: f64) -> f64 {
    assert!(n_arm >= 1, "ucb1_value on an unvisited arm");
    debug_assert!(n_total >= n_arm);
    debug_assert!(c >= 0.0);
    mean + c * libm::sqrt(libm::log(n_total as f64) / n_arm as f64)
}

/// UCB1 arm choice over a full stats table.
///
/// Unvisited arms are pulled first, lowest index first; once every arm has
/// been visited the arm maximizing [`ucb1_value`] wins, ties broken by
/// lowest index.
pub fn ucb1_select(stats: &[ArmStats], c: f64) -> Result<usize> {
    if stats.is_empty() {
        return Err(Error::EmptyArms);
    }
    if let Some(unvisited) = stats.iter().position(|s| s.pulls() == 0) {
        return Ok(unvisited);
    }
    let n_total: u64 = stats.iter().map(|s| s.pulls()).sum();
    let mut best = 0;
    let mut best_value = ucb1_value(stats[0].mean(), stats[0].pulls(), n_total, c);
    for (arm, s) in stats.iter().enumerate().skip(1) {
        let value = ucb1_value(s.mean(), s.pulls(), n_total, c);
        if value > best_value {
            best = arm;
            best_value = value;
        }
    }
    Ok(best)
}
