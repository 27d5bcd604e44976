//! Simple and cumulative regret.

use alloc::vec::Vec;

/// One pull in a driving sequence, for cumulative-regret accounting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PullRecord {
    /// 1-based time index.
    pub step: u64,
    pub arm: usize,
    pub reward: f64,
}

fn best_mean(mus: &[f64]) -> f64 {
    mus.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Shortfall of the single recommended arm: `max(mus) - mus[recommended]`.
pub fn simple_regret(recommended: usize, mus: &[f64]) -> f64 {
    assert!(recommended < mus.len(), "recommended arm out of range");
    best_mean(mus) - mus[recommended]
}

/// Total shortfall of a pull sequence against always playing the best arm.
pub fn cumulative_regret(history: &[PullRecord], mus: &[f64]) -> f64 {
    if history.is_empty() {
        return 0.0;
    }
    let best = best_mean(mus);
    history
        .iter()
        .map(|r| {
            assert!(r.arm < mus.len(), "pulled arm out of range");
            best - mus[r.arm]
        })
        .sum()
}

/// Convenience for building a history while driving a policy.
pub fn record_history(history: &mut Vec<PullRecord>, arm: usize, reward: f64) {
    let step = history.len() as u64 + 1;
    history.push(PullRecord { step, arm, reward });
}
