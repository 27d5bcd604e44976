//! Per-arm pull statistics — the shared currency of every policy.

/// Pull count and accumulated reward for one arm.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ArmStats {
    pulls: u64,
    reward_sum: f64,
}

impl ArmStats {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reconstitute stats from already-accumulated totals (tree nodes keep
    /// their own counters and borrow the selector here).
    pub(crate) fn from_parts(pulls: u64, reward_sum: f64) -> Self {
        Self { pulls, reward_sum }
    }

    /// Record one pull worth `reward`. Rewards may be any finite real;
    /// callers that need bounded rewards (games) enforce that themselves.
    pub fn record(&mut self, reward: f64) {
        self.pulls += 1;
        self.reward_sum += reward;
    }

    pub fn pulls(&self) -> u64 {
        self.pulls
    }

    pub fn reward_sum(&self) -> f64 {
        self.reward_sum
    }

    /// Empirical mean reward. Asking for the mean of an arm that was never
    /// pulled is a caller bug, so it panics rather than yielding a NaN.
    pub fn mean(&self) -> f64 {
        assert!(self.pulls > 0, "mean of an arm with zero pulls");
        self.reward_sum / self.pulls as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_accumulates() {
        let mut s = ArmStats::new();
        s.record(1.0);
        assert_eq!(s.pulls(), 1);
        assert_eq!(s.mean(), 1.0);
        s.record(0.0);
        assert_eq!(s.pulls(), 2);
        assert_eq!(s.mean(), 0.5);
    }

    #[test]
    #[should_panic(expected = "zero pulls")]
    fn mean_of_unpulled_arm_is_loud() {
        let _ = ArmStats::new().mean();
    }
}
