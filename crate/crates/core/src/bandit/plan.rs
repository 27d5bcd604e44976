//! Fixed-budget halving schedules and the halving step itself.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::stats::ArmStats;
use crate::{Error, Result};

/// One phase of a halving plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phase {
    pub survivor_count: usize,
    pub pulls_per_arm: u64,
}

/// A complete halving schedule for `k` arms and a pull budget `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShPlan {
    k: usize,
    t: u64,
    phases: Vec<Phase>,
}

impl ShPlan {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Number of phases, `ceil(log2 k)`.
    pub fn b(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    /// Total pulls the plan will actually spend (≤ `t`).
    pub fn total_pulls(&self) -> u64 {
        self.phases
            .iter()
            .map(|p| p.survivor_count as u64 * p.pulls_per_arm)
            .sum()
    }
}

/// Survivor counts per phase: `k`, then repeated ceil-halving, down to 2.
/// The final narrowing from 2 to 1 is the recommendation step, not a phase.
fn survivor_sizes(k: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut s = k;
    loop {
        sizes.push(s);
        if s <= 2 {
            break;
        }
        s = s.div_ceil(2);
    }
    sizes
}

/// Smallest budget a plan for `k` arms can fit: one pull per surviving arm
/// per phase.
pub fn min_budget(k: usize) -> u64 {
    survivor_sizes(k).iter().map(|&s| s as u64).sum()
}

/// Build the halving schedule for `k` arms and budget `t`.
///
/// Phase `i` gives each of its `s_i` survivors `max(1, floor(t / (s_i * B)))`
/// pulls, further capped so the pulls already spent plus one pull per arm in
/// every later phase still fit in `t`. The cap keeps the schedule inside its
/// budget at small `t`, where the bare formula would overshoot; at generous
/// budgets it never binds.
pub fn sh_plan(k: usize, t: u64) -> Result<ShPlan> {
    if k < 2 {
        return Err(Error::BadConfig(alloc::format!(
            "halving needs at least 2 arms, got {k}"
        )));
    }
    let minimum = min_budget(k);
    if t < minimum {
        return Err(Error::BudgetTooSmall { minimum, got: t });
    }
    let sizes = survivor_sizes(k);
    let b = sizes.len() as u64;
    debug_assert_eq!(
        sizes.len(),
        (usize::BITS - (k - 1).leading_zeros()) as usize
    );

    let mut phases = Vec::with_capacity(sizes.len());
    let mut remaining = t;
    for (i, &s) in sizes.iter().enumerate() {
        let later_min: u64 = sizes[i + 1..].iter().map(|&x| x as u64).sum();
        let fair = (t / (s as u64 * b)).max(1);
        let cap = (remaining - later_min) / s as u64;
        let pulls = fair.min(cap);
        debug_assert!(pulls >= 1);
        phases.push(Phase {
            survivor_count: s,
            pulls_per_arm: pulls,
        });
        remaining -= pulls * s as u64;
    }
    let plan = ShPlan { k, t, phases };
    debug_assert!(plan.total_pulls() <= t);
    Ok(plan)
}

/// Ranking used everywhere arms are compared: arms with pulls rank before
/// arms without, then higher mean, then higher pull count, then lower index.
/// `Ordering::Less` means `a` ranks better than `b`.
pub(crate) fn compare_arms(stats: &[ArmStats], a: usize, b: usize) -> Ordering {
    let (sa, sb) = (&stats[a], &stats[b]);
    match (sa.pulls() > 0, sb.pulls() > 0) {
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        (false, false) => return a.cmp(&b),
        (true, true) => {}
    }
    sb.mean()
        .partial_cmp(&sa.mean())
        .unwrap_or(Ordering::Equal)
        .then(sb.pulls().cmp(&sa.pulls()))
        .then(a.cmp(&b))
}

/// Best arm of `arms` under [`compare_arms`]. Panics on an empty slice.
pub(crate) fn best_arm(arms: impl IntoIterator<Item = usize>, stats: &[ArmStats]) -> usize {
    arms.into_iter()
        .min_by(|&a, &b| compare_arms(stats, a, b))
        .expect("best_arm over an empty arm set")
}

/// Keep the better half: the `ceil(n/2)` arms of `survivors` ranking best
/// under [`compare_arms`], returned in ascending index order.
///
/// Every survivor is expected to have at least one pull; arms without pulls
/// are tolerated (a time-sliced phase can end early) and rank last.
pub fn halve(survivors: &[usize], stats: &[ArmStats]) -> Vec<usize> {
    debug_assert!(!survivors.is_empty());
    let mut ranked: Vec<usize> = survivors.to_vec();
    ranked.sort_unstable_by(|&a, &b| compare_arms(stats, a, b));
    ranked.truncate(survivors.len().div_ceil(2));
    ranked.sort_unstable();
    ranked
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn arm(pulls: u64, mean: f64) -> ArmStats {
        let mut s = ArmStats::new();
        for _ in 0..pulls {
            s.record(mean);
        }
        s
    }

    #[test]
    fn plan_8_24_is_the_classic_schedule() {
        let plan = sh_plan(8, 24).unwrap();
        let got: Vec<(usize, u64)> = plan
            .phases()
            .iter()
            .map(|p| (p.survivor_count, p.pulls_per_arm))
            .collect();
        assert_eq!(got, vec![(8, 1), (4, 2), (2, 4)]);
        assert_eq!(plan.total_pulls(), 24);
        assert_eq!(plan.b(), 3);
    }

    #[test]
    fn plan_10_186500_spends_186492() {
        let plan = sh_plan(10, 186_500).unwrap();
        let got: Vec<(usize, u64)> = plan
            .phases()
            .iter()
            .map(|p| (p.survivor_count, p.pulls_per_arm))
            .collect();
        assert_eq!(got, vec![(10, 4662), (5, 9325), (3, 15541), (2, 23312)]);
        assert_eq!(plan.total_pulls(), 186_492);
    }

    #[test]
    fn plan_2_2_is_a_single_phase() {
        let plan = sh_plan(2, 2).unwrap();
        assert_eq!(plan.phases().len(), 1);
        assert_eq!(plan.phases()[0].survivor_count, 2);
        assert_eq!(plan.phases()[0].pulls_per_arm, 1);
    }

    #[test]
    fn tight_budgets_stay_inside_t() {
        // At t == minimum the bare per-phase formula would overshoot for
        // many k; the cap must hold the plan to one pull per arm per phase.
        let plan = sh_plan(64, 126).unwrap();
        assert_eq!(plan.total_pulls(), 126);
        assert!(plan.phases().iter().all(|p| p.pulls_per_arm == 1));
    }

    #[test]
    fn budget_safety_across_k_and_t() {
        for k in 2..=64usize {
            let minimum = min_budget(k);
            for t in [minimum, minimum + 1, minimum + 7, 10 * minimum, 100_000] {
                let plan = sh_plan(k, t).unwrap();
                assert!(plan.total_pulls() <= t, "k={k} t={t}");
                assert!(plan.phases().iter().all(|p| p.pulls_per_arm >= 1));
                // survivor counts ceil-halve down to exactly 2
                let sizes: Vec<usize> = plan.phases().iter().map(|p| p.survivor_count).collect();
                assert_eq!(sizes[0], k);
                for w in sizes.windows(2) {
                    assert_eq!(w[1], w[0].div_ceil(2));
                }
                assert_eq!(*sizes.last().unwrap(), 2);
            }
        }
    }

    #[test]
    fn too_small_a_budget_names_the_minimum() {
        assert_eq!(
            sh_plan(10, 19),
            Err(Error::BudgetTooSmall {
                minimum: 20,
                got: 19
            })
        );
        assert_eq!(
            sh_plan(2, 1),
            Err(Error::BudgetTooSmall { minimum: 2, got: 1 })
        );
    }

    #[test]
    fn halve_keeps_the_top_half_by_mean() {
        let stats = vec![arm(1, 0.9), arm(1, 0.1), arm(1, 0.8), arm(1, 0.2)];
        assert_eq!(halve(&[0, 1, 2, 3], &stats), vec![0, 2]);
    }

    #[test]
    fn halve_ceiling_keeps_two_of_three() {
        let stats = vec![arm(3, 0.5), arm(2, 0.5), arm(3, 0.1)];
        assert_eq!(halve(&[0, 1, 2], &stats), vec![0, 1]);
    }

    #[test]
    fn halve_breaks_full_ties_by_lowest_index() {
        let stats = vec![arm(4, 0.5), arm(4, 0.5)];
        assert_eq!(halve(&[0, 1], &stats), vec![0]);
    }

    #[test]
    fn halve_prefers_more_pulls_on_equal_means() {
        let stats = vec![arm(2, 0.5), arm(5, 0.5), arm(1, 0.0)];
        assert_eq!(halve(&[0, 1, 2], &stats), vec![0, 1]);
        // and between the two equal means, the better-sampled one is ranked
        // first, which matters when only one can survive
        let stats = vec![arm(2, 0.5), arm(5, 0.5)];
        assert_eq!(halve(&[0, 1], &stats), vec![1]);
    }

    #[test]
    fn halve_ranks_unpulled_arms_last() {
        let stats = vec![arm(1, 0.1), ArmStats::new(), arm(1, 0.3), ArmStats::new()];
        assert_eq!(halve(&[0, 1, 2, 3], &stats), vec![0, 2]);
    }
}
