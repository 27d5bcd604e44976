//! The four arm-selection policies behind one stepwise interface.
//!
//! Callers drive a [`Policy`] with a strict select → update rhythm:
//! [`Policy::select`] names the arm to pull next (calling it again before the
//! update returns the same arm), [`Policy::update`] feeds the observed reward
//! back, and [`Policy::recommend`] names the best arm so far. Policies never
//! exhaust — they remain selectable for any number of steps.

use alloc::rc::Rc;
use alloc::vec::Vec;
use core::fmt;

use super::plan::{best_arm, halve, sh_plan, ShPlan};
use super::stats::ArmStats;
use super::ucb1::ucb1_select;
use crate::clock::Clock;
use crate::{Error, Result};

/// How UCB1 picks its final recommendation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ucb1Recommend {
    /// Highest empirical mean (the conventional reading).
    #[default]
    EmpiricalMean,
    /// The arm UCB1 itself would pull next, exploration bonus included.
    LiteralUcb,
}

/// Sequential state for the fixed-budget halving schedule.
struct ShState {
    plan: ShPlan,
    /// Index of the running phase; equals `plan.b()` once the plan is spent.
    phase: usize,
    /// Arms still in contention, ascending. After the final phase this is
    /// the single recommended arm.
    survivors: Vec<usize>,
    /// Position of the next arm to pull within `survivors`.
    cursor: usize,
    /// Pulls completed in the running phase.
    done_in_phase: u64,
}

/// Sequential state for the time-sliced halving schedule.
struct TimeShState {
    clock: Rc<dyn Clock>,
    start_ms: f64,
    total_ms: f64,
    /// Phase count, `ceil(log2 k)`.
    b: usize,
    phase: usize,
    survivors: Vec<usize>,
    cursor: usize,
}

/// Sequential state for the anytime halving schedule.
struct AnytimeShState {
    /// Arms in the running round, ascending.
    survivors: Vec<usize>,
    /// Pulls each survivor receives this round; doubles every round.
    quota: u64,
    /// Completed sweeps over `survivors` in the running round.
    cycle: u64,
    cursor: usize,
}

enum Variant {
    Ucb1 { c: f64, mode: Ucb1Recommend },
    Sh(ShState),
    TimeSh(TimeShState),
    AnytimeSh(AnytimeShState),
}

/// One of the four policies, plus the per-arm statistics it has gathered.
pub struct Policy {
    stats: Vec<ArmStats>,
    pending: Option<usize>,
    variant: Variant,
}

impl fmt::Debug for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Policy")
            .field("kind", &self.kind_name())
            .field("k", &self.k())
            .field("pending", &self.pending)
            .finish()
    }
}

impl Policy {
    /// UCB1 with exploration constant `c`, recommending by empirical mean.
    pub fn ucb1(k: usize, c: f64) -> Result<Self> {
        Self::ucb1_with_recommend(k, c, Ucb1Recommend::EmpiricalMean)
    }

    pub fn ucb1_with_recommend(k: usize, c: f64, mode: Ucb1Recommend) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyArms);
        }
        Ok(Self {
            stats: alloc::vec![ArmStats::new(); k],
            pending: None,
            variant: Variant::Ucb1 { c, mode },
        })
    }

    /// Fixed-budget halving over `k` arms spending (at most) `t` pulls.
    pub fn sh(k: usize, t: u64) -> Result<Self> {
        let plan = sh_plan(k, t)?;
        Ok(Self {
            stats: alloc::vec![ArmStats::new(); k],
            pending: None,
            variant: Variant::Sh(ShState {
                plan,
                phase: 0,
                survivors: (0..k).collect(),
                cursor: 0,
                done_in_phase: 0,
            }),
        })
    }

    /// Time-sliced halving: the wall-clock budget `total_ms`, read off
    /// `clock`, is split evenly over `ceil(log2 k)` phases. The clock starts
    /// counting at construction.
    pub fn time_sh(k: usize, total_ms: f64, clock: Rc<dyn Clock>) -> Result<Self> {
        if k < 2 {
            return Err(Error::BadConfig(alloc::format!(
                "halving needs at least 2 arms, got {k}"
            )));
        }
        if total_ms.is_nan() || total_ms <= 0.0 {
            return Err(Error::BadConfig(alloc::format!(
                "time budget must be positive, got {total_ms} ms"
            )));
        }
        let b = (usize::BITS - (k - 1).leading_zeros()) as usize;
        let start_ms = clock.now_ms();
        Ok(Self {
            stats: alloc::vec![ArmStats::new(); k],
            pending: None,
            variant: Variant::TimeSh(TimeShState {
                clock,
                start_ms,
                total_ms,
                b,
                phase: 0,
                survivors: (0..k).collect(),
                cursor: 0,
            }),
        })
    }

    /// Anytime halving: rounds of doubling per-arm quotas, restarting from
    /// the full arm set whenever the survivors narrow to one.
    pub fn anytime_sh(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::BadConfig(alloc::format!(
                "halving needs at least 2 arms, got {k}"
            )));
        }
        Ok(Self {
            stats: alloc::vec![ArmStats::new(); k],
            pending: None,
            variant: Variant::AnytimeSh(AnytimeShState {
                survivors: (0..k).collect(),
                quota: 1,
                cycle: 0,
                cursor: 0,
            }),
        })
    }

    pub fn k(&self) -> usize {
        self.stats.len()
    }

    pub fn stats(&self) -> &[ArmStats] {
        &self.stats
    }

    pub fn kind_name(&self) -> &'static str {
        match self.variant {
            Variant::Ucb1 { .. } => "ucb1",
            Variant::Sh(_) => "sh",
            Variant::TimeSh(_) => "time-sh",
            Variant::AnytimeSh(_) => "anytime-sh",
        }
    }

    /// Arms currently in contention (everything, for UCB1).
    pub fn survivors(&self) -> Vec<usize> {
        match &self.variant {
            Variant::Ucb1 { .. } => (0..self.k()).collect(),
            Variant::Sh(s) => s.survivors.clone(),
            Variant::TimeSh(s) => s.survivors.clone(),
            Variant::AnytimeSh(s) => s.survivors.clone(),
        }
    }

    /// Anytime halving only: the per-arm quota of the running round.
    pub fn round_quota(&self) -> Option<u64> {
        match &self.variant {
            Variant::AnytimeSh(s) => Some(s.quota),
            _ => None,
        }
    }

    /// Anytime halving only: true when the state sits at the start of a
    /// fresh pass (full survivor set, quota 1, nothing pulled this round).
    pub fn at_pass_start(&self) -> Option<bool> {
        match &self.variant {
            Variant::AnytimeSh(s) => Some(
                s.survivors.len() == self.stats.len()
                    && s.quota == 1
                    && s.cycle == 0
                    && s.cursor == 0,
            ),
            _ => None,
        }
    }

    /// Name the arm to pull next. Idempotent until the matching
    /// [`Policy::update`] arrives.
    pub fn select(&mut self) -> Result<usize> {
        if let Some(pending) = self.pending {
            return Ok(pending);
        }
        let arm = match &mut self.variant {
            Variant::Ucb1 { c, .. } => ucb1_select(&self.stats, *c)?,
            Variant::Sh(s) => s.survivors[s.cursor],
            Variant::TimeSh(s) => {
                s.advance_phases(&self.stats);
                s.survivors[s.cursor]
            }
            Variant::AnytimeSh(s) => s.survivors[s.cursor],
        };
        self.pending = Some(arm);
        Ok(arm)
    }

    /// Record the reward for the arm named by the last [`Policy::select`].
    pub fn update(&mut self, arm: usize, reward: f64) -> Result<()> {
        if arm >= self.k() {
            return Err(Error::ArmOutOfRange { arm, k: self.k() });
        }
        if self.pending != Some(arm) {
            return Err(Error::UpdateMismatch {
                expected: self.pending,
                got: arm,
            });
        }
        self.stats[arm].record(reward);
        self.pending = None;
        match &mut self.variant {
            Variant::Ucb1 { .. } => {}
            Variant::Sh(s) => s.advance(&self.stats),
            Variant::TimeSh(s) => {
                s.cursor = (s.cursor + 1) % s.survivors.len();
            }
            Variant::AnytimeSh(s) => s.advance(&self.stats),
        }
        Ok(())
    }

    /// The best arm so far. Requires every arm to have been pulled at least
    /// once (guaranteed after `k` selects under steady time slices).
    pub fn recommend(&self) -> Result<usize> {
        if let Some(arm) = self.stats.iter().position(|s| s.pulls() == 0) {
            return Err(Error::UnpulledArm { arm });
        }
        Ok(match &self.variant {
            // Highest empirical mean over all arms...
            Variant::Ucb1 {
                mode: Ucb1Recommend::EmpiricalMean,
                ..
            }
            | Variant::TimeSh(_)
            | Variant::AnytimeSh(_) => best_arm(0..self.k(), &self.stats),
            // ...unless the caller opted into the literal next-pull rule.
            Variant::Ucb1 {
                c,
                mode: Ucb1Recommend::LiteralUcb,
            } => ucb1_select(&self.stats, *c)?,
            // The plan's sole survivor once it completes; the best current
            // survivor if interrupted mid-plan.
            Variant::Sh(s) => best_arm(s.survivors.iter().copied(), &self.stats),
        })
    }
}

impl ShState {
    fn advance(&mut self, stats: &[ArmStats]) {
        if self.phase >= self.plan.b() {
            // Plan spent: keep cycling the final survivor set.
            self.cursor = (self.cursor + 1) % self.survivors.len();
            return;
        }
        self.done_in_phase += 1;
        self.cursor = (self.cursor + 1) % self.survivors.len();
        let phase = &self.plan.phases()[self.phase];
        debug_assert_eq!(phase.survivor_count, self.survivors.len());
        if self.done_in_phase == phase.pulls_per_arm * phase.survivor_count as u64 {
            // Phase complete: cut the field in half. After the final phase
            // this narrows the last two arms down to the one recommendation.
            self.survivors = halve(&self.survivors, stats);
            self.phase += 1;
            self.cursor = 0;
            self.done_in_phase = 0;
        }
    }
}

impl TimeShState {
    /// Cross every phase deadline the clock has passed. Phase `i` (0-based)
    /// ends at `start + (i+1) * total/b`; the final phase never ends.
    fn advance_phases(&mut self, stats: &[ArmStats]) {
        let slice = self.total_ms / self.b as f64;
        while self.phase < self.b - 1
            && self.clock.now_ms() >= self.start_ms + (self.phase as f64 + 1.0) * slice
        {
            self.survivors = halve(&self.survivors, stats);
            self.phase += 1;
            self.cursor = 0;
        }
    }
}

impl AnytimeShState {
    fn advance(&mut self, stats: &[ArmStats]) {
        self.cursor += 1;
        if self.cursor < self.survivors.len() {
            return;
        }
        self.cursor = 0;
        self.cycle += 1;
        if self.cycle < self.quota {
            return;
        }
        // Round complete: halve the field and double the quota; once a
        // single arm remains, start a fresh pass over the full field.
        self.cycle = 0;
        self.survivors = halve(&self.survivors, stats);
        self.quota *= 2;
        if self.survivors.len() == 1 {
            self.survivors = (0..stats.len()).collect();
            self.quota = 1;
        }
    }
}
