//! Arm-selection policies: UCB1 and three flavors of sequential halving,
//! plus the regret measures used to score them.

mod plan;
mod policy;
mod regret;
mod schedule;
mod stats;
mod ucb1;

pub use plan::{halve, min_budget, sh_plan, Phase, ShPlan};
pub use policy::{Policy, Ucb1Recommend};
pub use regret::{cumulative_regret, record_history, simple_regret, PullRecord};
pub use schedule::{
    anytime_schedule, render_anytime_schedule, render_sh_schedule, sh_schedule, AnytimeScheduleRow,
    ShScheduleRow,
};
pub use stats::ArmStats;
pub use ucb1::{ucb1_select, ucb1_value};

pub(crate) use plan::best_arm;
