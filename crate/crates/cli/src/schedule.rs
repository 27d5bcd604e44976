//! The `schedule` subcommand: print halving schedules without running
//! anything, for sizing budgets before an experiment.

use rootbandit_core::bandit::{render_anytime_schedule, render_sh_schedule};

use crate::args::ScheduleKind;
use crate::error::CliError;
use crate::header::header_line;
use crate::Globals;

/// Fully resolved `schedule` options.
#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub kind: ScheduleKind,
    pub seed: u64,
}

impl Options {
    pub fn resolve(kind: &ScheduleKind, globals: &Globals) -> Result<Self, CliError> {
        Ok(Options {
            kind: kind.clone(),
            seed: globals.seed,
        })
    }

    pub fn flag_summary(&self) -> String {
        match self.kind {
            ScheduleKind::Sh { k, t } => format!("schedule sh --k {k} --t {t}"),
            ScheduleKind::Anytime { k, passes } => {
                format!("schedule anytime --k {k} --passes {passes}")
            }
        }
    }
}

pub fn run(opts: &Options) -> Result<String, CliError> {
    let body = match opts.kind {
        ScheduleKind::Sh { k, t } => render_sh_schedule(k, t)?,
        ScheduleKind::Anytime { k, passes } => render_anytime_schedule(k, passes)?,
    };
    Ok(format!(
        "{}{body}",
        header_line(&opts.flag_summary(), opts.seed)
    ))
}
