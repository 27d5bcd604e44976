//! Textual dumps of halving schedules, for inspection and the CLI.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use super::plan::sh_plan;
use crate::{Error, Result};

/// One phase of a fixed-budget schedule. `cumulative` is the pull count an
/// arm that survives every cut has received by the end of the phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShScheduleRow {
    pub phase: usize,
    pub survivors: usize,
    pub pulls_per_arm: u64,
    pub cumulative: u64,
}

/// One round of the anytime schedule, labelled by pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnytimeScheduleRow {
    pub pass: usize,
    pub round: usize,
    pub survivors: usize,
    pub pulls_per_arm: u64,
    pub cumulative: u64,
}

/// The fixed-budget schedule as rows.
pub fn sh_schedule(k: usize, t: u64) -> Result<Vec<ShScheduleRow>> {
    let plan = sh_plan(k, t)?;
    let mut cumulative = 0;
    Ok(plan
        .phases()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            cumulative += p.pulls_per_arm;
            ShScheduleRow {
                phase: i + 1,
                survivors: p.survivor_count,
                pulls_per_arm: p.pulls_per_arm,
                cumulative,
            }
        })
        .collect())
}

/// The anytime schedule as rows, for a requested number of passes. Per-arm
/// quotas double each round (1, 2, 4, ...) and reset every pass.
pub fn anytime_schedule(k: usize, passes: usize) -> Result<Vec<AnytimeScheduleRow>> {
    if k < 2 {
        return Err(Error::BadConfig(alloc::format!(
            "halving needs at least 2 arms, got {k}"
        )));
    }
    if passes < 1 {
        return Err(Error::BadConfig(String::from(
            "at least one pass is required",
        )));
    }
    let mut rows = Vec::new();
    let mut cumulative = 0;
    for pass in 1..=passes {
        let mut survivors = k;
        let mut quota = 1u64;
        let mut round = 1;
        loop {
            cumulative += quota;
            rows.push(AnytimeScheduleRow {
                pass,
                round,
                survivors,
                pulls_per_arm: quota,
                cumulative,
            });
            let next = survivors.div_ceil(2);
            if next == 1 {
                break;
            }
            survivors = next;
            quota *= 2;
            round += 1;
        }
    }
    Ok(rows)
}

/// Render the fixed-budget schedule, one line per phase plus a total line.
pub fn render_sh_schedule(k: usize, t: u64) -> Result<String> {
    let rows = sh_schedule(k, t)?;
    let mut out = String::new();
    let mut total = 0;
    for r in &rows {
        let _ = writeln!(
            out,
            "phase {}: survivors={} pulls_per_arm={} cumulative={}",
            r.phase, r.survivors, r.pulls_per_arm, r.cumulative
        );
        total += r.survivors as u64 * r.pulls_per_arm;
    }
    let _ = writeln!(out, "total: {total} pulls (budget {t})");
    Ok(out)
}

/// Render the anytime schedule, one line per round plus a line per pass.
pub fn render_anytime_schedule(k: usize, passes: usize) -> Result<String> {
    let rows = anytime_schedule(k, passes)?;
    let mut out = String::new();
    let mut pass_total = 0;
    let mut grand_total = 0;
    for (i, r) in rows.iter().enumerate() {
        let _ = writeln!(
            out,
            "pass {} round {}: survivors={} pulls_per_arm={} cumulative={}",
            r.pass, r.round, r.survivors, r.pulls_per_arm, r.cumulative
        );
        pass_total += r.survivors as u64 * r.pulls_per_arm;
        grand_total += r.survivors as u64 * r.pulls_per_arm;
        let pass_ends = rows.get(i + 1).is_none_or(|next| next.pass != r.pass);
        if pass_ends {
            let _ = writeln!(
                out,
                "pass {} total: {pass_total} pulls (cumulative {grand_total})",
                r.pass
            );
            pass_total = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn sh_rows_for_8_arms_24_pulls() {
        let rows = sh_schedule(8, 24).unwrap();
        let got: Vec<(usize, usize, u64, u64)> = rows
            .iter()
            .map(|r| (r.phase, r.survivors, r.pulls_per_arm, r.cumulative))
            .collect();
        assert_eq!(got, vec![(1, 8, 1, 1), (2, 4, 2, 3), (3, 2, 4, 7)]);
    }

    #[test]
    fn anytime_rows_for_10_arms_two_passes() {
        let rows = anytime_schedule(10, 2).unwrap();
        let got: Vec<(usize, usize, usize, u64, u64)> = rows
            .iter()
            .map(|r| (r.pass, r.round, r.survivors, r.pulls_per_arm, r.cumulative))
            .collect();
        assert_eq!(
            got,
            vec![
                (1, 1, 10, 1, 1),
                (1, 2, 5, 2, 3),
                (1, 3, 3, 4, 7),
                (1, 4, 2, 8, 15),
                (2, 1, 10, 1, 16),
                (2, 2, 5, 2, 18),
                (2, 3, 3, 4, 22),
                (2, 4, 2, 8, 30),
            ]
        );
    }

    #[test]
    fn rendered_sh_schedule_text() {
        let text = render_sh_schedule(8, 24).unwrap();
        assert_eq!(
            text,
            "phase 1: survivors=8 pulls_per_arm=1 cumulative=1\n\
             phase 2: survivors=4 pulls_per_arm=2 cumulative=3\n\
             phase 3: survivors=2 pulls_per_arm=4 cumulative=7\n\
             total: 24 pulls (budget 24)\n"
        );
    }

    #[test]
    fn rendered_anytime_schedule_text() {
        let text = render_anytime_schedule(10, 1).unwrap();
        assert_eq!(
            text,
            "pass 1 round 1: survivors=10 pulls_per_arm=1 cumulative=1\n\
             pass 1 round 2: survivors=5 pulls_per_arm=2 cumulative=3\n\
             pass 1 round 3: survivors=3 pulls_per_arm=4 cumulative=7\n\
             pass 1 round 4: survivors=2 pulls_per_arm=8 cumulative=15\n\
             pass 1 total: 48 pulls (cumulative 48)\n"
        );
    }

    #[test]
    fn schedule_errors_propagate() {
        assert!(matches!(
            sh_schedule(2, 1),
            Err(Error::BudgetTooSmall { minimum: 2, got: 1 })
        ));
        assert!(anytime_schedule(1, 1).is_err());
        assert!(anytime_schedule(10, 0).is_err());
    }
}
