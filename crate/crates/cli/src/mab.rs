//! The `mab` subcommand: run bandit policies over a synthetic Gaussian
//! suite and emit one CSV row of aggregate simple regret per
//! (policy, budget checkpoint).

use std::fmt::Write as _;

use rayon::prelude::*;

use rootbandit_core::seeds::mix_seed;
use rootbandit_core::synth::{
    aggregate_curves, default_budget_map, generate_suite, map_budget, run_episode, BanditProblem,
    PolicySpec, RegretCurve,
};

use crate::args::MabArgs;
use crate::config::MabSection;
use crate::error::CliError;
use crate::header::{header_line, join};
use crate::label::label;
use crate::Globals;

/// Checkpoints when none are requested: the built-in ms-to-iterations
/// table's iteration column.
pub fn default_budgets() -> Vec<u64> {
    default_budget_map()
        .rows()
        .iter()
        .map(|&(_, it)| it)
        .collect()
}

const POLICY_NAMES: [&str; 4] = ["ucb1", "sh", "time-sh", "anytime-sh"];

/// Fully resolved `mab` options.
#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub policies: Vec<PolicySpec>,
    pub problems: u64,
    pub k: usize,
    /// Iteration checkpoints, ascending; the last one is the run budget.
    pub budgets: Vec<u64>,
    /// Set when the checkpoints came in as wall-clock values; echoed in
    /// the header so the command line round-trips.
    pub time_budgets_ms: Option<Vec<f64>>,
    pub c: f64,
    pub literal_ucb: bool,
    pub seed: u64,
    pub jobs: usize,
}

fn parse_policy(name: &str, c: f64, literal_ucb: bool) -> Result<PolicySpec, CliError> {
    match name {
        "ucb1" => Ok(PolicySpec::Ucb1 {
            c,
            literal_recommend: literal_ucb,
        }),
        "sh" => Ok(PolicySpec::Sh),
        "time-sh" => Ok(PolicySpec::TimeSh),
        "anytime-sh" => Ok(PolicySpec::AnytimeSh),
        _ => Err(CliError::usage(format!(
            "unknown policy '{name}' (expected {})",
            POLICY_NAMES.join(", ")
        ))),
    }
}

fn reject_duplicates(names: &[String], what: &str) -> Result<(), CliError> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(CliError::usage(format!("{what} '{n}' listed twice")));
        }
    }
    Ok(())
}

impl Options {
    pub fn resolve(
        args: &MabArgs,
        file: Option<&MabSection>,
        globals: &Globals,
    ) -> Result<Self, CliError> {
        let file_default = MabSection::default();
        let file = file.unwrap_or(&file_default);

        let c = args.c.or(file.c).unwrap_or(std::f64::consts::FRAC_1_SQRT_2);
        if !c.is_finite() || c < 0.0 {
            return Err(CliError::usage(format!(
                "exploration constant must be finite and non-negative, got {c}"
            )));
        }
        let literal_ucb = args.literal_ucb || file.literal_ucb.unwrap_or(false);

        let policy_names = args
            .policies
            .clone()
            .or_else(|| file.policies.clone())
            .unwrap_or_else(|| POLICY_NAMES.iter().map(|s| s.to_string()).collect());
        reject_duplicates(&policy_names, "policy")?;
        let policies = policy_names
            .iter()
            .map(|n| parse_policy(n, c, literal_ucb))
            .collect::<Result<Vec<_>, _>>()?;

        let problems = args.problems.or(file.problems).unwrap_or(100);
        if problems == 0 {
            return Err(CliError::usage("at least one problem is required"));
        }
        let k = args.k.or(file.k).unwrap_or(10);
        if k < 2 {
            return Err(CliError::usage(format!(
                "a bandit needs at least 2 arms, got {k}"
            )));
        }

        // Checkpoints come from exactly one of --budgets / --time-budgets-ms
        // (clap enforces that for flags; the pair is re-checked here because
        // a config file can also supply them).
        let (budgets, time_budgets_ms) = match (&args.budgets, &args.time_budgets_ms) {
            (Some(b), None) => (b.clone(), None),
            (None, Some(t)) => (map_time_budgets(t)?, Some(t.clone())),
            (Some(_), Some(_)) => unreachable!("clap rejects the flag pair"),
            (None, None) => match (&file.budgets, &file.time_budgets_ms) {
                (Some(_), Some(_)) => {
                    return Err(CliError::usage(
                        "config file sets both budgets and time_budgets_ms; pick one",
                    ))
                }
                (Some(b), None) => (b.clone(), None),
                (None, Some(t)) => (map_time_budgets(t)?, Some(t.clone())),
                (None, None) => (default_budgets(), None),
            },
        };
        validate_budgets(&budgets, k)?;

        Ok(Options {
            policies,
            problems,
            k,
            budgets,
            time_budgets_ms,
            c,
            literal_ucb,
            seed: globals.seed,
            jobs: globals.jobs,
        })
    }

    /// The resolved command line, minus the seed (the header carries it).
    pub fn flag_summary(&self) -> String {
        let names: Vec<&str> = self.policies.iter().map(|p| p.name()).collect();
        let mut s = format!(
            "mab --policies {} --problems {} --k {}",
            names.join(","),
            self.problems,
            self.k
        );
        match &self.time_budgets_ms {
            Some(t) => {
                let _ = write!(s, " --time-budgets-ms {}", join(t));
            }
            None => {
                let _ = write!(s, " --budgets {}", join(&self.budgets));
            }
        }
        let _ = write!(s, " --c {}", self.c);
        if self.literal_ucb {
            s.push_str(" --literal-ucb");
        }
        let _ = write!(s, " --jobs {}", self.jobs);
        s
    }
}

fn map_time_budgets(ms: &[f64]) -> Result<Vec<u64>, CliError> {
    if ms.is_empty() {
        return Err(CliError::usage("at least one time budget is required"));
    }
    let map = default_budget_map();
    let budgets = ms
        .iter()
        .map(|&m| map_budget(&map, m))
        .collect::<Result<Vec<_>, _>>()?;
    if budgets.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::usage(
            "time budgets must map to strictly ascending iteration budgets",
        ));
    }
    Ok(budgets)
}

fn validate_budgets(budgets: &[u64], k: usize) -> Result<(), CliError> {
    if budgets.is_empty() {
        return Err(CliError::usage("at least one budget is required"));
    }
    if budgets.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::usage("budgets must be strictly ascending"));
    }
    if budgets[0] < k as u64 {
        return Err(CliError::usage(format!(
            "the smallest budget {} cannot cover {k} arms",
            budgets[0]
        )));
    }
    Ok(())
}

/// One CSV data row.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub policy: &'static str,
    pub budget_iterations: u64,
    pub mean_simple_regret: f64,
    pub ci_half_width: f64,
    pub n_problems: u64,
    pub master_seed: u64,
}

/// Run the whole suite and aggregate. Row order: policies as requested,
/// budgets ascending within each policy.
pub fn collect_rows(opts: &Options) -> Result<Vec<Row>, CliError> {
    let problems = generate_suite(opts.problems, opts.k, opts.seed);
    let mut rows = Vec::with_capacity(opts.policies.len() * opts.budgets.len());
    for &spec in &opts.policies {
        let curves = run_policy(opts, &problems, spec)?;
        for (budget, mean, half) in aggregate_curves(&curves)? {
            rows.push(Row {
                policy: spec.name(),
                budget_iterations: budget,
                mean_simple_regret: mean,
                ci_half_width: half,
                n_problems: opts.problems,
                master_seed: opts.seed,
            });
        }
    }
    Ok(rows)
}

/// One policy across all problems, in problem order. The per-episode seed
/// is derived from the policy *name* and problem id, never from list
/// positions, so a one-policy rerun reproduces the same numbers.
fn run_policy(
    opts: &Options,
    problems: &[BanditProblem],
    spec: PolicySpec,
) -> Result<Vec<RegretCurve>, CliError> {
    let budget = *opts.budgets.last().expect("budgets validated non-empty");
    let episode = |p: &BanditProblem| {
        run_episode(
            p,
            spec,
            budget,
            &opts.budgets,
            mix_seed(opts.seed, &[label(spec.name()), p.problem_id]),
        )
    };
    let curves = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| CliError::Internal(format!("cannot start worker pool: {e}")))?;
        pool.install(|| {
            problems
                .par_iter()
                .map(episode)
                .collect::<Result<Vec<_>, _>>()
        })
    } else {
        problems.iter().map(episode).collect()
    };
    curves.map_err(CliError::from)
}

/// The complete CSV document, header comment first.
pub fn run(opts: &Options) -> Result<String, CliError> {
    let rows = collect_rows(opts)?;
    let mut out = header_line(&opts.flag_summary(), opts.seed);
    out.push_str(
        "policy,budget_iterations,mean_simple_regret,ci_half_width,n_problems,master_seed\n",
    );
    for r in &rows {
        let _ = writeln!(
            out,
            "{},{},{:.6},{:.6},{},{}",
            r.policy,
            r.budget_iterations,
            r.mean_simple_regret,
            r.ci_half_width,
            r.n_problems,
            r.master_seed
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn globals(seed: u64, jobs: usize) -> Globals {
        Globals {
            seed,
            jobs,
            out: None,
        }
    }

    fn resolve(args: &MabArgs) -> Result<Options, CliError> {
        Options::resolve(args, None, &globals(0, 1))
    }

    fn small_options() -> Options {
        Options::resolve(
            &MabArgs {
                policies: Some(vec!["sh".into(), "anytime-sh".into()]),
                problems: Some(4),
                k: Some(5),
                budgets: Some(vec![50, 100]),
                ..MabArgs::default()
            },
            None,
            &globals(11, 1),
        )
        .unwrap()
    }

    #[test]
    fn defaults_fill_everything() {
        let o = resolve(&MabArgs::default()).unwrap();
        assert_eq!(o.problems, 100);
        assert_eq!(o.k, 10);
        assert_eq!(o.budgets, default_budgets());
        assert_eq!(o.budgets.first(), Some(&18_500));
        assert_eq!(o.budgets.last(), Some(&186_500));
        assert_eq!(o.policies.len(), 4);
        assert!((o.c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(!o.literal_ucb);
    }

    #[test]
    fn flags_override_config_file_values() {
        let section = MabSection {
            problems: Some(7),
            k: Some(4),
            c: Some(0.25),
            ..MabSection::default()
        };
        let o = Options::resolve(
            &MabArgs {
                problems: Some(3),
                ..MabArgs::default()
            },
            Some(&section),
            &globals(0, 1),
        )
        .unwrap();
        assert_eq!(o.problems, 3); // flag wins
        assert_eq!(o.k, 4); // file fills the gap
        assert_eq!(o.c, 0.25);
    }

    #[test]
    fn bad_values_are_usage_errors() {
        for args in [
            MabArgs {
                problems: Some(0),
                ..MabArgs::default()
            },
            MabArgs {
                k: Some(1),
                ..MabArgs::default()
            },
            MabArgs {
                policies: Some(vec!["ucb2".into()]),
                ..MabArgs::default()
            },
            MabArgs {
                policies: Some(vec!["sh".into(), "sh".into()]),
                ..MabArgs::default()
            },
            MabArgs {
                budgets: Some(vec![100, 100]),
                ..MabArgs::default()
            },
            MabArgs {
                budgets: Some(vec![5]),
                ..MabArgs::default()
            },
            MabArgs {
                budgets: Some(vec![]),
                ..MabArgs::default()
            },
            MabArgs {
                c: Some(f64::NAN),
                ..MabArgs::default()
            },
            MabArgs {
                time_budgets_ms: Some(vec![100.0]),
                ..MabArgs::default()
            },
        ] {
            assert_eq!(resolve(&args).unwrap_err().exit_code(), 2, "{args:?}");
        }
    }

    #[test]
    fn config_file_cannot_set_both_budget_kinds() {
        let section = MabSection {
            budgets: Some(vec![100]),
            time_budgets_ms: Some(vec![500.0]),
            ..MabSection::default()
        };
        let err =
            Options::resolve(&MabArgs::default(), Some(&section), &globals(0, 1)).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn time_budgets_map_through_the_table() {
        let o = resolve(&MabArgs {
            time_budgets_ms: Some(vec![500.0, 750.0, 5000.0]),
            ..MabArgs::default()
        })
        .unwrap();
        assert_eq!(o.budgets, vec![18_500, 27_750, 186_500]);
        assert!(o.flag_summary().contains("--time-budgets-ms 500,750,5000"));
        assert!(!o.flag_summary().contains("--budgets"));
    }

    #[test]
    fn row_grid_is_policies_times_budgets() {
        let o = Options::resolve(
            &MabArgs {
                policies: Some(vec!["ucb1".into(), "sh".into(), "anytime-sh".into()]),
                problems: Some(3),
                k: Some(4),
                budgets: Some(vec![20, 40, 80]),
                ..MabArgs::default()
            },
            None,
            &globals(7, 1),
        )
        .unwrap();
        let rows = collect_rows(&o).unwrap();
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.n_problems == 3 && r.master_seed == 7));
        assert!(rows.iter().all(|r| r.mean_simple_regret >= 0.0));
        assert_eq!(rows[0].policy, "ucb1");
        assert_eq!(rows[0].budget_iterations, 20);
        assert_eq!(rows[8].policy, "anytime-sh");
        assert_eq!(rows[8].budget_iterations, 80);
    }

    #[test]
    fn csv_shape_and_determinism() {
        let o = small_options();
        let a = run(&o).unwrap();
        let b = run(&o).unwrap();
        assert_eq!(a, b);
        let lines: Vec<&str> = a.lines().collect();
        assert_eq!(lines.len(), 2 + 2 * 2); // header comment + CSV header + rows
        assert!(lines[0].starts_with("# rootbandit "));
        assert!(lines[0].contains("mab --policies sh,anytime-sh"));
        assert!(lines[0].ends_with("seed=11"));
        assert_eq!(
            lines[1],
            "policy,budget_iterations,mean_simple_regret,ci_half_width,n_problems,master_seed"
        );
        for row in &lines[2..] {
            assert_eq!(row.split(',').count(), 6);
        }
        assert!(lines[2].starts_with("sh,50,"));
    }

    #[test]
    fn parallel_runs_match_sequential_runs() {
        let mut o = small_options();
        let sequential = run(&o).unwrap();
        o.jobs = 4;
        let parallel = run(&o).unwrap();
        // Data rows are identical; only the --jobs echo in the header moves.
        let tail = |s: &str| s.lines().skip(1).map(String::from).collect::<Vec<_>>();
        assert_eq!(tail(&sequential), tail(&parallel));
        assert!(parallel.contains("--jobs 4"));
    }

    #[test]
    fn episode_seeds_ignore_policy_list_order() {
        let both = Options::resolve(
            &MabArgs {
                policies: Some(vec!["sh".into(), "ucb1".into()]),
                problems: Some(3),
                k: Some(4),
                budgets: Some(vec![30]),
                ..MabArgs::default()
            },
            None,
            &globals(5, 1),
        )
        .unwrap();
        let only_sh = Options {
            policies: vec![PolicySpec::Sh],
            ..both.clone()
        };
        let rows_both = collect_rows(&both).unwrap();
        let rows_sh = collect_rows(&only_sh).unwrap();
        let sh_row = rows_both.iter().find(|r| r.policy == "sh").unwrap();
        assert_eq!(sh_row.mean_simple_regret, rows_sh[0].mean_simple_regret);
    }
}
