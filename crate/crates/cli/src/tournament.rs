//! The `tournament` subcommand: every requested agent pair plays every
//! requested game at every budget, reported as CSV rows with Agresti-Coull
//! intervals, plus an across-games average row per pair and budget.

use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use rootbandit_core::clock::FrozenClock;
use rootbandit_core::games::GameKind;
use rootbandit_core::mcts::SearchBudget;
use rootbandit_core::seeds::mix_seed;
use rootbandit_core::tournament::{run_matchup, AgentKind, MatchupResult, MatchupSpec, Z_95};

use crate::args::TournamentArgs;
use crate::clock::SystemClock;
use crate::config::TournamentSection;
use crate::error::CliError;
use crate::header::{header_line, join};
use crate::label::label;
use crate::Globals;

pub fn default_iters() -> Vec<u64> {
    vec![1000, 5000, 10_000, 20_000, 30_000, 40_000, 50_000]
}

/// Game id used for the across-games average rows.
pub const ALL_GAMES: &str = "all";

/// Fully resolved `tournament` options.
#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub games: Vec<GameKind>,
    /// At least two distinct search agents; every unordered pair plays.
    pub agents: Vec<AgentKind>,
    pub n: u64,
    /// Per-move budgets: several iteration counts, or one wall-clock value.
    pub iters: Option<Vec<u64>>,
    pub time_ms: Option<f64>,
    pub c: f64,
    pub game_log: Option<PathBuf>,
    pub seed: u64,
    pub jobs: usize,
}

impl Options {
    pub fn resolve(
        args: &TournamentArgs,
        file: Option<&TournamentSection>,
        globals: &Globals,
    ) -> Result<Self, CliError> {
        let file_default = TournamentSection::default();
        let file = file.unwrap_or(&file_default);

        let game_names = args
            .games
            .clone()
            .or_else(|| file.games.clone())
            .unwrap_or_else(|| {
                GameKind::all_default()
                    .iter()
                    .map(|g| g.id().to_string())
                    .collect()
            });
        if game_names.is_empty() {
            return Err(CliError::usage("at least one game is required"));
        }
        let games = game_names
            .iter()
            .map(|n| GameKind::parse(n).map_err(CliError::from))
            .collect::<Result<Vec<_>, _>>()?;
        let mut ids: Vec<String> = games.iter().map(|g| g.id().to_string()).collect();
        ids.sort();
        ids.dedup();
        if ids.len() != games.len() {
            return Err(CliError::usage("each game may be listed only once"));
        }

        let agent_names = args
            .agents
            .clone()
            .or_else(|| file.agents.clone())
            .unwrap_or_else(|| vec!["uct".into(), "hmcts".into(), "anytime-sh".into()]);
        let agents = agent_names
            .iter()
            .map(|n| AgentKind::parse(n).map_err(CliError::from))
            .collect::<Result<Vec<_>, _>>()?;
        if agents.contains(&AgentKind::Random) {
            return Err(CliError::usage(
                "the random mover is a test opponent, not a tournament agent \
                 (agents: uct, hmcts, anytime-sh)",
            ));
        }
        if agents.len() < 2 {
            return Err(CliError::usage(
                "a tournament needs at least two agents to pair up",
            ));
        }
        let mut seen = agents.clone();
        seen.sort_by_key(|a| a.name());
        seen.dedup();
        if seen.len() != agents.len() {
            return Err(CliError::usage("each agent may be listed only once"));
        }

        let n = args.n.or(file.n).unwrap_or(150);
        if n == 0 || !n.is_multiple_of(2) {
            return Err(CliError::usage(format!(
                "matchup size must be even and positive so seats balance, got {n}"
            )));
        }

        let (iters, time_ms) = match (&args.iters, &args.time_ms) {
            (Some(i), None) => (Some(i.clone()), None),
            (None, Some(t)) => (None, Some(*t)),
            (Some(_), Some(_)) => unreachable!("clap rejects the flag pair"),
            (None, None) => match (&file.iters, &file.time_ms) {
                (Some(_), Some(_)) => {
                    return Err(CliError::usage(
                        "config file sets both iters and time_ms; pick one",
                    ))
                }
                (Some(i), None) => (Some(i.clone()), None),
                (None, Some(t)) => (None, Some(*t)),
                (None, None) => (Some(default_iters()), None),
            },
        };
        if let Some(iters) = &iters {
            if iters.is_empty() {
                return Err(CliError::usage("at least one iteration budget is required"));
            }
            if iters.contains(&0) {
                return Err(CliError::usage("iteration budgets must be positive"));
            }
        }
        if let Some(t) = time_ms {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::usage(format!(
                    "the wall-clock budget must be a positive number of milliseconds, got {t}"
                )));
            }
            if agents.contains(&AgentKind::Hmcts) {
                // Surfaced before any game runs; run_matchup would reject it
                // too, with the same error.
                return Err(CliError::from(rootbandit_core::Error::NotAnytime));
            }
        }

        let c = args.c.or(file.c).unwrap_or(std::f64::consts::SQRT_2);
        if !c.is_finite() || c < 0.0 {
            return Err(CliError::usage(format!(
                "exploration constant must be finite and non-negative, got {c}"
            )));
        }

        Ok(Options {
            games,
            agents,
            n,
            iters,
            time_ms,
            c,
            game_log: args.game_log.clone().or_else(|| file.game_log.clone()),
            seed: globals.seed,
            jobs: globals.jobs,
        })
    }

    pub fn flag_summary(&self) -> String {
        let game_ids: Vec<String> = self.games.iter().map(|g| g.id().to_string()).collect();
        let agent_names: Vec<&str> = self.agents.iter().map(|a| a.name()).collect();
        let mut s = format!(
            "tournament --games {} --agents {} --n {}",
            game_ids.join(","),
            agent_names.join(","),
            self.n
        );
        match (&self.iters, self.time_ms) {
            (Some(i), _) => {
                let _ = write!(s, " --iters {}", join(i));
            }
            (None, Some(t)) => {
                let _ = write!(s, " --time-ms {t}");
            }
            (None, None) => unreachable!("resolve always fills one budget kind"),
        }
        let _ = write!(s, " --c {} --jobs {}", self.c, self.jobs);
        s
    }

    fn budgets(&self) -> Vec<SearchBudget> {
        match (&self.iters, self.time_ms) {
            (Some(i), _) => i.iter().map(|&t| SearchBudget::Iterations(t)).collect(),
            (None, Some(t)) => vec![SearchBudget::TimeMs(t)],
            (None, None) => unreachable!("resolve always fills one budget kind"),
        }
    }

    /// Unordered agent pairs, in listing order.
    fn pairs(&self) -> Vec<(AgentKind, AgentKind)> {
        let mut pairs = Vec::new();
        for i in 0..self.agents.len() {
            for j in i + 1..self.agents.len() {
                pairs.push((self.agents[i], self.agents[j]));
            }
        }
        pairs
    }
}

/// The seed one matchup runs under: mixed from the master seed and the
/// matchup's own labels (game, agents, budget), never from grid positions,
/// so any single row can be reproduced by a one-matchup rerun.
pub fn matchup_seed(
    master: u64,
    game: GameKind,
    a: AgentKind,
    b: AgentKind,
    budget: SearchBudget,
) -> u64 {
    let budget_label = match budget {
        SearchBudget::Iterations(t) => t,
        SearchBudget::TimeMs(_) => 0,
    };
    mix_seed(
        master,
        &[
            label(&game.id()),
            label(a.name()),
            label(b.name()),
            budget_label,
        ],
    )
}

fn run_one(spec: &MatchupSpec) -> rootbandit_core::Result<MatchupResult> {
    match spec.budget {
        SearchBudget::Iterations(_) => run_matchup(spec, &FrozenClock),
        SearchBudget::TimeMs(_) => run_matchup(spec, &SystemClock::new()),
    }
}

/// Run the full grid. Returns the CSV report and, when a game log was
/// requested, the JSON per-game log.
pub fn run(opts: &Options) -> Result<(String, Option<String>), CliError> {
    let budgets = opts.budgets();
    let pairs = opts.pairs();
    let mut specs = Vec::with_capacity(budgets.len() * pairs.len() * opts.games.len());
    for &budget in &budgets {
        for &(a, b) in &pairs {
            for &game in &opts.games {
                specs.push(MatchupSpec {
                    game,
                    agent_a: a,
                    agent_b: b,
                    budget,
                    n: opts.n,
                    base_seed: matchup_seed(opts.seed, game, a, b, budget),
                    c: opts.c,
                });
            }
        }
    }

    // Wall-clock matchups stay sequential even under --jobs: concurrent
    // timed searches would steal each other's cycles.
    let parallel = opts.jobs > 1 && opts.time_ms.is_none();
    let results: Vec<MatchupResult> = if parallel {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| CliError::Internal(format!("cannot start worker pool: {e}")))?;
        pool.install(|| specs.par_iter().map(run_one).collect::<Result<Vec<_>, _>>())?
    } else {
        specs.iter().map(run_one).collect::<Result<Vec<_>, _>>()?
    };

    Ok((
        render_csv(opts, &results)?,
        render_game_log(opts, &results)?,
    ))
}

fn budget_column(budget: SearchBudget) -> u64 {
    match budget {
        SearchBudget::Iterations(t) => t,
        // No iteration budget exists for timed play; the header line
        // carries the --time-ms value.
        SearchBudget::TimeMs(_) => 0,
    }
}

fn render_csv(opts: &Options, results: &[MatchupResult]) -> Result<String, CliError> {
    let mut out = header_line(&opts.flag_summary(), opts.seed);
    out.push_str(
        "game,agent_a,agent_b,iters_per_move,n,wins_a,center_pct,half_width_pct,base_seed\n",
    );
    for group in results.chunks(opts.games.len()) {
        for r in group {
            let (center, half) = r.interval(Z_95)?;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.1},{:.2},{:.2},{}",
                r.spec.game.id(),
                r.spec.agent_a.name(),
                r.spec.agent_b.name(),
                budget_column(r.spec.budget),
                r.spec.n,
                r.wins_a,
                center,
                half,
                r.spec.base_seed
            );
        }
        // A one-game run's average row would just repeat the row above it.
        if opts.games.len() >= 2 {
            let (center, half) = rootbandit_core::tournament::across_games_row(group, Z_95)?;
            let pooled_wins: f64 = group.iter().map(|r| r.wins_a).sum();
            let pooled_n: u64 = group.iter().map(|r| r.spec.n).sum();
            let first = &group[0].spec;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.1},{:.2},{:.2},{}",
                ALL_GAMES,
                first.agent_a.name(),
                first.agent_b.name(),
                budget_column(first.budget),
                pooled_n,
                pooled_wins,
                center,
                half,
                opts.seed
            );
        }
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct GameLogEntry<'a> {
    game: String,
    agent_a: &'static str,
    agent_b: &'static str,
    iters_per_move: u64,
    game_index: u64,
    seed: u64,
    a_first: bool,
    move_count: u32,
    outcome: &'static str,
    moves: &'a [String],
}

fn render_game_log(opts: &Options, results: &[MatchupResult]) -> Result<Option<String>, CliError> {
    if opts.game_log.is_none() {
        return Ok(None);
    }
    let mut entries = Vec::new();
    for r in results {
        for (i, g) in r.games.iter().enumerate() {
            entries.push(GameLogEntry {
                game: r.spec.game.id().to_string(),
                agent_a: r.spec.agent_a.name(),
                agent_b: r.spec.agent_b.name(),
                iters_per_move: budget_column(r.spec.budget),
                game_index: i as u64,
                seed: g.seed,
                a_first: g.a_first,
                move_count: g.move_count,
                outcome: g.outcome.name(),
                moves: &g.moves,
            });
        }
    }
    let json = serde_json::to_string_pretty(&entries)
        .map_err(|e| CliError::Internal(format!("cannot serialize game log: {e}")))?;
    Ok(Some(format!(
        "{}{json}\n",
        header_line(&opts.flag_summary(), opts.seed)
    )))
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

    fn resolve(args: &TournamentArgs) -> Result<Options, CliError> {
        Options::resolve(args, None, &globals(0, 1))
    }

    fn tiny_args() -> TournamentArgs {
        TournamentArgs {
            games: Some(vec!["tictactoe".into(), "clobber-2".into()]),
            agents: Some(vec!["uct".into(), "anytime-sh".into()]),
            n: Some(2),
            iters: Some(vec![16, 32]),
            ..TournamentArgs::default()
        }
    }

    #[test]
    fn defaults_cover_the_full_grid() {
        let o = resolve(&TournamentArgs::default()).unwrap();
        assert_eq!(o.games.len(), 5);
        assert_eq!(o.agents.len(), 3);
        assert_eq!(o.pairs().len(), 3);
        assert_eq!(o.n, 150);
        assert_eq!(o.iters.as_deref(), Some(&default_iters()[..]));
        assert!((o.c - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn bad_values_are_usage_errors() {
        for args in [
            TournamentArgs {
                games: Some(vec!["chess".into()]),
                ..TournamentArgs::default()
            },
            TournamentArgs {
                games: Some(vec!["tictactoe".into(), "tictactoe".into()]),
                ..TournamentArgs::default()
            },
            TournamentArgs {
                agents: Some(vec!["uct".into()]),
                ..TournamentArgs::default()
            },
            TournamentArgs {
                agents: Some(vec!["uct".into(), "uct".into()]),
                ..TournamentArgs::default()
            },
            TournamentArgs {
                agents: Some(vec!["uct".into(), "random".into()]),
                ..TournamentArgs::default()
            },
            TournamentArgs {
                n: Some(5),
                ..TournamentArgs::default()
            },
            TournamentArgs {
                n: Some(0),
                ..TournamentArgs::default()
            },
            TournamentArgs {
                iters: Some(vec![]),
                ..TournamentArgs::default()
            },
            TournamentArgs {
                iters: Some(vec![0]),
                ..TournamentArgs::default()
            },
            TournamentArgs {
                time_ms: Some(-1.0),
                agents: Some(vec!["uct".into(), "anytime-sh".into()]),
                ..TournamentArgs::default()
            },
        ] {
            assert_eq!(resolve(&args).unwrap_err().exit_code(), 2, "{args:?}");
        }
    }

    #[test]
    fn fixed_budget_agent_with_wall_clock_budget_exits_three() {
        let err = resolve(&TournamentArgs {
            time_ms: Some(50.0),
            ..TournamentArgs::default() // default agents include hmcts
        })
        .unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("not anytime"));
    }

    #[test]
    fn csv_grid_shape_and_averages() {
        let o = resolve(&tiny_args()).unwrap();
        let (csv, log) = run(&o).unwrap();
        assert!(log.is_none());
        let lines: Vec<&str> = csv.lines().collect();
        // comment + header + 2 budgets x 1 pair x (2 games + 1 average row)
        assert_eq!(lines.len(), 2 + 2 * 3);
        assert!(lines[0].starts_with("# rootbandit "));
        assert!(lines[0].contains("--games tictactoe,clobber-2"));
        assert_eq!(
            lines[1],
            "game,agent_a,agent_b,iters_per_move,n,wins_a,center_pct,half_width_pct,base_seed"
        );
        assert!(lines[2].starts_with("tictactoe,uct,anytime-sh,16,2,"));
        assert!(lines[3].starts_with("clobber-2,uct,anytime-sh,16,2,"));
        assert!(lines[4].starts_with("all,uct,anytime-sh,16,4,"));
        assert!(lines[5].starts_with("tictactoe,uct,anytime-sh,32,2,"));
    }

    #[test]
    fn single_game_runs_skip_the_average_row() {
        let o = resolve(&TournamentArgs {
            games: Some(vec!["tictactoe".into()]),
            ..tiny_args()
        })
        .unwrap();
        let (csv, _) = run(&o).unwrap();
        assert!(!csv.contains("\nall,"));
        assert_eq!(csv.lines().count(), 2 + 2);
    }

    #[test]
    fn reruns_are_byte_identical_and_jobs_do_not_move_data() {
        let o = resolve(&tiny_args()).unwrap();
        let (a, _) = run(&o).unwrap();
        let (b, _) = run(&o).unwrap();
        assert_eq!(a, b);
        let parallel = Options { jobs: 3, ..o };
        let (c, _) = run(&parallel).unwrap();
        let tail = |s: &str| s.lines().skip(1).map(String::from).collect::<Vec<_>>();
        assert_eq!(tail(&a), tail(&c));
    }

    #[test]
    fn matchup_seeds_ignore_grid_position() {
        // Rerunning one matchup alone reproduces the exact row it had in a
        // bigger grid, because the seed is mixed from labels.
        let big = resolve(&tiny_args()).unwrap();
        let (big_csv, _) = run(&big).unwrap();
        let small = resolve(&TournamentArgs {
            games: Some(vec!["clobber-2".into()]),
            iters: Some(vec![32]),
            ..tiny_args()
        })
        .unwrap();
        let (small_csv, _) = run(&small).unwrap();
        let small_row = small_csv.lines().nth(2).unwrap();
        assert!(
            big_csv.lines().any(|l| l == small_row),
            "row {small_row:?} not found in:\n{big_csv}"
        );
    }

    #[test]
    fn game_log_lists_every_game_with_moves() {
        let o = Options {
            game_log: Some(PathBuf::from("unused.json")),
            ..resolve(&tiny_args()).unwrap()
        };
        let (_, log) = run(&o).unwrap();
        let log = log.unwrap();
        let body = log.split_once('\n').unwrap().1;
        let entries: Vec<serde_json::Value> = serde_json::from_str(body).unwrap();
        assert_eq!(entries.len(), 2 * 2 * 2); // budgets x pairs x games x n
        for e in &entries {
            assert!(e["move_count"].as_u64().unwrap() > 0);
            assert_eq!(
                e["moves"].as_array().unwrap().len() as u64,
                e["move_count"].as_u64().unwrap()
            );
            assert!(["P1_WIN", "P2_WIN", "DRAW"].contains(&e["outcome"].as_str().unwrap()));
        }
    }
}
