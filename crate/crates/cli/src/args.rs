//! Command-line grammar. Every option is optional at parse time; defaults
//! and the optional JSON config file are folded in by each command's
//! `Options::resolve`, with explicit flags always winning.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "rootbandit",
    version,
    about = "Seeded bandit and tree-search experiments with reproducible outputs"
)]
pub struct Cli {
    /// Master seed; every random stream in a run is derived from it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads for independent sub-runs; 1 is fully sequential.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// JSON file supplying option defaults; explicit flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run bandit policies on a synthetic Gaussian suite; CSV regret table.
    Mab(MabArgs),
    /// Round-robin agent matches with confidence intervals; CSV report.
    Tournament(TournamentArgs),
    /// Play one game between two agents; JSON log, boards on stderr.
    Play(PlayArgs),
    /// Print a halving schedule as text.
    Schedule(ScheduleArgs),
}

#[derive(Debug, Default, Args)]
pub struct MabArgs {
    /// Comma-separated policies: ucb1, sh, time-sh, anytime-sh.
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    pub policies: Option<Vec<String>>,

    /// Number of bandit problems in the suite.
    #[arg(long)]
    pub problems: Option<u64>,

    /// Arms per problem.
    #[arg(long)]
    pub k: Option<usize>,

    /// Comma-separated iteration budgets (evaluation checkpoints), ascending.
    #[arg(
        long,
        value_delimiter = ',',
        value_name = "ITERS",
        conflicts_with = "time_budgets_ms"
    )]
    pub budgets: Option<Vec<u64>>,

    /// Wall-clock budgets in ms, converted to iterations via the built-in
    /// mapping table (500 ms steps from 500 to 5000).
    #[arg(long, value_delimiter = ',', value_name = "MS")]
    pub time_budgets_ms: Option<Vec<f64>>,

    /// UCB1 exploration constant.
    #[arg(long)]
    pub c: Option<f64>,

    /// Make UCB1 recommend its highest-index arm instead of the highest
    /// empirical mean.
    #[arg(long)]
    pub literal_ucb: bool,
}

#[derive(Debug, Default, Args)]
pub struct TournamentArgs {
    /// Comma-separated game ids (tictactoe, hex-5, breakthrough-6,
    /// gomoku-9, clobber-5; size suffixes may vary).
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    pub games: Option<Vec<String>>,

    /// Comma-separated agents to pair up: uct, hmcts, anytime-sh.
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    pub agents: Option<Vec<String>>,

    /// Games per matchup; even, so seats swap every other game.
    #[arg(long)]
    pub n: Option<u64>,

    /// Comma-separated per-move iteration budgets.
    #[arg(
        long,
        value_delimiter = ',',
        value_name = "ITERS",
        conflicts_with = "time_ms"
    )]
    pub iters: Option<Vec<u64>>,

    /// Per-move wall-clock budget in milliseconds (single value; rejected
    /// for hmcts, whose root schedule needs its budget up front).
    #[arg(long, value_name = "MS")]
    pub time_ms: Option<f64>,

    /// UCB1 exploration constant for both agents.
    #[arg(long)]
    pub c: Option<f64>,

    /// Also write a JSON per-game log (full move lists) to this file.
    #[arg(long, value_name = "PATH")]
    pub game_log: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
pub struct PlayArgs {
    /// Game id (e.g. tictactoe, hex-5, gomoku-9).
    #[arg(long)]
    pub game: Option<String>,

    /// Exactly two of: uct, hmcts, anytime-sh, random. The first listed
    /// takes the first-player seat.
    #[arg(long, value_delimiter = ',', value_name = "A,B")]
    pub agents: Option<Vec<String>>,

    /// Per-move iteration budget.
    #[arg(long, conflicts_with = "time_ms")]
    pub iters: Option<u64>,

    /// Per-move wall-clock budget in milliseconds.
    #[arg(long, value_name = "MS")]
    pub time_ms: Option<f64>,

    /// UCB1 exploration constant.
    #[arg(long)]
    pub c: Option<f64>,

    /// Embed per-move search statistics in the JSON log.
    #[arg(long)]
    pub details: bool,

    /// Suppress the board stream on stderr.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[command(subcommand)]
    pub kind: ScheduleKind,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum ScheduleKind {
    /// Fixed-budget halving phases for K arms and pull budget T.
    Sh {
        /// Number of arms.
        #[arg(long)]
        k: usize,
        /// Total pull budget.
        #[arg(long)]
        t: u64,
    },
    /// Anytime halving rounds for K arms over a number of passes.
    Anytime {
        /// Number of arms.
        #[arg(long)]
        k: usize,
        /// Passes to print.
        #[arg(long, default_value_t = 1)]
        passes: usize,
    },
}
