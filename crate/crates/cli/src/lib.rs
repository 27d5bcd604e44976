//! Command-line front end for `rootbandit-core`: seeded bandit experiments,
//! agent tournaments, single games, and halving-schedule printouts.
//!
//! Every subcommand resolves its options from three layers — explicit flags,
//! an optional JSON config file, built-in defaults — then produces one output
//! document whose first line records the tool version, the resolved flags,
//! and the master seed, so any result file can be regenerated from its own
//! header.
//!
//! Exit codes: 0 success, 2 usage error, 3 contract violation (an agent that
//! cannot honor the requested budget kind), 1 internal error.

pub mod args;
pub mod clock;
pub mod config;
pub mod error;
pub mod header;
pub mod label;
pub mod mab;
pub mod play;
pub mod schedule;
pub mod tournament;

use std::path::PathBuf;

use clap::Parser;

use args::{Cli, Command};
use config::FileConfig;
use error::CliError;

/// Options shared by every subcommand, already merged with the config file.
#[derive(Debug, Clone, Default)]
pub struct Globals {
    pub seed: u64,
    pub jobs: usize,
    pub out: Option<PathBuf>,
}

/// Parse `std::env::args`, run the chosen subcommand, and return the process
/// exit code. The binary is a one-liner around this.
pub fn run_cli() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here too; they exit 0.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => config::load(path)?,
        None => FileConfig::default(),
    };
    let jobs = cli.jobs.or(file.jobs).unwrap_or(1);
    if jobs == 0 {
        return Err(CliError::usage("--jobs must be at least 1"));
    }
    let globals = Globals {
        seed: cli.seed.or(file.seed).unwrap_or(0),
        jobs,
        out: cli.out.clone().or_else(|| file.out.clone()),
    };

    match &cli.command {
        Command::Mab(a) => {
            let opts = mab::Options::resolve(a, file.mab.as_ref(), &globals)?;
            write_output(&globals.out, &mab::run(&opts)?)
        }
        Command::Tournament(a) => {
            let opts = tournament::Options::resolve(a, file.tournament.as_ref(), &globals)?;
            let (csv, log) = tournament::run(&opts)?;
            if let (Some(path), Some(log)) = (&opts.game_log, &log) {
                std::fs::write(path, log).map_err(|e| {
                    CliError::Internal(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            write_output(&globals.out, &csv)
        }
        Command::Play(a) => {
            let opts = play::Options::resolve(a, file.play.as_ref(), &globals)?;
            let mut stderr = std::io::stderr();
            write_output(&globals.out, &play::run(&opts, &mut stderr)?)
        }
        Command::Schedule(a) => {
            let opts = schedule::Options::resolve(&a.kind, &globals)?;
            write_output(&globals.out, &schedule::run(&opts)?)
        }
    }
}

fn write_output(out: &Option<PathBuf>, doc: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, doc)
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{doc}");
            Ok(())
        }
    }
}
