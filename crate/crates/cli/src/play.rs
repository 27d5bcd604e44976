//! The `play` subcommand: one game between two agents, boards streamed to
//! stderr, a JSON move log (optionally with per-move search statistics) as
//! the output document.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use rootbandit_core::clock::FrozenClock;
use rootbandit_core::games::{GameKind, GameState, Outcome, Player};
use rootbandit_core::mcts::{run_search, SearchBudget, SearchResult, UctFinalMove};
use rootbandit_core::seeds::mix_seed;
use rootbandit_core::tournament::AgentKind;
use rootbandit_core::with_game;

use crate::args::PlayArgs;
use crate::clock::SystemClock;
use crate::config::PlaySection;
use crate::error::CliError;
use crate::header::header_line;
use crate::Globals;

/// Fully resolved `play` options. `agents[0]` takes the first-player seat.
#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub game: GameKind,
    pub agents: [AgentKind; 2],
    pub budget: SearchBudget,
    pub c: f64,
    pub details: bool,
    pub quiet: bool,
    pub seed: u64,
}

impl Options {
    pub fn resolve(
        args: &PlayArgs,
        file: Option<&PlaySection>,
        globals: &Globals,
    ) -> Result<Self, CliError> {
        let file_default = PlaySection::default();
        let file = file.unwrap_or(&file_default);

        let game_name = args
            .game
            .clone()
            .or_else(|| file.game.clone())
            .ok_or_else(|| CliError::usage("--game is required (e.g. --game tictactoe)"))?;
        let game = GameKind::parse(&game_name)?;

        let agent_names = args
            .agents
            .clone()
            .or_else(|| file.agents.clone())
            .ok_or_else(|| {
                CliError::usage("--agents is required (two of uct, hmcts, anytime-sh, random)")
            })?;
        if agent_names.len() != 2 {
            return Err(CliError::usage(format!(
                "exactly two agents are required, got {}",
                agent_names.len()
            )));
        }
        let agents = [
            AgentKind::parse(&agent_names[0])?,
            AgentKind::parse(&agent_names[1])?,
        ];

        let budget = match (args.iters, args.time_ms) {
            (Some(i), None) => SearchBudget::Iterations(i),
            (None, Some(t)) => SearchBudget::TimeMs(t),
            (Some(_), Some(_)) => unreachable!("clap rejects the flag pair"),
            (None, None) => match (file.iters, file.time_ms) {
                (Some(_), Some(_)) => {
                    return Err(CliError::usage(
                        "config file sets both iters and time_ms; pick one",
                    ))
                }
                (Some(i), None) => SearchBudget::Iterations(i),
                (None, Some(t)) => SearchBudget::TimeMs(t),
                (None, None) => SearchBudget::Iterations(1000),
            },
        };
        match budget {
            SearchBudget::Iterations(0) => {
                return Err(CliError::usage("the iteration budget must be positive"))
            }
            SearchBudget::TimeMs(t) if !(t.is_finite() && t > 0.0) => {
                return Err(CliError::usage(format!(
                    "the wall-clock budget must be a positive number of milliseconds, got {t}"
                )));
            }
            SearchBudget::TimeMs(_) if agents.contains(&AgentKind::Hmcts) => {
                return Err(CliError::from(rootbandit_core::Error::NotAnytime));
            }
            _ => {}
        }

        let c = args.c.or(file.c).unwrap_or(std::f64::consts::SQRT_2);
        if !c.is_finite() || c < 0.0 {
            return Err(CliError::usage(format!(
                "exploration constant must be finite and non-negative, got {c}"
            )));
        }

        Ok(Options {
            game,
            agents,
            budget,
            c,
            details: args.details || file.details.unwrap_or(false),
            quiet: args.quiet || file.quiet.unwrap_or(false),
            seed: globals.seed,
        })
    }

    pub fn flag_summary(&self) -> String {
        let mut s = format!(
            "play --game {} --agents {},{}",
            self.game.id(),
            self.agents[0].name(),
            self.agents[1].name()
        );
        match self.budget {
            SearchBudget::Iterations(t) => s.push_str(&format!(" --iters {t}")),
            SearchBudget::TimeMs(t) => s.push_str(&format!(" --time-ms {t}")),
        }
        s.push_str(&format!(" --c {}", self.c));
        if self.details {
            s.push_str(" --details");
        }
        s
    }
}

#[derive(Debug, Serialize)]
struct ChildDetail {
    #[serde(rename = "move")]
    mv: String,
    visits: u64,
    mean: f64,
}

#[derive(Debug, Serialize)]
struct MoveDetail {
    #[serde(rename = "move")]
    mv: String,
    iterations: u64,
    children: Vec<ChildDetail>,
}

impl MoveDetail {
    fn from_search<M: std::fmt::Display>(result: &SearchResult<M>) -> Self {
        MoveDetail {
            mv: result.chosen_move.to_string(),
            iterations: result.iterations_used,
            children: result
                .children
                .iter()
                .map(|c| ChildDetail {
                    mv: c.mv.to_string(),
                    visits: c.visits,
                    mean: c.mean,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
struct PlayLog {
    game: String,
    seed: u64,
    agents: [&'static str; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    iters_per_move: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    time_ms_per_move: Option<f64>,
    c: f64,
    move_count: u32,
    outcome: &'static str,
    moves: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    details: Option<Vec<MoveDetail>>,
}

/// Play the game. Boards and move commentary go to `boards` (the binary
/// passes stderr); the returned string is the output document.
pub fn run(opts: &Options, boards: &mut dyn std::io::Write) -> Result<String, CliError> {
    with_game!(opts.game, state => drive(opts, state, boards))
}

fn drive<G: GameState>(
    opts: &Options,
    mut state: G,
    boards: &mut dyn std::io::Write,
) -> Result<String, CliError> {
    let mut moves: Vec<String> = Vec::new();
    let mut details: Vec<MoveDetail> = Vec::new();
    if !opts.quiet {
        writeln!(boards, "{}", state.render())?;
    }
    let outcome: Outcome = loop {
        if let Some(o) = state.outcome() {
            break o;
        }
        let mover = state.current_player();
        let agent = opts.agents[if mover == Player::P1 { 0 } else { 1 }];
        let move_seed = mix_seed(opts.seed, &[moves.len() as u64]);
        let (mv, detail) = match agent.strategy() {
            None => {
                let legal = state.legal_moves();
                let mut rng = ChaCha8Rng::seed_from_u64(move_seed);
                let mv = legal[rng.gen_range(0..legal.len())];
                (
                    mv,
                    MoveDetail {
                        mv: mv.to_string(),
                        iterations: 0,
                        children: Vec::new(),
                    },
                )
            }
            Some(strategy) => {
                let result = match opts.budget {
                    SearchBudget::Iterations(_) => run_search(
                        &state,
                        strategy,
                        opts.budget,
                        opts.c,
                        move_seed,
                        UctFinalMove::default(),
                        &FrozenClock,
                    )?,
                    SearchBudget::TimeMs(_) => run_search(
                        &state,
                        strategy,
                        opts.budget,
                        opts.c,
                        move_seed,
                        UctFinalMove::default(),
                        &SystemClock::new(),
                    )?,
                };
                (result.chosen_move, MoveDetail::from_search(&result))
            }
        };
        state = state
            .apply(mv)
            .map_err(|e| CliError::Internal(format!("agent returned an illegal move: {e}")))?;
        moves.push(mv.to_string());
        if opts.details {
            details.push(detail);
        }
        if !opts.quiet {
            writeln!(
                boards,
                "move {}: {} ({}) plays {}\n{}",
                moves.len(),
                mover.glyph(),
                agent.name(),
                mv,
                state.render()
            )?;
        }
    };
    if !opts.quiet {
        writeln!(
            boards,
            "outcome: {} after {} moves",
            outcome.name(),
            moves.len()
        )?;
    }

    let log = PlayLog {
        game: opts.game.id(),
        seed: opts.seed,
        agents: [opts.agents[0].name(), opts.agents[1].name()],
        iters_per_move: match opts.budget {
            SearchBudget::Iterations(t) => Some(t),
            SearchBudget::TimeMs(_) => None,
        },
        time_ms_per_move: match opts.budget {
            SearchBudget::Iterations(_) => None,
            SearchBudget::TimeMs(t) => Some(t),
        },
        c: opts.c,
        move_count: moves.len() as u32,
        outcome: outcome.name(),
        moves,
        details: if opts.details { Some(details) } else { None },
    };
    let json = serde_json::to_string_pretty(&log)
        .map_err(|e| CliError::Internal(format!("cannot serialize game log: {e}")))?;
    Ok(format!(
        "{}{json}\n",
        header_line(&opts.flag_summary(), opts.seed)
    ))
}
