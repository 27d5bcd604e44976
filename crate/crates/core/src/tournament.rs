//! Seeded agent-vs-agent matches with seat swapping, scored with 95%
//! Agresti-Coull intervals. Draws count as half a win for each side.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clock::Clock;
use crate::games::{GameKind, GameState, Outcome, Player};
use crate::mcts::{run_search, RootStrategy, SearchBudget, UctFinalMove};
use crate::seeds::mix_seed;
use crate::with_game;
use crate::{Error, Result};

/// The default confidence multiplier: a two-sided 95% normal interval.
pub const Z_95: f64 = 1.96;

/// A playing agent. The three search agents differ only in their root
/// policy; `Random` picks uniformly among legal moves (a test opponent).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgentKind {
    Uct,
    Hmcts,
    AnytimeSh,
    Random,
}

impl AgentKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "uct" => Ok(AgentKind::Uct),
            "hmcts" => Ok(AgentKind::Hmcts),
            "anytime-sh" => Ok(AgentKind::AnytimeSh),
            "random" => Ok(AgentKind::Random),
            _ => Err(Error::BadConfig(format!(
                "unknown agent '{name}' (expected uct, hmcts, anytime-sh, or random)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AgentKind::Uct => "uct",
            AgentKind::Hmcts => "hmcts",
            AgentKind::AnytimeSh => "anytime-sh",
            AgentKind::Random => "random",
        }
    }

    /// The root policy behind the agent; `None` for the random mover.
    pub fn strategy(self) -> Option<RootStrategy> {
        match self {
            AgentKind::Uct => Some(RootStrategy::Ucb1Root),
            AgentKind::Hmcts => Some(RootStrategy::ShRoot),
            AgentKind::AnytimeSh => Some(RootStrategy::AnytimeShRoot),
            AgentKind::Random => None,
        }
    }
}

/// One agent pairing on one game at one per-move budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchupSpec {
    pub game: GameKind,
    pub agent_a: AgentKind,
    pub agent_b: AgentKind,
    /// Per-move search budget, shared by both agents.
    pub budget: SearchBudget,
    /// Games to play; must be even so each side gets every seat equally.
    pub n: u64,
    pub base_seed: u64,
    /// UCB1 exploration constant for both agents.
    pub c: f64,
}

impl MatchupSpec {
    fn validate(&self) -> Result<()> {
        if self.n == 0 || !self.n.is_multiple_of(2) {
            return Err(Error::BadConfig(format!(
                "matchup size must be even and positive so seats balance, got {}",
                self.n
            )));
        }
        if let SearchBudget::TimeMs(_) = self.budget {
            if self.agent_a == AgentKind::Hmcts || self.agent_b == AgentKind::Hmcts {
                return Err(Error::NotAnytime);
            }
        }
        Ok(())
    }
}

/// How one game went, with enough detail to replay it.
#[derive(Debug, Clone, PartialEq)]
pub struct GameRecord {
    pub seed: u64,
    /// True when agent A held the first-player seat.
    pub a_first: bool,
    pub move_count: u32,
    pub outcome: Outcome,
    /// Moves in play order, rendered (`b2`, `a1-b2`, ...).
    pub moves: Vec<String>,
}

impl GameRecord {
    /// Agent A's score for this game: 1, ½, or 0.
    pub fn score_a(&self) -> f64 {
        let seat = if self.a_first { Player::P1 } else { Player::P2 };
        self.outcome.utility(seat)
    }
}

/// A finished matchup.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchupResult {
    pub spec: MatchupSpec,
    /// Agent A's total score; draws add 0.5, so this is a half-integer.
    pub wins_a: f64,
    pub games: Vec<GameRecord>,
}

impl MatchupResult {
    pub fn wins_b(&self) -> f64 {
        self.spec.n as f64 - self.wins_a
    }

    pub fn fraction_a(&self) -> f64 {
        self.wins_a / self.spec.n as f64
    }

    /// Agent A's win percentage with its Agresti-Coull interval.
    pub fn interval(&self, z: f64) -> Result<(f64, f64)> {
        agresti_coull(self.wins_a, self.spec.n, z)
    }
}

/// The seed for game `index` of a matchup, derived so any subset of games
/// can be replayed (or run in parallel) independently.
pub fn per_game_seed(base_seed: u64, index: u64) -> u64 {
    mix_seed(base_seed, &[index, index % 2])
}

/// Play every game of `spec` in order. `clock` only matters for wall-clock
/// budgets; iteration budgets never read it.
pub fn run_matchup(spec: &MatchupSpec, clock: &dyn Clock) -> Result<MatchupResult> {
    spec.validate()?;
    let mut games = Vec::with_capacity(spec.n as usize);
    let mut wins_a = 0.0;
    for i in 0..spec.n {
        let record = play_game(
            spec.game,
            spec.agent_a,
            spec.agent_b,
            i % 2 == 0,
            spec.budget,
            spec.c,
            per_game_seed(spec.base_seed, i),
            clock,
        )?;
        wins_a += record.score_a();
        games.push(record);
    }
    Ok(MatchupResult {
        spec: *spec,
        wins_a,
        games,
    })
}

/// Play one game between two agents. Deterministic given `game_seed` (and
/// the clock readings, for wall-clock budgets).
#[allow(clippy::too_many_arguments)]
pub fn play_game(
    game: GameKind,
    agent_a: AgentKind,
    agent_b: AgentKind,
    a_first: bool,
    budget: SearchBudget,
    c: f64,
    game_seed: u64,
    clock: &dyn Clock,
) -> Result<GameRecord> {
    with_game!(game, state => play_from(state, agent_a, agent_b, a_first, budget, c, game_seed, clock))
}

#[allow(clippy::too_many_arguments)]
fn play_from<G: GameState>(
    mut state: G,
    agent_a: AgentKind,
    agent_b: AgentKind,
    a_first: bool,
    budget: SearchBudget,
    c: f64,
    game_seed: u64,
    clock: &dyn Clock,
) -> Result<GameRecord> {
    let mut moves: Vec<String> = Vec::new();
    let mut move_number = 0u64;
    loop {
        if let Some(outcome) = state.outcome() {
            return Ok(GameRecord {
                seed: game_seed,
                a_first,
                move_count: moves.len() as u32,
                outcome,
                moves,
            });
        }
        let a_to_move = (state.current_player() == Player::P1) == a_first;
        let agent = if a_to_move { agent_a } else { agent_b };
        let move_seed = mix_seed(game_seed, &[move_number]);
        let mv = match agent.strategy() {
            None => {
                let legal = state.legal_moves();
                let mut rng = ChaCha8Rng::seed_from_u64(move_seed);
                legal[rng.gen_range(0..legal.len())]
            }
            Some(strategy) => {
                run_search(
                    &state,
                    strategy,
                    budget,
                    c,
                    move_seed,
                    UctFinalMove::default(),
                    clock,
                )?
                .chosen_move
            }
        };
        moves.push(format!("{mv}"));
        state = state.apply(mv)?;
        move_number += 1;
    }
}

/// Agresti-Coull interval for `wins` successes in `n` games, as
/// percentages: `(center, half_width)` where the center is the *adjusted*
/// proportion, not `wins/n`.
pub fn agresti_coull(wins: f64, n: u64, z: f64) -> Result<(f64, f64)> {
    if n == 0 || !(0.0..=n as f64).contains(&wins) {
        return Err(Error::BadConfig(format!(
            "need 0 <= wins <= n with n >= 1, got wins={wins} n={n}"
        )));
    }
    let n_tilde = n as f64 + z * z;
    let p_tilde = (wins + z * z / 2.0) / n_tilde;
    let half = z * libm::sqrt(p_tilde * (1.0 - p_tilde) / n_tilde);
    Ok((100.0 * p_tilde, 100.0 * half))
}

/// Across-games average row for one agent pair: 100 × the unweighted mean
/// of per-game win fractions (every game type weighs the same), with the
/// interval computed from the pooled win and game counts.
pub fn across_games_row(results: &[MatchupResult], z: f64) -> Result<(f64, f64)> {
    if results.is_empty() {
        return Err(Error::BadConfig(String::from(
            "cannot average an empty result set",
        )));
    }
    let mean_fraction: f64 =
        results.iter().map(|r| r.fraction_a()).sum::<f64>() / results.len() as f64;
    let pooled_wins: f64 = results.iter().map(|r| r.wins_a).sum();
    let pooled_n: u64 = results.iter().map(|r| r.spec.n).sum();
    let (_, half) = agresti_coull(pooled_wins, pooled_n, z)?;
    Ok((100.0 * mean_fraction, half))
}
