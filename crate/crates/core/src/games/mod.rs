//! Two-player, zero-sum, perfect-information games: the shared interface,
//! five small built-in games, uniformly random playouts, and an exact
//! negamax solver for use as a test oracle.

mod breakthrough;
mod clobber;
mod gomoku;
mod hex;
mod tictactoe;

pub use breakthrough::Breakthrough;
pub use clobber::Clobber;
pub use gomoku::Gomoku;
pub use hex::Hex;
pub use tictactoe::TicTacToe;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::{Error, Result};

/// The two players. P1 always moves first from the initial position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    /// Board glyph: P1 plays X, P2 plays O, in every game.
    pub fn glyph(self) -> char {
        match self {
            Player::P1 => 'X',
            Player::P2 => 'O',
        }
    }
}

/// Result of a finished game. Utilities live on the [0, 1] scale with draws
/// worth half a win to each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    P1Win,
    P2Win,
    Draw,
}

impl Outcome {
    pub fn win_for(player: Player) -> Outcome {
        match player {
            Player::P1 => Outcome::P1Win,
            Player::P2 => Outcome::P2Win,
        }
    }

    pub fn winner(self) -> Option<Player> {
        match self {
            Outcome::P1Win => Some(Player::P1),
            Outcome::P2Win => Some(Player::P2),
            Outcome::Draw => None,
        }
    }

    /// 1.0 for a win, 0.5 for a draw, 0.0 for a loss.
    pub fn utility(self, player: Player) -> f64 {
        match self.winner() {
            Some(w) if w == player => 1.0,
            Some(_) => 0.0,
            None => 0.5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Outcome::P1Win => "P1_WIN",
            Outcome::P2Win => "P2_WIN",
            Outcome::Draw => "DRAW",
        }
    }
}

/// One board coordinate. Row 0 is the top row as rendered; column 0 is the
/// leftmost. Displays as column letter plus 1-based row: `a1` is top-left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: u8,
    pub col: u8,
}

impl Cell {
    pub fn new(row: u8, col: u8) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", (b'a' + self.col) as char, self.row + 1)
    }
}

/// A piece move, displayed as `from-to` (e.g. `a2-b3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FromTo {
    pub from: Cell,
    pub to: Cell,
}

impl FromTo {
    pub fn new(from: Cell, to: Cell) -> Self {
        Self { from, to }
    }
}

impl fmt::Display for FromTo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.from, self.to)
    }
}

/// An immutable game position.
///
/// A terminal position (one with `outcome() != None`) has no legal moves,
/// and a non-terminal position has at least one — games where a player can
/// be stalemated (Clobber) define that as a loss for the player to move.
pub trait GameState: Clone {
    type Move: Copy + Eq + Ord + fmt::Debug + fmt::Display;

    fn current_player(&self) -> Player;

    /// Duplicate-free, deterministically ordered; empty iff terminal.
    fn legal_moves(&self) -> Vec<Self::Move>;

    /// The position after `m`, leaving `self` untouched. Errors on moves
    /// that are not legal here.
    fn apply(&self, m: Self::Move) -> Result<Self>;

    /// `Some` once the game is decided, `None` while in play.
    fn outcome(&self) -> Option<Outcome>;

    /// ASCII board, one character per cell, with coordinate labels.
    fn render(&self) -> String;
}

/// Play uniformly random legal moves until the game ends.
pub fn random_playout<G: GameState, R: Rng>(state: &G, rng: &mut R) -> Outcome {
    let mut s = state.clone();
    loop {
        if let Some(o) = s.outcome() {
            return o;
        }
        let moves = s.legal_moves();
        debug_assert!(!moves.is_empty(), "non-terminal position with no moves");
        let m = moves[rng.gen_range(0..moves.len())];
        s = s.apply(m).expect("playout move is legal by construction");
    }
}

/// Exact game value from the perspective of the player to move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameValue {
    Win,
    Draw,
    Loss,
}

/// Solve a position exactly by negamax with alpha-beta pruning, visiting at
/// most `node_limit` nodes. Only tractable for tiny subtrees; used as a
/// test oracle.
pub fn solve_minimax<G: GameState>(state: &G, node_limit: u64) -> Result<GameValue> {
    let mut nodes = 0u64;
    let v = negamax(state, -1, 1, &mut nodes, node_limit)?;
    Ok(match v {
        1 => GameValue::Win,
        0 => GameValue::Draw,
        _ => GameValue::Loss,
    })
}

fn negamax<G: GameState>(
    s: &G,
    mut alpha: i8,
    beta: i8,
    nodes: &mut u64,
    limit: u64,
) -> Result<i8> {
    *nodes += 1;
    if *nodes > limit {
        return Err(Error::NodeLimitExceeded { limit });
    }
    if let Some(o) = s.outcome() {
        let me = s.current_player();
        return Ok(match o.winner() {
            Some(w) if w == me => 1,
            Some(_) => -1,
            None => 0,
        });
    }
    let mut best = -1;
    for m in s.legal_moves() {
        let child = s.apply(m)?;
        let v = -negamax(&child, -beta, -alpha, nodes, limit)?;
        if v > best {
            best = v;
        }
        if best > alpha {
            alpha = best;
        }
        if alpha >= beta {
            break;
        }
    }
    Ok(best)
}

/// A game id plus its board size: `tictactoe`, `hex-5`, `breakthrough-6`,
/// `gomoku-9`, `clobber-5`. The size suffix may be changed (`hex-7`);
/// `tictactoe` takes none.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameKind {
    TicTacToe,
    Hex(u8),
    Breakthrough(u8),
    Gomoku(u8),
    Clobber(u8),
}

impl GameKind {
    /// The five built-in games at their default sizes.
    pub fn all_default() -> [GameKind; 5] {
        [
            GameKind::TicTacToe,
            GameKind::Hex(5),
            GameKind::Breakthrough(6),
            GameKind::Gomoku(9),
            GameKind::Clobber(5),
        ]
    }

    pub fn parse(id: &str) -> Result<GameKind> {
        let (name, size) = match id.rsplit_once('-') {
            Some((name, suffix)) => match suffix.parse::<u8>() {
                Ok(n) => (name, Some(n)),
                Err(_) => (id, None),
            },
            None => (id, None),
        };
        let bad = || Error::BadGameId(String::from(id));
        match (name, size) {
            ("tictactoe", None) => Ok(GameKind::TicTacToe),
            ("tictactoe", Some(_)) => Err(Error::BadConfig(String::from(
                "tictactoe has a fixed 3x3 board",
            ))),
            ("hex", n) => {
                let n = n.unwrap_or(5);
                if n % 2 == 1 && (3..=13).contains(&n) {
                    Ok(GameKind::Hex(n))
                } else {
                    Err(Error::BadConfig(alloc::format!(
                        "hex size must be odd and between 3 and 13, got {n}"
                    )))
                }
            }
            ("breakthrough", n) => {
                let n = n.unwrap_or(6);
                if (4..=12).contains(&n) {
                    Ok(GameKind::Breakthrough(n))
                } else {
                    Err(Error::BadConfig(alloc::format!(
                        "breakthrough size must be between 4 and 12, got {n}"
                    )))
                }
            }
            ("gomoku", n) => {
                let n = n.unwrap_or(9);
                if (5..=19).contains(&n) {
                    Ok(GameKind::Gomoku(n))
                } else {
                    Err(Error::BadConfig(alloc::format!(
                        "gomoku size must be between 5 and 19, got {n}"
                    )))
                }
            }
            ("clobber", n) => {
                let n = n.unwrap_or(5);
                if (2..=10).contains(&n) {
                    Ok(GameKind::Clobber(n))
                } else {
                    Err(Error::BadConfig(alloc::format!(
                        "clobber size must be between 2 and 10, got {n}"
                    )))
                }
            }
            _ => Err(bad()),
        }
    }

    /// Canonical id string, inverse of [`GameKind::parse`].
    pub fn id(&self) -> String {
        match self {
            GameKind::TicTacToe => String::from("tictactoe"),
            GameKind::Hex(n) => alloc::format!("hex-{n}"),
            GameKind::Breakthrough(n) => alloc::format!("breakthrough-{n}"),
            GameKind::Gomoku(n) => alloc::format!("gomoku-{n}"),
            GameKind::Clobber(n) => alloc::format!("clobber-{n}"),
        }
    }
}

/// Run `$body` with `$state` bound to the initial position of `$kind`.
/// Each arm is monomorphized for its concrete game type.
#[macro_export]
macro_rules! with_game {
    ($kind:expr, $state:ident => $body:expr) => {
        match $kind {
            $crate::games::GameKind::TicTacToe => {
                let $state = $crate::games::TicTacToe::new();
                $body
            }
            $crate::games::GameKind::Hex(n) => {
                let $state = $crate::games::Hex::new(n);
                $body
            }
            $crate::games::GameKind::Breakthrough(n) => {
                let $state = $crate::games::Breakthrough::new(n);
                $body
            }
            $crate::games::GameKind::Gomoku(n) => {
                let $state = $crate::games::Gomoku::new(n);
                $body
            }
            $crate::games::GameKind::Clobber(n) => {
                let $state = $crate::games::Clobber::new(n);
                $body
            }
        }
    };
}

/// Column-letter header plus one labelled row per rank. `indent` shifts
/// each row one extra space (the hex rhombus).
pub(crate) fn render_board(n: u8, indent: bool, cell: impl Fn(u8, u8) -> char) -> String {
    use core::fmt::Write as _;
    let mut out = String::new();
    out.push_str("  ");
    for c in 0..n {
        out.push(' ');
        out.push((b'a' + c) as char);
    }
    out.push('\n');
    for r in 0..n {
        if indent {
            for _ in 0..r {
                out.push(' ');
            }
        }
        let _ = write!(out, "{:>2}", r + 1);
        for c in 0..n {
            out.push(' ');
            out.push(cell(r, c));
        }
        out.push('\n');
    }
    out
}
