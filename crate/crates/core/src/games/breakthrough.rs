//! Breakthrough: two ranks of pawns per side race across the board.
//! Straight or diagonal steps forward onto empty squares; captures are
//! diagonal only. Reaching the opponent's home rank — or capturing every
//! opposing pawn — wins. A side with pawns always has a move, so there are
//! no draws and no stalemates.

use alloc::string::String;
use alloc::vec::Vec;

use super::{render_board, Cell, FromTo, GameState, Outcome, Player};
use crate::{Error, Result};

/// P1 (X) starts on the top two ranks and marches down the rendered board;
/// P2 (O) marches up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakthrough {
    n: u8,
    cells: Vec<u8>,
    current: Player,
    winner: Option<Player>,
    pieces: [u8; 2],
}

impl Breakthrough {
    pub fn new(n: u8) -> Self {
        assert!(n >= 4, "breakthrough needs room between the armies");
        let mut cells = alloc::vec![0u8; n as usize * n as usize];
        for c in 0..n as usize {
            cells[c] = 1;
            cells[n as usize + c] = 1;
            cells[(n as usize - 2) * n as usize + c] = 2;
            cells[(n as usize - 1) * n as usize + c] = 2;
        }
        Self {
            n,
            cells,
            current: Player::P1,
            winner: None,
            pieces: [2 * n, 2 * n],
        }
    }

    pub fn size(&self) -> u8 {
        self.n
    }

    fn at(&self, r: u8, c: u8) -> u8 {
        self.cells[r as usize * self.n as usize + c as usize]
    }

    fn mark(player: Player) -> u8 {
        match player {
            Player::P1 => 1,
            Player::P2 => 2,
        }
    }

    /// Forward direction: P1 moves toward larger rows, P2 toward smaller.
    fn dir(player: Player) -> i16 {
        match player {
            Player::P1 => 1,
            Player::P2 => -1,
        }
    }

    /// Home rank of the *opponent*, i.e. the winning rank for `player`.
    fn goal_row(&self, player: Player) -> u8 {
        match player {
            Player::P1 => self.n - 1,
            Player::P2 => 0,
        }
    }
}

impl GameState for Breakthrough {
    type Move = FromTo;

    fn current_player(&self) -> Player {
        self.current
    }

    fn legal_moves(&self) -> Vec<FromTo> {
        if self.winner.is_some() {
            return Vec::new();
        }
        let n = self.n;
        let me = Self::mark(self.current);
        let dr = Self::dir(self.current);
        let mut moves = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if self.at(r, c) != me {
                    continue;
                }
                let nr = r as i16 + dr;
                if nr < 0 || nr >= n as i16 {
                    continue; // already on the goal rank: game was over
                }
                let nr = nr as u8;
                for dc in [-1i16, 0, 1] {
                    let nc = c as i16 + dc;
                    if nc < 0 || nc >= n as i16 {
                        continue;
                    }
                    let nc = nc as u8;
                    let target = self.at(nr, nc);
                    // straight: empty only; diagonal: empty or capture
                    let ok = if dc == 0 { target == 0 } else { target != me };
                    if ok {
                        moves.push(FromTo {
                            from: Cell::new(r, c),
                            to: Cell::new(nr, nc),
                        });
                    }
                }
            }
        }
        moves
    }

    fn apply(&self, m: FromTo) -> Result<Self> {
        if !self.legal_moves().contains(&m) {
            return Err(Error::IllegalMove(alloc::format!("{m}")));
        }
        let n = self.n as usize;
        let mut next = self.clone();
        let from_idx = m.from.row as usize * n + m.from.col as usize;
        let to_idx = m.to.row as usize * n + m.to.col as usize;
        if next.cells[to_idx] != 0 {
            // capture
            let victim = match self.current {
                Player::P1 => 1,
                Player::P2 => 0,
            };
            next.pieces[victim] -= 1;
        }
        next.cells[to_idx] = next.cells[from_idx];
        next.cells[from_idx] = 0;
        let wiped_out = next.pieces[match self.current {
            Player::P1 => 1,
            Player::P2 => 0,
        }] == 0;
        if m.to.row == self.goal_row(self.current) || wiped_out {
            next.winner = Some(self.current);
        }
        next.current = self.current.other();
        Ok(next)
    }

    fn outcome(&self) -> Option<Outcome> {
        self.winner.map(Outcome::win_for)
    }

    fn render(&self) -> String {
        render_board(self.n, false, |r, c| match self.at(r, c) {
            1 => Player::P1.glyph(),
            2 => Player::P2.glyph(),
            _ => '.',
        })
    }
}
