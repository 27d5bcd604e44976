//! Hex on an odd-sized rhombus. P1 (X) connects top to bottom, P2 (O)
//! connects left to right. No draws are possible, and there is no swap
//! rule — seat swapping in the tournament harness balances the first-move
//! advantage instead.

use alloc::string::String;
use alloc::vec::Vec;

use super::{render_board, Cell, GameState, Outcome, Player};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hex {
    n: u8,
    cells: Vec<u8>,
    current: Player,
    winner: Option<Player>,
}

/// The six hex neighbours as (dr, dc) offsets.
const NEIGHBORS: [(i16, i16); 6] = [(-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0)];

impl Hex {
    pub fn new(n: u8) -> Self {
        assert!(n >= 1, "hex board must have at least one cell");
        Self {
            n,
            cells: alloc::vec![0; n as usize * n as usize],
            current: Player::P1,
            winner: None,
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

    /// Does `player` connect their two edges? Flood fill over their stones.
    fn connects(&self, player: Player) -> bool {
        let n = self.n;
        let mark = Self::mark(player);
        let mut seen = alloc::vec![false; self.cells.len()];
        let mut stack: Vec<(u8, u8)> = Vec::new();
        for i in 0..n {
            let (r, c) = match player {
                Player::P1 => (0, i),
                Player::P2 => (i, 0),
            };
            if self.at(r, c) == mark {
                seen[r as usize * n as usize + c as usize] = true;
                stack.push((r, c));
            }
        }
        while let Some((r, c)) = stack.pop() {
            let reached_far_edge = match player {
                Player::P1 => r == n - 1,
                Player::P2 => c == n - 1,
            };
            if reached_far_edge {
                return true;
            }
            for (dr, dc) in NEIGHBORS {
                let (nr, nc) = (r as i16 + dr, c as i16 + dc);
                if nr < 0 || nc < 0 || nr >= n as i16 || nc >= n as i16 {
                    continue;
                }
                let (nr, nc) = (nr as u8, nc as u8);
                let idx = nr as usize * n as usize + nc as usize;
                if !seen[idx] && self.at(nr, nc) == mark {
                    seen[idx] = true;
                    stack.push((nr, nc));
                }
            }
        }
        false
    }
}

impl GameState for Hex {
    type Move = Cell;

    fn current_player(&self) -> Player {
        self.current
    }

    fn legal_moves(&self) -> Vec<Cell> {
        if self.winner.is_some() {
            return Vec::new();
        }
        let n = self.n;
        (0..n as usize * n as usize)
            .filter(|&i| self.cells[i] == 0)
            .map(|i| Cell::new((i / n as usize) as u8, (i % n as usize) as u8))
            .collect()
    }

    fn apply(&self, m: Cell) -> Result<Self> {
        let n = self.n;
        if m.row >= n || m.col >= n || self.at(m.row, m.col) != 0 || self.winner.is_some() {
            return Err(Error::IllegalMove(alloc::format!("{m}")));
        }
        let mut next = self.clone();
        next.cells[m.row as usize * n as usize + m.col as usize] = Self::mark(self.current);
        if next.connects(self.current) {
            next.winner = Some(self.current);
        }
        next.current = self.current.other();
        Ok(next)
    }

    fn outcome(&self) -> Option<Outcome> {
        // A full board always contains a winning chain for someone, so a
        // draw can never arise.
        self.winner.map(Outcome::win_for)
    }

    fn render(&self) -> String {
        render_board(self.n, true, |r, c| match self.at(r, c) {
            1 => Player::P1.glyph(),
            2 => Player::P2.glyph(),
            _ => '.',
        })
    }
}
