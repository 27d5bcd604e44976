//! Gomoku (five in a row) on a 9x9 default board. Five *or more* in a row
//! wins — overlines count. A full board with no line is a draw.

use alloc::string::String;
use alloc::vec::Vec;

use super::{render_board, Cell, GameState, Outcome, Player};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gomoku {
    n: u8,
    cells: Vec<u8>,
    current: Player,
    winner: Option<Player>,
    filled: u16,
}

/// The four line directions; the reverse rays are scanned too.
const DIRS: [(i16, i16); 4] = [(0, 1), (1, 0), (1, 1), (1, -1)];

impl Gomoku {
    pub fn new(n: u8) -> Self {
        assert!(n >= 5, "five in a row needs room for five");
        Self {
            n,
            cells: alloc::vec![0; n as usize * n as usize],
            current: Player::P1,
            winner: None,
            filled: 0,
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

    /// Longest run through (r, c) in any direction, for the mark there.
    fn run_through(&self, r: u8, c: u8) -> u16 {
        let mark = self.at(r, c);
        debug_assert_ne!(mark, 0);
        let mut best = 0;
        for (dr, dc) in DIRS {
            let mut len = 1u16;
            for sign in [1i16, -1] {
                let (mut rr, mut cc) = (r as i16 + sign * dr, c as i16 + sign * dc);
                while rr >= 0
                    && cc >= 0
                    && rr < self.n as i16
                    && cc < self.n as i16
                    && self.at(rr as u8, cc as u8) == mark
                {
                    len += 1;
                    rr += sign * dr;
                    cc += sign * dc;
                }
            }
            best = best.max(len);
        }
        best
    }
}

impl GameState for Gomoku {
    type Move = Cell;

    fn current_player(&self) -> Player {
        self.current
    }

    fn legal_moves(&self) -> Vec<Cell> {
        if self.outcome().is_some() {
            return Vec::new();
        }
        let n = self.n as usize;
        (0..n * n)
            .filter(|&i| self.cells[i] == 0)
            .map(|i| Cell::new((i / n) as u8, (i % n) as u8))
            .collect()
    }

    fn apply(&self, m: Cell) -> Result<Self> {
        let n = self.n;
        if m.row >= n || m.col >= n || self.at(m.row, m.col) != 0 || self.outcome().is_some() {
            return Err(Error::IllegalMove(alloc::format!("{m}")));
        }
        let mut next = self.clone();
        next.cells[m.row as usize * n as usize + m.col as usize] = Self::mark(self.current);
        next.filled += 1;
        if next.run_through(m.row, m.col) >= 5 {
            next.winner = Some(self.current);
        }
        next.current = self.current.other();
        Ok(next)
    }

    fn outcome(&self) -> Option<Outcome> {
        match self.winner {
            Some(w) => Some(Outcome::win_for(w)),
            None if self.filled == self.n as u16 * self.n as u16 => Some(Outcome::Draw),
            None => None,
        }
    }

    fn render(&self) -> String {
        render_board(self.n, false, |r, c| match self.at(r, c) {
            1 => Player::P1.glyph(),
            2 => Player::P2.glyph(),
            _ => '.',
        })
    }
}
