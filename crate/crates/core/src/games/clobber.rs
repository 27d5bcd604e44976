//! Clobber on a 5x5 default board. Pieces start in a checkerboard pattern;
//! a move jumps a piece onto an orthogonally adjacent enemy piece, removing
//! it. The player who cannot move loses, so there are no draws.

use alloc::string::String;
use alloc::vec::Vec;

use super::{render_board, Cell, FromTo, GameState, Outcome, Player};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clobber {
    n: u8,
    cells: Vec<u8>,
    current: Player,
}

const ORTHO: [(i16, i16); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];

impl Clobber {
    pub fn new(n: u8) -> Self {
        assert!(n >= 2, "clobber needs adjacent pieces");
        let mut cells = alloc::vec![0; n as usize * n as usize];
        for r in 0..n as usize {
            for c in 0..n as usize {
                // (0, 0) belongs to the first player; parity alternates.
                cells[r * n as usize + c] = if (r + c) % 2 == 0 { 1 } else { 2 };
            }
        }
        Self {
            n,
            cells,
            current: Player::P1,
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

    /// Capture moves available to `player`, in (from, to) scan order.
    fn moves_for(&self, player: Player) -> Vec<FromTo> {
        let me = Self::mark(player);
        let them = Self::mark(player.other());
        let mut moves = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                if self.at(r, c) != me {
                    continue;
                }
                for (dr, dc) in ORTHO {
                    let (rr, cc) = (r as i16 + dr, c as i16 + dc);
                    if rr >= 0
                        && cc >= 0
                        && rr < self.n as i16
                        && cc < self.n as i16
                        && self.at(rr as u8, cc as u8) == them
                    {
                        moves.push(FromTo::new(Cell::new(r, c), Cell::new(rr as u8, cc as u8)));
                    }
                }
            }
        }
        moves
    }

    #[cfg(test)]
    fn piece_count(&self) -> usize {
        self.cells.iter().filter(|&&m| m != 0).count()
    }
}

impl GameState for Clobber {
    type Move = FromTo;

    fn current_player(&self) -> Player {
        self.current
    }

    fn legal_moves(&self) -> Vec<FromTo> {
        self.moves_for(self.current)
    }

    fn apply(&self, m: FromTo) -> Result<Self> {
        if !self.legal_moves().contains(&m) {
            return Err(Error::IllegalMove(alloc::format!("{m}")));
        }
        let n = self.n as usize;
        let mut next = self.clone();
        next.cells[m.from.row as usize * n + m.from.col as usize] = 0;
        next.cells[m.to.row as usize * n + m.to.col as usize] = Self::mark(self.current);
        next.current = self.current.other();
        Ok(next)
    }

    fn outcome(&self) -> Option<Outcome> {
        if self.moves_for(self.current).is_empty() {
            Some(Outcome::win_for(self.current.other()))
        } else {
            None
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
