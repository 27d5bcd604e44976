//! 3x3 Tic-Tac-Toe: the solvable oracle game.

use alloc::string::String;
use alloc::vec::Vec;

use super::{render_board, Cell, GameState, Outcome, Player};
use crate::{Error, Result};

const LINES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
    [0, 3, 6],
    [1, 4, 7],
    [2, 5, 8],
    [0, 4, 8],
    [2, 4, 6],
];

/// Three in a row wins; a full board draws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TicTacToe {
    cells: [u8; 9],
    current: Player,
    winner: Option<Player>,
    filled: u8,
}

impl TicTacToe {
    #[allow(clippy::new_without_default)]
    pub fn new() -> Self {
        Self {
            cells: [0; 9],
            current: Player::P1,
            winner: None,
            filled: 0,
        }
    }

    fn mark(player: Player) -> u8 {
        match player {
            Player::P1 => 1,
            Player::P2 => 2,
        }
    }
}

impl GameState for TicTacToe {
    type Move = Cell;

    fn current_player(&self) -> Player {
        self.current
    }

    fn legal_moves(&self) -> Vec<Cell> {
        if self.outcome().is_some() {
            return Vec::new();
        }
        (0..9)
            .filter(|&i| self.cells[i] == 0)
            .map(|i| Cell::new((i / 3) as u8, (i % 3) as u8))
            .collect()
    }

    fn apply(&self, m: Cell) -> Result<Self> {
        let idx = m.row as usize * 3 + m.col as usize;
        if m.row >= 3 || m.col >= 3 || self.cells[idx] != 0 || self.outcome().is_some() {
            return Err(Error::IllegalMove(alloc::format!("{m}")));
        }
        let mut next = self.clone();
        next.cells[idx] = Self::mark(self.current);
        next.filled += 1;
        if LINES
            .iter()
            .any(|l| l.contains(&idx) && l.iter().all(|&i| next.cells[i] == next.cells[idx]))
        {
            next.winner = Some(self.current);
        }
        next.current = self.current.other();
        Ok(next)
    }

    fn outcome(&self) -> Option<Outcome> {
        match self.winner {
            Some(w) => Some(Outcome::win_for(w)),
            None if self.filled == 9 => Some(Outcome::Draw),
            None => None,
        }
    }

    fn render(&self) -> String {
        render_board(3, false, |r, c| {
            match self.cells[r as usize * 3 + c as usize] {
                1 => Player::P1.glyph(),
                2 => Player::P2.glyph(),
                _ => '.',
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{solve_minimax, GameValue};

    fn apply_all(moves: &[(u8, u8)]) -> TicTacToe {
        let mut s = TicTacToe::new();
        for &(r, c) in moves {
            s = s.apply(Cell::new(r, c)).unwrap();
        }
        s
    }

    #[test]
    fn initial_position_has_nine_moves() {
        let s = TicTacToe::new();
        assert_eq!(s.legal_moves().len(), 9);
        assert_eq!(s.current_player(), Player::P1);
        assert_eq!(s.outcome(), None);
    }

    #[test]
    fn center_opening_leaves_eight_replies() {
        let s = TicTacToe::new();
        let after = s.apply(Cell::new(1, 1)).unwrap();
        assert_eq!(after.legal_moves().len(), 8);
        assert_eq!(after.current_player(), Player::P2);
        // immutability: the original still has nine
        assert_eq!(s.legal_moves().len(), 9);
    }

    #[test]
    fn rows_columns_and_diagonals_win() {
        // top row for X
        let s = apply_all(&[(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)]);
        assert_eq!(s.outcome(), Some(Outcome::P1Win));
        assert!(s.legal_moves().is_empty());
        // anti-diagonal for O
        let s = apply_all(&[(0, 0), (0, 2), (0, 1), (1, 1), (2, 1), (2, 0)]);
        assert_eq!(s.outcome(), Some(Outcome::P2Win));
    }

    #[test]
    fn full_board_without_a_line_draws() {
        let s = apply_all(&[
            (0, 0),
            (0, 1),
            (0, 2),
            (1, 1),
            (1, 0),
            (1, 2),
            (2, 1),
            (2, 0),
            (2, 2),
        ]);
        assert_eq!(s.outcome(), Some(Outcome::Draw));
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let s = TicTacToe::new();
        let s = s.apply(Cell::new(1, 1)).unwrap();
        assert!(s.apply(Cell::new(1, 1)).is_err());
        assert!(s.apply(Cell::new(3, 0)).is_err());
    }

    #[test]
    fn solver_knows_the_classics() {
        assert_eq!(
            solve_minimax(&TicTacToe::new(), 10_000_000).unwrap(),
            GameValue::Draw
        );
        // X has two in a row and moves: a win
        let s = apply_all(&[(0, 0), (1, 0), (0, 1)]);
        let s = s.apply(Cell::new(1, 1)).unwrap(); // O blocks elsewhere
        assert_eq!(s.current_player(), Player::P1);
        assert_eq!(solve_minimax(&s, 1_000_000).unwrap(), GameValue::Win);
        // tiny node limits are reported
        assert!(matches!(
            solve_minimax(&TicTacToe::new(), 10),
            Err(Error::NodeLimitExceeded { limit: 10 })
        ));
    }

    #[test]
    fn render_shows_marks() {
        let s = apply_all(&[(1, 1), (0, 0)]);
        let text = s.render();
        assert!(text.contains('X'));
        assert!(text.contains('O'));
        assert!(text.starts_with("   a b c\n"), "{text}");
    }
}
