//! Statistical and structural checks on uniformly random playouts across
//! all five built-in games.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootbandit_core::games::{random_playout, GameKind, GameState, Outcome};
use rootbandit_core::with_game;

/// Play one uniformly random game, returning the outcome and move count.
fn run_one<G: GameState, R: Rng>(state: &G, rng: &mut R) -> (Outcome, u32) {
    let mut s = state.clone();
    let mut moves = 0u32;
    loop {
        if let Some(o) = s.outcome() {
            return (o, moves);
        }
        let legal = s.legal_moves();
        assert!(!legal.is_empty(), "non-terminal position must have moves");
        let m = legal[rng.gen_range(0..legal.len())];
        s = s.apply(m).unwrap();
        moves += 1;
    }
}

#[test]
fn tictactoe_playouts_match_the_exact_distribution() {
    // Exhaustive enumeration of uniformly random play gives
    // P(first player wins) = 737/1260, P(draw) = 8/63.
    let n = 100_000u32;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut p1, mut draws) = (0u32, 0u32);
    with_game!(GameKind::TicTacToe, state => {
        for _ in 0..n {
            match run_one(&state, &mut rng).0 {
                Outcome::P1Win => p1 += 1,
                Outcome::Draw => draws += 1,
                Outcome::P2Win => {}
            }
        }
    });
    let p1_frac = f64::from(p1) / f64::from(n);
    let draw_frac = f64::from(draws) / f64::from(n);
    assert!((p1_frac - 737.0 / 1260.0).abs() < 0.01, "P1 {p1_frac}");
    assert!((draw_frac - 8.0 / 63.0).abs() < 0.01, "draw {draw_frac}");
}

#[test]
fn playouts_stay_within_hard_move_bounds() {
    // (game, max moves, can it draw?)
    let cases = [
        (GameKind::TicTacToe, 9, true),
        (GameKind::Hex(5), 25, false),
        (GameKind::Gomoku(9), 81, true),
        (GameKind::Clobber(5), 24, false),
        // Every move advances one pawn one rank: 2 sides x 12 pawns x 5.
        (GameKind::Breakthrough(6), 120, false),
    ];
    for (kind, bound, draws_possible) in cases {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        with_game!(kind, state => {
            for _ in 0..2000 {
                let (outcome, moves) = run_one(&state, &mut rng);
                assert!(moves <= bound, "{} ran {moves} moves", kind.id());
                if !draws_possible {
                    assert_ne!(outcome, Outcome::Draw, "{}", kind.id());
                }
            }
        });
    }
}

#[test]
fn playout_helper_is_deterministic_per_seed() {
    for kind in GameKind::all_default() {
        with_game!(kind, state => {
            let mut a = ChaCha8Rng::seed_from_u64(99);
            let mut b = ChaCha8Rng::seed_from_u64(99);
            for _ in 0..20 {
                assert_eq!(
                    random_playout(&state, &mut a),
                    random_playout(&state, &mut b)
                );
            }
        });
    }
}
