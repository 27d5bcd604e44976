//! Monte-Carlo tree search with a pluggable root policy.
//!
//! Below the root every node selects children by UCB1, expands one
//! uniformly random untried move per iteration, finishes with a random
//! playout, and backpropagates the result. At the root, arm selection is
//! delegated to a [`Policy`]: plain UCB1, fixed-budget halving (which needs
//! the whole iteration budget up front), or anytime halving. "Pulling" a
//! root arm means running one full iteration through that root child, and
//! the reward fed back is the playout utility from the root player's
//! perspective.
//!
//! Rewards are stored negamax-style: each node accumulates the utility for
//! the player who moved *into* it, so selection maximizes uniformly at
//! every level. The root holds the root player's utility, purely for
//! reporting. Every search builds a fresh tree; nothing is reused between
//! moves.

use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bandit::{best_arm, ucb1_select, ArmStats, Policy};
use crate::clock::{Clock, FrozenClock};
use crate::games::{random_playout, GameState, Outcome, Player};
use crate::{Error, Result};

/// Which bandit picks root arms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootStrategy {
    /// UCB1 at the root, like everywhere else in the tree.
    Ucb1Root,
    /// Fixed-budget sequential halving over the root moves. Only valid
    /// with an iteration budget: the schedule needs the total up front.
    ShRoot,
    /// Anytime sequential halving over the root moves.
    AnytimeShRoot,
}

impl RootStrategy {
    pub fn name(self) -> &'static str {
        match self {
            RootStrategy::Ucb1Root => "ucb1-root",
            RootStrategy::ShRoot => "sh-root",
            RootStrategy::AnytimeShRoot => "anytime-sh-root",
        }
    }
}

/// Stop condition for one search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SearchBudget {
    Iterations(u64),
    /// Wall-clock milliseconds, read off the clock passed to
    /// [`run_search`]. Checked between iterations, so a search may overrun
    /// by at most one iteration's worth of work.
    TimeMs(f64),
}

/// How the plain UCB1 root picks the move to play once the search stops.
/// (The halving roots have fixed rules: the fixed-budget schedule plays its
/// sole survivor, the anytime schedule plays the highest-mean arm.)
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UctFinalMove {
    /// Most-visited child, ties by higher mean then move order.
    #[default]
    RobustChild,
    /// Highest mean reward, ties by more visits then move order.
    HighestMean,
}

/// Per-root-move statistics, reported in legal-move order.
#[derive(Debug, Clone, PartialEq)]
pub struct ChildStat<M> {
    pub mv: M,
    pub visits: u64,
    /// Mean playout utility from the root player's perspective, 0.0 if the
    /// move was never tried.
    pub mean: f64,
}

/// What one search concluded.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<M> {
    pub chosen_move: M,
    pub iterations_used: u64,
    /// One entry per root legal move, in legal-move order.
    pub children: Vec<ChildStat<M>>,
    /// Tree nodes allocated, root included.
    pub tree_nodes: u64,
}

struct Node<G: GameState> {
    state: G,
    /// The player whose move created this node; the root stores the root
    /// player, so its reward sum tracks the root player's utility.
    entered_by: Player,
    visits: u64,
    reward_sum: f64,
    untried: Vec<G::Move>,
    children: Vec<(G::Move, usize)>,
    outcome: Option<Outcome>,
}

const ROOT: usize = 0;

/// Search `root_state` and pick a move.
///
/// `c` is the UCB1 exploration constant used below the root (and at it,
/// under [`RootStrategy::Ucb1Root`]). Searches are deterministic given
/// `seed` and the clock readings.
pub fn run_search<G: GameState>(
    root_state: &G,
    strategy: RootStrategy,
    budget: SearchBudget,
    c: f64,
    seed: u64,
    uct_final: UctFinalMove,
    clock: &dyn Clock,
) -> Result<SearchResult<G::Move>> {
    if root_state.outcome().is_some() {
        return Err(Error::TerminalRoot);
    }
    let arms = root_state.legal_moves();
    let k = arms.len();
    debug_assert!(k >= 1, "non-terminal positions have moves");
    let root_player = root_state.current_player();

    let mut policy = match (strategy, budget) {
        (RootStrategy::ShRoot, SearchBudget::TimeMs(_)) => return Err(Error::NotAnytime),
        // A single legal move leaves nothing to halve; any budget works.
        _ if k == 1 => Policy::ucb1(1, c)?,
        (RootStrategy::Ucb1Root, _) => Policy::ucb1(k, c)?,
        (RootStrategy::ShRoot, SearchBudget::Iterations(t)) => Policy::sh(k, t)?,
        (RootStrategy::AnytimeShRoot, SearchBudget::Iterations(t)) => {
            if t < k as u64 {
                return Err(Error::BudgetTooSmall {
                    minimum: k as u64,
                    got: t,
                });
            }
            Policy::anytime_sh(k)?
        }
        (RootStrategy::AnytimeShRoot, SearchBudget::TimeMs(_)) => Policy::anytime_sh(k)?,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<Node<G>> = Vec::new();
    nodes.push(Node {
        state: root_state.clone(),
        entered_by: root_player,
        visits: 0,
        reward_sum: 0.0,
        untried: Vec::new(), // root expansion is driven by the policy
        children: Vec::new(),
        outcome: None,
    });
    let mut arm_child: Vec<Option<usize>> = alloc::vec![None; k];

    let start_ms = clock.now_ms();
    let mut iterations = 0u64;
    loop {
        match budget {
            SearchBudget::Iterations(t) if iterations >= t => break,
            SearchBudget::TimeMs(ms) if clock.now_ms() - start_ms >= ms => break,
            _ => {}
        }
        let arm = policy.select()?;
        let outcome = simulate(&mut nodes, &mut arm_child, &arms, arm, c, &mut rng)?;
        policy.update(arm, outcome.utility(root_player))?;
        iterations += 1;
    }

    validate_tree(&nodes, iterations);
    for (arm, slot) in arm_child.iter().enumerate() {
        let pulls = policy.stats()[arm].pulls();
        match slot {
            Some(id) => debug_assert_eq!(nodes[*id].visits, pulls),
            None => debug_assert_eq!(pulls, 0),
        }
    }

    let chosen_arm = match strategy {
        RootStrategy::Ucb1Root => uct_choice(policy.stats(), uct_final),
        RootStrategy::ShRoot | RootStrategy::AnytimeShRoot => match policy.recommend() {
            Ok(arm) => arm,
            // Halted by the clock before every arm got a pull: fall back
            // to the best arm pulled so far — the anytime contract is to
            // always hand back a legal move.
            Err(Error::UnpulledArm { .. }) => best_arm(0..k, policy.stats()),
            Err(e) => return Err(e),
        },
    };

    let children = arms
        .iter()
        .enumerate()
        .map(|(i, &mv)| {
            let s = &policy.stats()[i];
            ChildStat {
                mv,
                visits: s.pulls(),
                mean: if s.pulls() > 0 { s.mean() } else { 0.0 },
            }
        })
        .collect();
    Ok(SearchResult {
        chosen_move: arms[chosen_arm],
        iterations_used: iterations,
        children,
        tree_nodes: nodes.len() as u64,
    })
}

/// [`run_search`] with an iteration budget and the default final-move rule.
pub fn run_search_iters<G: GameState>(
    root_state: &G,
    strategy: RootStrategy,
    iterations: u64,
    c: f64,
    seed: u64,
) -> Result<SearchResult<G::Move>> {
    run_search(
        root_state,
        strategy,
        SearchBudget::Iterations(iterations),
        c,
        seed,
        UctFinalMove::default(),
        &FrozenClock,
    )
}

/// One iteration through root arm `arm`: descend below the matching root
/// child by UCB1 until a node with untried moves (expand one) or a terminal
/// node, play out, and backpropagate. Returns the playout outcome.
fn simulate<G: GameState, R: Rng>(
    nodes: &mut Vec<Node<G>>,
    arm_child: &mut [Option<usize>],
    arms: &[G::Move],
    arm: usize,
    c: f64,
    rng: &mut R,
) -> Result<Outcome> {
    let mut path = alloc::vec![ROOT];
    let leaf = match arm_child[arm] {
        None => {
            // First pull of this arm creates the root child — that is this
            // iteration's one expansion.
            let mover = nodes[ROOT].state.current_player();
            let child_state = nodes[ROOT].state.apply(arms[arm])?;
            let id = push_node(nodes, child_state, mover);
            nodes[ROOT].children.push((arms[arm], id));
            arm_child[arm] = Some(id);
            path.push(id);
            id
        }
        Some(first) => {
            let mut cur = first;
            path.push(cur);
            loop {
                if nodes[cur].outcome.is_some() {
                    // Terminal in-tree node: its outcome is the "playout".
                    break cur;
                }
                if !nodes[cur].untried.is_empty() {
                    let pick = rng.gen_range(0..nodes[cur].untried.len());
                    let mv = nodes[cur].untried.swap_remove(pick);
                    let mover = nodes[cur].state.current_player();
                    let child_state = nodes[cur].state.apply(mv)?;
                    let id = push_node(nodes, child_state, mover);
                    nodes[cur].children.push((mv, id));
                    path.push(id);
                    break id;
                }
                // Fully expanded: follow the UCB1-best child. Means are
                // stored for the player moving here, so maximizing is
                // correct at every level; ties go to the oldest child.
                let stats: Vec<ArmStats> = nodes[cur]
                    .children
                    .iter()
                    .map(|&(_, id)| ArmStats::from_parts(nodes[id].visits, nodes[id].reward_sum))
                    .collect();
                cur = nodes[cur].children[ucb1_select(&stats, c)?].1;
                path.push(cur);
            }
        }
    };

    let outcome = match nodes[leaf].outcome {
        Some(o) => o,
        None => random_playout(&nodes[leaf].state, rng),
    };
    for &id in &path {
        nodes[id].visits += 1;
        nodes[id].reward_sum += outcome.utility(nodes[id].entered_by);
    }
    Ok(outcome)
}

fn push_node<G: GameState>(nodes: &mut Vec<Node<G>>, state: G, entered_by: Player) -> usize {
    let outcome = state.outcome();
    let untried = if outcome.is_some() {
        Vec::new()
    } else {
        state.legal_moves()
    };
    nodes.push(Node {
        state,
        entered_by,
        visits: 0,
        reward_sum: 0.0,
        untried,
        children: Vec::new(),
        outcome,
    });
    nodes.len() - 1
}

/// Final move for the UCB1 root, from the root arm statistics.
fn uct_choice(stats: &[ArmStats], rule: UctFinalMove) -> usize {
    match rule {
        UctFinalMove::HighestMean => best_arm(0..stats.len(), stats),
        UctFinalMove::RobustChild => {
            let mut best = 0usize;
            for arm in 1..stats.len() {
                let (a, b) = (&stats[arm], &stats[best]);
                let better = match a.pulls().cmp(&b.pulls()) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => a.pulls() > 0 && a.mean() > b.mean(),
                };
                if better {
                    best = arm;
                }
            }
            best
        }
    }
}

/// Walk the whole tree and panic on any broken search invariant. Cheap
/// next to the playouts, so it runs after every search.
fn validate_tree<G: GameState>(nodes: &[Node<G>], iterations: u64) {
    const EPS: f64 = 1e-9;
    assert_eq!(nodes[ROOT].visits, iterations, "root visits = iterations");
    for (id, node) in nodes.iter().enumerate() {
        let child_sum: u64 = node.children.iter().map(|&(_, c)| nodes[c].visits).sum();
        assert!(child_sum <= node.visits, "children outvisit node {id}");
        if id == ROOT {
            // Every iteration passes through exactly one root child.
            assert_eq!(child_sum, node.visits, "root children absorb iterations");
        } else if node.outcome.is_none() {
            // Creation visit plus one per descent into a child.
            assert_eq!(node.visits, child_sum + 1, "visit accounting, node {id}");
        } else {
            assert!(node.children.is_empty(), "terminal node {id} has children");
            assert!(
                node.untried.is_empty(),
                "terminal node {id} has untried moves"
            );
        }
        assert!(
            node.reward_sum >= -EPS && node.reward_sum <= node.visits as f64 + EPS,
            "reward outside [0, visits] at node {id}"
        );
        for &(_, child) in &node.children {
            assert!(nodes[child].visits >= 1, "zero-visit child under node {id}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{Cell, TicTacToe};
    use alloc::vec;
    use core::cell::Cell as TimeCell;

    const SQRT2: f64 = core::f64::consts::SQRT_2;

    /// A clock that gains one millisecond per reading, so time budgets can
    /// be exercised deterministically in a single thread.
    struct TickingClock(TimeCell<f64>);

    impl TickingClock {
        fn new() -> Self {
            Self(TimeCell::new(0.0))
        }
    }

    impl Clock for TickingClock {
        fn now_ms(&self) -> f64 {
            let t = self.0.get();
            self.0.set(t + 1.0);
            t
        }
    }

    fn ttt(moves: &[(u8, u8)]) -> TicTacToe {
        let mut s = TicTacToe::new();
        for &(r, c) in moves {
            s = s.apply(Cell::new(r, c)).unwrap();
        }
        s
    }

    #[test]
    fn every_strategy_finds_an_immediate_win() {
        // X on a1, b1 with O on a2, b2: c1 wins for X on the spot.
        let s = ttt(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        for strategy in [
            RootStrategy::Ucb1Root,
            RootStrategy::ShRoot,
            RootStrategy::AnytimeShRoot,
        ] {
            let r = run_search_iters(&s, strategy, 1000, SQRT2, 7).unwrap();
            assert_eq!(r.chosen_move, Cell::new(0, 2), "{}", strategy.name());
        }
    }

    #[test]
    fn every_strategy_blocks_as_the_second_player() {
        // X holds a1, b1 and O holds b2; O to move must block c1.
        let s = ttt(&[(0, 0), (1, 1), (0, 1)]);
        for strategy in [
            RootStrategy::Ucb1Root,
            RootStrategy::ShRoot,
            RootStrategy::AnytimeShRoot,
        ] {
            let r = run_search_iters(&s, strategy, 2000, SQRT2, 11).unwrap();
            assert_eq!(r.chosen_move, Cell::new(0, 2), "{}", strategy.name());
        }
    }

    #[test]
    fn iteration_budgets_are_spent_exactly() {
        let s = TicTacToe::new();
        for strategy in [
            RootStrategy::Ucb1Root,
            RootStrategy::ShRoot,
            RootStrategy::AnytimeShRoot,
        ] {
            let r = run_search_iters(&s, strategy, 1000, SQRT2, 3).unwrap();
            assert_eq!(r.iterations_used, 1000);
            assert_eq!(r.children.len(), 9);
            let visit_sum: u64 = r.children.iter().map(|c| c.visits).sum();
            assert_eq!(visit_sum, 1000);
            assert!(r.tree_nodes <= 1001, "at most one new node per iteration");
        }
    }

    #[test]
    fn same_seed_means_same_search() {
        let s = TicTacToe::new();
        let a = run_search_iters(&s, RootStrategy::Ucb1Root, 500, SQRT2, 42).unwrap();
        let b = run_search_iters(&s, RootStrategy::Ucb1Root, 500, SQRT2, 42).unwrap();
        assert_eq!(a, b);
        let c = run_search_iters(&s, RootStrategy::Ucb1Root, 500, SQRT2, 43).unwrap();
        assert!(c.children != a.children);
    }

    #[test]
    fn terminal_root_is_an_error() {
        // X runs the top row: a1 b1 c1 with O replies between.
        let s = ttt(&[(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)]);
        assert!(s.outcome().is_some());
        assert_eq!(
            run_search_iters(&s, RootStrategy::Ucb1Root, 10, SQRT2, 0),
            Err(Error::TerminalRoot)
        );
    }

    #[test]
    fn fixed_budget_halving_rejects_wall_clock_budgets() {
        let s = TicTacToe::new();
        let r = run_search(
            &s,
            RootStrategy::ShRoot,
            SearchBudget::TimeMs(50.0),
            SQRT2,
            0,
            UctFinalMove::default(),
            &FrozenClock,
        );
        assert_eq!(r, Err(Error::NotAnytime));
    }

    #[test]
    fn halving_roots_reject_starved_iteration_budgets() {
        let s = TicTacToe::new(); // nine root moves
        assert_eq!(
            run_search_iters(&s, RootStrategy::AnytimeShRoot, 5, SQRT2, 0),
            Err(Error::BudgetTooSmall { minimum: 9, got: 5 })
        );
        // The fixed-budget schedule needs one pull per surviving arm per
        // phase: 9 + 5 + 3 + 2.
        assert_eq!(
            run_search_iters(&s, RootStrategy::ShRoot, 10, SQRT2, 0),
            Err(Error::BudgetTooSmall {
                minimum: 19,
                got: 10
            })
        );
    }

    #[test]
    fn wall_clock_halt_still_returns_a_legal_move() {
        let s = TicTacToe::new();
        let clock = TickingClock::new();
        let r = run_search(
            &s,
            RootStrategy::AnytimeShRoot,
            SearchBudget::TimeMs(5.0),
            SQRT2,
            9,
            UctFinalMove::default(),
            &clock,
        )
        .unwrap();
        // One reading at start plus one per loop check: four iterations
        // fit strictly under the 5 ms budget.
        assert_eq!(r.iterations_used, 4);
        assert!(r.iterations_used < 9, "halted mid-sweep by design");
        assert!(s.legal_moves().contains(&r.chosen_move));
    }

    #[test]
    fn zero_time_budget_yields_the_first_legal_move() {
        let s = TicTacToe::new();
        for strategy in [RootStrategy::Ucb1Root, RootStrategy::AnytimeShRoot] {
            let r = run_search(
                &s,
                strategy,
                SearchBudget::TimeMs(0.0),
                SQRT2,
                0,
                UctFinalMove::default(),
                &FrozenClock,
            )
            .unwrap();
            assert_eq!(r.iterations_used, 0);
            assert_eq!(r.chosen_move, Cell::new(0, 0));
            assert!(r.children.iter().all(|c| c.visits == 0 && c.mean == 0.0));
        }
    }

    #[test]
    fn single_legal_move_needs_no_halving_minimum() {
        // Fill all but one cell without finishing the game:
        //   X O X
        //   X O O
        //   O X _   with X to move at c3.
        let s = ttt(&[
            (0, 0),
            (0, 1),
            (0, 2),
            (1, 1),
            (1, 0),
            (1, 2),
            (2, 1),
            (2, 0),
        ]);
        assert_eq!(s.legal_moves(), vec![Cell::new(2, 2)]);
        for strategy in [RootStrategy::ShRoot, RootStrategy::AnytimeShRoot] {
            let r = run_search_iters(&s, strategy, 1, SQRT2, 0).unwrap();
            assert_eq!(r.chosen_move, Cell::new(2, 2));
        }
    }

    #[test]
    fn uct_choice_follows_its_rule() {
        let stats: Vec<ArmStats> = [(100, 60.0), (50, 40.0), (850, 500.0)]
            .iter()
            .map(|&(n, r)| ArmStats::from_parts(n, r))
            .collect();
        assert_eq!(uct_choice(&stats, UctFinalMove::RobustChild), 2);

        // Tied visits fall back to the higher mean...
        let tied: Vec<ArmStats> = [(50, 10.0), (50, 30.0)]
            .iter()
            .map(|&(n, r)| ArmStats::from_parts(n, r))
            .collect();
        assert_eq!(uct_choice(&tied, UctFinalMove::RobustChild), 1);

        // ...while the mean rule ignores visit counts.
        let means: Vec<ArmStats> = [(900, 360.0), (10, 6.0)]
            .iter()
            .map(|&(n, r)| ArmStats::from_parts(n, r))
            .collect();
        assert_eq!(uct_choice(&means, UctFinalMove::HighestMean), 1);
        assert_eq!(uct_choice(&means, UctFinalMove::RobustChild), 0);
    }

    #[test]
    fn search_results_report_children_in_move_order() {
        let s = TicTacToe::new();
        let r = run_search_iters(&s, RootStrategy::ShRoot, 19, SQRT2, 5).unwrap();
        let moves: Vec<_> = r.children.iter().map(|c| c.mv).collect();
        assert_eq!(moves, s.legal_moves());
        // A 19-pull schedule on nine arms pulls each arm at least once.
        assert!(r.children.iter().all(|c| c.visits >= 1));
    }
}
