//! Exact minimax solving of the labeling game and game-number search.

use std::collections::HashMap;

use crate::game::{Direction, GameState, Phase};
use crate::graph::Graph;

/// Default node budget for exact game solving.
pub const DEFAULT_GAME_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveResult {
    FirstWins,
    SecondWins,
    /// Budget exhausted before the value was determined.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameNumberResult {
    Exact { number: u64 },
    /// Budget ran out at palette size `lower` (every smaller palette is a
    /// proven second-player win), or every palette up to the cap lost.
    Unknown { lower: u64 },
}

/// Win/loss minimax over game positions.
///
/// The first player moves at label nodes (edge × label choices, a win if
/// any child wins), the second player at orientation nodes (two direction
/// choices, a win for the second player if either child refutes). Boolean
/// short-circuiting is the alpha-beta rule for win/loss values. Positions
/// are memoized at label nodes under a key that keeps only what the
/// remaining game can see: the set of unlabeled edges and the current
/// incoming-sum vector. Labels already consumed influence play solely
/// through those sums, so positions differing only in move order or in
/// how placed labels are distributed over oriented edges share one entry.
pub struct Solver {
    memo: HashMap<u128, bool>,
    budget: u64,
    used: u64,
}

impl Solver {
    pub fn new(budget: u64) -> Self {
        Solver {
            memo: HashMap::new(),
            budget,
            used: 0,
        }
    }

    pub fn nodes_used(&self) -> u64 {
        self.used
    }

    /// Packs (unlabeled-edge set, sums) into a `u128`, or `None` when the
    /// position needs more than 128 bits (solving still works un-memoized).
    fn state_key(state: &GameState) -> Option<u128> {
        let g = state.graph();
        let m = g.edge_count() as u32;
        let max_sum = (g.edge_count() as u128) * (state.palette() as u128);
        let bits = (128 - max_sum.leading_zeros()).max(1);
        if m + bits * g.vertex_count() as u32 > 128 {
            return None;
        }
        let mut key: u128 = 0;
        for e in state.unlabeled_edges() {
            key |= 1 << e;
        }
        let mut shift = m;
        for v in 0..g.vertex_count() {
            key |= (state.sum(v) as u128) << shift;
            shift += bits;
        }
        Some(key)
    }

    /// Value of an awaiting-label position: `Some(true)` iff the first
    /// player wins with optimal play, `None` if the budget ran out first.
    pub fn value(&mut self, state: &mut GameState) -> Option<bool> {
        debug_assert!(matches!(state.phase(), Phase::AwaitingLabel));
        let edges: Vec<usize> = state.unlabeled_edges().collect();
        if edges.is_empty() {
            return Some(state.final_is_proper());
        }
        let key = Self::state_key(state);
        if let Some(k) = key {
            if let Some(&v) = self.memo.get(&k) {
                return Some(v);
            }
        }
        self.used += 1;
        if self.used > self.budget {
            return None;
        }
        let mut any_unknown = false;
        for &e in &edges {
            for label in 1..=state.palette() {
                state.place_label(e, label).expect("edge is unlabeled");
                let v = self.orientation_value(state);
                state.retract_label();
                match v {
                    Some(true) => {
                        if let Some(k) = key {
                            self.memo.insert(k, true);
                        }
                        return Some(true);
                    }
                    None => any_unknown = true,
                    Some(false) => {}
                }
            }
        }
        if any_unknown {
            None
        } else {
            if let Some(k) = key {
                self.memo.insert(k, false);
            }
            Some(false)
        }
    }

    /// Value of an awaiting-orientation position (second player to move).
    pub fn orientation_value(&mut self, state: &mut GameState) -> Option<bool> {
        let mut any_unknown = false;
        for d in [Direction::Uv, Direction::Vu] {
            state.orient(d).expect("orientation is pending");
            let v = self.value(state);
            state.retract_orientation();
            match v {
                Some(false) => return Some(false),
                None => any_unknown = true,
                Some(true) => {}
            }
        }
        if any_unknown {
            None
        } else {
            Some(true)
        }
    }
}

/// Determines the winner of the game on `g` with palette `1..=k` under
/// optimal play from both sides.
pub fn solve_game(g: &Graph, k: u64, budget: u64) -> SolveResult {
    let mut solver = Solver::new(budget);
    let mut state = GameState::new(g, k);
    match solver.value(&mut state) {
        Some(true) => SolveResult::FirstWins,
        Some(false) => SolveResult::SecondWins,
        None => SolveResult::Unknown,
    }
}

/// Smallest palette size `k ≤ k_max` giving the first player a win; each
/// candidate `k` gets a fresh `budget`.
pub fn game_number(g: &Graph, k_max: u64, budget: u64) -> GameNumberResult {
    for k in 1..=k_max {
        match solve_game(g, k, budget) {
            SolveResult::FirstWins => return GameNumberResult::Exact { number: k },
            SolveResult::SecondWins => continue,
            SolveResult::Unknown => return GameNumberResult::Unknown { lower: k },
        }
    }
    GameNumberResult::Unknown { lower: k_max + 1 }
}
