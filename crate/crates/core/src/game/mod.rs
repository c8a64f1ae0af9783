//! The universal labeling game.
//!
//! Two players alternate over the edges of a graph: each round the first
//! player labels a still-unlabeled edge from `1..=k`, then the second player
//! orients that edge. After all `m` rounds the first player wins exactly
//! when every two adjacent vertices receive distinct incoming label sums.
//!
//! [`play`] drives a full game between registered strategies, [`solve`]
//! holds an exact minimax solver and the game-number search, and
//! [`strategy`] implements the known first- and second-player strategies.

pub mod solve;
pub mod strategy;

pub use solve::{game_number, solve_game, GameNumberResult, SolveResult, Solver, DEFAULT_GAME_BUDGET};
pub use strategy::{FpStrategy, SpStrategy, StrategyError};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{EdgeLabeling, Graph, Orientation};
use crate::verify::in_sums;

/// Orientation choice for the pending edge `{u, v}` with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// From the smaller endpoint to the larger: `v` receives the label.
    Uv,
    /// From the larger endpoint to the smaller: `u` receives the label.
    Vu,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Uv => "uv",
            Direction::Vu => "vu",
        }
    }

    /// The direction whose head is `head` on edge `e` of `g`.
    pub fn toward(g: &Graph, e: usize, head: usize) -> Self {
        let (u, v) = g.endpoints(e);
        assert!(head == u || head == v, "head must be an endpoint");
        if head == v {
            Direction::Uv
        } else {
            Direction::Vu
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    First,
    Second,
}

impl Player {
    pub fn as_str(self) -> &'static str {
        match self {
            Player::First => "first",
            Player::Second => "second",
        }
    }

    pub fn opponent(self) -> Self {
        match self {
            Player::First => Player::Second,
            Player::Second => Player::First,
        }
    }
}

/// One completed round: a label placement and the answering orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub edge: usize,
    pub label: u64,
    pub direction: Direction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// The first player must label an unlabeled edge.
    AwaitingLabel,
    /// The second player must orient the just-labeled edge.
    AwaitingOrientation(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IllegalMove {
    #[error("an orientation for edge {edge} is pending; cannot place a label")]
    OrientationPending { edge: usize },
    #[error("no edge awaits an orientation")]
    NoPendingEdge,
    #[error("edge index {edge} out of range for a graph with {m} edges")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("edge {edge} is already labeled")]
    AlreadyLabeled { edge: usize },
    #[error("label {label} outside the palette 1..={k}")]
    LabelOutOfPalette { label: u64, k: u64 },
}

/// Full public position of a game in progress.
///
/// Invariants: every oriented edge is labeled; the labeled count exceeds the
/// oriented count by exactly one in the awaiting-orientation phase and zero
/// otherwise; every placed label lies in `1..=k`.
#[derive(Debug, Clone)]
pub struct GameState<'g> {
    graph: &'g Graph,
    k: u64,
    labels: Vec<Option<u64>>,
    heads: Vec<Option<usize>>,
    sums: Vec<u64>,
    phase: Phase,
    history: Vec<Move>,
}

impl<'g> GameState<'g> {
    pub fn new(graph: &'g Graph, k: u64) -> Self {
        assert!(k >= 1, "palette must be nonempty");
        GameState {
            graph,
            k,
            labels: vec![None; graph.edge_count()],
            heads: vec![None; graph.edge_count()],
            sums: vec![0; graph.vertex_count()],
            phase: Phase::AwaitingLabel,
            history: Vec::with_capacity(graph.edge_count()),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn palette(&self) -> u64 {
        self.k
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn label(&self, e: usize) -> Option<u64> {
        self.labels[e]
    }

    /// Receiving endpoint of an oriented edge.
    pub fn head(&self, e: usize) -> Option<usize> {
        self.heads[e]
    }

    /// Running incoming label sum of `v` over the oriented edges.
    pub fn sum(&self, v: usize) -> u64 {
        self.sums[v]
    }

    pub fn sums(&self) -> &[u64] {
        &self.sums
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn rounds_played(&self) -> usize {
        self.history.len()
    }

    pub fn is_over(&self) -> bool {
        self.history.len() == self.graph.edge_count() && matches!(self.phase, Phase::AwaitingLabel)
    }

    pub fn unlabeled_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.labels.len()).filter(|&e| self.labels[e].is_none())
    }

    pub fn place_label(&mut self, e: usize, label: u64) -> Result<(), IllegalMove> {
        if let Phase::AwaitingOrientation(pending) = self.phase {
            return Err(IllegalMove::OrientationPending { edge: pending });
        }
        if e >= self.labels.len() {
            return Err(IllegalMove::EdgeOutOfRange {
                edge: e,
                m: self.labels.len(),
            });
        }
        if self.labels[e].is_some() {
            return Err(IllegalMove::AlreadyLabeled { edge: e });
        }
        if label < 1 || label > self.k {
            return Err(IllegalMove::LabelOutOfPalette { label, k: self.k });
        }
        self.labels[e] = Some(label);
        self.phase = Phase::AwaitingOrientation(e);
        Ok(())
    }

    pub fn orient(&mut self, direction: Direction) -> Result<(), IllegalMove> {
        let Phase::AwaitingOrientation(e) = self.phase else {
            return Err(IllegalMove::NoPendingEdge);
        };
        let (u, v) = self.graph.endpoints(e);
        let head = match direction {
            Direction::Uv => v,
            Direction::Vu => u,
        };
        let label = self.labels[e].expect("pending edge is labeled");
        self.heads[e] = Some(head);
        self.sums[head] += label;
        self.history.push(Move {
            edge: e,
            label,
            direction,
        });
        self.phase = Phase::AwaitingLabel;
        Ok(())
    }

    /// Reverses a pending label placement (solver use).
    pub fn retract_label(&mut self) {
        let Phase::AwaitingOrientation(e) = self.phase else {
            panic!("no label placement to retract");
        };
        self.labels[e] = None;
        self.phase = Phase::AwaitingLabel;
    }

    /// Reverses the most recent orientation, returning to the pending-label
    /// position (solver use).
    pub fn retract_orientation(&mut self) {
        assert!(
            matches!(self.phase, Phase::AwaitingLabel),
            "an orientation must have completed the last round"
        );
        let mv = self.history.pop().expect("a round to retract");
        let head = self.heads[mv.edge].take().expect("edge was oriented");
        self.sums[head] -= mv.label;
        self.phase = Phase::AwaitingOrientation(mv.edge);
    }

    /// Final properness check: every adjacent pair has distinct sums.
    /// Only meaningful once all edges are oriented.
    pub fn final_is_proper(&self) -> bool {
        self.graph
            .edges()
            .iter()
            .all(|&(u, v)| self.sums[u] != self.sums[v])
    }
}

/// Why a game ended before its final round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forfeit {
    /// The player whose move was illegal or whose strategy failed.
    pub player: Player,
    /// 1-based round in which it happened.
    pub round: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameOutcome {
    pub winner: Player,
    pub transcript: Vec<Move>,
    /// Incoming sums at the end of play (partial if forfeited).
    pub final_sums: Vec<u64>,
    pub forfeit: Option<Forfeit>,
}

/// Plays a full game: exactly one round per edge, alternating a label move
/// by `fp` and an orientation move by `sp`. An illegal or failed strategy
/// move forfeits the game to the opponent with a diagnostic; it never
/// aborts the process. `seed` feeds the randomized adversary and is inert
/// for the deterministic ones.
pub fn play(g: &Graph, k: u64, fp: FpStrategy, sp: SpStrategy, seed: u64) -> GameOutcome {
    let mut state = GameState::new(g, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // the exhaustive adversary keeps its lookahead table across rounds
    let mut solver = Solver::new(DEFAULT_GAME_BUDGET);
    for round in 1..=g.edge_count() {
        let (e, label) = match fp.next_move(&state) {
            Ok(mv) => mv,
            Err(err) => return forfeit(state, Player::First, round, err.to_string()),
        };
        if let Err(err) = state.place_label(e, label) {
            return forfeit(state, Player::First, round, err.to_string());
        }
        let dir = match sp.next_direction(&mut state, &mut rng, &mut solver) {
            Ok(d) => d,
            Err(err) => return forfeit(state, Player::Second, round, err.to_string()),
        };
        if let Err(err) = state.orient(dir) {
            return forfeit(state, Player::Second, round, err.to_string());
        }
    }
    judge(state)
}

fn forfeit(state: GameState, player: Player, round: usize, reason: String) -> GameOutcome {
    GameOutcome {
        winner: player.opponent(),
        transcript: state.history.clone(),
        final_sums: state.sums.clone(),
        forfeit: Some(Forfeit {
            player,
            round,
            reason,
        }),
    }
}

fn judge(state: GameState) -> GameOutcome {
    debug_assert!(state.is_over());
    let labeling = EdgeLabeling::total(
        state
            .labels
            .iter()
            .map(|l| l.expect("game over, all labeled"))
            .collect(),
    );
    let heads: Vec<usize> = state
        .heads
        .iter()
        .map(|h| h.expect("game over, all oriented"))
        .collect();
    let orientation = Orientation::from_heads(state.graph, &heads).expect("heads are endpoints");
    let sums = in_sums(state.graph, &labeling, &orientation).expect("labeling is total");
    debug_assert_eq!(sums, state.sums);
    let first_wins = state
        .graph
        .edges()
        .iter()
        .all(|&(u, v)| sums[u] != sums[v]);
    GameOutcome {
        winner: if first_wins {
            Player::First
        } else {
            Player::Second
        },
        transcript: state.history,
        final_sums: sums,
        forfeit: None,
    }
}

/// Transcript as JSON: one object per round, in order, with a closing
/// `{"winner": …}` object.
pub fn transcript_json(g: &Graph, outcome: &GameOutcome) -> Value {
    let mut items: Vec<Value> = outcome
        .transcript
        .iter()
        .enumerate()
        .map(|(i, mv)| {
            let (u, v) = g.endpoints(mv.edge);
            json!({
                "round": i + 1,
                "edge": [u, v],
                "label": mv.label,
                "direction": mv.direction.as_str(),
            })
        })
        .collect();
    items.push(json!({ "winner": outcome.winner.as_str() }));
    Value::Array(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn state_enforces_round_structure() {
        let g = generate("path:3").unwrap();
        let mut s = GameState::new(&g, 2);
        assert_eq!(s.phase(), Phase::AwaitingLabel);
        assert_eq!(s.orient(Direction::Uv), Err(IllegalMove::NoPendingEdge));
        s.place_label(0, 2).unwrap();
        assert_eq!(s.phase(), Phase::AwaitingOrientation(0));
        assert_eq!(
            s.place_label(1, 1),
            Err(IllegalMove::OrientationPending { edge: 0 })
        );
        s.orient(Direction::Uv).unwrap();
        assert_eq!(s.sum(1), 2);
        assert_eq!(s.head(0), Some(1));
        assert_eq!(
            s.place_label(0, 1),
            Err(IllegalMove::AlreadyLabeled { edge: 0 })
        );
        assert_eq!(
            s.place_label(1, 3),
            Err(IllegalMove::LabelOutOfPalette { label: 3, k: 2 })
        );
        assert_eq!(
            s.place_label(9, 1),
            Err(IllegalMove::EdgeOutOfRange { edge: 9, m: 2 })
        );
        s.place_label(1, 1).unwrap();
        s.orient(Direction::Vu).unwrap();
        assert!(s.is_over());
        assert_eq!(s.sums(), &[0, 3, 0]);
        assert!(s.final_is_proper());
    }

    #[test]
    fn retraction_restores_the_position() {
        let g = generate("cycle:3").unwrap();
        let mut s = GameState::new(&g, 4);
        s.place_label(2, 3).unwrap();
        s.orient(Direction::Vu).unwrap();
        let sums_before = s.sums().to_vec();
        let history_before = s.history().to_vec();

        s.place_label(0, 1).unwrap();
        s.orient(Direction::Uv).unwrap();
        s.retract_orientation();
        assert_eq!(s.phase(), Phase::AwaitingOrientation(0));
        s.retract_label();
        assert_eq!(s.phase(), Phase::AwaitingLabel);
        assert_eq!(s.sums(), &sums_before[..]);
        assert_eq!(s.history(), &history_before[..]);
        assert_eq!(s.label(0), None);
        assert_eq!(s.unlabeled_edges().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn judging_matches_sum_properness() {
        // single edge, k=1: sums are (0, ℓ), always distinct
        let g = generate("path:2").unwrap();
        let out = play(&g, 1, FpStrategy::Greedy, SpStrategy::Random, 7);
        assert_eq!(out.winner, Player::First);
        assert_eq!(out.transcript.len(), 1);
        assert!(out.forfeit.is_none());
        let total: u64 = out.final_sums.iter().sum();
        assert_eq!(total, 1);
    }

    #[test]
    fn transcript_json_shape() {
        let g = generate("path:2").unwrap();
        let out = play(&g, 1, FpStrategy::Greedy, SpStrategy::Random, 0);
        let t = transcript_json(&g, &out);
        let arr = t.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr[0]["round"], 1);
        assert_eq!(arr[0]["edge"], json!([0, 1]));
        assert_eq!(arr[0]["label"], 1);
        assert!(arr[0]["direction"] == "uv" || arr[0]["direction"] == "vu");
        assert_eq!(arr[1], json!({"winner": "first"}));
    }

    #[test]
    fn empty_graph_is_a_trivial_first_win() {
        let g = Graph::new(3, &[]).unwrap();
        let out = play(&g, 1, FpStrategy::Greedy, SpStrategy::Random, 0);
        assert_eq!(out.winner, Player::First);
        assert!(out.transcript.is_empty());
    }
}
