//! First- and second-player strategies for the labeling game.

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::game::{Direction, GameState, Phase, Solver};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("strategy {strategy} requires {requirement}")]
    Inapplicable {
        strategy: &'static str,
        requirement: &'static str,
    },
    #[error("every label in 1..={k} is forbidden for edge {edge}")]
    PaletteSaturated { edge: usize, k: u64 },
    #[error("no move is available in this phase")]
    NoMoveAvailable,
}

/// Label-placing strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpStrategy {
    /// Plays the alternating 1,2 pattern along a path or cycle in walk
    /// order. The pattern is a universal labeling of paths and even
    /// cycles, so it wins those regardless of the opponent; on odd cycles
    /// it plays the same (necessarily broken) pattern and loses.
    TwoLabel,
    /// Takes the lowest-index unlabeled edge and the smallest label whose
    /// immediate sum-collisions are impossible in either direction.
    Greedy,
    /// On trees: edges outward from a maximum-degree root in breadth-first
    /// order, with the same smallest-safe-label rule.
    Tree,
}

/// Orientation-choosing strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpStrategy {
    /// Orients the edges of a shortest odd cycle cyclically and everything
    /// touching the cycle away from it. On an odd cycle the incoming sums
    /// around it copy the labels, which cannot properly 2-color an odd
    /// ring, so two labels never suffice against it.
    OddCycle,
    /// Fixes a vertex `v` of degree at least 3 and its first three edges,
    /// then forces two equal sums among `v` and those neighbors whenever
    /// only two labels are in play.
    HighDegree,
    /// Exact lookahead: picks a direction whose game value is a proven
    /// second-player win when one exists.
    Exhaustive,
    /// Seeded coin flip.
    Random,
}

impl FpStrategy {
    pub fn name(self) -> &'static str {
        match self {
            FpStrategy::TwoLabel => "two_label",
            FpStrategy::Greedy => "greedy",
            FpStrategy::Tree => "tree",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "two_label" => Some(FpStrategy::TwoLabel),
            "greedy" => Some(FpStrategy::Greedy),
            "tree" => Some(FpStrategy::Tree),
            _ => None,
        }
    }

    /// Chooses `(edge, label)` for the current awaiting-label position.
    pub fn next_move(self, state: &GameState) -> Result<(usize, u64), StrategyError> {
        if !matches!(state.phase(), Phase::AwaitingLabel) || state.is_over() {
            return Err(StrategyError::NoMoveAvailable);
        }
        match self {
            FpStrategy::TwoLabel => two_label_move(state),
            FpStrategy::Greedy => {
                let e = state.unlabeled_edges().next().expect("game not over");
                Ok((e, smallest_safe_label(state, e)?))
            }
            FpStrategy::Tree => tree_move(state),
        }
    }
}

impl SpStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SpStrategy::OddCycle => "odd_cycle",
            SpStrategy::HighDegree => "high_degree",
            SpStrategy::Exhaustive => "exhaustive",
            SpStrategy::Random => "random",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "odd_cycle" => Some(SpStrategy::OddCycle),
            "high_degree" => Some(SpStrategy::HighDegree),
            "exhaustive" => Some(SpStrategy::Exhaustive),
            "random" => Some(SpStrategy::Random),
            _ => None,
        }
    }

    /// Chooses a direction for the pending edge. `Exhaustive` explores on
    /// the state and restores it before returning.
    pub fn next_direction(
        self,
        state: &mut GameState,
        rng: &mut ChaCha8Rng,
        solver: &mut Solver,
    ) -> Result<Direction, StrategyError> {
        let Phase::AwaitingOrientation(pending) = state.phase() else {
            return Err(StrategyError::NoMoveAvailable);
        };
        match self {
            SpStrategy::OddCycle => odd_cycle_direction(state, pending),
            SpStrategy::HighDegree => high_degree_direction(state, pending),
            SpStrategy::Exhaustive => Ok(exhaustive_direction(state, solver)),
            SpStrategy::Random => Ok(if rng.random::<bool>() {
                Direction::Uv
            } else {
                Direction::Vu
            }),
        }
    }
}

/// Edge sequence of a walk covering a path or cycle graph: starts at the
/// lowest-index endpoint (degree-1 vertex) or, on a cycle, at vertex 0
/// heading toward its smaller neighbor.
fn walk_path_or_cycle(g: &Graph) -> Option<Vec<usize>> {
    let m = g.edge_count();
    if m == 0 || !g.is_connected() || (0..g.vertex_count()).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (0..g.vertex_count())
        .find(|&v| g.degree(v) == 1)
        .unwrap_or(0);
    let mut walk = Vec::with_capacity(m);
    let mut prev_edge = usize::MAX;
    let mut cur = start;
    for _ in 0..m {
        let &(nbr, e) = g
            .incident(cur)
            .iter()
            .filter(|&&(_, e)| e != prev_edge)
            .min_by_key(|&&(nbr, _)| nbr)
            .expect("walk continues");
        walk.push(e);
        prev_edge = e;
        cur = nbr;
    }
    Some(walk)
}

fn two_label_move(state: &GameState) -> Result<(usize, u64), StrategyError> {
    let walk = walk_path_or_cycle(state.graph()).ok_or(StrategyError::Inapplicable {
        strategy: "two_label",
        requirement: "a connected graph of maximum degree 2",
    })?;
    for (pos, &e) in walk.iter().enumerate() {
        if state.label(e).is_none() {
            return Ok((e, if pos % 2 == 0 { 1 } else { 2 }));
        }
    }
    Err(StrategyError::NoMoveAvailable)
}

/// Smallest label in `1..=k` that cannot complete an equal-sum pair at
/// either endpoint of `e`, whichever way the opponent orients it: the
/// forbidden values are the differences `S(z) − S(u)` over neighbors `z`
/// of `u` and `S(z) − S(v)` over neighbors `z` of `v`, clipped to the
/// palette.
fn smallest_safe_label(state: &GameState, e: usize) -> Result<u64, StrategyError> {
    let g = state.graph();
    let k = state.palette();
    let (u, v) = g.endpoints(e);
    let mut forbidden: HashSet<u64> = HashSet::new();
    for end in [u, v] {
        for &(z, _) in g.incident(end) {
            let diff = state.sum(z) as i128 - state.sum(end) as i128;
            if diff >= 1 && diff <= k as i128 {
                forbidden.insert(diff as u64);
            }
        }
    }
    (1..=k)
        .find(|label| !forbidden.contains(label))
        .ok_or(StrategyError::PaletteSaturated { edge: e, k })
}

fn tree_move(state: &GameState) -> Result<(usize, u64), StrategyError> {
    let g = state.graph();
    if !g.is_tree() {
        return Err(StrategyError::Inapplicable {
            strategy: "tree",
            requirement: "a tree",
        });
    }
    let root = g.max_degree_vertex().expect("tree has an edge");
    let levels = g.bfs_levels(root).expect("root in range");
    let depth = |e: usize| {
        let (u, v) = g.endpoints(e);
        levels[u].max(levels[v]).expect("tree is connected")
    };
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| (depth(e), e));
    for e in order {
        if state.label(e).is_none() {
            return Ok((e, smallest_safe_label(state, e)?));
        }
    }
    Err(StrategyError::NoMoveAvailable)
}

fn bfs_parents(g: &Graph, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut levels = vec![None; g.vertex_count()];
    let mut parent = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::from([root]);
    levels[root] = Some(0);
    while let Some(x) = queue.pop_front() {
        for &(nbr, _) in g.incident(x) {
            if levels[nbr].is_none() {
                levels[nbr] = Some(levels[x].unwrap() + 1);
                parent[nbr] = x;
                queue.push_back(nbr);
            }
        }
    }
    (levels, parent)
}

/// Vertices of a shortest odd cycle in cyclic order, if any. Same-level
/// edges in a breadth-first search close odd walks; the minimum over all
/// roots is attained by a simple cycle with disjoint root paths.
fn shortest_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    let mut best: Option<(usize, usize, usize)> = None;
    for root in 0..g.vertex_count() {
        let (levels, _) = bfs_parents(g, root);
        for (e, &(x, y)) in g.edges().iter().enumerate() {
            if let (Some(lx), Some(ly)) = (levels[x], levels[y]) {
                if lx == ly {
                    let len = lx + ly + 1;
                    if best.is_none_or(|(b, _, _)| len < b) {
                        best = Some((len, root, e));
                    }
                }
            }
        }
    }
    let (len, root, e) = best?;
    let (levels, parent) = bfs_parents(g, root);
    let climb = |mut x: usize| {
        let mut path = vec![x];
        while x != root {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let (x, y) = g.endpoints(e);
    let mut cycle: Vec<usize> = climb(x).into_iter().rev().collect();
    let y_path = climb(y);
    cycle.extend(&y_path[..y_path.len() - 1]);
    debug_assert_eq!(cycle.len(), len);
    debug_assert_eq!(levels[x], levels[y]);
    debug_assert_eq!(
        cycle.iter().collect::<HashSet<_>>().len(),
        cycle.len(),
        "minimal odd walk is a simple cycle"
    );
    Some(cycle)
}

fn odd_cycle_direction(state: &GameState, pending: usize) -> Result<Direction, StrategyError> {
    let g = state.graph();
    let cycle = shortest_odd_cycle(g).ok_or(StrategyError::Inapplicable {
        strategy: "odd_cycle",
        requirement: "an odd cycle",
    })?;
    let mut pos = vec![None; g.vertex_count()];
    for (i, &c) in cycle.iter().enumerate() {
        pos[c] = Some(i);
    }
    let (u, v) = g.endpoints(pending);
    let dir = match (pos[u], pos[v]) {
        // consecutive on the cycle: follow the cyclic direction
        (Some(i), Some(j)) if j == (i + 1) % cycle.len() => Direction::Uv,
        (Some(i), Some(j)) if i == (j + 1) % cycle.len() => Direction::Vu,
        // touching the cycle: point away so cycle sums stay untouched
        (Some(_), None) => Direction::Uv,
        (None, Some(_)) => Direction::Vu,
        // chords and far edges are free
        _ => Direction::Uv,
    };
    Ok(dir)
}

fn high_degree_direction(state: &GameState, pending: usize) -> Result<Direction, StrategyError> {
    let g = state.graph();
    let v = (0..g.vertex_count())
        .find(|&x| g.degree(x) >= 3)
        .ok_or(StrategyError::Inapplicable {
            strategy: "high_degree",
            requirement: "a vertex of degree at least 3",
        })?;
    let trio: Vec<(usize, usize)> = g.incident(v)[..3].to_vec();
    let away_from = |x: usize| {
        let (a, b) = g.endpoints(pending);
        Direction::toward(g, pending, if a == x { b } else { a })
    };

    if let Some(&(_, _)) = trio.iter().find(|&&(_, e)| e == pending) {
        // the three special edges, in the order the opponent labels them:
        // first away from v; second into v exactly on a label repeat;
        // third complements the second
        let oriented: Vec<_> = state
            .history()
            .iter()
            .filter(|mv| trio.iter().any(|&(_, e)| e == mv.edge))
            .copied()
            .collect();
        let label = state.label(pending).expect("pending edge is labeled");
        let dir = match oriented.len() {
            0 => away_from(v),
            1 if label == oriented[0].label => Direction::toward(g, pending, v),
            1 => away_from(v),
            _ => {
                let second_into_v = state.head(oriented[1].edge) == Some(v);
                if second_into_v {
                    away_from(v)
                } else {
                    Direction::toward(g, pending, v)
                }
            }
        };
        return Ok(dir);
    }
    let (a, b) = g.endpoints(pending);
    if a == v || b == v {
        return Ok(away_from(v));
    }
    for &(nbr, _) in &trio {
        if a == nbr || b == nbr {
            return Ok(away_from(nbr));
        }
    }
    Ok(Direction::Uv)
}

/// Prefers a direction with a proven second-player win, then an undecided
/// one (lookahead budget ran out), then the forward default.
fn exhaustive_direction(state: &mut GameState, solver: &mut Solver) -> Direction {
    let mut unknown: Option<Direction> = None;
    for d in [Direction::Uv, Direction::Vu] {
        state.orient(d).expect("orientation is pending");
        let value = solver.value(state);
        state.retract_orientation();
        match value {
            Some(false) => return d,
            None if unknown.is_none() => unknown = Some(d),
            _ => {}
        }
    }
    unknown.unwrap_or(Direction::Uv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play, GameState, Player};
    use crate::graph::generate;

    #[test]
    fn walk_orders_follow_the_structure() {
        let p4 = generate("path:4").unwrap();
        assert_eq!(walk_path_or_cycle(&p4), Some(vec![0, 1, 2]));
        let c4 = generate("cycle:4").unwrap();
        assert_eq!(walk_path_or_cycle(&c4), Some(vec![0, 1, 2, 3]));
        let star = generate("star:3").unwrap();
        assert_eq!(walk_path_or_cycle(&star), None);
    }

    #[test]
    fn two_label_wins_paths_and_even_cycles_loses_odd() {
        for desc in ["path:3", "path:4", "path:6", "cycle:4", "cycle:6"] {
            let g = generate(desc).unwrap();
            let out = play(&g, 2, FpStrategy::TwoLabel, SpStrategy::Exhaustive, 0);
            assert_eq!(out.winner, Player::First, "{desc}");
            assert!(out.forfeit.is_none(), "{desc}");
        }
        for desc in ["cycle:3", "cycle:5", "cycle:7"] {
            let g = generate(desc).unwrap();
            let out = play(&g, 2, FpStrategy::TwoLabel, SpStrategy::Exhaustive, 0);
            assert_eq!(out.winner, Player::Second, "{desc}");
            assert!(out.forfeit.is_none(), "{desc}");
        }
    }

    #[test]
    fn two_label_plays_the_alternating_pattern() {
        let g = generate("path:4").unwrap();
        let out = play(&g, 2, FpStrategy::TwoLabel, SpStrategy::Random, 3);
        let labels: Vec<(usize, u64)> = out
            .transcript
            .iter()
            .map(|mv| (mv.edge, mv.label))
            .collect();
        assert_eq!(labels, vec![(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn two_label_forfeits_off_its_graph_class() {
        let g = generate("star:3").unwrap();
        let out = play(&g, 2, FpStrategy::TwoLabel, SpStrategy::Random, 0);
        assert_eq!(out.winner, Player::Second);
        let f = out.forfeit.expect("inapplicable strategy forfeits");
        assert_eq!(f.player, Player::First);
        assert_eq!(f.round, 1);
        assert!(f.reason.contains("two_label"), "{}", f.reason);
    }

    #[test]
    fn greedy_first_move_avoids_zero_differences() {
        let g = generate("star:3").unwrap();
        let state = GameState::new(&g, 6);
        // all sums are 0, every difference is 0, nothing is forbidden
        assert_eq!(FpStrategy::Greedy.next_move(&state), Ok((0, 1)));
    }

    #[test]
    fn greedy_skips_forbidden_differences() {
        let g = generate("path:3").unwrap();
        let mut state = GameState::new(&g, 4);
        state.place_label(0, 2).unwrap();
        state.orient(Direction::Uv).unwrap();
        // S = (0, 2, 0); edge 1 = {1,2}: from endpoint 1 the differences
        // are −2 (to 2) and... from endpoint 2 they are +2 (to 1); label 2
        // is forbidden, so 1 is chosen
        assert_eq!(FpStrategy::Greedy.next_move(&state), Ok((1, 1)));
    }

    #[test]
    fn greedy_with_double_delta_beats_exact_lookahead() {
        for desc in ["path:3", "path:4", "cycle:4", "cycle:5", "star:3", "star:4"] {
            let g = generate(desc).unwrap();
            let k = 2 * g.max_degree() as u64;
            let out = play(&g, k, FpStrategy::Greedy, SpStrategy::Exhaustive, 0);
            assert_eq!(out.winner, Player::First, "{desc}");
            assert!(out.forfeit.is_none(), "{desc}");
        }
    }

    #[test]
    fn tree_strategy_stays_within_delta_plus_one() {
        for desc in ["star:3", "star:5", "path:6", "random_tree:8:3:1"] {
            let g = generate(desc).unwrap();
            let k = g.max_degree() as u64 + 1;
            let out = play(&g, k, FpStrategy::Tree, SpStrategy::Exhaustive, 0);
            assert_eq!(out.winner, Player::First, "{desc}");
            assert!(out.forfeit.is_none(), "{desc}");
            assert!(
                out.transcript.iter().all(|mv| mv.label <= k),
                "{desc}: {:?}",
                out.transcript
            );
        }
        let c3 = generate("cycle:3").unwrap();
        let out = play(&c3, 4, FpStrategy::Tree, SpStrategy::Random, 0);
        assert_eq!(out.winner, Player::Second);
        assert!(out.forfeit.unwrap().reason.contains("tree"));
    }

    #[test]
    fn odd_cycle_orients_cyclically() {
        let g = generate("cycle:3").unwrap();
        let out = play(&g, 2, FpStrategy::TwoLabel, SpStrategy::OddCycle, 0);
        assert_eq!(out.winner, Player::Second);
        assert!(out.forfeit.is_none());
        // cyclic orientation: every vertex receives exactly one edge
        let mut received = vec![0u32; 3];
        for mv in &out.transcript {
            let (u, v) = g.endpoints(mv.edge);
            let head = match mv.direction {
                Direction::Uv => v,
                Direction::Vu => u,
            };
            received[head] += 1;
        }
        assert_eq!(received, vec![1, 1, 1]);
    }

    #[test]
    fn greedy_saturates_below_double_delta() {
        // with only two labels on a triangle the third edge sees both
        // labels forbidden; the structured failure forfeits the game
        let g = generate("cycle:3").unwrap();
        let out = play(&g, 2, FpStrategy::Greedy, SpStrategy::OddCycle, 0);
        assert_eq!(out.winner, Player::Second);
        let f = out.forfeit.expect("palette saturation forfeits");
        assert_eq!(f.player, Player::First);
        assert_eq!(f.round, 3);
        assert!(f.reason.contains("forbidden"), "{}", f.reason);
    }

    #[test]
    fn odd_cycle_finds_the_short_cycle_and_points_tails_away() {
        // triangle 0-1-2 with a pendant vertex 3 off vertex 0
        let g = crate::graph::parse_graph("0 1\n0 2\n1 2\n0 3").unwrap();
        let cycle = shortest_odd_cycle(&g).unwrap();
        assert_eq!(cycle.len(), 3);
        let mut state = GameState::new(&g, 2);
        // pendant edge {0,3}: oriented away from the cycle, head 3
        state.place_label(3, 1).unwrap();
        let d = odd_cycle_direction(&state, 3).unwrap();
        assert_eq!(d, Direction::Uv);

        let bipartite = generate("cycle:4").unwrap();
        let mut state = GameState::new(&bipartite, 2);
        state.place_label(0, 1).unwrap();
        assert_eq!(
            odd_cycle_direction(&state, 0),
            Err(StrategyError::Inapplicable {
                strategy: "odd_cycle",
                requirement: "an odd cycle",
            })
        );
    }

    #[test]
    fn high_degree_case_analysis_on_a_star() {
        let g = generate("star:3").unwrap();
        let mut state = GameState::new(&g, 2);
        // first special edge: away from the hub
        state.place_label(0, 1).unwrap();
        let d = high_degree_direction(&state, 0).unwrap();
        assert_eq!(d, Direction::Uv); // head 1, away from hub 0
        state.orient(d).unwrap();
        // second special edge with an equal label: into the hub
        state.place_label(1, 1).unwrap();
        let d = high_degree_direction(&state, 1).unwrap();
        assert_eq!(d, Direction::Vu); // head 0
        state.orient(d).unwrap();
        // third: the second went in, so this one goes out
        state.place_label(2, 2).unwrap();
        let d = high_degree_direction(&state, 2).unwrap();
        assert_eq!(d, Direction::Uv); // head 3
        state.orient(d).unwrap();
        assert!(!state.final_is_proper(), "hub and first leaf both sum to 1");
    }

    #[test]
    fn high_degree_distinct_labels_defers_then_strikes() {
        let g = generate("star:3").unwrap();
        let mut state = GameState::new(&g, 2);
        state.place_label(0, 1).unwrap();
        let d = high_degree_direction(&state, 0).unwrap();
        state.orient(d).unwrap();
        // different label: away again
        state.place_label(1, 2).unwrap();
        let d = high_degree_direction(&state, 1).unwrap();
        assert_eq!(d, Direction::Uv); // head 2, away from hub
        state.orient(d).unwrap();
        // third label must repeat 1 or 2; it goes into the hub and ties it
        // with whichever leaf already holds that sum
        state.place_label(2, 2).unwrap();
        let d = high_degree_direction(&state, 2).unwrap();
        assert_eq!(d, Direction::Vu); // head 0
        state.orient(d).unwrap();
        assert!(!state.final_is_proper());
    }

    #[test]
    fn high_degree_beats_two_labels_whenever_applicable() {
        for desc in ["star:3", "star:4", "complete:4"] {
            let g = generate(desc).unwrap();
            for fp in [FpStrategy::Greedy, FpStrategy::Tree] {
                let out = play(&g, 2, fp, SpStrategy::HighDegree, 0);
                assert_eq!(out.winner, Player::Second, "{desc} vs {}", fp.name());
            }
        }
        let p3 = generate("path:3").unwrap();
        let mut state = GameState::new(&p3, 2);
        state.place_label(0, 1).unwrap();
        assert!(matches!(
            high_degree_direction(&state, 0),
            Err(StrategyError::Inapplicable { .. })
        ));
    }

    #[test]
    fn random_adversary_is_seed_deterministic() {
        let g = generate("cycle:5").unwrap();
        let a = play(&g, 3, FpStrategy::Greedy, SpStrategy::Random, 42);
        let b = play(&g, 3, FpStrategy::Greedy, SpStrategy::Random, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn strategy_names_round_trip() {
        for fp in [FpStrategy::TwoLabel, FpStrategy::Greedy, FpStrategy::Tree] {
            assert_eq!(FpStrategy::from_name(fp.name()), Some(fp));
        }
        for sp in [
            SpStrategy::OddCycle,
            SpStrategy::HighDegree,
            SpStrategy::Exhaustive,
            SpStrategy::Random,
        ] {
            assert_eq!(SpStrategy::from_name(sp.name()), Some(sp));
        }
        assert_eq!(FpStrategy::from_name("nope"), None);
        assert_eq!(SpStrategy::from_name("nope"), None);
    }
}
