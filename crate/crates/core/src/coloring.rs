//! Proper edge colorings.
//!
//! Three engines with different guarantees:
//!
//! - [`tree_edge_coloring`]: exact `Δ` colors on trees via BFS greedy
//!   assignment;
//! - [`color_delta_plus_one`]: at most `Δ+1` colors on any simple graph via
//!   fan rotations and alternating-path inversions;
//! - [`exact_chromatic_index`]: decides whether `Δ` colors suffice by
//!   budgeted backtracking, returning a coloring when they do.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{EdgeLabeling, Graph};

/// Default node budget for [`exact_chromatic_index`].
pub const DEFAULT_COLORING_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("input graph is not a tree (connected with m = n - 1 required)")]
    NotATree,
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    RootOutOfRange { v: usize, n: usize },
}

/// A proper edge coloring with colors `1..=palette_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<u32>,
    palette_size: u32,
}

impl EdgeColoring {
    fn new(colors: Vec<u32>) -> Self {
        let palette_size = colors.iter().copied().max().unwrap_or(0);
        EdgeColoring {
            colors,
            palette_size,
        }
    }

    /// Color of edge `e`, in `1..=palette_size`.
    pub fn color(&self, e: usize) -> u32 {
        self.colors[e]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Number of colors, equal to the largest color used.
    pub fn palette_size(&self) -> u32 {
        self.palette_size
    }

    /// True iff incident edges always receive distinct colors.
    pub fn is_proper(&self, g: &Graph) -> bool {
        (0..g.vertex_count()).all(|v| {
            let mut cs: Vec<u32> = g.incident(v).iter().map(|&(_, e)| self.colors[e]).collect();
            cs.sort_unstable();
            cs.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// The colors viewed as an edge labeling, e.g. for `u v color` files.
    pub fn to_labeling(&self) -> EdgeLabeling {
        EdgeLabeling::total(self.colors.iter().map(|&c| c as u64).collect())
    }
}

/// Colors a tree with exactly `Δ` colors, rooted at the smallest-index
/// vertex of maximum degree.
pub fn tree_edge_coloring(t: &Graph) -> Result<EdgeColoring, ColoringError> {
    let root = t.max_degree_vertex().ok_or(ColoringError::NotATree)?;
    tree_edge_coloring_from(t, root)
}

/// Colors a tree with exactly `Δ` colors by BFS from `root`: each child
/// edge takes the smallest color unused by the parent edge and by siblings
/// colored so far.
pub fn tree_edge_coloring_from(t: &Graph, root: usize) -> Result<EdgeColoring, ColoringError> {
    if root >= t.vertex_count() {
        return Err(ColoringError::RootOutOfRange {
            v: root,
            n: t.vertex_count(),
        });
    }
    if !t.is_tree() {
        return Err(ColoringError::NotATree);
    }
    let n = t.vertex_count();
    let mut colors = vec![0u32; t.edge_count()];
    let mut parent_color = vec![0u32; n];
    let mut visited = vec![false; n];
    visited[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let mut used: Vec<u32> = Vec::new();
        if parent_color[v] != 0 {
            used.push(parent_color[v]);
        }
        for &(w, e) in t.incident(v) {
            if visited[w] {
                continue;
            }
            let mut c = 1u32;
            while used.contains(&c) {
                c += 1;
            }
            colors[e] = c;
            used.push(c);
            parent_color[w] = c;
            visited[w] = true;
            queue.push_back(w);
        }
    }
    Ok(EdgeColoring::new(colors))
}

const NONE: usize = usize::MAX;

/// Fan-rotation edge coloring state: colors plus a per-vertex color→edge
/// table for O(1) "which edge at v has color c" queries.
struct FanState<'g> {
    g: &'g Graph,
    colors: Vec<u32>,
    /// at[v][c] = edge at v colored c, or NONE; colors 1..=max_color
    at: Vec<Vec<usize>>,
    max_color: u32,
}

impl<'g> FanState<'g> {
    fn new(g: &'g Graph) -> Self {
        let max_color = g.max_degree() as u32 + 1;
        FanState {
            g,
            colors: vec![0; g.edge_count()],
            at: vec![vec![NONE; max_color as usize + 1]; g.vertex_count()],
            max_color,
        }
    }

    fn free_color(&self, v: usize) -> u32 {
        (1..=self.max_color)
            .find(|&c| self.at[v][c as usize] == NONE)
            .expect("degree <= max_color - 1 leaves a free color")
    }

    fn is_free(&self, v: usize, c: u32) -> bool {
        self.at[v][c as usize] == NONE
    }

    fn assign(&mut self, e: usize, c: u32) {
        debug_assert_eq!(self.colors[e], 0);
        let (u, v) = self.g.endpoints(e);
        self.colors[e] = c;
        self.at[u][c as usize] = e;
        self.at[v][c as usize] = e;
    }

    fn unassign(&mut self, e: usize) {
        let c = self.colors[e] as usize;
        debug_assert_ne!(c, 0);
        let (u, v) = self.g.endpoints(e);
        self.colors[e] = 0;
        self.at[u][c] = NONE;
        self.at[v][c] = NONE;
    }

    /// Maximal fan of `u` from the uncolored edge toward `v0`: neighbors
    /// `v0, v1, …` where each next edge is colored with a color free at the
    /// previous fan vertex; extensions prefer the smallest such color.
    fn maximal_fan(&self, u: usize, v0: usize) -> Vec<usize> {
        let mut fan = vec![v0];
        loop {
            let last = *fan.last().unwrap();
            let next = self
                .g
                .incident(u)
                .iter()
                .filter(|&&(x, e)| {
                    self.colors[e] != 0 && !fan.contains(&x) && self.is_free(last, self.colors[e])
                })
                .min_by_key(|&&(_, e)| self.colors[e]);
            match next {
                Some(&(x, _)) => fan.push(x),
                None => return fan,
            }
        }
    }

    /// Swaps colors `c` and `d` along the maximal alternating path leaving
    /// `u` (which starts with a `d`-edge because `c` is free at `u`).
    fn invert_cd_path(&mut self, u: usize, c: u32, d: u32) {
        let mut path = Vec::new();
        let mut vertex = u;
        let mut want = d;
        loop {
            let e = self.at[vertex][want as usize];
            if e == NONE {
                break;
            }
            path.push((e, if want == d { c } else { d }));
            let (a, b) = self.g.endpoints(e);
            vertex = if a == vertex { b } else { a };
            want = if want == d { c } else { d };
        }
        for &(e, _) in &path {
            self.unassign(e);
        }
        for &(e, new_color) in &path {
            self.assign(e, new_color);
        }
    }

    /// True iff `fan[..=j]` still satisfies the fan property.
    fn is_fan_prefix(&self, u: usize, fan: &[usize], j: usize) -> bool {
        (0..j).all(|i| {
            let e = self.g.edge_between(u, fan[i + 1]).unwrap();
            self.colors[e] != 0 && self.is_free(fan[i], self.colors[e])
        })
    }

    /// Shifts colors down the fan prefix and gives the last edge color `d`.
    fn rotate(&mut self, u: usize, fan: &[usize], j: usize, d: u32) {
        for i in 0..j {
            let e = self.g.edge_between(u, fan[i]).unwrap();
            let next = self.g.edge_between(u, fan[i + 1]).unwrap();
            let c = self.colors[next];
            if self.colors[e] != 0 {
                self.unassign(e);
            }
            self.unassign(next);
            self.assign(e, c);
        }
        let e = self.g.edge_between(u, fan[j]).unwrap();
        if self.colors[e] != 0 {
            self.unassign(e);
        }
        self.assign(e, d);
    }

    fn color_edge(&mut self, e: usize) {
        let (u, v) = self.g.endpoints(e);
        let fan = self.maximal_fan(u, v);
        let c = self.free_color(u);
        let d = self.free_color(*fan.last().unwrap());
        if c != d {
            self.invert_cd_path(u, c, d);
        }
        // After inversion d is free at u, so some fan prefix can absorb it.
        let j = (0..fan.len())
            .find(|&j| self.is_fan_prefix(u, &fan, j) && self.is_free(fan[j], d))
            .expect("a rotatable fan prefix always exists");
        self.rotate(u, &fan, j, d);
    }
}

/// Colors any simple graph properly with at most `Δ+1` colors.
pub fn color_delta_plus_one(g: &Graph) -> EdgeColoring {
    let mut state = FanState::new(g);
    for e in 0..g.edge_count() {
        state.color_edge(e);
    }
    let coloring = EdgeColoring::new(state.colors);
    debug_assert!(coloring.is_proper(g));
    coloring
}

/// Outcome of the exact `Δ`-colorability decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticIndex {
    /// `Δ` colors suffice; a witness coloring is attached.
    Class1(EdgeColoring),
    /// Exhaustive search proved `Δ+1` colors are necessary.
    Class2,
    /// The node budget ran out before the search finished.
    Unknown,
}

/// Decides whether `Δ(g)` colors suffice, by backtracking over edges in
/// descending endpoint-degree-sum order with ascending colors, a
/// first-unused-color symmetry cap, and forward checking on incident
/// uncolored edges. Budgeted: exceeding `budget` search nodes yields
/// [`ChromaticIndex::Unknown`].
pub fn exact_chromatic_index(g: &Graph, budget: u64) -> ChromaticIndex {
    let m = g.edge_count();
    if m == 0 {
        return ChromaticIndex::Class1(EdgeColoring::new(Vec::new()));
    }
    let delta = g.max_degree() as u32;
    assert!(delta <= 60, "color bitmask supports degree <= 60");
    let mut order: Vec<usize> = (0..m).collect();
    let degree_sum = |e: usize| {
        let (u, v) = g.endpoints(e);
        g.degree(u) + g.degree(v)
    };
    order.sort_by_key(|&e| (std::cmp::Reverse(degree_sum(e)), e));

    // remaining[pos..] = edges still to color, for forward checks
    let mut colors = vec![0u32; m];
    let mut used = vec![0u64; g.vertex_count()];
    let full: u64 = (1 << delta) - 1;
    let mut nodes: u64 = 0;

    fn dfs(
        g: &Graph,
        order: &[usize],
        pos: usize,
        max_used: u32,
        delta: u32,
        full: u64,
        colors: &mut [u32],
        used: &mut [u64],
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if pos == order.len() {
            return Some(true);
        }
        let e = order[pos];
        let (u, v) = g.endpoints(e);
        let avail = !(used[u] | used[v]) & full;
        // colors above max_used+1 are interchangeable: cap the branching
        let cap = (max_used + 1).min(delta);
        for c in 1..=cap {
            let bit = 1u64 << (c - 1);
            if avail & bit == 0 {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            colors[e] = c;
            used[u] |= bit;
            used[v] |= bit;
            // forward check: every uncolored edge at u or v keeps an option
            let feasible = [u, v].iter().all(|&x| {
                g.incident(x)
                    .iter()
                    .all(|&(y, f)| colors[f] != 0 || !(used[x] | used[y]) & full != 0)
            });
            if feasible {
                match dfs(
                    g,
                    order,
                    pos + 1,
                    max_used.max(c),
                    delta,
                    full,
                    colors,
                    used,
                    nodes,
                    budget,
                ) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
            colors[e] = 0;
            used[u] &= !bit;
            used[v] &= !bit;
        }
        Some(false)
    }

    match dfs(
        g, &order, 0, 0, delta, full, &mut colors, &mut used, &mut nodes, budget,
    ) {
        Some(true) => {
            let coloring = EdgeColoring::new(colors);
            debug_assert!(coloring.is_proper(g));
            ChromaticIndex::Class1(coloring)
        }
        Some(false) => ChromaticIndex::Class2,
        None => ChromaticIndex::Unknown,
    }
}
