//! Deterministic labeling constructions and exact optimization.
//!
//! Universal labelings come from three closed forms — powers of two from a
//! proper edge coloring, the arithmetic-progression star labeling, and the
//! two-scale tree labeling — plus exact-number results for 3- and
//! 4-regular graphs that hinge on a Class-1 decision. The module also
//! carries the degree-based bounds on the least feasible palette and a
//! branch-and-bound search for the exact universal labeling number.

use std::cmp::Reverse;
use std::collections::HashSet;

use itertools::Itertools;
use thiserror::Error;

use crate::coloring::{
    color_delta_plus_one, exact_chromatic_index, tree_edge_coloring_from, ChromaticIndex,
    ColoringError, EdgeColoring, DEFAULT_COLORING_BUDGET,
};
use crate::graph::{EdgeLabeling, Graph};
use crate::verify::is_sum_free;

/// Default node budget for [`min_universal_number`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("input graph is not a tree (connected with m = n - 1 required)")]
    NotATree,
    #[error("root {v} out of range for a graph on {n} vertices")]
    RootOutOfRange { v: usize, n: usize },
    #[error("graph is not {required}-regular: vertex {vertex} has degree {degree}")]
    NotRegular {
        required: usize,
        vertex: usize,
        degree: usize,
    },
    #[error("a star labeling needs at least one edge")]
    EmptyStar,
}

impl From<ColoringError> for ConstructError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::NotATree => ConstructError::NotATree,
            ColoringError::RootOutOfRange { v, n } => ConstructError::RootOutOfRange { v, n },
        }
    }
}

/// Lower and upper bounds on the least palette size admitting a universal
/// labeling, with one reason string per bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub lower: u64,
    pub upper: u64,
    pub reasons: Vec<String>,
}

/// Degree-based bounds on the universal labeling number.
///
/// A vertex of degree `Δ ≥ 2` contains a `Δ`-edge star whose exact number
/// is `2Δ-2`; the power-of-two construction caps the number at `2^Δ`. When
/// `Δ = 1` every component is a single edge and label 1 suffices.
pub fn lower_bound(g: &Graph) -> Result<BoundReport, ConstructError> {
    if g.edge_count() == 0 {
        return Err(ConstructError::EmptyGraph);
    }
    let delta = g.max_degree() as u64;
    let upper = 1u64 << delta;
    let (lower, lower_reason) = if delta == 1 {
        (
            1,
            "every component is a single edge, so any positive label works".to_string(),
        )
    } else {
        let lower = 2 * delta - 2;
        (
            lower,
            format!("a vertex of degree {delta} embeds a star whose exact number is {lower}"),
        )
    };
    Ok(BoundReport {
        lower,
        upper,
        reasons: vec![
            lower_reason,
            format!("powers of two from a proper edge coloring stay within 2^{delta} = {upper}"),
        ],
    })
}

/// Labels every edge `2^(c-1)` from a proper edge coloring `c`: an exact
/// `Δ`-coloring when the budgeted search certifies Class 1, otherwise the
/// fan-rotation `Δ+1`-coloring. Distinct powers of two make every vertex's
/// incident label set sum-free and all subset sums distinct, so the result
/// is universal; the largest label never exceeds `2^Δ`.
pub fn power_of_two_labeling(g: &Graph) -> EdgeLabeling {
    let coloring = match exact_chromatic_index(g, DEFAULT_COLORING_BUDGET) {
        ChromaticIndex::Class1(c) => c,
        _ => color_delta_plus_one(g),
    };
    EdgeLabeling::total(
        coloring
            .colors()
            .iter()
            .map(|&c| 1u64 << (c - 1))
            .collect(),
    )
}

/// The optimal star labeling: edge `i` of a star with `m` edges gets
/// `m-1+i`, using labels `m-1..=2m-2`. Any two subset sums of distinct
/// labels that could meet at the center differ from every single label, so
/// the labeling is universal and attains the `2m-2` lower bound. The
/// single-edge star gets label 1.
pub fn star_labeling(m: usize) -> Result<EdgeLabeling, ConstructError> {
    if m == 0 {
        return Err(ConstructError::EmptyStar);
    }
    if m == 1 {
        return Ok(EdgeLabeling::total(vec![1]));
    }
    let m = m as u64;
    Ok(EdgeLabeling::total((0..m).map(|i| m - 1 + i).collect()))
}

/// Whether an edge joins an even BFS depth to the next odd depth, or an
/// odd depth to the next even one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelParity {
    /// Parent endpoint at even depth.
    Even,
    /// Parent endpoint at odd depth.
    Odd,
}

/// The data behind a tree labeling: how each edge's label decomposes into
/// its color-derived base value and the depth-parity multiplier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeLabelingPlan {
    pub root: usize,
    /// BFS depth of every vertex from `root`.
    pub depths: Vec<usize>,
    /// Proper coloring with palette exactly `Δ`.
    pub coloring: EdgeColoring,
    /// Base value per edge: `color + Δ - 2`, inside `[Δ-1, 2Δ-2]`.
    pub n_values: Vec<u64>,
    /// Scale separating odd-level from even-level contributions; exceeds
    /// the largest possible sum of distinct base values at one vertex.
    pub multiplier: u64,
    pub parity: Vec<LevelParity>,
}

/// Universal tree labeling with all labels in `O(Δ³)`.
///
/// Each edge gets a base value `N(e) = c(e) + Δ - 2` from a `Δ`-coloring,
/// placing it in `[Δ-1, 2Δ-2]` where any two distinct values sum past the
/// top of the range: per-vertex base sets are sum-free and subset sums are
/// distinct. Edges whose parent endpoint sits at odd BFS depth carry
/// `N(e)·M` instead, with `M` = 1 + (sum of the whole base range), so an
/// incoming sum splits uniquely into (odd-level part, even-level part) and
/// adjacent vertices — one of which sees the shared edge on the opposite
/// parity — cannot collide. Defaults to the smallest-index maximum-degree
/// root.
pub fn tree_labeling(
    t: &Graph,
    root: Option<usize>,
) -> Result<(EdgeLabeling, TreeLabelingPlan), ConstructError> {
    if t.edge_count() == 0 {
        return Err(ConstructError::EmptyGraph);
    }
    if !t.is_tree() {
        return Err(ConstructError::NotATree);
    }
    let root = match root {
        Some(r) if r < t.vertex_count() => r,
        Some(r) => {
            return Err(ConstructError::RootOutOfRange {
                v: r,
                n: t.vertex_count(),
            })
        }
        None => t.max_degree_vertex().expect("tree has vertices"),
    };
    let delta = t.max_degree() as u64;
    let coloring = tree_edge_coloring_from(t, root)?;
    let depths: Vec<usize> = t
        .bfs_levels(root)
        .expect("root in range")
        .into_iter()
        .map(|d| d.expect("tree is connected"))
        .collect();

    // Δ = 1 degenerates (the base range [Δ-1, 2Δ-2] collapses to {0});
    // a single edge is universal under any label, so use 1.
    let (n_values, multiplier): (Vec<u64>, u64) = if delta == 1 {
        (vec![1], 1)
    } else {
        let n_values = coloring
            .colors()
            .iter()
            .map(|&c| c as u64 + delta - 2)
            .collect();
        // K = (Δ-1) + Δ + … + (2Δ-2), the largest sum of distinct base values
        let k = 3 * delta * (delta - 1) / 2;
        (n_values, k + 1)
    };

    let parity: Vec<LevelParity> = t
        .edges()
        .iter()
        .map(|&(u, v)| {
            let parent_depth = depths[u].min(depths[v]);
            if parent_depth % 2 == 0 {
                LevelParity::Even
            } else {
                LevelParity::Odd
            }
        })
        .collect();

    let labels: Vec<u64> = n_values
        .iter()
        .zip(&parity)
        .map(|(&n, p)| match p {
            LevelParity::Even => n,
            LevelParity::Odd => n * multiplier,
        })
        .collect();

    let plan = TreeLabelingPlan {
        root,
        depths,
        coloring,
        n_values,
        multiplier,
        parity,
    };
    Ok((EdgeLabeling::total(labels), plan))
}

/// Outcome of a regular-graph construction whose exact number hinges on
/// whether `Δ` colors suffice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularLabeling {
    /// Class 1: the labeling is universal and `exact_number` is the least
    /// feasible palette size.
    Labeled {
        labeling: EdgeLabeling,
        exact_number: u64,
    },
    /// Class 2: every labeling from `1..=exceeds` fails.
    Class2 { exceeds: u64 },
    /// The Class-1 decision ran out of budget.
    Unknown,
}

fn regular_by_colors(
    g: &Graph,
    required: usize,
    budget: u64,
    color_to_label: &[u64],
    exact_number: u64,
) -> Result<RegularLabeling, ConstructError> {
    match g.regular_degree() {
        Some(d) if d == required => {}
        _ => {
            let vertex = (0..g.vertex_count())
                .find(|&v| g.degree(v) != required)
                .unwrap_or(0);
            return Err(ConstructError::NotRegular {
                required,
                vertex,
                degree: g.degree(vertex),
            });
        }
    }
    Ok(match exact_chromatic_index(g, budget) {
        ChromaticIndex::Class1(c) => {
            let labels = c
                .colors()
                .iter()
                .map(|&col| color_to_label[col as usize - 1])
                .collect();
            RegularLabeling::Labeled {
                labeling: EdgeLabeling::total(labels),
                exact_number,
            }
        }
        ChromaticIndex::Class2 => RegularLabeling::Class2 {
            exceeds: exact_number,
        },
        ChromaticIndex::Unknown => RegularLabeling::Unknown,
    })
}

/// Labels a 3-regular graph from `{1, 2, 4}` when it admits a proper
/// 3-edge-coloring, attaining the exact number 4; Class-2 graphs need more
/// than 4.
pub fn cubic_labeling(g: &Graph, budget: u64) -> Result<RegularLabeling, ConstructError> {
    regular_by_colors(g, 3, budget, &[1, 2, 4], 4)
}

/// Labels a 4-regular graph from `{3, 5, 6, 7}` when it admits a proper
/// 4-edge-coloring, attaining the exact number 7; Class-2 graphs need more
/// than 7.
pub fn quartic_labeling(g: &Graph, budget: u64) -> Result<RegularLabeling, ConstructError> {
    regular_by_colors(g, 4, budget, &[3, 5, 6, 7], 7)
}

/// Optional filters for [`admissible_vertex_sets`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SetFilters {
    /// Keep only sets containing this element.
    pub require_element: Option<u64>,
    /// Drop sets where distinct `a, b, c` (all ≠ `M`) satisfy `a+b = c+M`:
    /// such a set cannot sit at a vertex whose opposite endpoints can aim
    /// `c` and `M` back at it.
    pub pair_filter_max: Option<u64>,
}

/// All sum-free `d`-subsets of `{1..k}` passing the filters, in
/// lexicographic order. These are the candidate per-vertex label sets for
/// a `d`-regular graph with palette `k`.
pub fn admissible_vertex_sets(d: usize, k: u64, filters: &SetFilters) -> Vec<Vec<u64>> {
    assert!(d >= 1, "vertex sets need at least one element");
    (1..=k)
        .combinations(d)
        .filter(|s| {
            is_sum_free(s)
                && filters.require_element.is_none_or(|r| s.contains(&r))
                && filters.pair_filter_max.is_none_or(|m| !pair_excluded(s, m))
        })
        .collect()
}

fn pair_excluded(s: &[u64], m: u64) -> bool {
    let rest: Vec<u64> = s.iter().copied().filter(|&x| x != m).collect();
    for (i, &a) in rest.iter().enumerate() {
        for &b in &rest[i + 1..] {
            for &c in &rest {
                if c != a && c != b && a + b == c + m {
                    return true;
                }
            }
        }
    }
    false
}

/// Result of the exact universal-number search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    /// `number` is the least palette size; `witness` is the first feasible
    /// labeling in search order.
    Exact { number: u64, witness: EdgeLabeling },
    /// Search stopped early: the number is at least `lower` and at most
    /// `upper` when known.
    Unknown { lower: u64, upper: Option<u64> },
}

struct NumberSearch<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    labels: Vec<Option<u64>>,
    nodes: u64,
    budget: u64,
}

impl NumberSearch<'_> {
    /// Conflict check for edge `f` against currently labeled edges only.
    /// Sound as a prune: subset sums over a partial labeling survive into
    /// every completion, so a collision here dooms the whole subtree. At a
    /// full leaf the check is exact.
    fn partial_conflict(&self, f: usize) -> bool {
        let Some(lf) = self.labels[f] else {
            return false;
        };
        let (u, v) = self.g.endpoints(f);
        let side = |x: usize| -> Vec<u64> {
            let mut sums = vec![0u64];
            for &(_, e) in self.g.incident(x) {
                if e == f {
                    continue;
                }
                if let Some(l) = self.labels[e] {
                    for i in 0..sums.len() {
                        sums.push(sums[i] + l);
                    }
                }
            }
            sums
        };
        let sums_u = side(u);
        let sums_v: HashSet<u64> = side(v).into_iter().collect();
        sums_u
            .iter()
            .any(|&a| sums_v.contains(&(a + lf)) || (a >= lf && sums_v.contains(&(a - lf))))
    }

    /// `Some(true)`: found (labels left filled). `Some(false)`: refuted.
    /// `None`: budget exhausted.
    fn dfs(&mut self, pos: usize, k: u64) -> Option<bool> {
        if pos == self.order.len() {
            return Some(true);
        }
        let e = self.order[pos];
        let (u, v) = self.g.endpoints(e);
        'labels: for label in 1..=k {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            for x in [u, v] {
                for &(_, f) in self.g.incident(x) {
                    if self.labels[f] == Some(label) {
                        continue 'labels;
                    }
                }
            }
            self.labels[e] = Some(label);
            let admissible = [u, v].iter().all(|&x| {
                let set: Vec<u64> = self
                    .g
                    .incident(x)
                    .iter()
                    .filter_map(|&(_, f)| self.labels[f])
                    .collect();
                is_sum_free(&set)
            }) && [u, v].iter().all(|&x| {
                self.g
                    .incident(x)
                    .iter()
                    .all(|&(_, f)| !self.partial_conflict(f))
            });
            if admissible {
                match self.dfs(pos + 1, k) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => {
                        self.labels[e] = None;
                        return None;
                    }
                }
            }
            self.labels[e] = None;
        }
        Some(false)
    }
}

/// Exact universal labeling number by iterative deepening on the palette
/// size `k`, from the degree lower bound up to `k_max`.
///
/// Each `k` runs a branch-and-bound over edges in descending
/// endpoint-degree-sum order (index ties ascending) assigning labels
/// `1..=k` in ascending order, pruning on properness, per-vertex sum-free
/// admissibility, and partial subset-sum conflicts at every touched edge.
/// Feasibility is monotone in `k`, so the first feasible `k` is the
/// number, with the first witness in search order. The node budget is
/// shared across all `k`.
pub fn min_universal_number(
    g: &Graph,
    k_max: u64,
    budget: u64,
) -> Result<SearchResult, ConstructError> {
    let bounds = lower_bound(g)?;
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.endpoints(e);
        (Reverse(g.degree(u) + g.degree(v)), e)
    });
    let mut search = NumberSearch {
        g,
        order,
        labels: vec![None; g.edge_count()],
        nodes: 0,
        budget,
    };
    let mut k = bounds.lower;
    while k <= k_max {
        match search.dfs(0, k) {
            Some(true) => {
                let witness = EdgeLabeling::total(
                    search.labels.iter().map(|l| l.expect("leaf")).collect(),
                );
                return Ok(SearchResult::Exact { number: k, witness });
            }
            Some(false) => k += 1,
            None => {
                return Ok(SearchResult::Unknown {
                    lower: k,
                    upper: Some(bounds.upper),
                })
            }
        }
    }
    Ok(SearchResult::Unknown {
        lower: k,
        upper: Some(bounds.upper),
    })
}
