//! Helpers shared by the integration test suites.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ulg::graph::Orientation;
use ulg::verify::in_sums;
use ulg::{EdgeLabeling, Graph};

/// Exact probability that a uniformly random orientation produces equal
/// incoming sums on some adjacent pair, by enumerating all `2^m`
/// orientations. Only sensible for small graphs.
pub fn exact_conflict_probability(g: &Graph, l: &EdgeLabeling) -> f64 {
    let m = g.edge_count();
    assert!(m <= 20, "exact enumeration needs a small edge count");
    let mut conflicts = 0u64;
    for mask in 0..1u64 << m {
        let o = Orientation::from_bitmask(g, mask);
        let sums = in_sums(g, l, &o).expect("total labeling");
        if g.edges().iter().any(|&(u, v)| sums[u] == sums[v]) {
            conflicts += 1;
        }
    }
    conflicts as f64 / (1u64 << m) as f64
}

/// Seeded random (graph, total labeling) pair: `n` in `2..=n_max`, each
/// vertex pair kept with probability 1/2, at most `m_max` edges (forcing
/// one edge when the coin leaves none), labels uniform in `1..=label_max`.
pub fn random_pair(seed: u64, n_max: usize, m_max: usize, label_max: u64) -> (Graph, EdgeLabeling) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=n_max);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    edges.truncate(m_max);
    if edges.is_empty() {
        edges.push((0, 1));
    }
    let g = Graph::new(n, &edges).expect("pairs are distinct and in range");
    let labels: Vec<u64> = (0..g.edge_count())
        .map(|_| rng.random_range(1..=label_max))
        .collect();
    let l = EdgeLabeling::total(labels);
    (g, l)
}
