//! Randomized labelings and conflict-probability estimation.
//!
//! [`aeul_labeling`] builds labelings that keep the probability of a
//! sum-collision under a uniformly random orientation small: edges between
//! low-degree vertices get powers of two (collision-immune outright), and
//! the rest get large primes shifted past a power-of-two scale so the two
//! layers cannot interact. [`kn_random_labeling`] labels a complete graph
//! uniformly at random. [`estimate_conflict_probability`] measures the
//! collision rate of any labeling by Monte Carlo with a Wilson interval.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::coloring::color_delta_plus_one;
use crate::graph::{EdgeLabeling, Graph, Orientation};
use crate::verify::VerifyError;

/// Slack factor when comparing the largest label against the asymptotic
/// `n^(lg n / lg lg n)` budget; exceeding it sets a flag, never an error.
pub const AEUL_BOUND_SLACK: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RandomError {
    #[error("randomized construction needs n >= 4 (lg lg n must be positive), got n = {n}")]
    TooSmall { n: usize },
}

/// splitmix64 mixing step; used to derive independent per-trial seeds.
fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn trial_seed(seed: u64, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(trial))
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin primality test, exact for all `u64` inputs
/// with this fixed base set.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn next_prime_at_least(mut x: u64) -> u64 {
    if x <= 2 {
        return 2;
    }
    if x % 2 == 0 {
        x += 1;
    }
    while !is_prime(x) {
        x += 2;
    }
    x
}

/// Edges whose *both* endpoints have degree strictly below `threshold`,
/// in ascending index order.
pub fn split_low_degree(g: &Graph, threshold: f64) -> Vec<usize> {
    assert!(threshold > 0.0, "degree threshold must be positive");
    g.edges()
        .iter()
        .enumerate()
        .filter(|&(_, &(u, v))| {
            (g.degree(u) as f64) < threshold && (g.degree(v) as f64) < threshold
        })
        .map(|(e, _)| e)
        .collect()
}

/// The label primes for a graph on `n` vertices: `K = max(1, ⌊lg n / lg lg n⌋)`
/// primes, where `p_i` is the smallest prime at least
///
/// - `2n + 1` (every prime clears the largest possible incoming count),
/// - `p_{i-1} + 1` (strictly increasing),
/// - `⌈(1 + iε) · n^⌊(i+1)/2⌋⌉` (pairwise magnitude schedule), and
/// - `n · p_{i-1} + 1` when `i > 1` is odd (ratio jump between pairs).
pub fn select_primes(n: usize, epsilon: f64) -> Result<Vec<u64>, RandomError> {
    if n < 4 {
        return Err(RandomError::TooSmall { n });
    }
    let lg_n = (n as f64).log2();
    let k_count = ((lg_n / lg_n.log2()).floor() as usize).max(1);
    let mut primes: Vec<u64> = Vec::with_capacity(k_count);
    for i in 1..=k_count {
        let magnitude = (n as u128).pow((i as u32 + 1) / 2);
        let window = ((1.0 + i as f64 * epsilon) * magnitude as f64).ceil() as u64;
        let mut lower = (2 * n as u64 + 1).max(window);
        if let Some(&prev) = primes.last() {
            lower = lower.max(prev + 1);
            if i % 2 == 1 {
                lower = lower.max(n as u64 * prev + 1);
            }
        }
        primes.push(next_prime_at_least(lower));
    }
    Ok(primes)
}

/// A labeling aimed at conflict-free behavior under random orientations,
/// with the data needed to audit it.
#[derive(Debug, Clone, PartialEq)]
pub struct AeulLabeling {
    pub labeling: EdgeLabeling,
    /// Edges of the low-degree subgraph `H`, ascending.
    pub h_edges: Vec<usize>,
    /// Primes used for the non-`H` labels, ascending.
    pub primes: Vec<u64>,
    /// `2^(1 + ⌈lg n⌉)`; every `H`-label is below it, every other label is
    /// a multiple of it.
    pub scale: u64,
    /// Degree threshold `lg n` defining `H`.
    pub threshold: f64,
    /// Number of primes drawn from.
    pub k_count: usize,
    pub seed: u64,
    /// Largest label, 0 when the graph has no edges.
    pub max_label: u64,
    /// The asymptotic budget `n^(lg n / lg lg n)` the labels aim to stay
    /// within.
    pub reference_bound: f64,
    /// Set when `max_label` exceeds [`AEUL_BOUND_SLACK`] times the budget;
    /// informational only.
    pub exceeds_reference: bool,
}

impl AeulLabeling {
    /// Sidecar JSON describing the construction: primes, scale, threshold,
    /// the `H` edge set (as endpoint pairs), and the seed.
    pub fn sidecar_json(&self, g: &Graph) -> Value {
        json!({
            "primes": self.primes,
            "scale": self.scale,
            "threshold": self.threshold,
            "h_edges": self
                .h_edges
                .iter()
                .map(|&e| {
                    let (u, v) = g.endpoints(e);
                    json!([u, v])
                })
                .collect::<Vec<_>>(),
            "seed": self.seed,
            "max_label": self.max_label,
            "exceeds_reference": self.exceeds_reference,
        })
    }
}

/// Builds the two-layer randomized labeling.
///
/// Edges whose endpoints both have degree below `lg n` form `H` and get
/// `2^(color-1)` from a proper `(Δ(H)+1)`-coloring of `H` — all below the
/// scale `2^(1+⌈lg n⌉)`. Every other edge gets `p · scale` for an
/// independently, uniformly drawn `p` among the selected primes (seeded,
/// edges in index order). Low bits of any incoming sum then identify the
/// incoming `H`-subset exactly, so `H`-edges can never be the site of a
/// collision; only prime-layer coincidences remain.
pub fn aeul_labeling(g: &Graph, epsilon: f64, seed: u64) -> Result<AeulLabeling, RandomError> {
    let n = g.vertex_count();
    if n < 4 {
        return Err(RandomError::TooSmall { n });
    }
    let threshold = (n as f64).log2();
    let primes = select_primes(n, epsilon)?;
    let scale = 1u64 << (1 + (n as f64).log2().ceil() as u32);

    let h_edges = split_low_degree(g, threshold);
    let h_pairs: Vec<(usize, usize)> = h_edges.iter().map(|&e| g.endpoints(e)).collect();
    let h_graph = Graph::new(n, &h_pairs).expect("subgraph of a simple graph");
    let h_coloring = color_delta_plus_one(&h_graph);

    let mut labels: Vec<Option<u64>> = vec![None; g.edge_count()];
    for (i, &e) in h_edges.iter().enumerate() {
        labels[e] = Some(1u64 << (h_coloring.color(i) - 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (e, slot) in labels.iter_mut().enumerate() {
        if slot.is_none() {
            let p = primes[rng.random_range(0..primes.len())];
            *slot = Some(p * scale);
            let _ = e;
        }
    }
    let labeling = EdgeLabeling::total(labels.into_iter().map(|l| l.unwrap()).collect());

    let max_label = labeling.max_label().unwrap_or(0);
    let lg_n = (n as f64).log2();
    let reference_bound = (n as f64).powf(lg_n / lg_n.log2());
    Ok(AeulLabeling {
        k_count: primes.len(),
        labeling,
        h_edges,
        primes,
        scale,
        threshold,
        seed,
        max_label,
        reference_bound,
        exceeds_reference: max_label as f64 > AEUL_BOUND_SLACK * reference_bound,
    })
}

/// Labels every edge of `K_n` independently and uniformly from `1..=f`.
pub fn kn_random_labeling(n: usize, f: u64, seed: u64) -> (Graph, EdgeLabeling) {
    assert!(n >= 2, "complete graph needs n >= 2");
    assert!(f >= 1, "label range needs f >= 1");
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    let g = Graph::new(n, &edges).expect("complete graph is simple");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<u64> = (0..g.edge_count())
        .map(|_| rng.random_range(1..=f))
        .collect();
    let labeling = EdgeLabeling::total(labels);
    (g, labeling)
}

/// Monte Carlo estimate of a conflict probability, with its Wilson 95%
/// interval and the seed that reproduces it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConflictEstimate {
    pub trials: u64,
    pub conflicts: u64,
    pub estimate: f64,
    pub ci95: (f64, f64),
    pub seed: u64,
}

const WILSON_Z: f64 = 1.959963984540054;

fn wilson_interval(conflicts: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = conflicts as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // the boundary cases are exactly 0 and 1; don't let rounding drift them
    let lo = if conflicts == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if conflicts == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// One uniformly random orientation: `⌈m/64⌉` generator words, bit `e%64`
/// of word `e/64` set reverses edge `e` toward its smaller endpoint.
fn sample_orientation(g: &Graph, rng: &mut ChaCha8Rng) -> Orientation {
    let m = g.edge_count();
    let words: Vec<u64> = (0..m.div_ceil(64)).map(|_| rng.next_u64()).collect();
    let heads: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            if words[e / 64] >> (e % 64) & 1 == 0 {
                v
            } else {
                u
            }
        })
        .collect();
    Orientation::from_heads(g, &heads).expect("heads are endpoints")
}

/// Samples `trials` independent uniform orientations and counts those in
/// which some adjacent pair receives equal incoming sums. Each trial runs
/// on its own generator seeded by a fixed split of `seed` and the trial
/// index, so results are independent of evaluation order.
pub fn estimate_conflict_probability(
    g: &Graph,
    l: &EdgeLabeling,
    trials: u64,
    seed: u64,
) -> Result<ConflictEstimate, VerifyError> {
    assert!(trials >= 1, "estimation needs at least one trial");
    let labels = match l.first_missing() {
        Some(edge) => return Err(VerifyError::PartialLabeling { edge }),
        None => l.to_total().expect("no missing entries"),
    };
    let mut conflicts = 0u64;
    let mut sums = vec![0u64; g.vertex_count()];
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
        let o = sample_orientation(g, &mut rng);
        sums.fill(0);
        for (e, &label) in labels.iter().enumerate() {
            sums[o.head(e)] += label;
        }
        if g.edges().iter().any(|&(u, v)| sums[u] == sums[v]) {
            conflicts += 1;
        }
    }
    Ok(ConflictEstimate {
        trials,
        conflicts,
        estimate: conflicts as f64 / trials as f64,
        ci95: wilson_interval(conflicts, trials),
        seed,
    })
}
