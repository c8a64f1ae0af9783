//! Universality checking.
//!
//! A total labeling is *universal* when, under every orientation of the
//! graph, adjacent vertices receive distinct sums of incoming labels.
//! [`verify_brute`] enumerates all `2^m` orientations. [`verify_local`]
//! decides the same predicate one edge at a time: for `e = {u, v}` with
//! label `L`, a conflicting orientation exists iff some subset sum `a` over
//! the other u-incident labels and subset sum `b` over the other v-incident
//! labels satisfy `|a - b| = L`. In a simple graph those two edge sets are
//! disjoint and orient independently, so the per-edge condition is exact;
//! the equivalence is enforced by a property test against the brute oracle.

use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{EdgeLabeling, Graph, Orientation};

/// Largest edge count `verify_brute` accepts by default.
pub const DEFAULT_BRUTE_EDGE_CAP: usize = 20;

/// Largest vertex degree `verify_local` accepts by default; each endpoint
/// enumerates `2^(d-1)` subset sums.
pub const DEFAULT_LOCAL_DEGREE_CAP: usize = 25;

/// Errors from the universality checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("edge {edge} has no label; verification needs a total labeling")]
    PartialLabeling { edge: usize },
    #[error("{m} edges exceeds the orientation-enumeration cap of {cap}; raise the cap or use the local method")]
    TooManyEdges { m: usize, cap: usize },
    #[error("vertex {vertex} has degree {degree}, exceeding the subset-sum degree cap of {cap}")]
    DegreeTooHigh {
        vertex: usize,
        degree: usize,
        cap: usize,
    },
}

/// Which checker produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Local,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Local => "local",
        }
    }
}

/// Which endpoint of the witness edge receives it in the conflicting
/// orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConflictDirection {
    IntoU,
    IntoV,
}

/// A certificate that a labeling is not universal.
///
/// For the edge `{u, v}` (with `u < v`), orienting exactly the edges of
/// `into_u` toward `u`, exactly those of `into_v` toward `v`, and the edge
/// itself per `direction` makes the incoming sums at `u` and `v` equal,
/// whatever the remaining edges do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Index of the conflicting edge.
    pub edge: usize,
    /// u-incident edge indices (excluding `edge`) oriented into `u`.
    pub into_u: Vec<usize>,
    /// v-incident edge indices (excluding `edge`) oriented into `v`.
    pub into_v: Vec<usize>,
    /// Where `edge` itself points.
    pub direction: ConflictDirection,
}

impl Witness {
    /// Expands the witness to a full orientation exhibiting the conflict:
    /// listed edges point at their endpoint, the remaining incident edges
    /// point away, and every other edge points at its larger endpoint.
    pub fn expand(&self, g: &Graph) -> Orientation {
        let mut heads: Vec<usize> = g.edges().iter().map(|&(_, v)| v).collect();
        let (u, v) = g.endpoints(self.edge);
        for &(w, f) in g.incident(u) {
            if f != self.edge {
                heads[f] = if self.into_u.contains(&f) { u } else { w };
            }
        }
        for &(w, f) in g.incident(v) {
            if f != self.edge {
                heads[f] = if self.into_v.contains(&f) { v } else { w };
            }
        }
        heads[self.edge] = match self.direction {
            ConflictDirection::IntoU => u,
            ConflictDirection::IntoV => v,
        };
        Orientation::from_heads(g, &heads).expect("witness refers to real endpoints")
    }
}

/// Verdict of a universality check, with a replayable counterexample when
/// the labeling fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub universal: bool,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl VerificationReport {
    /// JSON form; edges are rendered as `[u, v]` endpoint pairs.
    pub fn to_json(&self, g: &Graph) -> Value {
        let pair = |f: usize| {
            let (a, b) = g.endpoints(f);
            json!([a, b])
        };
        let witness = match &self.witness {
            None => Value::Null,
            Some(w) => json!({
                "edge": pair(w.edge),
                "intoU": w.into_u.iter().map(|&f| pair(f)).collect::<Vec<_>>(),
                "intoV": w.into_v.iter().map(|&f| pair(f)).collect::<Vec<_>>(),
                "direction": match w.direction {
                    ConflictDirection::IntoU => "u",
                    ConflictDirection::IntoV => "v",
                },
            }),
        };
        json!({
            "universal": self.universal,
            "method": self.method.as_str(),
            "witness": witness,
        })
    }
}

fn require_total(g: &Graph, l: &EdgeLabeling) -> Result<Vec<u64>, VerifyError> {
    assert_eq!(
        l.len(),
        g.edge_count(),
        "labeling length must match the edge count"
    );
    match l.first_missing() {
        Some(edge) => Err(VerifyError::PartialLabeling { edge }),
        None => Ok(l.to_total().expect("no missing entries")),
    }
}

/// Incoming label sum at every vertex under an orientation.
pub fn in_sums(g: &Graph, l: &EdgeLabeling, o: &Orientation) -> Result<Vec<u64>, VerifyError> {
    let labels = require_total(g, l)?;
    assert_eq!(o.len(), g.edge_count(), "orientation must cover every edge");
    let mut sums = vec![0u64; g.vertex_count()];
    for (e, &label) in labels.iter().enumerate() {
        sums[o.head(e)] += label;
    }
    Ok(sums)
}

/// Checks universality by enumerating every orientation, with the default
/// edge cap.
pub fn verify_brute(g: &Graph, l: &EdgeLabeling) -> Result<VerificationReport, VerifyError> {
    verify_brute_capped(g, l, DEFAULT_BRUTE_EDGE_CAP)
}

/// Checks universality by enumerating all `2^m` orientations.
///
/// The reported witness comes from the lexicographically smallest failing
/// orientation bitmask (bit `e` set reverses edge `e` toward its smaller
/// endpoint) and, within it, the smallest conflicting edge index.
pub fn verify_brute_capped(
    g: &Graph,
    l: &EdgeLabeling,
    edge_cap: usize,
) -> Result<VerificationReport, VerifyError> {
    let labels = require_total(g, l)?;
    let m = g.edge_count();
    let cap = edge_cap.min(63);
    if m > cap {
        return Err(VerifyError::TooManyEdges { m, cap });
    }
    let mut sums = vec![0u64; g.vertex_count()];
    for mask in 0..1u64 << m {
        sums.fill(0);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let head = if mask >> e & 1 == 0 { v } else { u };
            sums[head] += labels[e];
        }
        if let Some(e) = (0..m).find(|&e| {
            let (u, v) = g.endpoints(e);
            sums[u] == sums[v]
        }) {
            let o = Orientation::from_bitmask(g, mask);
            return Ok(VerificationReport {
                universal: false,
                method: Method::Brute,
                witness: Some(witness_from_orientation(g, e, &o)),
            });
        }
    }
    Ok(VerificationReport {
        universal: true,
        method: Method::Brute,
        witness: None,
    })
}

fn witness_from_orientation(g: &Graph, e: usize, o: &Orientation) -> Witness {
    let (u, v) = g.endpoints(e);
    let incoming = |x: usize| {
        g.incident(x)
            .iter()
            .filter(|&&(_, f)| f != e && o.head(f) == x)
            .map(|&(_, f)| f)
            .collect::<Vec<_>>()
    };
    Witness {
        edge: e,
        into_u: incoming(u),
        into_v: incoming(v),
        direction: if o.head(e) == u {
            ConflictDirection::IntoU
        } else {
            ConflictDirection::IntoV
        },
    }
}

/// Per-vertex subset-sum tables, built lazily once per vertex and shared by
/// every excluded-edge query in a verification run.
struct SubsetSums {
    tables: Vec<Option<Vec<u64>>>,
}

impl SubsetSums {
    fn new(n: usize) -> Self {
        SubsetSums {
            tables: vec![None; n],
        }
    }

    /// `table[mask]` = sum of labels over the masked subset of `v`'s
    /// incident list (edge-index order).
    fn table(&mut self, g: &Graph, labels: &[u64], v: usize) -> &[u64] {
        if self.tables[v].is_none() {
            let inc = g.incident(v);
            let mut t = vec![0u64; 1 << inc.len()];
            for mask in 1..t.len() {
                let low = mask.trailing_zeros() as usize;
                t[mask] = t[mask & (mask - 1)] + labels[inc[low].1];
            }
            self.tables[v] = Some(t);
        }
        self.tables[v].as_deref().unwrap()
    }

    /// sum → smallest incident-list mask, over subsets avoiding position
    /// `skip`.
    fn sums_excluding(
        &mut self,
        g: &Graph,
        labels: &[u64],
        v: usize,
        skip: usize,
    ) -> HashMap<u64, u32> {
        let t = self.table(g, labels, v);
        let full = (t.len() - 1) as u32 & !(1 << skip);
        let mut out = HashMap::new();
        // Submask sweep runs in decreasing mask order, so the final insert
        // for any repeated sum carries the smallest representative mask.
        let mut sub = full;
        loop {
            out.insert(t[sub as usize], sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & full;
        }
        out
    }
}

fn incident_position(g: &Graph, v: usize, e: usize) -> usize {
    g.incident(v)
        .iter()
        .position(|&(_, f)| f == e)
        .expect("edge is incident to its endpoint")
}

fn mask_edges(g: &Graph, v: usize, mask: u32) -> Vec<usize> {
    g.incident(v)
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &(_, f))| f)
        .collect()
}

/// The per-edge criterion: smallest-`a` conflict at edge `e`, if any.
/// Ties prefer the edge pointing into `u`, then the smallest subset masks.
fn edge_conflict(g: &Graph, labels: &[u64], cache: &mut SubsetSums, e: usize) -> Option<Witness> {
    let (u, v) = g.endpoints(e);
    let label = labels[e];
    let map_u = cache.sums_excluding(g, labels, u, incident_position(g, u, e));
    let map_v = cache.sums_excluding(g, labels, v, incident_position(g, v, e));
    let mut u_sums: Vec<(u64, u32)> = map_u.into_iter().collect();
    u_sums.sort_unstable();
    for (a, mask_u) in u_sums {
        // e into u: conflict iff b = a + label is a v-side sum
        if let Some(&mask_v) = map_v.get(&(a + label)) {
            return Some(Witness {
                edge: e,
                into_u: mask_edges(g, u, mask_u),
                into_v: mask_edges(g, v, mask_v),
                direction: ConflictDirection::IntoU,
            });
        }
        // e into v: conflict iff b = a - label is a v-side sum
        if a >= label {
            if let Some(&mask_v) = map_v.get(&(a - label)) {
                return Some(Witness {
                    edge: e,
                    into_u: mask_edges(g, u, mask_u),
                    into_v: mask_edges(g, v, mask_v),
                    direction: ConflictDirection::IntoV,
                });
            }
        }
    }
    None
}

/// Checks universality edge by edge via subset sums, with the default
/// degree cap.
pub fn verify_local(g: &Graph, l: &EdgeLabeling) -> Result<VerificationReport, VerifyError> {
    verify_local_capped(g, l, DEFAULT_LOCAL_DEGREE_CAP)
}

/// Checks universality edge by edge via subset sums.
///
/// Edges are scanned in index order and the first conflict is reported, so
/// the witness is deterministic.
pub fn verify_local_capped(
    g: &Graph,
    l: &EdgeLabeling,
    degree_cap: usize,
) -> Result<VerificationReport, VerifyError> {
    let labels = require_total(g, l)?;
    for v in 0..g.vertex_count() {
        let degree = g.degree(v);
        if degree > degree_cap {
            return Err(VerifyError::DegreeTooHigh {
                vertex: v,
                degree,
                cap: degree_cap,
            });
        }
    }
    let mut cache = SubsetSums::new(g.vertex_count());
    for e in 0..g.edge_count() {
        if let Some(witness) = edge_conflict(g, &labels, &mut cache, e) {
            return Ok(VerificationReport {
                universal: false,
                method: Method::Local,
                witness: Some(witness),
            });
        }
    }
    Ok(VerificationReport {
        universal: true,
        method: Method::Local,
        witness: None,
    })
}

/// The per-edge criterion for a single edge; only the two endpoint degrees
/// are constrained by `degree_cap`. Used to audit individual edges of large
/// graphs where a full scan would be infeasible.
pub fn local_edge_witness(
    g: &Graph,
    l: &EdgeLabeling,
    e: usize,
    degree_cap: usize,
) -> Result<Option<Witness>, VerifyError> {
    let labels = require_total(g, l)?;
    let (u, v) = g.endpoints(e);
    for x in [u, v] {
        let degree = g.degree(x);
        if degree > degree_cap {
            return Err(VerifyError::DegreeTooHigh {
                vertex: x,
                degree,
                cap: degree_cap,
            });
        }
    }
    let mut cache = SubsetSums::new(g.vertex_count());
    Ok(edge_conflict(g, &labels, &mut cache, e))
}

/// True iff no two edges sharing a vertex carry equal labels.
pub fn is_proper_edge_coloring(g: &Graph, l: &EdgeLabeling) -> Result<bool, VerifyError> {
    let labels = require_total(g, l)?;
    for v in 0..g.vertex_count() {
        let mut seen = HashSet::new();
        for &(_, e) in g.incident(v) {
            if !seen.insert(labels[e]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff no subset of two or more elements sums to an element of the
/// set. Duplicate entries are collapsed first.
pub fn is_sum_free(s: &[u64]) -> bool {
    let mut elems: Vec<u64> = s.to_vec();
    elems.sort_unstable();
    elems.dedup();
    let k = elems.len();
    assert!(k < 32, "sum-free check enumerates 2^k subsets");
    let members: HashSet<u64> = elems.iter().copied().collect();
    for mask in 0u32..1 << k {
        if mask.count_ones() < 2 {
            continue;
        }
        let sum: u128 = elems
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x as u128)
            .sum();
        if sum <= u64::MAX as u128 && members.contains(&(sum as u64)) {
            return false;
        }
    }
    true
}
