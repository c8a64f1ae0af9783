//! Graph representation, generators, traversal, and text I/O.
//!
//! Graphs are finite, simple, and undirected. Vertices are dense integers
//! `0..n`, and every edge carries a stable index `0..m` assigned in file or
//! generation order; labelings, orientations, and game transcripts all refer
//! to edges through those indices.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Errors from graph construction, parsing, and generation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge ({u}, {v}) is a self-loop")]
    SelfLoop { u: usize, v: usize },
    #[error("edge ({u}, {v}) appears more than once")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{descriptor}`: {msg}")]
    BadGeneratorParams { descriptor: String, msg: String },
    #[error("graph is not a tree (connected with m = n - 1 required)")]
    NotATree,
}

/// A simple undirected graph with stable edge indices.
///
/// Edge endpoints are stored normalized as `(min, max)`; the edge *index* is
/// the position in insertion order and never changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// adjacency: vertex -> (neighbor, edge index), in edge-index order
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph on `n` vertices, validating simplicity and ranges.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut seen = HashSet::new();
        let mut adj = vec![Vec::new(); n];
        for (idx, &(a, b)) in edge_list.iter().enumerate() {
            if a == b {
                return Err(GraphError::SelfLoop { u: a, v: b });
            }
            for &v in &[a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { v, n });
                }
            }
            let pair = (a.min(b), a.max(b));
            if !seen.insert(pair) {
                return Err(GraphError::DuplicateEdge { u: pair.0, v: pair.1 });
            }
            edges.push(pair);
            adj[pair.0].push((pair.1, idx));
            adj[pair.1].push((pair.0, idx));
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e` as `(u, v)` with `u < v`.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// All edges in index order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Incident `(neighbor, edge index)` pairs of `v`, in edge-index order.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Smallest-index vertex of maximum degree; `None` for the empty graph.
    pub fn max_degree_vertex(&self) -> Option<usize> {
        let d = self.max_degree();
        (0..self.n).find(|&v| self.degree(v) == d)
    }

    /// The edge joining `u` and `v`, if present.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u]
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    /// Degree shared by all vertices, if the graph is regular and nonempty.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        match self.bfs_levels(0) {
            Ok(depths) => depths.iter().all(|d| d.is_some()),
            Err(_) => false,
        }
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() + 1 == self.n && self.is_connected()
    }

    /// BFS depths from `root`; vertices outside the root's component are `None`.
    pub fn bfs_levels(&self, root: usize) -> Result<Vec<Option<usize>>, GraphError> {
        if root >= self.n {
            return Err(GraphError::VertexOutOfRange { v: root, n: self.n });
        }
        let mut depth = vec![None; self.n];
        depth[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let d = depth[v].unwrap();
            for &(w, _) in &self.adj[v] {
                if depth[w].is_none() {
                    depth[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(depth)
    }

    /// The graph with edge `e` removed; later edge indices shift down by one.
    pub fn without_edge(&self, e: usize) -> Graph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &pair)| pair)
            .collect();
        Graph::new(self.n, &edges).expect("removing an edge preserves validity")
    }
}

/// Parses the edge-list text format.
///
/// `#` starts a comment; blank lines are ignored. An optional first
/// significant line `n <count>` declares the vertex count (required to
/// represent isolated vertices); otherwise `n` is one past the largest
/// endpoint. Every other line is `u v`.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut declared_n: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut saw_edge = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parse_num = |tok: &str| {
            tok.parse::<usize>().map_err(|_| GraphError::Parse {
                line: lineno + 1,
                msg: format!("expected a nonnegative integer, got `{tok}`"),
            })
        };
        if toks[0] == "n" {
            if saw_edge || declared_n.is_some() {
                return Err(GraphError::Parse {
                    line: lineno + 1,
                    msg: "`n <count>` is only allowed once, before any edge".into(),
                });
            }
            if toks.len() != 2 {
                return Err(GraphError::Parse {
                    line: lineno + 1,
                    msg: "expected `n <count>`".into(),
                });
            }
            declared_n = Some(parse_num(toks[1])?);
            continue;
        }
        if toks.len() != 2 {
            return Err(GraphError::Parse {
                line: lineno + 1,
                msg: format!("expected `u v`, got `{line}`"),
            });
        }
        saw_edge = true;
        pairs.push((parse_num(toks[0])?, parse_num(toks[1])?));
    }
    let n = declared_n
        .unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::new(n, &pairs)
}

/// Renders a graph in the edge-list format: the `n` line, then edges in
/// index order. `parse_graph` round-trips this exactly.
pub fn render_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.vertex_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn bad_params(descriptor: &str, msg: impl Into<String>) -> GraphError {
    GraphError::BadGeneratorParams {
        descriptor: descriptor.to_string(),
        msg: msg.into(),
    }
}

/// Builds a named graph from a descriptor such as `path:5`, `cycle:6`,
/// `star:3`, `complete:4`, `complete_bipartite:3,3`, `petersen`,
/// `random_tree:20:4:7`, or `gnp:20:0.3:42`.
pub fn generate(descriptor: &str) -> Result<Graph, GraphError> {
    let mut parts = descriptor.split(':');
    let kind = parts.next().unwrap_or("");
    let args: Vec<&str> = parts.collect();
    let want_usize = |tok: &str, what: &str| {
        tok.parse::<usize>()
            .map_err(|_| bad_params(descriptor, format!("{what} must be an integer, got `{tok}`")))
    };
    let arity = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(bad_params(
                descriptor,
                format!("expected {k} parameter(s), got {}", args.len()),
            ))
        }
    };
    match kind {
        "path" => {
            arity(1)?;
            let n = want_usize(args[0], "n")?;
            if n == 0 {
                return Err(bad_params(descriptor, "n must be at least 1"));
            }
            let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            Graph::new(n, &edges)
        }
        "cycle" => {
            arity(1)?;
            let n = want_usize(args[0], "n")?;
            if n < 3 {
                return Err(bad_params(descriptor, "a cycle needs n >= 3"));
            }
            let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            edges.push((n - 1, 0));
            Graph::new(n, &edges)
        }
        "star" => {
            arity(1)?;
            let m = want_usize(args[0], "m")?;
            if m == 0 {
                return Err(bad_params(descriptor, "a star needs m >= 1 edges"));
            }
            let edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
            Graph::new(m + 1, &edges)
        }
        "complete" => {
            arity(1)?;
            let n = want_usize(args[0], "n")?;
            if n == 0 {
                return Err(bad_params(descriptor, "n must be at least 1"));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Graph::new(n, &edges)
        }
        "complete_bipartite" => {
            arity(1)?;
            let sides: Vec<&str> = args[0].split(',').collect();
            if sides.len() != 2 {
                return Err(bad_params(descriptor, "expected `a,b`"));
            }
            let a = want_usize(sides[0], "a")?;
            let b = want_usize(sides[1], "b")?;
            if a == 0 || b == 0 {
                return Err(bad_params(descriptor, "both sides must be nonempty"));
            }
            let mut edges = Vec::new();
            for u in 0..a {
                for v in 0..b {
                    edges.push((u, a + v));
                }
            }
            Graph::new(a + b, &edges)
        }
        "petersen" => {
            arity(0)?;
            // Outer 5-cycle, five spokes, inner pentagram.
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
            }
            for i in 0..5 {
                edges.push((i, i + 5));
            }
            for i in 0..5 {
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::new(10, &edges)
        }
        "random_tree" => {
            arity(3)?;
            let n = want_usize(args[0], "n")?;
            let maxdeg = want_usize(args[1], "maxdeg")?;
            let seed = args[2]
                .parse::<u64>()
                .map_err(|_| bad_params(descriptor, "seed must be a u64"))?;
            if n == 0 {
                return Err(bad_params(descriptor, "n must be at least 1"));
            }
            if maxdeg == 0 && n > 1 {
                return Err(bad_params(descriptor, "maxdeg must be at least 1"));
            }
            random_tree(n, maxdeg, seed).ok_or_else(|| {
                bad_params(descriptor, "degree cap too small to attach every vertex")
            })
        }
        "gnp" => {
            arity(3)?;
            let n = want_usize(args[0], "n")?;
            let p = args[1]
                .parse::<f64>()
                .map_err(|_| bad_params(descriptor, "p must be a real number"))?;
            let seed = args[2]
                .parse::<u64>()
                .map_err(|_| bad_params(descriptor, "seed must be a u64"))?;
            if n == 0 {
                return Err(bad_params(descriptor, "n must be at least 1"));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(bad_params(descriptor, "p must lie in [0, 1]"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, &edges)
        }
        other => Err(GraphError::UnknownGenerator(other.to_string())),
    }
}

/// Seeded uniform-attachment tree: vertex `i` joins a uniformly chosen
/// earlier vertex whose degree is still below `maxdeg`.
fn random_tree(n: usize, maxdeg: usize, seed: u64) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deg = vec![0usize; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let eligible: Vec<usize> = (0..i).filter(|&v| deg[v] < maxdeg).collect();
        if eligible.is_empty() {
            return None;
        }
        let parent = eligible[rng.random_range(0..eligible.len())];
        deg[parent] += 1;
        deg[i] += 1;
        edges.push((parent, i));
    }
    Some(Graph::new(n, &edges).expect("attachment produces a simple graph"))
}

/// The built-in "small" regression catalog: paths and cycles up to 7
/// vertices, stars up to 5 edges, and K_4.
pub fn catalog_small() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 3..=7 {
        out.push((format!("path:{n}"), generate(&format!("path:{n}")).unwrap()));
    }
    for n in 3..=7 {
        out.push((format!("cycle:{n}"), generate(&format!("cycle:{n}")).unwrap()));
    }
    for m in 2..=5 {
        out.push((format!("star:{m}"), generate(&format!("star:{m}")).unwrap()));
    }
    out.push(("complete:4".into(), generate("complete:4").unwrap()));
    out
}

/// An edge labeling by positive integers; entries may be absent while a
/// search or game is filling them in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    labels: Vec<Option<u64>>,
}

impl EdgeLabeling {
    /// A labeling with no labels assigned, for a graph with `m` edges.
    pub fn empty(m: usize) -> Self {
        EdgeLabeling {
            labels: vec![None; m],
        }
    }

    /// A total labeling from one label per edge. All labels must be >= 1.
    pub fn total(labels: Vec<u64>) -> Self {
        assert!(
            labels.iter().all(|&l| l >= 1),
            "edge labels must be positive"
        );
        EdgeLabeling {
            labels: labels.into_iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, e: usize) -> Option<u64> {
        self.labels[e]
    }

    /// Assigns a label; `label` must be >= 1.
    pub fn set(&mut self, e: usize, label: u64) {
        assert!(label >= 1, "edge labels must be positive");
        self.labels[e] = Some(label);
    }

    pub fn clear(&mut self, e: usize) {
        self.labels[e] = None;
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(|l| l.is_some())
    }

    /// Index of the first unlabeled edge, if the labeling is partial.
    pub fn first_missing(&self) -> Option<usize> {
        self.labels.iter().position(|l| l.is_none())
    }

    /// The labels as a dense vector; `None` if the labeling is partial.
    pub fn to_total(&self) -> Option<Vec<u64>> {
        self.labels.iter().copied().collect()
    }

    pub fn max_label(&self) -> Option<u64> {
        self.labels.iter().flatten().copied().max()
    }
}

/// Parses a labeling file: lines `u v label`, each matching an edge of `g`.
/// Missing edges stay unlabeled; duplicates and unknown edges are errors.
pub fn parse_labeling(g: &Graph, text: &str) -> Result<EdgeLabeling, GraphError> {
    let mut labeling = EdgeLabeling::empty(g.edge_count());
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| GraphError::Parse {
            line: lineno + 1,
            msg,
        };
        if toks.len() != 3 {
            return Err(err(format!("expected `u v label`, got `{line}`")));
        }
        let u: usize = toks[0]
            .parse()
            .map_err(|_| err(format!("bad vertex `{}`", toks[0])))?;
        let v: usize = toks[1]
            .parse()
            .map_err(|_| err(format!("bad vertex `{}`", toks[1])))?;
        let label: i64 = toks[2]
            .parse()
            .map_err(|_| err(format!("bad label `{}`", toks[2])))?;
        if label < 1 {
            return Err(err(format!("label must be >= 1, got {label}")));
        }
        let e = g
            .edge_between(u, v)
            .ok_or_else(|| err(format!("no edge ({u}, {v}) in the graph")))?;
        if labeling.get(e).is_some() {
            return Err(err(format!("edge ({u}, {v}) labeled twice")));
        }
        labeling.set(e, label as u64);
    }
    Ok(labeling)
}

/// Renders the labeled edges as `u v label` lines in edge-index order.
pub fn render_labeling(g: &Graph, l: &EdgeLabeling) -> String {
    let mut out = String::new();
    for e in 0..g.edge_count() {
        if let Some(label) = l.get(e) {
            let (u, v) = g.endpoints(e);
            writeln!(out, "{u} {v} {label}").unwrap();
        }
    }
    out
}

/// A direction for every edge: `direction[e] = (tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    direction: Vec<(usize, usize)>,
}

impl Orientation {
    /// Orientation from a bitmask: bit `e` clear orients edge `e` from its
    /// smaller endpoint to its larger one; bit `e` set reverses it.
    pub fn from_bitmask(g: &Graph, mask: u64) -> Self {
        assert!(g.edge_count() <= 64, "bitmask orientations need m <= 64");
        let direction = g
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| if mask >> e & 1 == 0 { (u, v) } else { (v, u) })
            .collect();
        Orientation { direction }
    }

    /// Orientation from the head vertex of each edge.
    pub fn from_heads(g: &Graph, heads: &[usize]) -> Result<Self, GraphError> {
        assert_eq!(heads.len(), g.edge_count());
        let mut direction = Vec::with_capacity(heads.len());
        for (e, &h) in heads.iter().enumerate() {
            let (u, v) = g.endpoints(e);
            if h == u {
                direction.push((v, u));
            } else if h == v {
                direction.push((u, v));
            } else {
                return Err(GraphError::VertexOutOfRange {
                    v: h,
                    n: g.vertex_count(),
                });
            }
        }
        Ok(Orientation { direction })
    }

    /// A uniformly random orientation (independent fair coin per edge).
    pub fn random<R: Rng>(g: &Graph, rng: &mut R) -> Self {
        let direction = g
            .edges()
            .iter()
            .map(|&(u, v)| if rng.random::<bool>() { (u, v) } else { (v, u) })
            .collect();
        Orientation { direction }
    }

    pub fn len(&self) -> usize {
        self.direction.len()
    }

    pub fn is_empty(&self) -> bool {
        self.direction.is_empty()
    }

    pub fn tail(&self, e: usize) -> usize {
        self.direction[e].0
    }

    pub fn head(&self, e: usize) -> usize {
        self.direction[e].1
    }
}

/// Convenience map from normalized endpoint pairs to edge indices.
pub fn edge_index_map(g: &Graph) -> HashMap<(usize, usize), usize> {
    g.edges()
        .iter()
        .enumerate()
        .map(|(e, &pair)| (pair, e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic_path() {
        let g = parse_graph("0 1\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_rejects_loop_and_duplicate() {
        assert!(matches!(
            parse_graph("0 0"),
            Err(GraphError::SelfLoop { u: 0, v: 0 })
        ));
        assert!(matches!(
            parse_graph("0 1\n0 1"),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        ));
        assert!(matches!(
            parse_graph("0 1\n1 0"),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        ));
    }

    #[test]
    fn parse_respects_declared_count() {
        let g = parse_graph("n 5\n0 1\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert!(matches!(
            parse_graph("n 2\n0 3"),
            Err(GraphError::VertexOutOfRange { v: 3, n: 2 })
        ));
    }

    #[test]
    fn parse_handles_comments_and_blanks() {
        let g = parse_graph("# a path\nn 3\n\n0 1 # first\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn render_round_trips_generated_graphs() {
        let descriptors = [
            "path:1",
            "path:6",
            "cycle:5",
            "star:4",
            "complete:5",
            "complete_bipartite:3,4",
            "petersen",
            "random_tree:30:4:7",
            "gnp:12:0.4:42",
        ];
        for d in descriptors {
            let g = generate(d).unwrap();
            let back = parse_graph(&render_graph(&g)).unwrap();
            assert_eq!(g, back, "round-trip failed for {d}");
        }
    }

    #[test]
    fn generator_shapes() {
        let star = generate("star:3").unwrap();
        assert_eq!(star.vertex_count(), 4);
        assert_eq!(star.edge_count(), 3);
        assert_eq!(star.degree(0), 3);
        assert_eq!((1..4).map(|v| star.degree(v)).max(), Some(1));

        let c5 = generate("cycle:5").unwrap();
        assert_eq!(c5.vertex_count(), 5);
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(c5.regular_degree(), Some(2));

        let pet = generate("petersen").unwrap();
        assert_eq!(pet.vertex_count(), 10);
        assert_eq!(pet.edge_count(), 15);
        assert_eq!(pet.regular_degree(), Some(3));
        assert_eq!(girth(&pet), Some(5));
    }

    #[test]
    fn generator_rejects_nonsense() {
        assert!(generate("path:0").is_err());
        assert!(generate("cycle:2").is_err());
        assert!(generate("star:0").is_err());
        assert!(generate("gnp:5:1.5:0").is_err());
        assert!(generate("gnp:0:0.5:0").is_err());
        assert!(generate("random_tree:9:1:0").is_err());
        assert!(generate("mystery:3").is_err());
    }

    #[test]
    fn random_generators_are_seed_deterministic() {
        assert_eq!(
            generate("gnp:20:0.3:42").unwrap(),
            generate("gnp:20:0.3:42").unwrap()
        );
        assert_ne!(
            generate("gnp:20:0.3:42").unwrap(),
            generate("gnp:20:0.3:43").unwrap()
        );
        let t = generate("random_tree:40:3:9").unwrap();
        assert_eq!(t, generate("random_tree:40:3:9").unwrap());
        assert!(t.is_tree());
        assert!(t.max_degree() <= 3);
    }

    #[test]
    fn bfs_levels_examples() {
        let path = generate("path:3").unwrap();
        assert_eq!(
            path.bfs_levels(0).unwrap(),
            vec![Some(0), Some(1), Some(2)]
        );
        let star = generate("star:3").unwrap();
        assert_eq!(
            star.bfs_levels(0).unwrap(),
            vec![Some(0), Some(1), Some(1), Some(1)]
        );
        let c4 = generate("cycle:4").unwrap();
        assert_eq!(
            c4.bfs_levels(0).unwrap(),
            vec![Some(0), Some(1), Some(2), Some(1)]
        );
    }

    #[test]
    fn bfs_levels_flags_unreachable_and_bad_root() {
        let g = parse_graph("n 4\n0 1").unwrap();
        let depths = g.bfs_levels(0).unwrap();
        assert_eq!(depths, vec![Some(0), Some(1), None, None]);
        assert!(g.bfs_levels(9).is_err());
    }

    #[test]
    fn bfs_edge_spread_at_most_one() {
        for d in ["gnp:15:0.3:1", "gnp:15:0.3:2", "random_tree:25:5:3"] {
            let g = generate(d).unwrap();
            let depths = g.bfs_levels(0).unwrap();
            for &(u, v) in g.edges() {
                if let (Some(a), Some(b)) = (depths[u], depths[v]) {
                    assert!(a.abs_diff(b) <= 1, "{d}: edge ({u},{v}) spans {a}..{b}");
                }
            }
        }
    }

    #[test]
    fn labeling_file_round_trip_and_errors() {
        let g = generate("star:3").unwrap();
        let l = parse_labeling(&g, "0 1 2\n0 2 3\n0 3 4\n").unwrap();
        assert_eq!(l.to_total(), Some(vec![2, 3, 4]));
        assert_eq!(render_labeling(&g, &l), "0 1 2\n0 2 3\n0 3 4\n");
        // endpoint order in the file is irrelevant
        let l2 = parse_labeling(&g, "1 0 2").unwrap();
        assert_eq!(l2.get(0), Some(2));
        assert!(!l2.is_total());
        assert!(parse_labeling(&g, "1 2 5").is_err());
        assert!(parse_labeling(&g, "0 1 0").is_err());
        assert!(parse_labeling(&g, "0 1 2\n1 0 3").is_err());
    }

    #[test]
    fn orientation_conventions() {
        let g = generate("path:3").unwrap();
        let o = Orientation::from_bitmask(&g, 0b10);
        assert_eq!((o.tail(0), o.head(0)), (0, 1));
        assert_eq!((o.tail(1), o.head(1)), (2, 1));
        let o2 = Orientation::from_heads(&g, &[0, 1]).unwrap();
        assert_eq!(o2.head(0), 0);
        assert_eq!(o2.tail(1), 2);
        assert!(Orientation::from_heads(&g, &[0, 0]).is_err());
    }

    #[test]
    fn without_edge_shifts_indices() {
        let g = generate("cycle:4").unwrap();
        let h = g.without_edge(1);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.edges(), &[(0, 1), (2, 3), (0, 3)]);
    }

    #[test]
    fn catalog_contents() {
        let cat = catalog_small();
        assert_eq!(cat.len(), 15);
        assert!(cat.iter().all(|(_, g)| g.edge_count() <= 7));
    }

    /// Shortest cycle length via BFS from every vertex (test-side oracle).
    fn girth(g: &Graph) -> Option<usize> {
        let n = g.vertex_count();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut depth = vec![usize::MAX; n];
            let mut parent_edge = vec![usize::MAX; n];
            depth[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &(w, e) in g.incident(v) {
                    if e == parent_edge[v] {
                        continue;
                    }
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent_edge[w] = e;
                        q.push_back(w);
                    } else {
                        let len = depth[v] + depth[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }
}
