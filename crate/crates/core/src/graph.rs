//! Undirected simple graphs and the seeded G(n,p) generator.
//!
//! Vertices are `0..n`. Edges are stored as unordered pairs `(u, v)` with
//! `u < v` in ascending lexicographic order, alongside per-vertex sorted
//! neighbour lists. A [`Graph`] is immutable after construction and can be
//! shared freely across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge probability must lie strictly between 0 and 1, got {0}")]
    InvalidProbability(f64),
    #[error("vertex count must be at least {min}, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge { u: usize, v: usize, reason: &'static str },
    #[error("relabelling map is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
    #[error("malformed edge list (line {line}): {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parameters for the G(n,p) generator. Every edge of the complete graph on
/// `n` vertices is included independently with probability `p`, driven by a
/// single 64-bit seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n: usize, p: f64, seed: u64) -> Self {
        GenParams { n, p, seed }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if self.n < 2 {
            return Err(GraphError::TooFewVertices { n: self.n, min: 2 });
        }
        // p = 0 and p = 1 are rejected: the edge model assumes 0 < p < 1.
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(GraphError::InvalidProbability(self.p));
        }
        Ok(())
    }
}

/// An immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge collection. Pairs may be given in either
    /// orientation; self-loops and duplicate edges are rejected.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n < 1 {
            return Err(GraphError::TooFewVertices { n, min: 1 });
        }
        let mut normalised: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::InvalidEdge { u: a, v: b, reason: "self-loop" });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            normalised.push((u, v));
        }
        normalised.sort_unstable();
        if normalised.windows(2).any(|w| w[0] == w[1]) {
            let dup = normalised
                .windows(2)
                .find(|w| w[0] == w[1])
                .map(|w| w[0])
                .unwrap();
            return Err(GraphError::InvalidEdge { u: dup.0, v: dup.1, reason: "duplicate edge" });
        }
        Ok(Self::from_canonical_edges(n, normalised))
    }

    /// `edges` must be normalised (u < v), sorted and duplicate-free.
    fn from_canonical_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { n, edges, adjacency }
    }

    /// Samples G(n,p). Candidate edges are examined in ascending
    /// lexicographic order (u < v) and each consumes exactly one draw from a
    /// ChaCha8 stream seeded by `params.seed`, so equal parameters produce
    /// identical graphs on every platform.
    pub fn generate(params: &GenParams) -> Result<Self, GraphError> {
        params.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut edges = Vec::new();
        for u in 0..params.n {
            for v in (u + 1)..params.n {
                if rng.gen::<f64>() < params.p {
                    edges.push((u, v));
                }
            }
        }
        Ok(Self::from_canonical_edges(params.n, edges))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, usually written m.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (u, v) with u < v, ascending lexicographic.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn check_vertex(&self, u: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: self.n });
        }
        Ok(())
    }

    pub fn degree(&self, u: usize) -> Result<usize, GraphError> {
        self.check_vertex(u)?;
        Ok(self.adjacency[u].len())
    }

    /// Sorted open neighbour list N(u).
    pub fn neighbours(&self, u: usize) -> Result<&[usize], GraphError> {
        self.check_vertex(u)?;
        Ok(&self.adjacency[u])
    }

    /// N(u) when `closed` is false, N(u) ∪ {u} when true; sorted either way.
    pub fn neighbourhood(&self, u: usize, closed: bool) -> Result<Vec<usize>, GraphError> {
        let open = self.neighbours(u)?;
        if !closed {
            return Ok(open.to_vec());
        }
        let mut out = Vec::with_capacity(open.len() + 1);
        let split = open.partition_point(|&v| v < u);
        out.extend_from_slice(&open[..split]);
        out.push(u);
        out.extend_from_slice(&open[split..]);
        Ok(out)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Applies the vertex permutation `perm` (vertex u becomes perm[u]).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::NotAPermutation { n: self.n });
        }
        let mut seen = vec![false; self.n];
        for &img in perm {
            if img >= self.n || seen[img] {
                return Err(GraphError::NotAPermutation { n: self.n });
            }
            seen[img] = true;
        }
        Self::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    // Small named graphs used throughout tests and examples.

    pub fn edgeless(n: usize) -> Self {
        Self::from_canonical_edges(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Self::from_canonical_edges(n, edges)
    }

    /// Path 0–1–…–(n−1).
    pub fn path_graph(n: usize) -> Self {
        Self::from_canonical_edges(n, (0..n.saturating_sub(1)).map(|u| (u, u + 1)).collect())
    }

    /// Cycle 0–1–…–(n−1)–0 for n ≥ 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|u| (u, u + 1)).collect();
        edges.push((0, n - 1));
        edges.sort_unstable();
        Self::from_canonical_edges(n, edges)
    }

    /// Star with centre 0 and leaves 1..n.
    pub fn star_graph(n: usize) -> Self {
        Self::from_canonical_edges(n, (1..n).map(|v| (0, v)).collect())
    }

    // ---- edge-list interchange format ----
    //
    // First line "n m", then m lines "u v" with u < v in ascending
    // lexicographic order, 0-based. This serialisation is canonical: equal
    // graphs produce byte-identical text.

    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", u, v);
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| GraphError::Parse { line: 1, reason: "empty input".into() })?;
        let mut it = header.split_whitespace();
        let parse_usize = |tok: Option<&str>, line: usize| -> Result<usize, GraphError> {
            tok.ok_or_else(|| GraphError::Parse { line, reason: "expected two integers".into() })?
                .parse::<usize>()
                .map_err(|e| GraphError::Parse { line, reason: e.to_string() })
        };
        let n = parse_usize(it.next(), 1)?;
        let m = parse_usize(it.next(), 1)?;
        if it.next().is_some() {
            return Err(GraphError::Parse { line: 1, reason: "trailing tokens in header".into() });
        }
        let mut edges = Vec::with_capacity(m);
        let mut prev: Option<(usize, usize)> = None;
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let u = parse_usize(it.next(), line_no)?;
            let v = parse_usize(it.next(), line_no)?;
            if it.next().is_some() {
                return Err(GraphError::Parse { line: line_no, reason: "trailing tokens".into() });
            }
            if u >= v {
                return Err(GraphError::Parse {
                    line: line_no,
                    reason: format!("edge ({u}, {v}) must satisfy u < v"),
                });
            }
            if v >= n {
                return Err(GraphError::Parse {
                    line: line_no,
                    reason: format!("vertex {v} out of range for n = {n}"),
                });
            }
            if let Some(p) = prev {
                if (u, v) <= p {
                    return Err(GraphError::Parse {
                        line: line_no,
                        reason: "edges must be in strictly ascending lexicographic order".into(),
                    });
                }
            }
            prev = Some((u, v));
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: 1,
                reason: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Ok(Self::from_canonical_edges(n, edges))
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<(), GraphError> {
        std::fs::write(path, self.to_edge_list_string())?;
        Ok(())
    }

    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Self, GraphError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_edge_list(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.degree(0).unwrap(), 2);
        let empty = Graph::edgeless(4);
        for u in 0..4 {
            assert_eq!(empty.degree(u).unwrap(), 0);
        }
        let p3 = Graph::path_graph(3);
        assert_eq!(p3.degree(1).unwrap(), 2);
        assert!(matches!(
            p3.degree(3),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn neighbourhood_examples() {
        let p3 = Graph::path_graph(3);
        assert_eq!(p3.neighbourhood(1, false).unwrap(), vec![0, 2]);
        assert_eq!(p3.neighbourhood(1, true).unwrap(), vec![0, 1, 2]);
        let lonely = Graph::edgeless(1);
        assert!(lonely.neighbourhood(0, false).unwrap().is_empty());
        assert_eq!(lonely.neighbourhood(0, true).unwrap(), vec![0]);
    }

    #[test]
    fn generate_rejects_bad_params() {
        assert!(Graph::generate(&GenParams::new(1, 0.5, 0)).is_err());
        assert!(Graph::generate(&GenParams::new(5, 0.0, 0)).is_err());
        assert!(Graph::generate(&GenParams::new(5, 1.0, 0)).is_err());
        assert!(Graph::generate(&GenParams::new(5, -0.1, 0)).is_err());
        assert!(Graph::generate(&GenParams::new(5, f64::NAN, 0)).is_err());
    }

    #[test]
    fn near_certain_edge() {
        let g = Graph::generate(&GenParams::new(2, 1.0 - 1e-12, 7)).unwrap();
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn generation_is_deterministic() {
        let params = GenParams::new(5, 0.5, 42);
        let g1 = Graph::generate(&params).unwrap();
        let g2 = Graph::generate(&params).unwrap();
        assert_eq!(g1.edges(), g2.edges());
        assert_eq!(g1.to_edge_list_string(), g2.to_edge_list_string());
    }

    #[test]
    fn edge_count_within_five_sigma() {
        let g = Graph::generate(&GenParams::new(2000, 0.01, 1)).unwrap();
        let pairs: f64 = 2000.0 * 1999.0 / 2.0;
        let mean = pairs * 0.01;
        let sigma = (pairs * 0.01 * 0.99).sqrt();
        let m = g.edge_count() as f64;
        assert!(
            (m - mean).abs() <= 5.0 * sigma,
            "edge count {m} deviates more than 5σ from {mean} (σ = {sigma:.1})"
        );
    }

    #[test]
    fn handshake_sum() {
        let g = Graph::generate(&GenParams::new(300, 0.07, 99)).unwrap();
        let degree_sum: usize = (0..g.n()).map(|u| g.degree(u).unwrap()).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn empirical_density_two_hundred_graphs() {
        let pairs = 500.0 * 499.0 / 2.0;
        let expected = pairs * 0.1;
        let mut total = 0usize;
        for seed in 0..200u64 {
            total += Graph::generate(&GenParams::new(500, 0.1, seed))
                .unwrap()
                .edge_count();
        }
        let mean = total as f64 / 200.0;
        assert!(
            (mean - expected).abs() <= 0.01 * expected,
            "mean edge count {mean} not within 1% of {expected}"
        );
    }

    #[test]
    fn relabel_maps_neighbourhoods() {
        let g = Graph::generate(&GenParams::new(30, 0.3, 5)).unwrap();
        // reversal permutation
        let perm: Vec<usize> = (0..30).map(|u| 29 - u).collect();
        let h = g.relabel(&perm).unwrap();
        for u in 0..30 {
            let mut mapped: Vec<usize> =
                g.neighbours(u).unwrap().iter().map(|&v| perm[v]).collect();
            mapped.sort_unstable();
            assert_eq!(h.neighbours(perm[u]).unwrap(), mapped.as_slice());
        }
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let g = Graph::path_graph(3);
        assert!(g.relabel(&[0, 0, 1]).is_err());
        assert!(g.relabel(&[0, 1]).is_err());
        assert!(g.relabel(&[0, 1, 3]).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::generate(&GenParams::new(40, 0.2, 11)).unwrap();
        let text = g.to_edge_list_string();
        let h = Graph::parse_edge_list(&text).unwrap();
        assert_eq!(g, h);
        assert_eq!(text, h.to_edge_list_string());
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(Graph::parse_edge_list("").is_err());
        assert!(Graph::parse_edge_list("3 1\n1 0\n").is_err()); // u >= v
        assert!(Graph::parse_edge_list("3 1\n0 3\n").is_err()); // out of range
        assert!(Graph::parse_edge_list("3 2\n0 2\n0 1\n").is_err()); // unsorted
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err()); // count mismatch
        assert!(Graph::parse_edge_list("3 1\n0 1\n0 1\n").is_err()); // duplicate
    }

    #[test]
    fn from_edges_normalises_and_validates() {
        let g = Graph::from_edges(3, vec![(2, 0), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
        assert!(Graph::from_edges(3, vec![(1, 1)]).is_err());
        assert!(Graph::from_edges(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, vec![(0, 2)]).is_err());
    }
}
