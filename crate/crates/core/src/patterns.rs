//! Tree patterns and enumeration of their copies inside a host graph.
//!
//! A *copy* of a tree T in G is a subgraph of G isomorphic to T: an injective
//! map from the pattern's vertices into G that carries every pattern edge to
//! an edge of G. Copies are **subgraphs, not induced subgraphs** — a copy may
//! sit inside a denser region (K_3 contains three copies of the path on 3
//! vertices even though no induced P_3 exists). This reading is forced by the
//! t = 2 case: copies of a single edge must be exactly the edges of G.
//!
//! Copies are identified by their edge sets; distinct bijections onto the
//! same subgraph count once. Enumeration is plain backtracking over a rooted
//! traversal of the pattern with deduplication by sorted edge set, emitting
//! copies in a deterministic order. A configurable cap (default
//! [`DEFAULT_COPY_CAP`]) turns combinatorial explosion into a reported error
//! instead of a hang. Memory grows with the number of distinct copies
//! retained for deduplication, so the cap is also a memory guard.

use crate::graph::{Graph, GraphError};
use std::collections::HashSet;
use std::ops::ControlFlow;
use thiserror::Error;

/// Upper bound on copies enumerated per call unless the caller overrides it.
pub const DEFAULT_COPY_CAP: usize = 10_000_000;

/// Upper bound on pattern vertices a constructor will build.
pub const DEFAULT_PATTERN_VERTEX_CAP: usize = 10_000;

/// Search-node budget used by [`contains_copy_with_budget`] callers that do
/// not supply their own.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("a tree pattern needs at least 2 vertices, got {t}")]
    TooFewVertices { t: usize },
    #[error("invalid pattern parameters: {reason}")]
    InvalidParameters { reason: String },
    #[error("pattern would have more than {cap} vertices")]
    VertexCapExceeded { cap: usize },
    #[error("edge list is not a tree: {reason}")]
    NotATree { reason: String },
    #[error("copy enumeration exceeded the cap of {cap} copies")]
    CopyCapExceeded { cap: usize },
    #[error("embedding count exceeded the cap of {cap}")]
    EmbeddingCapExceeded { cap: u64 },
    #[error("search budget of {budget} nodes exhausted")]
    SearchBudgetExceeded { budget: u64 },
    #[error("unrecognised pattern spec {spec:?}: expected \"edge\", \"star:t\", \"path:t\", \"regular:l,t\" or a tree edge-list file")]
    UnknownSpec { spec: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A labelled tree on vertices 0..t used as a subgraph pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePattern {
    t: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    /// Pattern vertices in breadth-first order from vertex 0; every vertex
    /// after the first is adjacent to exactly one earlier vertex.
    order: Vec<usize>,
    /// parent_pos[i] is the order-position of the BFS parent of order[i].
    parent_pos: Vec<usize>,
}

impl TreePattern {
    /// Builds a pattern from `t − 1` edges, validating connectivity and
    /// acyclicity.
    pub fn from_edges(
        t: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PatternError> {
        if t < 2 {
            return Err(PatternError::TooFewVertices { t });
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let graph = Graph::from_edges(t, edges)
            .map_err(|e| PatternError::NotATree { reason: e.to_string() })?;
        Self::from_graph(&graph)
    }

    /// Reinterprets a graph as a tree pattern.
    pub fn from_graph(graph: &Graph) -> Result<Self, PatternError> {
        let t = graph.n();
        if t < 2 {
            return Err(PatternError::TooFewVertices { t });
        }
        if graph.edge_count() != t - 1 {
            return Err(PatternError::NotATree {
                reason: format!("{} edges on {t} vertices, expected {}", graph.edge_count(), t - 1),
            });
        }
        let adjacency: Vec<Vec<usize>> =
            (0..t).map(|u| graph.neighbours(u).unwrap().to_vec()).collect();
        // breadth-first traversal from 0; with t−1 edges, full coverage
        // certifies connectivity and hence acyclicity
        let mut order = Vec::with_capacity(t);
        let mut parent_pos = Vec::with_capacity(t);
        let mut visited = vec![false; t];
        order.push(0);
        parent_pos.push(0);
        visited[0] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            for &w in &adjacency[u] {
                if !visited[w] {
                    visited[w] = true;
                    order.push(w);
                    parent_pos.push(head);
                }
            }
            head += 1;
        }
        if order.len() != t {
            return Err(PatternError::NotATree { reason: "not connected".into() });
        }
        Ok(TreePattern {
            t,
            edges: graph.edges().to_vec(),
            adjacency,
            order,
            parent_pos,
        })
    }

    /// The single-edge pattern; copies of it are exactly the host's edges.
    pub fn edge() -> Self {
        Self::star(2).unwrap()
    }

    /// Star on `t` vertices: centre 0 adjacent to 1..t−1.
    pub fn star(t: usize) -> Result<Self, PatternError> {
        if t < 2 {
            return Err(PatternError::TooFewVertices { t });
        }
        Self::from_edges(t, (1..t).map(|v| (0, v)))
    }

    /// Path 0–1–…–(t−1).
    pub fn path(t: usize) -> Result<Self, PatternError> {
        if t < 2 {
            return Err(PatternError::TooFewVertices { t });
        }
        Self::from_edges(t, (0..t - 1).map(|u| (u, u + 1)))
    }

    /// The nearly-regular rooted tree T_{l,t}: `l` levels below the root,
    /// the root has `t` children and every other internal vertex has `t`
    /// children (degree t+1). Vertex count 1 + t + t² + … + t^l. Vertices
    /// are numbered in breadth-first order with the root as 0.
    pub fn nearly_regular_tree(levels: usize, branching: usize) -> Result<Self, PatternError> {
        Self::nearly_regular_tree_with_cap(levels, branching, DEFAULT_PATTERN_VERTEX_CAP)
    }

    pub fn nearly_regular_tree_with_cap(
        levels: usize,
        branching: usize,
        cap: usize,
    ) -> Result<Self, PatternError> {
        if levels < 1 {
            return Err(PatternError::InvalidParameters { reason: "levels must be ≥ 1".into() });
        }
        if branching < 1 {
            return Err(PatternError::InvalidParameters { reason: "branching must be ≥ 1".into() });
        }
        // total vertices 1 + t + t² + … + t^l, guarded against blow-up
        let mut total: usize = 1;
        let mut level_size: usize = 1;
        for _ in 0..levels {
            level_size = level_size
                .checked_mul(branching)
                .ok_or(PatternError::VertexCapExceeded { cap })?;
            total = total
                .checked_add(level_size)
                .ok_or(PatternError::VertexCapExceeded { cap })?;
            if total > cap {
                return Err(PatternError::VertexCapExceeded { cap });
            }
        }
        let mut edges = Vec::with_capacity(total - 1);
        let mut next = 1;
        // frontier of the previous level, in breadth-first order
        let mut frontier = vec![0];
        for _ in 0..levels {
            let mut next_frontier = Vec::with_capacity(frontier.len() * branching);
            for &parent in &frontier {
                for _ in 0..branching {
                    edges.push((parent, next));
                    next_frontier.push(next);
                    next += 1;
                }
            }
            frontier = next_frontier;
        }
        Self::from_edges(total, edges)
    }

    /// Parses a pattern spec: `edge`, `star:t`, `path:t`, `regular:l,t`, or
    /// a path to an edge-list file describing a tree.
    pub fn parse_spec(spec: &str) -> Result<Self, PatternError> {
        if spec == "edge" {
            return Ok(Self::edge());
        }
        let parse_count = |s: &str| -> Result<usize, PatternError> {
            s.parse::<usize>().map_err(|_| PatternError::UnknownSpec { spec: spec.to_string() })
        };
        if let Some(arg) = spec.strip_prefix("star:") {
            return Self::star(parse_count(arg)?);
        }
        if let Some(arg) = spec.strip_prefix("path:") {
            return Self::path(parse_count(arg)?);
        }
        if let Some(arg) = spec.strip_prefix("regular:") {
            let (l, t) = arg
                .split_once(',')
                .ok_or_else(|| PatternError::UnknownSpec { spec: spec.to_string() })?;
            return Self::nearly_regular_tree(parse_count(l.trim())?, parse_count(t.trim())?);
        }
        if std::path::Path::new(spec).exists() {
            let graph = Graph::read_edge_list(spec)?;
            return Self::from_graph(&graph);
        }
        Err(PatternError::UnknownSpec { spec: spec.to_string() })
    }

    pub fn vertex_count(&self) -> usize {
        self.t
    }

    /// Edges as (u, v) with u < v, ascending lexicographic.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.t).map(|v| self.adjacency[v].len()).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }
}

/// One copy of a pattern in a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCopy {
    /// The copy's vertices in ascending order.
    pub vertices: Vec<usize>,
    /// mapping[i] is the host vertex carrying pattern vertex i.
    pub mapping: Vec<usize>,
}

impl TreeCopy {
    /// The copy's edge set, normalised and sorted — the identity used for
    /// deduplication.
    pub fn edge_set(&self, pattern: &TreePattern) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = pattern
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.mapping[a], self.mapping[b]);
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        edges.sort_unstable();
        edges
    }
}

struct CopySearch<'a, F> {
    g: &'a Graph,
    pattern: &'a TreePattern,
    cap: usize,
    visit: F,
    /// assignment[i] is the host vertex for order-position i.
    assignment: Vec<usize>,
    used: Vec<bool>,
    seen: HashSet<Vec<(usize, usize)>>,
    emitted: u64,
    stopped: bool,
}

impl<F> CopySearch<'_, F>
where
    F: FnMut(&TreeCopy) -> ControlFlow<()>,
{
    fn run(&mut self) -> Result<(), PatternError> {
        self.place(0)
    }

    fn place(&mut self, pos: usize) -> Result<(), PatternError> {
        if pos == self.pattern.t {
            return self.emit();
        }
        let pattern_vertex = self.pattern.order[pos];
        let needed_degree = self.pattern.degree(pattern_vertex);
        if pos == 0 {
            for v in 0..self.g.n() {
                if self.g.neighbours(v).unwrap().len() < needed_degree {
                    continue;
                }
                self.assignment.push(v);
                self.used[v] = true;
                self.place(1)?;
                self.used[v] = false;
                self.assignment.pop();
                if self.stopped {
                    return Ok(());
                }
            }
            return Ok(());
        }
        // In breadth-first order the only earlier pattern-neighbour of
        // order[pos] is its parent, so matching the parent edge is the whole
        // adjacency constraint at this position.
        let anchor = self.assignment[self.pattern.parent_pos[pos]];
        let candidates = self.g.neighbours(anchor).unwrap();
        for &v in candidates {
            if self.used[v] || self.g.neighbours(v).unwrap().len() < needed_degree {
                continue;
            }
            self.assignment.push(v);
            self.used[v] = true;
            self.place(pos + 1)?;
            self.used[v] = false;
            self.assignment.pop();
            if self.stopped {
                return Ok(());
            }
        }
        Ok(())
    }

    fn emit(&mut self) -> Result<(), PatternError> {
        let mut mapping = vec![0usize; self.pattern.t];
        for (pos, &host) in self.assignment.iter().enumerate() {
            mapping[self.pattern.order[pos]] = host;
        }
        let copy = TreeCopy { vertices: Vec::new(), mapping };
        let edges = copy.edge_set(self.pattern);
        if !self.seen.insert(edges) {
            return Ok(()); // another bijection onto a copy already emitted
        }
        if self.emitted == self.cap as u64 {
            return Err(PatternError::CopyCapExceeded { cap: self.cap });
        }
        self.emitted += 1;
        let mut vertices = copy.mapping.clone();
        vertices.sort_unstable();
        let copy = TreeCopy { vertices, ..copy };
        if (self.visit)(&copy) == ControlFlow::Break(()) {
            self.stopped = true;
        }
        Ok(())
    }
}

/// Streams every copy of `pattern` in `g` exactly once, in a deterministic
/// order, calling `visit` on each. Returns the number of copies visited.
/// The visitor may return `ControlFlow::Break` to stop early. `cap` bounds
/// the number of distinct copies (default [`DEFAULT_COPY_CAP`]); exceeding
/// it is an error, never a silent truncation.
pub fn visit_copies<F>(
    g: &Graph,
    pattern: &TreePattern,
    cap: Option<usize>,
    visit: F,
) -> Result<u64, PatternError>
where
    F: FnMut(&TreeCopy) -> ControlFlow<()>,
{
    if pattern.t > g.n() {
        return Ok(0);
    }
    let mut search = CopySearch {
        g,
        pattern,
        cap: cap.unwrap_or(DEFAULT_COPY_CAP),
        visit,
        assignment: Vec::with_capacity(pattern.t),
        used: vec![false; g.n()],
        seen: HashSet::new(),
        emitted: 0,
        stopped: false,
    };
    search.run()?;
    Ok(search.emitted)
}

/// Collects every copy of `pattern` in `g`.
pub fn enumerate_copies(
    g: &Graph,
    pattern: &TreePattern,
    cap: Option<usize>,
) -> Result<Vec<TreeCopy>, PatternError> {
    let mut out = Vec::new();
    visit_copies(g, pattern, cap, |copy| {
        out.push(copy.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Counts copies without materialising them.
pub fn count_copies(
    g: &Graph,
    pattern: &TreePattern,
    cap: Option<usize>,
) -> Result<u64, PatternError> {
    visit_copies(g, pattern, cap, |_| ControlFlow::Continue(()))
}

/// True iff `g` contains at least one copy of `pattern`; short-circuits at
/// the first embedding found.
pub fn contains_copy(g: &Graph, pattern: &TreePattern) -> bool {
    let mut found = false;
    // the first embedding is necessarily a new copy, so the visitor fires
    // before any cap or dedup pressure can build up
    let _ = visit_copies(g, pattern, None, |_| {
        found = true;
        ControlFlow::Break(())
    });
    found
}

/// Budgeted variant of [`contains_copy`] for hosts where even the first find
/// may be expensive: the search charges one unit per attempted vertex
/// placement and fails once `budget` nodes are spent.
pub fn contains_copy_with_budget(
    g: &Graph,
    pattern: &TreePattern,
    budget: u64,
) -> Result<bool, PatternError> {
    struct Probe<'a> {
        g: &'a Graph,
        pattern: &'a TreePattern,
        used: Vec<bool>,
        assignment: Vec<usize>,
        remaining: u64,
        budget: u64,
    }
    impl Probe<'_> {
        fn place(&mut self, pos: usize) -> Result<bool, PatternError> {
            if pos == self.pattern.t {
                return Ok(true);
            }
            let needed = self.pattern.degree(self.pattern.order[pos]);
            let candidates: &[usize] = if pos == 0 {
                &[]
            } else {
                let anchor = self.assignment[self.pattern.parent_pos[pos]];
                self.g.neighbours(anchor).unwrap()
            };
            let root_range = if pos == 0 { 0..self.g.n() } else { 0..0 };
            for v in root_range.chain(candidates.iter().copied()) {
                if self.remaining == 0 {
                    return Err(PatternError::SearchBudgetExceeded { budget: self.budget });
                }
                self.remaining -= 1;
                if self.used[v] || self.g.neighbours(v).unwrap().len() < needed {
                    continue;
                }
                self.assignment.push(v);
                self.used[v] = true;
                let hit = self.place(pos + 1)?;
                self.used[v] = false;
                self.assignment.pop();
                if hit {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
    if pattern.t > g.n() {
        return Ok(false);
    }
    let mut probe = Probe {
        g,
        pattern,
        used: vec![false; g.n()],
        assignment: Vec::with_capacity(pattern.t),
        remaining: budget,
        budget,
    };
    probe.place(0)
}

/// Counts raw embeddings (injective edge-preserving maps); each copy is hit
/// once per pattern automorphism. `cap` bounds the count (default
/// [`DEFAULT_COPY_CAP`]).
pub fn count_embeddings(
    g: &Graph,
    pattern: &TreePattern,
    cap: Option<u64>,
) -> Result<u64, PatternError> {
    struct Counter<'a> {
        g: &'a Graph,
        pattern: &'a TreePattern,
        used: Vec<bool>,
        assignment: Vec<usize>,
        count: u64,
        cap: u64,
    }
    impl Counter<'_> {
        fn place(&mut self, pos: usize) -> Result<(), PatternError> {
            if pos == self.pattern.t {
                if self.count == self.cap {
                    return Err(PatternError::EmbeddingCapExceeded { cap: self.cap });
                }
                self.count += 1;
                return Ok(());
            }
            let needed = self.pattern.degree(self.pattern.order[pos]);
            if pos == 0 {
                for v in 0..self.g.n() {
                    if self.g.neighbours(v).unwrap().len() < needed {
                        continue;
                    }
                    self.assignment.push(v);
                    self.used[v] = true;
                    self.place(1)?;
                    self.used[v] = false;
                    self.assignment.pop();
                }
                return Ok(());
            }
            let anchor = self.assignment[self.pattern.parent_pos[pos]];
            for &v in self.g.neighbours(anchor).unwrap() {
                if self.used[v] || self.g.neighbours(v).unwrap().len() < needed {
                    continue;
                }
                self.assignment.push(v);
                self.used[v] = true;
                self.place(pos + 1)?;
                self.used[v] = false;
                self.assignment.pop();
            }
            Ok(())
        }
    }
    if pattern.t > g.n() {
        return Ok(0);
    }
    let mut counter = Counter {
        g,
        pattern,
        used: vec![false; g.n()],
        assignment: Vec::with_capacity(pattern.t),
        count: 0,
        cap: cap.unwrap_or(DEFAULT_COPY_CAP as u64),
    };
    counter.place(0)?;
    Ok(counter.count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GenParams;

    #[test]
    fn star_shapes() {
        assert_eq!(TreePattern::star(2).unwrap().degree_sequence(), vec![1, 1]);
        assert_eq!(TreePattern::star(3).unwrap().degree_sequence(), vec![2, 1, 1]);
        assert_eq!(TreePattern::star(4).unwrap().degree_sequence(), vec![3, 1, 1, 1]);
        assert!(TreePattern::star(1).is_err());
    }

    #[test]
    fn nearly_regular_tree_shapes() {
        // one level: a star on t+1 vertices
        let t13 = TreePattern::nearly_regular_tree(1, 3).unwrap();
        assert_eq!(t13.vertex_count(), 4);
        assert_eq!(t13.degree_sequence(), TreePattern::star(4).unwrap().degree_sequence());

        // T_{3,2}: 1 + 2 + 4 + 8 = 15 vertices, root degree 2,
        // internal degree 3, leaf degree 1
        let t32 = TreePattern::nearly_regular_tree(3, 2).unwrap();
        assert_eq!(t32.vertex_count(), 15);
        assert_eq!(t32.degree(0), 2);
        let mut internal_degrees: Vec<usize> = (1..7).map(|v| t32.degree(v)).collect();
        internal_degrees.dedup();
        assert_eq!(internal_degrees, vec![3]);
        assert!((7..15).all(|v| t32.degree(v) == 1));

        // T_{2,3}: 1 + 3 + 9 = 13 vertices, root degree 3, level-1 degree 4
        let t23 = TreePattern::nearly_regular_tree(2, 3).unwrap();
        assert_eq!(t23.vertex_count(), 13);
        assert_eq!(t23.degree(0), 3);
        assert!((1..4).all(|v| t23.degree(v) == 4));

        assert!(TreePattern::nearly_regular_tree(0, 2).is_err());
        assert!(TreePattern::nearly_regular_tree(2, 0).is_err());
        assert!(matches!(
            TreePattern::nearly_regular_tree(30, 10),
            Err(PatternError::VertexCapExceeded { .. })
        ));
    }

    #[test]
    fn tree_validation() {
        assert!(TreePattern::from_edges(3, vec![(0, 1), (1, 2)]).is_ok());
        // cycle
        assert!(TreePattern::from_edges(3, vec![(0, 1), (1, 2), (0, 2)]).is_err());
        // disconnected with the right edge count
        assert!(TreePattern::from_edges(4, vec![(0, 1), (0, 1)]).is_err());
        assert!(TreePattern::from_edges(4, vec![(0, 1), (2, 3)]).is_err());
    }

    #[test]
    fn copies_in_triangle_and_claw() {
        let path3 = TreePattern::path(3).unwrap();
        let k3 = Graph::complete(3);
        let copies = enumerate_copies(&k3, &path3, None).unwrap();
        assert_eq!(copies.len(), 3); // one per choice of middle vertex
        let claw = Graph::star_graph(4);
        assert_eq!(count_copies(&claw, &path3, None).unwrap(), 3); // choose 2 of 3 leaves
    }

    #[test]
    fn no_copies_in_edgeless_graphs() {
        let g = Graph::edgeless(6);
        assert_eq!(count_copies(&g, &TreePattern::edge(), None).unwrap(), 0);
        assert!(!contains_copy(&g, &TreePattern::path(3).unwrap()));
    }

    #[test]
    fn edge_copies_match_edge_count() {
        for n in 2..=8 {
            let g = Graph::complete(n);
            assert_eq!(
                count_copies(&g, &TreePattern::edge(), None).unwrap(),
                (n * (n - 1) / 2) as u64
            );
        }
        let g = Graph::generate(&GenParams::new(20, 0.3, 9)).unwrap();
        assert_eq!(
            count_copies(&g, &TreePattern::edge(), None).unwrap(),
            g.edge_count() as u64
        );
    }

    #[test]
    fn containment_examples() {
        assert!(contains_copy(&Graph::complete(4), &TreePattern::star(4).unwrap()));
        assert!(!contains_copy(&Graph::path_graph(3), &TreePattern::star(4).unwrap()));
        assert!(contains_copy(&Graph::cycle(5), &TreePattern::path(4).unwrap()));
        // pattern larger than host
        assert!(!contains_copy(&Graph::complete(3), &TreePattern::path(4).unwrap()));
    }

    #[test]
    fn copies_have_distinct_edge_sets_and_valid_mappings() {
        let g = Graph::complete(4);
        let path3 = TreePattern::path(3).unwrap();
        let copies = enumerate_copies(&g, &path3, None).unwrap();
        // paths of length 2 in K_4: 4 middle choices × C(3,2) ends
        assert_eq!(copies.len(), 12);
        let mut edge_sets = HashSet::new();
        for copy in &copies {
            for &(a, b) in &copy.edge_set(&path3) {
                assert!(g.has_edge(a, b));
            }
            assert!(edge_sets.insert(copy.edge_set(&path3)));
            let mut sorted = copy.mapping.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, copy.vertices);
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let g = Graph::generate(&GenParams::new(15, 0.4, 21)).unwrap();
        let star3 = TreePattern::star(3).unwrap();
        let first = enumerate_copies(&g, &star3, None).unwrap();
        let second = enumerate_copies(&g, &star3, None).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn relabelling_preserves_copy_count() {
        let g = Graph::generate(&GenParams::new(12, 0.35, 4)).unwrap();
        let perm: Vec<usize> = (0..12).map(|u| (u + 5) % 12).collect();
        let h = g.relabel(&perm).unwrap();
        for pattern in [TreePattern::path(4).unwrap(), TreePattern::star(4).unwrap()] {
            assert_eq!(
                count_copies(&g, &pattern, None).unwrap(),
                count_copies(&h, &pattern, None).unwrap()
            );
        }
    }

    #[test]
    fn embeddings_are_copies_times_automorphisms() {
        let g = Graph::generate(&GenParams::new(14, 0.4, 8)).unwrap();
        // |Aut(star on t)| = (t−1)!
        for (t, aut) in [(3usize, 2u64), (4, 6), (5, 24)] {
            let star = TreePattern::star(t).unwrap();
            let copies = count_copies(&g, &star, None).unwrap();
            assert_eq!(count_embeddings(&g, &star, None).unwrap(), copies * aut);
        }
        // |Aut(path on t)| = 2
        let path4 = TreePattern::path(4).unwrap();
        let copies = count_copies(&g, &path4, None).unwrap();
        assert_eq!(count_embeddings(&g, &path4, None).unwrap(), copies * 2);
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::complete(5);
        let path3 = TreePattern::path(3).unwrap();
        // K_5 has 5 × C(4,2) = 30 copies of P_3
        assert_eq!(count_copies(&g, &path3, None).unwrap(), 30);
        assert!(matches!(
            count_copies(&g, &path3, Some(3)),
            Err(PatternError::CopyCapExceeded { cap: 3 })
        ));
        // exactly at the cap is fine
        assert_eq!(count_copies(&g, &path3, Some(30)).unwrap(), 30);
    }

    #[test]
    fn budgeted_containment() {
        let g = Graph::complete(6);
        let path4 = TreePattern::path(4).unwrap();
        assert!(contains_copy_with_budget(&g, &path4, 1_000).unwrap());
        assert!(matches!(
            contains_copy_with_budget(&g, &path4, 2),
            Err(PatternError::SearchBudgetExceeded { budget: 2 })
        ));
        let sparse = Graph::path_graph(4);
        assert!(!contains_copy_with_budget(&sparse, &TreePattern::star(4).unwrap(), 1_000).unwrap());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(TreePattern::parse_spec("edge").unwrap(), TreePattern::edge());
        assert_eq!(TreePattern::parse_spec("star:4").unwrap(), TreePattern::star(4).unwrap());
        assert_eq!(TreePattern::parse_spec("path:5").unwrap(), TreePattern::path(5).unwrap());
        assert_eq!(
            TreePattern::parse_spec("regular:2,3").unwrap(),
            TreePattern::nearly_regular_tree(2, 3).unwrap()
        );
        assert!(TreePattern::parse_spec("star:1").is_err());
        assert!(TreePattern::parse_spec("noise").is_err());
        assert!(TreePattern::parse_spec("regular:2").is_err());
    }

    #[test]
    fn spec_parsing_from_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tree.txt");
        Graph::path_graph(4).write_edge_list(&path).unwrap();
        let pattern = TreePattern::parse_spec(path.to_str().unwrap()).unwrap();
        assert_eq!(pattern, TreePattern::path(4).unwrap());

        let bad = dir.path().join("cycle.txt");
        Graph::cycle(4).write_edge_list(&bad).unwrap();
        assert!(TreePattern::parse_spec(bad.to_str().unwrap()).is_err());
    }
}
