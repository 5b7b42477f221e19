//! Shared fixtures for the criterion benchmarks.
//!
//! Every benchmark works on the same deterministic inputs so that numbers
//! are comparable across runs and machines: fixed seeds, fixed sizes, and
//! colourings produced by the library's own strategies.

use unicolour::{random_colouring, Colouring, GenParams, Graph, TreePattern};

/// Seed shared by all benchmark fixtures.
pub const FIXTURE_SEED: u64 = 0xBE5EED;

/// A sparse random graph (mean degree about 10) large enough to exercise
/// the verifiers.
pub fn sparse_graph(n: usize) -> Graph {
    Graph::generate(&GenParams::new(n, 10.0 / n as f64, FIXTURE_SEED)).expect("valid parameters")
}

/// A dense random graph small enough for exact search.
pub fn dense_graph(n: usize) -> Graph {
    Graph::generate(&GenParams::new(n, 0.5, FIXTURE_SEED)).expect("valid parameters")
}

/// A uniformly random colouring of `graph` with `q` colours.
pub fn uniform_colouring(graph: &Graph, q: u32) -> Colouring {
    random_colouring(graph, q, FIXTURE_SEED ^ 1)
        .expect("valid palette")
        .colouring
}

/// The path pattern on `t` vertices.
pub fn path(t: usize) -> TreePattern {
    TreePattern::path(t).expect("valid path size")
}
