//! Exact minimum colour counts on small graphs, by canonical enumeration.
//!
//! [`exact_chromatic`] computes the least palette size k for which some
//! k-colouring satisfies a chosen predicate — proper, η-injective, r-unique
//! or tree-unique — together with one witness. Every predicate here is
//! satisfied by the all-distinct colouring, so k = n always suffices and the
//! search cannot be infeasible.
//!
//! The enumeration ranges over *canonical* colourings (restricted growth
//! strings: the first vertex gets colour 1 and each new colour is introduced
//! in increasing order), which quotients the k^n space by colour
//! permutations — sound because every predicate is invariant under palette
//! permutations. Deepening k = 1, 2, … and scanning canonical colourings in
//! lexicographic order makes the reported witness the lexicographically
//! least canonical one at the minimal k.
//!
//! This module is an oracle: correctness first, speed second. A size guard
//! (default [`DEFAULT_GUARD`]) keeps the worst case tractable.

use crate::colouring::{eta_requirement, Colouring, ColouringError, RParam};
use crate::graph::Graph;
use crate::patterns::{enumerate_copies, PatternError, TreePattern};
use thiserror::Error;

/// Largest vertex count searched unless the caller raises the guard.
pub const DEFAULT_GUARD: usize = 12;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("graph has {n} vertices, above the search guard of {guard}")]
    GuardExceeded { n: usize, guard: usize },
    #[error("eta must lie in (0, 1], got {0}")]
    InvalidEta(f64),
    #[error("finite r must be at least 1")]
    InvalidR,
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
}

/// Which predicate the minimum is taken over.
#[derive(Debug, Clone)]
pub enum Mode {
    Proper,
    EtaInjective(f64),
    RUnique(RParam),
    TreeUnique(TreePattern),
}

/// An exact computation request: predicate plus size guard.
#[derive(Debug, Clone)]
pub struct ExactQuery {
    pub mode: Mode,
    pub guard: usize,
}

impl ExactQuery {
    pub fn new(mode: Mode) -> Self {
        ExactQuery { mode, guard: DEFAULT_GUARD }
    }

    pub fn with_guard(mode: Mode, guard: usize) -> Self {
        ExactQuery { mode, guard }
    }
}

#[derive(Debug, Clone)]
pub struct ExactResult {
    /// The minimum palette size.
    pub k: u32,
    /// The lexicographically least canonical colouring achieving it.
    pub witness: Colouring,
}

/// Leaf predicate evaluation on a raw colour slice. The logic mirrors the
/// public verifiers (the property suite cross-checks the two against a naive
/// full enumeration); scratch buffers are reused across the whole search.
struct LeafCheck<'a> {
    g: &'a Graph,
    mode: &'a Mode,
    /// Copy vertex lists, pre-enumerated once for tree mode.
    copies: Vec<Vec<usize>>,
    counts: Vec<u32>,
    touched: Vec<u32>,
    buf: Vec<u32>,
}

impl LeafCheck<'_> {
    fn satisfied(&mut self, colours: &[u32]) -> bool {
        match *self.mode {
            Mode::Proper => self
                .g
                .edges()
                .iter()
                .all(|&(u, v)| colours[u] != colours[v]),
            Mode::EtaInjective(eta) => self.eta_ok(colours, eta),
            Mode::RUnique(r) => self.r_ok(colours, r),
            Mode::TreeUnique(_) => self.tree_ok(colours),
        }
    }

    /// Counts colours of multiplicity exactly 1 among `vertices`, leaving
    /// the scratch table clean.
    fn unique_count(&mut self, colours: &[u32], vertices: impl Iterator<Item = usize>) -> usize {
        for v in vertices {
            let c = colours[v] as usize;
            if self.counts[c] == 0 {
                self.touched.push(c as u32);
            }
            self.counts[c] += 1;
        }
        let unique = self.touched.iter().filter(|&&c| self.counts[c as usize] == 1).count();
        for &c in &self.touched {
            self.counts[c as usize] = 0;
        }
        self.touched.clear();
        unique
    }

    fn eta_ok(&mut self, colours: &[u32], eta: f64) -> bool {
        for u in 0..self.g.n() {
            let neighbours = self.g.neighbours(u).unwrap();
            if neighbours.is_empty() {
                continue;
            }
            let unique = self.unique_count(colours, neighbours.iter().copied());
            if unique < eta_requirement(eta, neighbours.len()) {
                return false;
            }
        }
        true
    }

    fn r_ok(&mut self, colours: &[u32], r: RParam) -> bool {
        for u in 0..self.g.n() {
            let neighbours = self.g.neighbours(u).unwrap();
            let unique =
                self.unique_count(colours, neighbours.iter().copied().chain(std::iter::once(u)));
            if unique < r.requirement(neighbours.len()) {
                return false;
            }
        }
        true
    }

    fn tree_ok(&mut self, colours: &[u32]) -> bool {
        'copies: for vertices in &self.copies {
            self.buf.clear();
            self.buf.extend(vertices.iter().map(|&v| colours[v]));
            self.buf.sort_unstable();
            let mut i = 0;
            while i < self.buf.len() {
                let mut j = i + 1;
                while j < self.buf.len() && self.buf[j] == self.buf[i] {
                    j += 1;
                }
                if j - i == 1 {
                    continue 'copies; // this copy has a unique colour
                }
                i = j;
            }
            return false;
        }
        true
    }
}

/// Lexicographic scan of canonical colourings that use exactly `k` colours;
/// returns true leaving the witness in `colours`.
fn search(
    colours: &mut [u32],
    pos: usize,
    max_used: u32,
    k: u32,
    check: &mut LeafCheck<'_>,
) -> bool {
    let n = colours.len();
    if pos == n {
        return max_used == k && check.satisfied(colours);
    }
    let hi = (max_used + 1).min(k);
    for c in 1..=hi {
        let new_max = max_used.max(c);
        // the remaining positions must still be able to introduce the
        // missing colours
        if (k - new_max) as usize > n - pos - 1 {
            continue;
        }
        colours[pos] = c;
        if search(colours, pos + 1, new_max, k, check) {
            return true;
        }
    }
    false
}

/// Returns the minimum palette size for `query.mode` on `g`, with the
/// lexicographically least canonical witness.
pub fn exact_chromatic(g: &Graph, query: &ExactQuery) -> Result<ExactResult, ExactError> {
    let n = g.n();
    if n > query.guard {
        return Err(ExactError::GuardExceeded { n, guard: query.guard });
    }
    let copies = match &query.mode {
        Mode::EtaInjective(eta) if !(*eta > 0.0 && *eta <= 1.0) => {
            return Err(ExactError::InvalidEta(*eta));
        }
        Mode::RUnique(r) => {
            r.validate().map_err(|_| ExactError::InvalidR)?;
            Vec::new()
        }
        Mode::TreeUnique(pattern) => enumerate_copies(g, pattern, None)?
            .into_iter()
            .map(|copy| copy.vertices)
            .collect(),
        _ => Vec::new(),
    };
    let mut check = LeafCheck {
        g,
        mode: &query.mode,
        copies,
        counts: vec![0; n + 2],
        touched: Vec::with_capacity(n + 1),
        buf: Vec::new(),
    };
    let mut colours = vec![0u32; n];
    for k in 1..=n as u32 {
        if search(&mut colours, 0, 0, k, &mut check) {
            return Ok(ExactResult { k, witness: Colouring::new(colours, k)? });
        }
    }
    unreachable!("the all-distinct colouring satisfies every mode at k = n");
}
