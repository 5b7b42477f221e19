//! Vertex colourings and the uniqueness predicates.
//!
//! A colouring assigns every vertex a colour from the palette `1..=k`;
//! palettes may contain unused colours. The predicates in this module all
//! derive from one counting primitive: for a vertex u, how many colours
//! appear *exactly once* on its open neighbourhood N(u), or on its closed
//! neighbourhood N[u] = N(u) ∪ {u}.
//!
//! * [`is_proper`]: no edge joins two vertices of the same colour.
//! * [`is_eta_injective`]: every vertex sees at least ⌈η·d(u)⌉ colours
//!   exactly once on N(u). Isolated vertices satisfy this vacuously.
//! * [`is_r_unique`]: every vertex sees at least min(r, d(u)+1) colours
//!   exactly once on N[u]. The palette parameter r may be infinite, in which
//!   case the requirement is d(u)+1 — i.e. N[u] is rainbow.
//! * [`check_tree_unique`]: every copy of a fixed tree pattern contains some
//!   colour exactly once among its vertices.

use crate::graph::{Graph, GraphError};
use crate::patterns::{visit_copies, PatternError, TreeCopy, TreePattern};
use std::fmt;
use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ColouringError {
    #[error("colouring covers {colouring_n} vertices but the graph has {graph_n}")]
    SizeMismatch { graph_n: usize, colouring_n: usize },
    #[error("vertex {vertex} has colour {colour}, outside the palette 1..={k}")]
    ColourOutOfRange { vertex: usize, colour: u32, k: u32 },
    #[error("palette size must be at least 1")]
    EmptyPalette,
    #[error("eta must lie in (0, 1], got {0}")]
    InvalidEta(f64),
    #[error("finite r must be at least 1")]
    InvalidR,
    #[error("colour permutation is not a bijection on 1..={k}")]
    NotAColourPermutation { k: u32 },
    #[error("malformed colouring file (line {line}): {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// The uniqueness-palette parameter r: a positive integer or ∞.
///
/// `Finite(r)` asks every closed neighbourhood for min(r, d+1) uniquely
/// occurring colours; `Infinite` asks for all d+1, i.e. rainbow closed
/// neighbourhoods. The derived order puts `Infinite` above every
/// `Finite(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RParam {
    Finite(u32),
    Infinite,
}

impl RParam {
    /// Unique-colour requirement at a vertex of degree d.
    pub fn requirement(&self, degree: usize) -> usize {
        match *self {
            RParam::Finite(r) => (r as usize).min(degree + 1),
            RParam::Infinite => degree + 1,
        }
    }

    pub fn validate(&self) -> Result<(), ColouringError> {
        match *self {
            RParam::Finite(0) => Err(ColouringError::InvalidR),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for RParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RParam::Finite(r) => write!(f, "{r}"),
            RParam::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for RParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "infinity" => Ok(RParam::Infinite),
            _ => s
                .parse::<u32>()
                .map_err(|_| format!("expected a positive integer or \"inf\", got {s:?}"))
                .and_then(|r| {
                    if r == 0 {
                        Err("r must be at least 1".into())
                    } else {
                        Ok(RParam::Finite(r))
                    }
                }),
        }
    }
}

/// A vertex colouring with palette `1..=k`. Unused palette colours are
/// permitted; colours outside the palette are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    colours: Vec<u32>,
    k: u32,
}

impl Colouring {
    pub fn new(colours: Vec<u32>, k: u32) -> Result<Self, ColouringError> {
        if k == 0 {
            return Err(ColouringError::EmptyPalette);
        }
        for (vertex, &colour) in colours.iter().enumerate() {
            if colour == 0 || colour > k {
                return Err(ColouringError::ColourOutOfRange { vertex, colour, k });
            }
        }
        Ok(Colouring { colours, k })
    }

    pub fn n(&self) -> usize {
        self.colours.len()
    }

    /// Palette size.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Colour of vertex v. Panics if v is out of range, like slice indexing.
    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    /// Applies a palette permutation: colour c becomes `perm[c − 1]`.
    pub fn relabel_colours(&self, perm: &[u32]) -> Result<Self, ColouringError> {
        let k = self.k;
        if perm.len() != k as usize {
            return Err(ColouringError::NotAColourPermutation { k });
        }
        let mut seen = vec![false; k as usize];
        for &img in perm {
            if img == 0 || img > k || seen[(img - 1) as usize] {
                return Err(ColouringError::NotAColourPermutation { k });
            }
            seen[(img - 1) as usize] = true;
        }
        let colours = self.colours.iter().map(|&c| perm[(c - 1) as usize]).collect();
        Ok(Colouring { colours, k })
    }

    // ---- colouring interchange format ----
    //
    // First line "n k", then one line "v c" for every vertex v = 0..n−1 in
    // ascending order. Canonical: equal colourings serialise identically.

    pub fn to_colouring_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.colours.len(), self.k);
        for (v, &c) in self.colours.iter().enumerate() {
            let _ = writeln!(out, "{} {}", v, c);
        }
        out
    }

    pub fn parse_colouring(text: &str) -> Result<Self, ColouringError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| ColouringError::Parse { line: 1, reason: "empty input".into() })?;
        let parse_u64 = |tok: Option<&str>, line: usize| -> Result<u64, ColouringError> {
            tok.ok_or_else(|| ColouringError::Parse {
                line,
                reason: "expected two integers".into(),
            })?
            .parse::<u64>()
            .map_err(|e| ColouringError::Parse { line, reason: e.to_string() })
        };
        let mut it = header.split_whitespace();
        let n = parse_u64(it.next(), 1)? as usize;
        let k = parse_u64(it.next(), 1)?;
        if it.next().is_some() {
            return Err(ColouringError::Parse { line: 1, reason: "trailing tokens in header".into() });
        }
        let k = u32::try_from(k)
            .map_err(|_| ColouringError::Parse { line: 1, reason: "palette too large".into() })?;
        let mut colours = Vec::with_capacity(n);
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let v = parse_u64(it.next(), line_no)? as usize;
            let c = parse_u64(it.next(), line_no)?;
            if it.next().is_some() {
                return Err(ColouringError::Parse { line: line_no, reason: "trailing tokens".into() });
            }
            if v != colours.len() {
                return Err(ColouringError::Parse {
                    line: line_no,
                    reason: format!("expected vertex {}, found {v}", colours.len()),
                });
            }
            let c = u32::try_from(c)
                .map_err(|_| ColouringError::Parse { line: line_no, reason: "colour too large".into() })?;
            colours.push(c);
        }
        if colours.len() != n {
            return Err(ColouringError::Parse {
                line: 1,
                reason: format!("header declares {n} vertices, found {}", colours.len()),
            });
        }
        Colouring::new(colours, k)
    }

    pub fn write_colouring(&self, path: impl AsRef<Path>) -> Result<(), ColouringError> {
        std::fs::write(path, self.to_colouring_string())?;
        Ok(())
    }

    pub fn read_colouring(path: impl AsRef<Path>) -> Result<Self, ColouringError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_colouring(&text)
    }
}

/// Per-vertex uniqueness counts under a fixed colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexUniqueness {
    pub degree: usize,
    /// Colours occurring exactly once on N(u).
    pub open_unique: usize,
    /// Colours occurring exactly once on N[u].
    pub closed_unique: usize,
}

/// The full table of [`VertexUniqueness`] records, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessProfile {
    vertices: Vec<VertexUniqueness>,
}

impl UniquenessProfile {
    pub fn vertex(&self, u: usize) -> &VertexUniqueness {
        &self.vertices[u]
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexUniqueness> {
        self.vertices.iter()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn check_compat(g: &Graph, f: &Colouring) -> Result<(), ColouringError> {
    if g.n() != f.n() {
        return Err(ColouringError::SizeMismatch { graph_n: g.n(), colouring_n: f.n() });
    }
    Ok(())
}

/// Computes open and closed uniqueness counts for every vertex in one sweep.
/// Runs in O(n + m) using a scratch multiplicity table.
pub fn profile(g: &Graph, f: &Colouring) -> Result<UniquenessProfile, ColouringError> {
    check_compat(g, f)?;
    let mut counts = vec![0u32; f.k() as usize + 1];
    let mut touched: Vec<u32> = Vec::new();
    let mut vertices = Vec::with_capacity(g.n());
    for u in 0..g.n() {
        let neighbours = g.neighbours(u)?;
        for &v in neighbours {
            let c = f.colour(v) as usize;
            if counts[c] == 0 {
                touched.push(c as u32);
            }
            counts[c] += 1;
        }
        let open_unique = touched.iter().filter(|&&c| counts[c as usize] == 1).count();
        let own = f.colour(u) as usize;
        if counts[own] == 0 {
            touched.push(own as u32);
        }
        counts[own] += 1;
        let closed_unique = touched.iter().filter(|&&c| counts[c as usize] == 1).count();
        for &c in &touched {
            counts[c as usize] = 0;
        }
        touched.clear();
        vertices.push(VertexUniqueness { degree: neighbours.len(), open_unique, closed_unique });
    }
    Ok(UniquenessProfile { vertices })
}

/// First monochromatic edge, if any, in lexicographic order.
pub fn proper_violation(g: &Graph, f: &Colouring) -> Result<Option<(usize, usize)>, ColouringError> {
    check_compat(g, f)?;
    Ok(g.edges().iter().copied().find(|&(u, v)| f.colour(u) == f.colour(v)))
}

pub fn is_proper(g: &Graph, f: &Colouring) -> Result<bool, ColouringError> {
    Ok(proper_violation(g, f)?.is_none())
}

/// Unique-colour requirement ⌈η·d⌉ at a vertex of degree d.
pub fn eta_requirement(eta: f64, degree: usize) -> usize {
    (eta * degree as f64).ceil() as usize
}

/// First vertex u with open_unique(u) < ⌈η·d(u)⌉, if any. Vertices of
/// degree 0 impose no requirement.
pub fn eta_violation(g: &Graph, f: &Colouring, eta: f64) -> Result<Option<usize>, ColouringError> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(ColouringError::InvalidEta(eta));
    }
    let prof = profile(g, f)?;
    Ok((0..g.n()).find(|&u| {
        let v = prof.vertex(u);
        v.degree > 0 && v.open_unique < eta_requirement(eta, v.degree)
    }))
}

pub fn is_eta_injective(g: &Graph, f: &Colouring, eta: f64) -> Result<bool, ColouringError> {
    Ok(eta_violation(g, f, eta)?.is_none())
}

/// First vertex u with closed_unique(u) < min(r, d(u)+1), if any.
pub fn r_violation(g: &Graph, f: &Colouring, r: RParam) -> Result<Option<usize>, ColouringError> {
    r.validate()?;
    let prof = profile(g, f)?;
    Ok((0..g.n()).find(|&u| {
        let v = prof.vertex(u);
        v.closed_unique < r.requirement(v.degree)
    }))
}

pub fn is_r_unique(g: &Graph, f: &Colouring, r: RParam) -> Result<bool, ColouringError> {
    Ok(r_violation(g, f, r)?.is_none())
}

/// Outcome of a tree-uniqueness check.
#[derive(Debug, Clone)]
pub struct TreeUniqueVerdict {
    pub holds: bool,
    /// True when the graph contains no copy of the pattern at all.
    pub vacuous: bool,
    /// Copies examined before the verdict was reached.
    pub copies_checked: u64,
    /// A copy on which every colour occurs at least twice, when one exists.
    pub violating_copy: Option<TreeCopy>,
}

/// Checks whether every copy of `pattern` in `g` carries some colour exactly
/// once among its vertices. Copies are streamed in deterministic enumeration
/// order and the scan stops at the first violation. `cap` bounds the number
/// of copies examined (default [`crate::patterns::DEFAULT_COPY_CAP`]); if the
/// graph holds more, the check fails with `PatternError::CopyCapExceeded`
/// rather than returning a partial verdict.
pub fn check_tree_unique(
    g: &Graph,
    f: &Colouring,
    pattern: &TreePattern,
    cap: Option<usize>,
) -> Result<TreeUniqueVerdict, ColouringError> {
    check_compat(g, f)?;
    let mut violating: Option<TreeCopy> = None;
    let mut buf: Vec<u32> = Vec::with_capacity(pattern.vertex_count());
    let copies_checked = visit_copies(g, pattern, cap, |copy| {
        buf.clear();
        buf.extend(copy.vertices.iter().map(|&v| f.colour(v)));
        buf.sort_unstable();
        let mut has_unique = false;
        let mut i = 0;
        while i < buf.len() {
            let mut j = i + 1;
            while j < buf.len() && buf[j] == buf[i] {
                j += 1;
            }
            if j - i == 1 {
                has_unique = true;
                break;
            }
            i = j;
        }
        if has_unique {
            ControlFlow::Continue(())
        } else {
            violating = Some(copy.clone());
            ControlFlow::Break(())
        }
    })?;
    Ok(TreeUniqueVerdict {
        holds: violating.is_none(),
        vacuous: copies_checked == 0,
        copies_checked,
        violating_copy: violating,
    })
}

pub fn is_tree_unique(
    g: &Graph,
    f: &Colouring,
    pattern: &TreePattern,
) -> Result<bool, ColouringError> {
    Ok(check_tree_unique(g, f, pattern, None)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(colours: &[u32], k: u32) -> Colouring {
        Colouring::new(colours.to_vec(), k).unwrap()
    }

    #[test]
    fn palette_validation() {
        assert!(Colouring::new(vec![1, 2, 3], 0).is_err());
        assert!(Colouring::new(vec![1, 0, 2], 3).is_err());
        assert!(Colouring::new(vec![1, 4], 3).is_err());
        // unused palette colours are fine
        assert!(Colouring::new(vec![1, 1], 5).is_ok());
    }

    #[test]
    fn profile_on_a_star() {
        // centre 0 coloured 3; leaves coloured 1, 1, 2
        let g = Graph::star_graph(4);
        let f = col(&[3, 1, 1, 2], 3);
        let prof = profile(&g, &f).unwrap();
        let centre = prof.vertex(0);
        assert_eq!(centre.degree, 3);
        assert_eq!(centre.open_unique, 1); // colour 2 occurs once on {1,1,2}
        assert_eq!(centre.closed_unique, 2); // adding colour 3 makes {1,1,2,3}
        let leaf = prof.vertex(1);
        assert_eq!(leaf.degree, 1);
        assert_eq!(leaf.open_unique, 1); // sees only the centre
        assert_eq!(leaf.closed_unique, 2); // {3, 1}
    }

    #[test]
    fn profile_isolated_vertex() {
        let g = Graph::edgeless(2);
        let f = col(&[1, 1], 1);
        let prof = profile(&g, &f).unwrap();
        assert_eq!(prof.vertex(0).open_unique, 0);
        assert_eq!(prof.vertex(0).closed_unique, 1); // its own colour
    }

    #[test]
    fn proper_examples() {
        let k3 = Graph::complete(3);
        assert!(is_proper(&k3, &col(&[1, 2, 3], 3)).unwrap());
        assert!(!is_proper(&k3, &col(&[1, 2, 2], 3)).unwrap());
        assert_eq!(proper_violation(&k3, &col(&[1, 2, 2], 3)).unwrap(), Some((1, 2)));
    }

    #[test]
    fn eta_injective_on_the_four_cycle() {
        let c4 = Graph::cycle(4);
        // Alternating colours: both neighbours of every vertex share a
        // colour, so no vertex sees any colour exactly once.
        assert!(!is_eta_injective(&c4, &col(&[1, 2, 1, 2], 2), 1.0).unwrap());
        assert_eq!(eta_violation(&c4, &col(&[1, 2, 1, 2], 2), 1.0).unwrap(), Some(0));
        // Adjacent doubling: every vertex sees colours {1, 2}, one of each.
        assert!(is_eta_injective(&c4, &col(&[1, 1, 2, 2], 2), 1.0).unwrap());
    }

    #[test]
    fn eta_requirement_rounds_up() {
        assert_eq!(eta_requirement(0.5, 5), 3);
        assert_eq!(eta_requirement(1.0, 3), 3);
        assert_eq!(eta_requirement(0.3, 10), 3);
        assert_eq!(eta_requirement(0.25, 2), 1);
    }

    #[test]
    fn eta_rejects_out_of_range() {
        let g = Graph::path_graph(2);
        let f = col(&[1, 2], 2);
        assert!(is_eta_injective(&g, &f, 0.0).is_err());
        assert!(is_eta_injective(&g, &f, 1.5).is_err());
        assert!(is_eta_injective(&g, &f, f64::NAN).is_err());
    }

    #[test]
    fn eta_ignores_isolated_vertices() {
        let g = Graph::edgeless(3);
        assert!(is_eta_injective(&g, &col(&[1, 1, 1], 1), 1.0).unwrap());
    }

    #[test]
    fn r_unique_on_a_path() {
        let p3 = Graph::path_graph(3);
        assert!(is_r_unique(&p3, &col(&[1, 2, 1], 2), RParam::Finite(1)).unwrap());
        assert!(!is_r_unique(&p3, &col(&[1, 1, 1], 2), RParam::Finite(1)).unwrap());
        assert_eq!(
            r_violation(&p3, &col(&[1, 1, 1], 2), RParam::Finite(1)).unwrap(),
            Some(0)
        );
    }

    #[test]
    fn infinite_r_demands_rainbow_closed_neighbourhoods() {
        let k3 = Graph::complete(3);
        assert!(is_r_unique(&k3, &col(&[1, 2, 3], 3), RParam::Infinite).unwrap());
        assert!(!is_r_unique(&k3, &col(&[1, 2, 1], 3), RParam::Infinite).unwrap());
    }

    #[test]
    fn requirement_caps_at_closed_neighbourhood_size() {
        // r = 5 on an isolated vertex only demands min(5, 1) = 1.
        let g = Graph::edgeless(1);
        assert!(is_r_unique(&g, &col(&[1], 1), RParam::Finite(5)).unwrap());
        assert_eq!(RParam::Finite(5).requirement(0), 1);
        assert_eq!(RParam::Infinite.requirement(2), 3);
        assert_eq!(RParam::Finite(2).requirement(4), 2);
    }

    #[test]
    fn r_zero_rejected() {
        let g = Graph::path_graph(2);
        assert!(is_r_unique(&g, &col(&[1, 2], 2), RParam::Finite(0)).is_err());
        assert!("0".parse::<RParam>().is_err());
        assert_eq!("inf".parse::<RParam>().unwrap(), RParam::Infinite);
        assert_eq!("3".parse::<RParam>().unwrap(), RParam::Finite(3));
    }

    #[test]
    fn r_param_order() {
        assert!(RParam::Finite(7) < RParam::Infinite);
        assert!(RParam::Finite(2) < RParam::Finite(3));
    }

    #[test]
    fn tree_unique_on_triangle() {
        let k3 = Graph::complete(3);
        let path3 = TreePattern::path(3).unwrap();
        // Every path copy spans all three vertices; colour 2 occurs once.
        let verdict = check_tree_unique(&k3, &col(&[1, 1, 2], 2), &path3, None).unwrap();
        assert!(verdict.holds);
        assert!(!verdict.vacuous);
        assert_eq!(verdict.copies_checked, 3);
        // All same colour: every copy violates.
        let verdict = check_tree_unique(&k3, &col(&[1, 1, 1], 1), &path3, None).unwrap();
        assert!(!verdict.holds);
        let witness = verdict.violating_copy.unwrap();
        assert_eq!(witness.vertices, vec![0, 1, 2]);
    }

    #[test]
    fn tree_unique_vacuous_when_pattern_absent() {
        let g = Graph::path_graph(3);
        let star4 = TreePattern::star(4).unwrap();
        let verdict = check_tree_unique(&g, &col(&[1, 1, 1], 1), &star4, None).unwrap();
        assert!(verdict.holds);
        assert!(verdict.vacuous);
        assert_eq!(verdict.copies_checked, 0);
    }

    #[test]
    fn edge_pattern_matches_properness() {
        let g = Graph::generate(&crate::graph::GenParams::new(12, 0.4, 3)).unwrap();
        let edge = TreePattern::edge();
        for (seed, k) in [(0u64, 2u32), (1, 3), (2, 4)] {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = col(
                &(0..12).map(|_| rng.gen_range(1..=k)).collect::<Vec<_>>(),
                k,
            );
            assert_eq!(
                is_tree_unique(&g, &f, &edge).unwrap(),
                is_proper(&g, &f).unwrap()
            );
        }
    }

    #[test]
    fn size_mismatch_detected() {
        let g = Graph::path_graph(3);
        let f = col(&[1, 2], 2);
        assert!(matches!(
            is_proper(&g, &f),
            Err(ColouringError::SizeMismatch { graph_n: 3, colouring_n: 2 })
        ));
    }

    #[test]
    fn colour_relabelling() {
        let f = col(&[1, 2, 3, 1], 3);
        let g = f.relabel_colours(&[3, 1, 2]).unwrap();
        assert_eq!(g.colours(), &[3, 1, 2, 3]);
        assert!(f.relabel_colours(&[1, 1, 2]).is_err());
        assert!(f.relabel_colours(&[1, 2]).is_err());
    }

    #[test]
    fn colouring_round_trip() {
        let f = col(&[2, 1, 3, 3, 1], 4);
        let text = f.to_colouring_string();
        let g = Colouring::parse_colouring(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(text, g.to_colouring_string());
    }

    #[test]
    fn colouring_parse_rejects_malformed_input() {
        assert!(Colouring::parse_colouring("").is_err());
        assert!(Colouring::parse_colouring("2 2\n0 1\n").is_err()); // missing vertex
        assert!(Colouring::parse_colouring("2 2\n1 1\n0 2\n").is_err()); // out of order
        assert!(Colouring::parse_colouring("2 2\n0 1\n1 3\n").is_err()); // colour > k
        assert!(Colouring::parse_colouring("2 2\n0 0\n1 1\n").is_err()); // colour 0
    }
}
