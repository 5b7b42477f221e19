//! Constructive colouring strategies.
//!
//! Three ways of producing a colouring, mirroring the three existence
//! arguments the verifiers test against:
//!
//! * [`partition_colouring`] — deterministic: carve t consecutive vertex
//!   classes of ⌈1/p⌉ vertices each, give class i colour i, and give every
//!   leftover vertex the overflow colour t+1, where
//!   t = ⌈M·max(r, ln n / 2)⌉ + 1. Targets r-uniqueness.
//! * [`random_colouring`] — each vertex independently uniform on {1,…,q};
//!   a single draw with no retry. The caller verifies whichever predicate
//!   they care about.
//! * [`resample_tree_unique`] — start from a random colouring and, while
//!   some copy of a tree pattern carries no unique colour, resample that
//!   copy's vertices; the constructive counterpart of a local-lemma
//!   existence argument. Targets tree-uniqueness.
//!
//! Every strategy reports a [`StrategyOutcome`] whose `verified` flag, when
//! set, agrees with re-running the corresponding verifier.

use crate::colouring::{is_r_unique, Colouring, ColouringError, RParam};
use crate::graph::Graph;
use crate::patterns::{enumerate_copies, PatternError, TreePattern};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("partition plan does not fit: t·⌈1/p⌉ = {t}·{class_size} = {product} exceeds n = {n}")]
    PlanDoesNotFit { t: usize, class_size: usize, product: usize, n: usize },
    #[error("this strategy needs a palette of at least {min} colours, got {q}")]
    PaletteTooSmall { q: u32, min: u32 },
    #[error("{name} must be {requirement}, got {value}")]
    InvalidParameter { name: &'static str, value: f64, requirement: &'static str },
    #[error("partition would need colour {needed}, beyond the supported palette range")]
    PaletteOverflow { needed: usize },
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// The deterministic layout used by [`partition_colouring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPlan {
    /// Number of special colour classes.
    pub t: usize,
    /// Vertices per class: ⌈1/p⌉.
    pub class_size: usize,
    /// The classes themselves — consecutive vertex ranges, pairwise disjoint.
    pub classes: Vec<Vec<usize>>,
    /// Colour given to every vertex outside the classes.
    pub overflow_colour: u32,
}

/// Computes the partition layout for an n-vertex graph without touching any
/// graph data: t = ⌈M·max(r, ln n / 2)⌉ + 1 classes of ⌈1/p⌉ vertices.
/// Fails when the classes do not fit inside the vertex set.
pub fn plan_partition(
    n: usize,
    r: u32,
    p: f64,
    m_const: f64,
) -> Result<PartitionPlan, ConstructError> {
    if r < 1 {
        return Err(ConstructError::InvalidParameter {
            name: "r",
            value: r as f64,
            requirement: "at least 1",
        });
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(ConstructError::InvalidParameter {
            name: "p",
            value: p,
            requirement: "strictly between 0 and 1",
        });
    }
    if !(m_const > 0.0 && m_const.is_finite()) {
        return Err(ConstructError::InvalidParameter {
            name: "M",
            value: m_const,
            requirement: "positive and finite",
        });
    }
    let half_log = (n as f64).ln() / 2.0;
    let t = (m_const * (r as f64).max(half_log)).ceil() as usize + 1;
    let class_size = (1.0 / p).ceil() as usize;
    let product = t.checked_mul(class_size).unwrap_or(usize::MAX);
    if product > n {
        return Err(ConstructError::PlanDoesNotFit { t, class_size, product, n });
    }
    if u32::try_from(t + 1).is_err() {
        return Err(ConstructError::PaletteOverflow { needed: t + 1 });
    }
    let classes = (0..t)
        .map(|i| (i * class_size..(i + 1) * class_size).collect())
        .collect();
    Ok(PartitionPlan { t, class_size, classes, overflow_colour: (t + 1) as u32 })
}

/// What a strategy produced and how it went.
#[derive(Debug, Clone)]
pub struct StrategyOutcome {
    pub colouring: Colouring,
    /// Palette size of the produced colouring (t+1 for partition, q for the
    /// random strategies).
    pub colours_used: u32,
    /// Resamples performed; 0 for the single-shot strategies.
    pub attempts: u64,
    /// Verdict of the strategy's own target predicate; `None` when the
    /// strategy has no intrinsic predicate (random) and the caller verifies.
    pub verified: Option<bool>,
    /// Seed consumed, for replay; `None` for the deterministic strategy.
    pub seed: Option<u64>,
}

/// Builds the partition colouring for `g` and verifies it against
/// `is_r_unique(g, ·, r)`. `p` is the generation probability of `g` (the
/// plan sizes classes as ⌈1/p⌉) and `m_const` the constant M.
pub fn partition_colouring(
    g: &Graph,
    r: u32,
    p: f64,
    m_const: f64,
) -> Result<StrategyOutcome, ConstructError> {
    let plan = plan_partition(g.n(), r, p, m_const)?;
    let k = plan.overflow_colour;
    let mut colours = vec![k; g.n()];
    for (i, class) in plan.classes.iter().enumerate() {
        for &v in class {
            colours[v] = (i + 1) as u32;
        }
    }
    let colouring = Colouring::new(colours, k)?;
    let verified = is_r_unique(g, &colouring, RParam::Finite(r))?;
    Ok(StrategyOutcome {
        colouring,
        colours_used: k,
        attempts: 0,
        verified: Some(verified),
        seed: None,
    })
}

/// Colours every vertex independently uniform on {1,…,q}. Deterministic in
/// (g, q, seed); performs no verification itself.
pub fn random_colouring(g: &Graph, q: u32, seed: u64) -> Result<StrategyOutcome, ConstructError> {
    if q < 1 {
        return Err(ConstructError::PaletteTooSmall { q, min: 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colours = (0..g.n()).map(|_| rng.gen_range(1..=q)).collect();
    Ok(StrategyOutcome {
        colouring: Colouring::new(colours, q)?,
        colours_used: q,
        attempts: 0,
        verified: None,
        seed: Some(seed),
    })
}

/// Knobs for [`resample_tree_unique`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ResampleOptions {
    /// Resample budget; defaults to 100 × the number of enumerated copies.
    pub max_iters: Option<u64>,
    /// Copy-enumeration cap; defaults to [`crate::patterns::DEFAULT_COPY_CAP`].
    pub copy_cap: Option<usize>,
}

/// Moser–Tardos-style resampling towards a tree-unique colouring: start
/// from `random_colouring(g, q, seed)` and, while some copy of `pattern`
/// has every colour repeated, redraw the colours of the lowest-index such
/// copy (in the deterministic enumeration order). Stops verified when no
/// violating copy remains, or unverified once `max_iters` resamples are
/// spent. Copy enumeration happens once, up front; its cap propagates as an
/// error, distinguishable from budget exhaustion.
pub fn resample_tree_unique(
    g: &Graph,
    pattern: &TreePattern,
    q: u32,
    seed: u64,
    options: &ResampleOptions,
) -> Result<StrategyOutcome, ConstructError> {
    if q < 2 {
        return Err(ConstructError::PaletteTooSmall { q, min: 2 });
    }
    let copies = enumerate_copies(g, pattern, options.copy_cap)?;
    let max_iters = options.max_iters.unwrap_or(100 * copies.len() as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colours: Vec<u32> = (0..g.n()).map(|_| rng.gen_range(1..=q)).collect();

    let mut scratch: Vec<u32> = Vec::with_capacity(pattern.vertex_count());
    let mut lacks_unique = |colours: &[u32], vertices: &[usize]| -> bool {
        scratch.clear();
        scratch.extend(vertices.iter().map(|&v| colours[v]));
        scratch.sort_unstable();
        let mut i = 0;
        while i < scratch.len() {
            let mut j = i + 1;
            while j < scratch.len() && scratch[j] == scratch[i] {
                j += 1;
            }
            if j - i == 1 {
                return false;
            }
            i = j;
        }
        true
    };

    let mut attempts: u64 = 0;
    let verified = loop {
        let violating = copies.iter().find(|c| lacks_unique(&colours, &c.vertices));
        match violating {
            None => break true,
            Some(copy) => {
                if attempts == max_iters {
                    break false;
                }
                // redraw in ascending vertex order for reproducibility
                for &v in &copy.vertices {
                    colours[v] = rng.gen_range(1..=q);
                }
                attempts += 1;
            }
        }
    };
    Ok(StrategyOutcome {
        colouring: Colouring::new(colours, q)?,
        colours_used: q,
        attempts,
        verified: Some(verified),
        seed: Some(seed),
    })
}
