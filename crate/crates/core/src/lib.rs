//! A laboratory for unique colourings of Erdős–Rényi random graphs.
//!
//! A proper colouring can ask for more than properness: that every vertex
//! see many colours exactly once in its neighbourhood, or that every copy
//! of a fixed tree carry a colour appearing exactly once on it. This crate
//! provides the pieces needed to study how many colours those stronger
//! demands cost on G(n, p):
//!
//! - [`graph`] — seeded G(n, p) generation and a plain edge-list format;
//! - [`colouring`] — the uniqueness predicates and their verifiers, each
//!   reporting a concrete witness on failure;
//! - [`patterns`] — tree patterns (stars, paths, nearly regular trees) and
//!   capped subgraph-copy enumeration;
//! - [`construct`] — colouring strategies: the partition construction, a
//!   single uniform random draw, and Moser–Tardos style resampling;
//! - [`exact`] — exact minimum colour counts by canonical backtracking,
//!   with a lexicographically least witness;
//! - [`bounds`] — closed-form bounds and side-condition checks from the
//!   underlying theory;
//! - [`montecarlo`] — a seeded, byte-reproducible experiment harness.
//!
//! Everything randomized takes an explicit seed and is deterministic given
//! it; nothing reads clocks or global state.

pub mod bounds;
pub mod colouring;
pub mod construct;
pub mod exact;
pub mod graph;
pub mod montecarlo;
pub mod patterns;

pub use bounds::{
    alpha, chernoff_bound, lll_condition, packing_lower_bound, theorem_bounds, zeta_bound,
    BoundConstants, BoundReport, BoundsError, LllReport, TheoremKind, ValidityNote,
};
pub use colouring::{
    check_tree_unique, eta_requirement, eta_violation, is_eta_injective, is_proper, is_r_unique,
    is_tree_unique, profile, proper_violation, r_violation, Colouring, ColouringError, RParam,
    TreeUniqueVerdict, UniquenessProfile, VertexUniqueness,
};
pub use construct::{
    partition_colouring, plan_partition, random_colouring, resample_tree_unique, ConstructError,
    PartitionPlan, ResampleOptions, StrategyOutcome,
};
pub use exact::{exact_chromatic, ExactError, ExactQuery, ExactResult, Mode, DEFAULT_GUARD};
pub use graph::{GenParams, Graph, GraphError};
pub use montecarlo::{
    derive_seed, estimate_event_probability, linearity_check, replay_trial, run_experiment,
    splitmix64, CellParams, CellSummary, EventEstimate, ExperimentConfig, ExperimentOutcome,
    MonteCarloError, PSpec, ReasonCode, RegressionSummary, StrategyKind, TrialResult,
    DEFAULT_R2_THRESHOLD,
};
pub use patterns::{
    contains_copy, contains_copy_with_budget, count_copies, count_embeddings, enumerate_copies,
    visit_copies, PatternError, TreeCopy, TreePattern, DEFAULT_COPY_CAP,
    DEFAULT_PATTERN_VERTEX_CAP, DEFAULT_SEARCH_BUDGET,
};
