//! Seeded Monte Carlo experiment harness.
//!
//! [`run_experiment`] sweeps a parameter grid (a *cell* per combination),
//! runs `trials` independent trials in each cell, and writes a CSV row per
//! trial plus a JSON summary per cell. The whole result table is a pure
//! function of the config: per-trial seeds are derived from (base seed,
//! cell index, trial index) with a splitmix64 chain, trials run in parallel
//! but are committed in (cell, trial) order, and wall-clock time never
//! reaches the output files. Re-running a config reproduces the CSV
//! byte for byte.
//!
//! Each cell also embeds the theorem-level lower/upper colour bounds for
//! its parameters, so result tables can be read against the theory without
//! joining anything.
//!
//! [`estimate_event_probability`] estimates P(G(n,p) contains a copy of a
//! fixed tree) with an exact 95% binomial confidence interval, and
//! [`linearity_check`] fits colour counts against r to exhibit the
//! linear-growth regime.

use crate::bounds::{theorem_bounds, BoundConstants, BoundsError, TheoremKind};
use crate::colouring::{check_tree_unique, is_eta_injective, is_r_unique, ColouringError, RParam};
use crate::construct::{
    partition_colouring, random_colouring, resample_tree_unique, ConstructError, ResampleOptions,
};
use crate::graph::{GenParams, Graph, GraphError};
use crate::patterns::{
    contains_copy_with_budget, PatternError, TreePattern, DEFAULT_SEARCH_BUDGET,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Flags linearity in [`linearity_check`] unless the caller overrides it.
pub const DEFAULT_R2_THRESHOLD: f64 = 0.99;

#[derive(Debug, Error)]
pub enum MonteCarloError {
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    #[error("derived trial seeds collide; change the base seed")]
    SeedCollision,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// splitmix64 finalizer: a bijective 64-bit mixer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for one trial: three chained splitmix64 rounds over
/// (base, cell, trial). Stable across platforms and releases — recorded
/// seeds replay forever.
pub fn derive_seed(base: u64, cell: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(base).wrapping_add(cell)).wrapping_add(trial))
}

/// The p axis: explicit values, or the sparsity rule p = c·ln(n)/n tracking
/// the theorem hypotheses as n varies.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PSpec {
    Values { values: Vec<f64> },
    Rule { rule: String, c: f64 },
}

/// The only rule the parser accepts; anything else is a config error.
pub const P_RULE_LOG: &str = "c*log(n)/n";

impl PSpec {
    pub fn resolve(&self, n: usize) -> Result<Vec<f64>, MonteCarloError> {
        match self {
            PSpec::Values { values } => Ok(values.clone()),
            PSpec::Rule { rule, c } => {
                if rule != P_RULE_LOG {
                    return Err(MonteCarloError::InvalidConfig(format!(
                        "unknown p rule {rule:?}; the only supported rule is {P_RULE_LOG:?}"
                    )));
                }
                Ok(vec![c * (n as f64).ln() / n as f64])
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyKind {
    Partition,
    Random,
    Resample,
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyKind::Partition => "partition",
            StrategyKind::Random => "random",
            StrategyKind::Resample => "resample",
        })
    }
}

/// A sweep description, deserialised from JSON. Exactly one predicate axis
/// — `r`, `eta` or `pattern` — must be non-empty; it decides what every
/// trial verifies. Strategies take their constant from the matching axis:
/// `partition` sweeps `m_const` (and requires the `r` axis), `random` and
/// `resample` sweep `q_multiplier` (`resample` requires the `pattern`
/// axis). Palette sizes are derived per cell: q = ⌈multiplier·np⌉ for
/// `random`, q = ⌈multiplier·(np)^(2(1−1/t))⌉ for `resample`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: Vec<usize>,
    pub p: PSpec,
    pub strategy: Vec<StrategyKind>,
    #[serde(default)]
    pub r: Vec<u32>,
    #[serde(default)]
    pub eta: Vec<f64>,
    #[serde(default)]
    pub pattern: Vec<String>,
    #[serde(default)]
    pub m_const: Vec<f64>,
    #[serde(default)]
    pub q_multiplier: Vec<f64>,
    /// Resample budget override; default 100 × copy count per trial.
    #[serde(default)]
    pub max_iters: Option<u64>,
    /// Copy-enumeration cap override for tree predicates.
    #[serde(default)]
    pub copy_cap: Option<usize>,
    pub trials: u64,
    pub base_seed: u64,
    #[serde(default)]
    pub constants: BoundConstants,
    pub output: PathBuf,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, MonteCarloError> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, MonteCarloError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), MonteCarloError> {
        let fail = |msg: String| Err(MonteCarloError::InvalidConfig(msg));
        if self.n.is_empty() {
            return fail("the n axis is empty".into());
        }
        if self.trials < 1 {
            return fail("trials must be at least 1".into());
        }
        if self.strategy.is_empty() {
            return fail("the strategy axis is empty".into());
        }
        for &n in &self.n {
            if n < 2 {
                return fail(format!("n = {n} is below 2"));
            }
            for p in self.p.resolve(n)? {
                if !(p > 0.0 && p < 1.0) {
                    return fail(format!("p = {p} at n = {n} is outside (0, 1)"));
                }
            }
        }
        let axes = [
            ("r", !self.r.is_empty()),
            ("eta", !self.eta.is_empty()),
            ("pattern", !self.pattern.is_empty()),
        ];
        let active: Vec<&str> = axes.iter().filter(|(_, on)| *on).map(|(n, _)| *n).collect();
        if active.len() != 1 {
            return fail(format!(
                "exactly one predicate axis (r, eta or pattern) must be non-empty, found {}: [{}]",
                active.len(),
                active.join(", ")
            ));
        }
        if self.r.iter().any(|&r| r < 1) {
            return fail("r values must be at least 1".into());
        }
        if self.eta.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
            return fail("eta values must lie strictly between 0 and 1".into());
        }
        for spec in &self.pattern {
            TreePattern::parse_spec(spec)
                .map_err(|e| MonteCarloError::InvalidConfig(format!("pattern {spec:?}: {e}")))?;
        }
        for strategy in &self.strategy {
            match strategy {
                StrategyKind::Partition => {
                    if self.r.is_empty() {
                        return fail("the partition strategy needs the r axis".into());
                    }
                    if self.m_const.is_empty() {
                        return fail("the partition strategy needs a non-empty m_const axis".into());
                    }
                    if self.m_const.iter().any(|&m| !(m > 0.0 && m.is_finite())) {
                        return fail("m_const values must be positive and finite".into());
                    }
                }
                StrategyKind::Random | StrategyKind::Resample => {
                    if self.q_multiplier.is_empty() {
                        return fail(format!(
                            "the {strategy} strategy needs a non-empty q_multiplier axis"
                        ));
                    }
                    if self.q_multiplier.iter().any(|&m| !(m > 0.0 && m.is_finite())) {
                        return fail("q_multiplier values must be positive and finite".into());
                    }
                    if *strategy == StrategyKind::Resample && self.pattern.is_empty() {
                        return fail("the resample strategy needs the pattern axis".into());
                    }
                }
            }
        }
        Ok(())
    }
}

/// Everything identifying a cell, embedded verbatim in each CSV row.
#[derive(Debug, Clone, Serialize)]
pub struct CellParams {
    pub cell: u64,
    pub n: usize,
    pub p: f64,
    pub strategy: StrategyKind,
    pub r: Option<u32>,
    pub eta: Option<f64>,
    pub pattern: Option<String>,
    pub m_const: Option<f64>,
    pub q_multiplier: Option<f64>,
    /// Palette size derived for the random strategies; None for partition,
    /// whose palette comes out of the plan.
    pub q: Option<u32>,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

#[derive(Debug, Clone)]
enum Predicate {
    R(u32),
    Eta(f64),
    Tree(String, TreePattern),
}

#[derive(Debug, Clone)]
struct Cell {
    params: CellParams,
    predicate: Predicate,
}

/// Why a trial ended the way it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReasonCode {
    /// The strategy ran to completion (which still may mean verified=false
    /// for a single-shot random draw).
    Ok,
    /// The partition plan does not fit: t·⌈1/p⌉ > n.
    PlanInfeasible,
    /// Copy enumeration hit its cap; no verdict.
    CapExceeded,
    /// The resampler exhausted its budget without reaching the predicate.
    MaxIters,
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReasonCode::Ok => "ok",
            ReasonCode::PlanInfeasible => "plan_infeasible",
            ReasonCode::CapExceeded => "cap_exceeded",
            ReasonCode::MaxIters => "max_iters",
        })
    }
}

/// One trial's outcome. Wall time is measured for interactive reporting but
/// deliberately kept out of the serialised outputs, which must be
/// reproducible byte for byte.
#[derive(Debug, Clone)]
pub struct TrialResult {
    pub cell: CellParams,
    pub trial: u64,
    pub seed: u64,
    pub colours_used: Option<u32>,
    pub verified: Option<bool>,
    pub attempts: u64,
    pub reason: ReasonCode,
    pub wall_time: Duration,
}

/// Per-cell aggregate written to the summary JSON.
#[derive(Debug, Clone, Serialize)]
pub struct CellSummary {
    #[serde(flatten)]
    pub cell: CellParams,
    pub trials: u64,
    /// Fraction of trials with verified = true.
    pub success_fraction: f64,
    /// Mean over trials that produced a colouring; null when none did.
    pub mean_colours_used: Option<f64>,
    pub reasons: BTreeMap<String, u64>,
}

/// A completed run: all rows in (cell, trial) order plus where the files
/// went.
#[derive(Debug)]
pub struct ExperimentOutcome {
    pub rows: Vec<TrialResult>,
    pub summaries: Vec<CellSummary>,
    pub csv_path: PathBuf,
    pub summary_path: PathBuf,
}

fn build_cells(config: &ExperimentConfig) -> Result<Vec<Cell>, MonteCarloError> {
    let mut cells = Vec::new();
    let mut index = 0u64;
    for &n in &config.n {
        for p in config.p.resolve(n)? {
            let np = n as f64 * p;
            let predicates: Vec<Predicate> = if !config.r.is_empty() {
                config.r.iter().map(|&r| Predicate::R(r)).collect()
            } else if !config.eta.is_empty() {
                config.eta.iter().map(|&e| Predicate::Eta(e)).collect()
            } else {
                config
                    .pattern
                    .iter()
                    .map(|spec| {
                        TreePattern::parse_spec(spec)
                            .map(|pattern| Predicate::Tree(spec.clone(), pattern))
                    })
                    .collect::<Result<_, _>>()?
            };
            for predicate in &predicates {
                let kind = match predicate {
                    Predicate::R(r) => TheoremKind::RUnique { r: *r },
                    Predicate::Eta(eta) => TheoremKind::EtaInjective { eta: *eta },
                    Predicate::Tree(_, pattern) => {
                        TheoremKind::TreeUnique { t: pattern.vertex_count() }
                    }
                };
                let report = theorem_bounds(&kind, n, p, &config.constants)?;
                for &strategy in &config.strategy {
                    // the partition strategy only makes sense against the r
                    // predicate, and resampling against the tree predicate;
                    // incompatible combinations are skipped, not errors, so
                    // mixed-strategy sweeps stay expressible
                    let compatible = match (strategy, predicate) {
                        (StrategyKind::Partition, Predicate::R(_)) => true,
                        (StrategyKind::Partition, _) => false,
                        (StrategyKind::Resample, Predicate::Tree(..)) => true,
                        (StrategyKind::Resample, _) => false,
                        (StrategyKind::Random, _) => true,
                    };
                    if !compatible {
                        continue;
                    }
                    let const_axis: Vec<f64> = match strategy {
                        StrategyKind::Partition => config.m_const.clone(),
                        _ => config.q_multiplier.clone(),
                    };
                    for &constant in &const_axis {
                        let (m_const, q_multiplier, q) = match strategy {
                            StrategyKind::Partition => (Some(constant), None, None),
                            StrategyKind::Random => {
                                let q = (constant * np).ceil().max(1.0) as u32;
                                (None, Some(constant), Some(q))
                            }
                            StrategyKind::Resample => {
                                let t = match predicate {
                                    Predicate::Tree(_, pattern) => pattern.vertex_count(),
                                    _ => unreachable!("resample is tree-only"),
                                };
                                let exponent = 2.0 * (1.0 - 1.0 / t as f64);
                                let q = (constant * np.powf(exponent)).ceil().max(2.0) as u32;
                                (None, Some(constant), Some(q))
                            }
                        };
                        let (r, eta, pattern) = match predicate {
                            Predicate::R(r) => (Some(*r), None, None),
                            Predicate::Eta(e) => (None, Some(*e), None),
                            Predicate::Tree(spec, _) => (None, None, Some(spec.clone())),
                        };
                        cells.push(Cell {
                            params: CellParams {
                                cell: index,
                                n,
                                p,
                                strategy,
                                r,
                                eta,
                                pattern,
                                m_const,
                                q_multiplier,
                                q,
                                lower_bound: report.lower,
                                upper_bound: report.upper,
                            },
                            predicate: predicate.clone(),
                        });
                        index += 1;
                    }
                }
            }
        }
    }
    if cells.is_empty() {
        return Err(MonteCarloError::InvalidConfig(
            "no cell combines a strategy with a compatible predicate axis".into(),
        ));
    }
    Ok(cells)
}

fn run_cell_trial(
    config: &ExperimentConfig,
    cell: &Cell,
    trial: u64,
) -> Result<TrialResult, MonteCarloError> {
    let seed = derive_seed(config.base_seed, cell.params.cell, trial);
    let started = Instant::now();
    // independent streams for the graph and the colouring
    let graph_seed = splitmix64(seed);
    let colour_seed = splitmix64(graph_seed);
    let graph = Graph::generate(&GenParams::new(cell.params.n, cell.params.p, graph_seed))?;

    let mut row = TrialResult {
        cell: cell.params.clone(),
        trial,
        seed,
        colours_used: None,
        verified: None,
        attempts: 0,
        reason: ReasonCode::Ok,
        wall_time: Duration::ZERO,
    };

    match cell.params.strategy {
        StrategyKind::Partition => {
            let r = cell.params.r.expect("partition cells carry r");
            let m = cell.params.m_const.expect("partition cells carry m_const");
            match partition_colouring(&graph, r, cell.params.p, m) {
                Ok(outcome) => {
                    row.colours_used = Some(outcome.colours_used);
                    row.verified = outcome.verified;
                    row.attempts = outcome.attempts;
                }
                Err(ConstructError::PlanDoesNotFit { .. }) => {
                    row.reason = ReasonCode::PlanInfeasible;
                }
                Err(other) => return Err(other.into()),
            }
        }
        StrategyKind::Random => {
            let q = cell.params.q.expect("random cells carry q");
            let outcome = random_colouring(&graph, q, colour_seed)?;
            row.colours_used = Some(outcome.colours_used);
            row.attempts = outcome.attempts;
            match &cell.predicate {
                Predicate::R(r) => {
                    row.verified =
                        Some(is_r_unique(&graph, &outcome.colouring, RParam::Finite(*r))?);
                }
                Predicate::Eta(eta) => {
                    row.verified = Some(is_eta_injective(&graph, &outcome.colouring, *eta)?);
                }
                Predicate::Tree(_, pattern) => {
                    match check_tree_unique(&graph, &outcome.colouring, pattern, config.copy_cap) {
                        Ok(verdict) => row.verified = Some(verdict.holds),
                        Err(ColouringError::Pattern(PatternError::CopyCapExceeded { .. })) => {
                            row.reason = ReasonCode::CapExceeded;
                        }
                        Err(other) => return Err(other.into()),
                    }
                }
            }
        }
        StrategyKind::Resample => {
            let q = cell.params.q.expect("resample cells carry q");
            let pattern = match &cell.predicate {
                Predicate::Tree(_, pattern) => pattern,
                _ => unreachable!("resample is tree-only"),
            };
            let options =
                ResampleOptions { max_iters: config.max_iters, copy_cap: config.copy_cap };
            match resample_tree_unique(&graph, pattern, q, colour_seed, &options) {
                Ok(outcome) => {
                    row.colours_used = Some(outcome.colours_used);
                    row.attempts = outcome.attempts;
                    row.verified = outcome.verified;
                    if outcome.verified == Some(false) {
                        row.reason = ReasonCode::MaxIters;
                    }
                }
                Err(ConstructError::Pattern(PatternError::CopyCapExceeded { .. })) => {
                    row.reason = ReasonCode::CapExceeded;
                }
                Err(other) => return Err(other.into()),
            }
        }
    }
    row.wall_time = started.elapsed();
    Ok(row)
}

/// The CSV column order, fixed forever.
pub const CSV_COLUMNS: [&str; 18] = [
    "cell",
    "trial",
    "n",
    "p",
    "strategy",
    "r",
    "eta",
    "pattern",
    "m_const",
    "q_multiplier",
    "q",
    "seed",
    "colours_used",
    "verified",
    "attempts",
    "reason",
    "lower_bound",
    "upper_bound",
];

fn render_csv(rows: &[TrialResult]) -> Result<Vec<u8>, MonteCarloError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(CSV_COLUMNS)?;
    let opt = |value: Option<String>| value.unwrap_or_default();
    for row in rows {
        let c = &row.cell;
        writer.write_record([
            c.cell.to_string(),
            row.trial.to_string(),
            c.n.to_string(),
            c.p.to_string(),
            c.strategy.to_string(),
            opt(c.r.map(|v| v.to_string())),
            opt(c.eta.map(|v| v.to_string())),
            opt(c.pattern.clone()),
            opt(c.m_const.map(|v| v.to_string())),
            opt(c.q_multiplier.map(|v| v.to_string())),
            opt(c.q.map(|v| v.to_string())),
            row.seed.to_string(),
            opt(row.colours_used.map(|v| v.to_string())),
            opt(row.verified.map(|v| v.to_string())),
            row.attempts.to_string(),
            row.reason.to_string(),
            c.lower_bound.to_string(),
            c.upper_bound.to_string(),
        ])?;
    }
    Ok(writer.into_inner().expect("writing to a Vec cannot fail"))
}

fn summarise(cells: &[Cell], rows: &[TrialResult], trials: u64) -> Vec<CellSummary> {
    cells
        .iter()
        .map(|cell| {
            let cell_rows: Vec<&TrialResult> =
                rows.iter().filter(|row| row.cell.cell == cell.params.cell).collect();
            let successes = cell_rows.iter().filter(|r| r.verified == Some(true)).count();
            let coloured: Vec<u32> = cell_rows.iter().filter_map(|r| r.colours_used).collect();
            let mean_colours_used = if coloured.is_empty() {
                None
            } else {
                Some(coloured.iter().map(|&c| c as f64).sum::<f64>() / coloured.len() as f64)
            };
            let mut reasons = BTreeMap::new();
            for row in &cell_rows {
                *reasons.entry(row.reason.to_string()).or_insert(0u64) += 1;
            }
            CellSummary {
                cell: cell.params.clone(),
                trials,
                success_fraction: successes as f64 / trials as f64,
                mean_colours_used,
                reasons,
            }
        })
        .collect()
}

/// Runs the whole sweep: validates, derives and collision-checks all seeds,
/// runs every (cell, trial) in parallel, and writes `output` (CSV) plus the
/// per-cell summary JSON next to it (`<output>.summary.json` with the
/// extension swapped). Infeasible trials become rows with a reason code;
/// only genuine internal failures abort the run.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome, MonteCarloError> {
    config.validate()?;
    let cells = build_cells(config)?;
    let jobs: Vec<(usize, u64)> = (0..cells.len())
        .flat_map(|ci| (0..config.trials).map(move |ti| (ci, ti)))
        .collect();
    let mut seeds = HashSet::with_capacity(jobs.len());
    for &(ci, ti) in &jobs {
        if !seeds.insert(derive_seed(config.base_seed, cells[ci].params.cell, ti)) {
            return Err(MonteCarloError::SeedCollision);
        }
    }
    let rows: Vec<TrialResult> = jobs
        .par_iter()
        .map(|&(ci, ti)| run_cell_trial(config, &cells[ci], ti))
        .collect::<Result<_, _>>()?;

    let csv_bytes = render_csv(&rows)?;
    if let Some(parent) = config.output.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(&config.output, &csv_bytes)?;

    let summaries = summarise(&cells, &rows, config.trials);
    let summary_path = config.output.with_extension("summary.json");
    let mut summary_bytes = serde_json::to_vec_pretty(&summaries)?;
    summary_bytes.push(b'\n');
    std::fs::write(&summary_path, summary_bytes)?;

    Ok(ExperimentOutcome { rows, summaries, csv_path: config.output.clone(), summary_path })
}

/// Re-runs a single recorded trial from its (cell, trial) coordinates.
/// Deterministic: returns exactly the row the full run produced (up to wall
/// time).
pub fn replay_trial(
    config: &ExperimentConfig,
    cell: u64,
    trial: u64,
) -> Result<TrialResult, MonteCarloError> {
    config.validate()?;
    let cells = build_cells(config)?;
    let cell = cells
        .iter()
        .find(|c| c.params.cell == cell)
        .ok_or_else(|| MonteCarloError::InvalidConfig(format!("no cell {cell} in this config")))?;
    if trial >= config.trials {
        return Err(MonteCarloError::InvalidConfig(format!(
            "trial {trial} out of range, config has {} trials",
            config.trials
        )));
    }
    run_cell_trial(config, cell, trial)
}

/// Exact (Clopper–Pearson) two-sided binomial confidence interval.
fn clopper_pearson(successes: u64, trials: u64, alpha: f64) -> (f64, f64) {
    let x = successes as f64;
    let n = trials as f64;
    let low = if successes == 0 {
        0.0
    } else {
        Beta::new(x, n - x + 1.0)
            .expect("shapes are positive")
            .inverse_cdf(alpha / 2.0)
    };
    let high = if successes == trials {
        1.0
    } else {
        Beta::new(x + 1.0, n - x)
            .expect("shapes are positive")
            .inverse_cdf(1.0 - alpha / 2.0)
    };
    (low, high)
}

/// An estimated event probability with its 95% confidence interval.
#[derive(Debug, Clone, Serialize)]
pub struct EventEstimate {
    pub trials: u64,
    /// Trials whose containment search finished within budget.
    pub valid_trials: u64,
    /// Trials excluded because the search budget ran out.
    pub excluded: u64,
    pub occurrences: u64,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Estimates P(G(n,p) contains a copy of `pattern`) over `trials` seeded
/// graphs. Each trial's containment search is budgeted (default
/// [`DEFAULT_SEARCH_BUDGET`] nodes); trials that exhaust the budget are
/// excluded from the estimate and counted in `excluded`. The interval is
/// exact binomial at 95% over the valid trials.
pub fn estimate_event_probability(
    n: usize,
    p: f64,
    pattern: &TreePattern,
    trials: u64,
    base_seed: u64,
    budget: Option<u64>,
) -> Result<EventEstimate, MonteCarloError> {
    if trials < 1 {
        return Err(MonteCarloError::InvalidConfig("trials must be at least 1".into()));
    }
    GenParams::new(n, p, 0).validate()?;
    let budget = budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
    let mut seeds = HashSet::with_capacity(trials as usize);
    for trial in 0..trials {
        if !seeds.insert(derive_seed(base_seed, 0, trial)) {
            return Err(MonteCarloError::SeedCollision);
        }
    }
    let outcomes: Vec<Option<bool>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let seed = splitmix64(derive_seed(base_seed, 0, trial));
            let graph = Graph::generate(&GenParams::new(n, p, seed))?;
            match contains_copy_with_budget(&graph, pattern, budget) {
                Ok(found) => Ok(Some(found)),
                Err(PatternError::SearchBudgetExceeded { .. }) => Ok(None),
                Err(other) => Err(MonteCarloError::from(other)),
            }
        })
        .collect::<Result<_, MonteCarloError>>()?;
    let valid_trials = outcomes.iter().filter(|o| o.is_some()).count() as u64;
    let occurrences = outcomes.iter().filter(|o| **o == Some(true)).count() as u64;
    if valid_trials == 0 {
        return Err(MonteCarloError::InsufficientData(
            "every trial exhausted its search budget".into(),
        ));
    }
    let (ci_low, ci_high) = clopper_pearson(occurrences, valid_trials, 0.05);
    Ok(EventEstimate {
        trials,
        valid_trials,
        excluded: trials - valid_trials,
        occurrences,
        fraction: occurrences as f64 / valid_trials as f64,
        ci_low,
        ci_high,
    })
}

/// Least-squares summary of colours used against r.
#[derive(Debug, Clone, Serialize)]
pub struct RegressionSummary {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
    pub distinct_r: usize,
    /// r_squared reached the threshold.
    pub linear: bool,
    /// slope is strictly positive.
    pub growing: bool,
}

/// Fits colours used vs r over the verified rows of a result table,
/// optionally restricted to r ≥ `min_r` (the linear regime starts around
/// ln n). Needs at least 3 distinct r values. A constant table (zero total
/// variance) fits exactly: R² = 1 with slope 0, flagged non-growing.
pub fn linearity_check(
    rows: &[TrialResult],
    min_r: Option<f64>,
    r2_threshold: f64,
) -> Result<RegressionSummary, MonteCarloError> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|row| row.verified == Some(true))
        .filter_map(|row| {
            let r = row.cell.r? as f64;
            let colours = row.colours_used? as f64;
            (min_r.is_none_or(|m| r >= m)).then_some((r, colours))
        })
        .collect();
    let mut distinct: Vec<u64> = points.iter().map(|&(r, _)| r as u64).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(MonteCarloError::InsufficientData(format!(
            "need at least 3 distinct r values with verified colourings, have {}",
            distinct.len()
        )));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|&(x, _)| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = points.iter().map(|&(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx; // sxx > 0: at least 3 distinct x values
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = points.iter().map(|&(_, y)| (y - mean_y) * (y - mean_y)).sum();
    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(RegressionSummary {
        slope,
        intercept,
        r_squared,
        points: points.len(),
        distinct_r: distinct.len(),
        linear: r_squared >= r2_threshold,
        growing: slope > 0.0,
    })
}
