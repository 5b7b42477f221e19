//! `unicolour` — command-line front end for the unique-colouring toolkit.
//!
//! Subcommands: `gen` (seeded G(n,p) to an edge list), `colour` (run a
//! strategy, write the colouring, print an outcome JSON), `verify` (check
//! a predicate, naming a concrete witness on failure), `exact` (minimum
//! palette size with witness), `bounds` (theorem bound report as JSON),
//! `experiment` (config-driven sweep to CSV) and `estimate` (pattern
//! containment probability with confidence interval).
//!
//! Exit codes: 0 success (and a true verdict for `verify`), 1 predicate
//! false, 2 usage or input error, 3 infeasible request (partition plan
//! does not fit, exact guard exceeded), 4 a cap or budget was exhausted.
//! Every randomized subcommand requires an explicit --seed; nothing reads
//! the clock.

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use unicolour::{
    check_tree_unique, estimate_event_probability, eta_requirement, eta_violation,
    exact_chromatic, partition_colouring, profile, proper_violation, r_violation,
    random_colouring, resample_tree_unique, run_experiment, theorem_bounds, BoundConstants,
    BoundsError, Colouring, ColouringError, ConstructError, ExactError, ExactQuery,
    ExperimentConfig, GenParams, Graph, GraphError, Mode, MonteCarloError, PatternError, RParam,
    ResampleOptions, TheoremKind, TreePattern, DEFAULT_GUARD,
};

// -------------------------------------------------------------------
// error-to-exit-code plumbing
// -------------------------------------------------------------------

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_CAP: u8 = 4;

struct CliError {
    message: String,
    code: u8,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn usage(message: impl fmt::Display) -> CliError {
    CliError { message: message.to_string(), code: EXIT_USAGE }
}

fn capped(message: impl fmt::Display) -> CliError {
    CliError { message: message.to_string(), code: EXIT_CAP }
}

fn infeasible(message: impl fmt::Display) -> CliError {
    CliError { message: message.to_string(), code: EXIT_INFEASIBLE }
}

impl From<GraphError> for CliError {
    fn from(err: GraphError) -> Self {
        usage(err)
    }
}

impl From<PatternError> for CliError {
    fn from(err: PatternError) -> Self {
        match err {
            PatternError::CopyCapExceeded { .. }
            | PatternError::EmbeddingCapExceeded { .. }
            | PatternError::SearchBudgetExceeded { .. }
            | PatternError::VertexCapExceeded { .. } => capped(err),
            other => usage(other),
        }
    }
}

impl From<ColouringError> for CliError {
    fn from(err: ColouringError) -> Self {
        match err {
            ColouringError::Pattern(inner) => inner.into(),
            other => usage(other),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(err: ConstructError) -> Self {
        match err {
            ConstructError::PlanDoesNotFit { .. } => infeasible(err),
            ConstructError::Pattern(inner) => inner.into(),
            ConstructError::Colouring(inner) => inner.into(),
            other => usage(other),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(err: ExactError) -> Self {
        match err {
            ExactError::GuardExceeded { .. } => infeasible(err),
            ExactError::Pattern(inner) => inner.into(),
            ExactError::Colouring(inner) => inner.into(),
            other => usage(other),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(err: BoundsError) -> Self {
        usage(err)
    }
}

impl From<MonteCarloError> for CliError {
    fn from(err: MonteCarloError) -> Self {
        match err {
            MonteCarloError::Graph(inner) => inner.into(),
            MonteCarloError::Colouring(inner) => inner.into(),
            MonteCarloError::Pattern(inner) => inner.into(),
            MonteCarloError::Construct(inner) => inner.into(),
            MonteCarloError::Bounds(inner) => inner.into(),
            MonteCarloError::InsufficientData(_) => capped(err),
            other => usage(other),
        }
    }
}

// -------------------------------------------------------------------
// argument shapes
// -------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "unicolour",
    version,
    about = "Unique colourings of random graphs: generate, colour, verify, solve, bound, experiment"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Partition,
    Random,
    Resample,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Proper,
    Eta,
    R,
    Tree,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Eta,
    R,
    Tree,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded G(n, p) graph and write it as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        /// Reproducibility seed (required: no wall-clock defaults).
        #[arg(long)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Colour a graph with a strategy; writes the colouring file and
    /// prints an outcome JSON to stdout.
    Colour {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        /// Where to write the colouring file.
        #[arg(long)]
        out: PathBuf,
        /// Target uniqueness r (partition strategy).
        #[arg(long)]
        r: Option<u32>,
        /// Generation probability p, sizing the partition classes at ⌈1/p⌉.
        #[arg(long)]
        p: Option<f64>,
        /// Partition constant M.
        #[arg(long, default_value_t = 8.0)]
        m: f64,
        /// Palette size (random and resample strategies).
        #[arg(long)]
        q: Option<u32>,
        /// Tree pattern spec (resample strategy): edge, star:t, path:t,
        /// regular:l,t or a file path.
        #[arg(long)]
        pattern: Option<String>,
        /// Seed for the randomized strategies.
        #[arg(long)]
        seed: Option<u64>,
        /// Resample budget; default 100 × copy count.
        #[arg(long)]
        max_iters: Option<u64>,
        /// Copy-enumeration cap for the resample strategy.
        #[arg(long)]
        copy_cap: Option<usize>,
    },
    /// Verify a predicate on (graph, colouring); exit 0 when it holds,
    /// 1 with a concrete witness when it does not.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Fraction η in (0, 1] (eta mode).
        #[arg(long)]
        eta: Option<f64>,
        /// Uniqueness target: a positive integer or "inf" (r mode).
        #[arg(long)]
        r: Option<String>,
        /// Tree pattern spec (tree mode).
        #[arg(long)]
        pattern: Option<String>,
        /// Copy-enumeration cap (tree mode).
        #[arg(long)]
        copy_cap: Option<usize>,
    },
    /// Exact minimum palette size for a predicate, with a witness.
    Exact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        pattern: Option<String>,
        /// Largest n the solver will accept.
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Evaluate the theorem bounds for a predicate at (n, p); prints a
    /// report JSON with validity notes.
    Bounds {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        r: Option<u32>,
        /// Tree order t (tree kind).
        #[arg(long)]
        t: Option<usize>,
        /// Comma-separated constant overrides, e.g. "M=8,D0=2".
        #[arg(long)]
        constants: Option<String>,
    },
    /// Run a config-driven experiment sweep; writes CSV and summary JSON.
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
    /// Estimate the probability that G(n, p) contains a tree pattern.
    Estimate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Per-trial search budget; default 50,000,000 nodes.
        #[arg(long)]
        budget: Option<u64>,
    },
}

// -------------------------------------------------------------------
// dispatch
// -------------------------------------------------------------------

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code)
        }
    }
}

/// Writes to stdout, treating a broken pipe (e.g. `| head`) as a normal
/// early exit rather than a panic.
fn emit_text(text: &str) {
    use std::io::{ErrorKind, Write};
    let mut out = std::io::stdout().lock();
    if let Err(err) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if err.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {err}");
        std::process::exit(i32::from(EXIT_USAGE));
    }
}

fn emit_line(text: &str) {
    emit_text(&format!("{text}\n"));
}

fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|err| usage(format!("cannot read {}: {err}", path.display())))
}

fn build_mode(
    mode: ModeArg,
    eta: Option<f64>,
    r: Option<String>,
    pattern: Option<String>,
) -> Result<Mode, CliError> {
    match mode {
        ModeArg::Proper => Ok(Mode::Proper),
        ModeArg::Eta => {
            let eta = eta.ok_or_else(|| usage("eta mode requires --eta"))?;
            Ok(Mode::EtaInjective(eta))
        }
        ModeArg::R => {
            let r = r.ok_or_else(|| usage("r mode requires --r"))?;
            let r: RParam = r.parse().map_err(usage)?;
            Ok(Mode::RUnique(r))
        }
        ModeArg::Tree => {
            let spec = pattern.ok_or_else(|| usage("tree mode requires --pattern"))?;
            Ok(Mode::TreeUnique(TreePattern::parse_spec(&spec)?))
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Gen { n, p, seed, out } => {
            let graph = Graph::generate(&GenParams::new(n, p, seed))?;
            match out {
                Some(path) => graph.write_edge_list(path)?,
                None => emit_text(&graph.to_edge_list_string()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Colour {
            graph,
            strategy,
            out,
            r,
            p,
            m,
            q,
            pattern,
            seed,
            max_iters,
            copy_cap,
        } => {
            let g = Graph::parse_edge_list(&read_file(&graph)?)?;
            let (name, outcome) = match strategy {
                StrategyArg::Partition => {
                    let r = r.ok_or_else(|| usage("partition strategy requires --r"))?;
                    let p = p.ok_or_else(|| usage("partition strategy requires --p"))?;
                    ("partition", partition_colouring(&g, r, p, m)?)
                }
                StrategyArg::Random => {
                    let q = q.ok_or_else(|| usage("random strategy requires --q"))?;
                    let seed = seed.ok_or_else(|| usage("random strategy requires --seed"))?;
                    ("random", random_colouring(&g, q, seed)?)
                }
                StrategyArg::Resample => {
                    let q = q.ok_or_else(|| usage("resample strategy requires --q"))?;
                    let seed = seed.ok_or_else(|| usage("resample strategy requires --seed"))?;
                    let spec =
                        pattern.ok_or_else(|| usage("resample strategy requires --pattern"))?;
                    let tree = TreePattern::parse_spec(&spec)?;
                    let options = ResampleOptions { max_iters, copy_cap };
                    ("resample", resample_tree_unique(&g, &tree, q, seed, &options)?)
                }
            };
            outcome.colouring.write_colouring(&out)?;
            let report = serde_json::json!({
                "strategy": name,
                "colours_used": outcome.colours_used,
                "attempts": outcome.attempts,
                "verified": outcome.verified,
                "seed": outcome.seed,
                "colouring": out,
            });
            emit_line(&serde_json::to_string_pretty(&report).map_err(usage)?);
            // the colouring file is written either way, for inspection
            match (name, outcome.verified) {
                ("resample", Some(false)) => {
                    Err(capped("resampling budget exhausted before the predicate held"))
                }
                (_, Some(false)) => Ok(ExitCode::from(EXIT_FALSE)),
                _ => Ok(ExitCode::SUCCESS),
            }
        }
        Command::Verify { graph, colouring, mode, eta, r, pattern, copy_cap } => {
            let g = Graph::parse_edge_list(&read_file(&graph)?)?;
            let f = Colouring::parse_colouring(&read_file(&colouring)?)?;
            let mode = build_mode(mode, eta, r, pattern)?;
            let witness: Option<String> = match &mode {
                Mode::Proper => proper_violation(&g, &f)?.map(|(u, v)| {
                    format!("edge ({u}, {v}) carries colour {} on both ends", f.colour(u))
                }),
                Mode::EtaInjective(eta) => match eta_violation(&g, &f, *eta)? {
                    Some(u) => {
                        let prof = profile(&g, &f)?;
                        let v = prof.vertex(u);
                        Some(format!(
                            "vertex {u}: open-unique {} of degree {}, required {}",
                            v.open_unique,
                            v.degree,
                            eta_requirement(*eta, v.degree)
                        ))
                    }
                    None => None,
                },
                Mode::RUnique(r) => match r_violation(&g, &f, *r)? {
                    Some(u) => {
                        let prof = profile(&g, &f)?;
                        let v = prof.vertex(u);
                        Some(format!(
                            "vertex {u}: closed-unique {} of degree {}, required {}",
                            v.closed_unique,
                            v.degree,
                            r.requirement(v.degree)
                        ))
                    }
                    None => None,
                },
                Mode::TreeUnique(tree) => check_tree_unique(&g, &f, tree, copy_cap)?
                    .violating_copy
                    .map(|copy| format!("copy {:?} has every colour repeated", copy.vertices)),
            };
            match witness {
                None => {
                    emit_line("verdict: true");
                    Ok(ExitCode::SUCCESS)
                }
                Some(witness) => {
                    emit_line("verdict: false");
                    emit_line(&format!("witness: {witness}"));
                    Ok(ExitCode::from(EXIT_FALSE))
                }
            }
        }
        Command::Exact { graph, mode, eta, r, pattern, guard } => {
            let g = Graph::parse_edge_list(&read_file(&graph)?)?;
            let mode = build_mode(mode, eta, r, pattern)?;
            let query = ExactQuery::with_guard(mode, guard);
            let result = exact_chromatic(&g, &query)?;
            let report = serde_json::json!({
                "k": result.k,
                "witness": result.witness.colours(),
            });
            emit_line(&serde_json::to_string_pretty(&report).map_err(usage)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { kind, n, p, eta, r, t, constants } => {
            let mut consts = BoundConstants::default();
            if let Some(spec) = constants {
                for part in spec.split(',').filter(|s| !s.is_empty()) {
                    let (key, value) = part
                        .split_once('=')
                        .ok_or_else(|| usage(format!("bad constant {part:?}: expected K=V")))?;
                    let value: f64 = value
                        .trim()
                        .parse()
                        .map_err(|e| usage(format!("bad value in {part:?}: {e}")))?;
                    consts.set(key.trim(), value)?;
                }
            }
            let kind = match kind {
                KindArg::Eta => TheoremKind::EtaInjective {
                    eta: eta.ok_or_else(|| usage("eta kind requires --eta"))?,
                },
                KindArg::R => {
                    TheoremKind::RUnique { r: r.ok_or_else(|| usage("r kind requires --r"))? }
                }
                KindArg::Tree => {
                    TheoremKind::TreeUnique { t: t.ok_or_else(|| usage("tree kind requires --t"))? }
                }
            };
            let report = theorem_bounds(&kind, n, p, &consts)?;
            emit_line(&serde_json::to_string_pretty(&report).map_err(usage)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment { config } => {
            let config = ExperimentConfig::from_json(&read_file(&config)?)?;
            let outcome = run_experiment(&config)?;
            emit_line(&format!(
                "wrote {} ({} rows) and {}",
                outcome.csv_path.display(),
                outcome.rows.len(),
                outcome.summary_path.display()
            ));
            for summary in &outcome.summaries {
                emit_line(&format!(
                    "cell {}: success {:.3}, mean colours {}",
                    summary.cell.cell,
                    summary.success_fraction,
                    summary
                        .mean_colours_used
                        .map_or_else(|| "n/a".to_string(), |m| format!("{m:.2}")),
                ));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Estimate { n, p, pattern, trials, seed, budget } => {
            let tree = TreePattern::parse_spec(&pattern)?;
            let estimate = estimate_event_probability(n, p, &tree, trials, seed, budget)?;
            emit_line(&serde_json::to_string_pretty(&estimate).map_err(usage)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
