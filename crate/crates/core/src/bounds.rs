//! Closed-form bound evaluators: the Chernoff tail estimate, the unique-
//! neighbour probability α, the ζ failure bound, the theorem-level colour-
//! number bounds, the local-lemma sufficient condition, and the packing
//! lower bound.
//!
//! Everything here is pure arithmetic in double precision with natural
//! logarithms. Quantities of the shape d·e^d·(…)^(…) are computed in
//! log-space and exponentiated once, so large degrees degrade to `inf`
//! rather than panicking. None of these evaluators claims the underlying
//! guarantee holds at a given finite n — the theorems behind them are
//! asymptotic; [`BoundReport::validity`] only records which stated
//! hypotheses the inputs satisfy. The constants (M, D, D₀, …) are knobs:
//! the theory proves workable values exist without naming them, so callers
//! choose and sweep them.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("{name} must be {requirement}, got {value}")]
    InvalidParameter { name: &'static str, value: f64, requirement: &'static str },
    #[error("unknown constant {key:?}: expected one of M, D, D0, D1, D2, theta")]
    UnknownConstant { key: String },
}

fn require(
    ok: bool,
    name: &'static str,
    value: f64,
    requirement: &'static str,
) -> Result<(), BoundsError> {
    if ok {
        Ok(())
    } else {
        Err(BoundsError::InvalidParameter { name, value, requirement })
    }
}

/// The caller-supplied constants appearing in the theorem statements.
/// Defaults are workable starting points for desk-scale sweeps, not claims
/// about the proofs' constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundConstants {
    /// Sparsity threshold constant: hypotheses read p ≥ M·ln(n)/n.
    #[serde(rename = "M", default = "default_m")]
    pub m: f64,
    /// Upper-bound constant for the η-injective colour number.
    #[serde(rename = "D", default = "default_d")]
    pub d: f64,
    /// Upper-bound constant for the r-unique colour number.
    #[serde(rename = "D0", default = "default_d")]
    pub d0: f64,
    /// Lower-bound constant for the tree-unique colour number.
    #[serde(rename = "D1", default = "default_one")]
    pub d1: f64,
    /// Upper-bound constant for the tree-unique colour number.
    #[serde(rename = "D2", default = "default_one")]
    pub d2: f64,
    /// Fraction of np that r may reach: hypotheses read r ≤ θ·np.
    #[serde(default = "default_theta")]
    pub theta: f64,
}

fn default_m() -> f64 {
    8.0
}
fn default_d() -> f64 {
    2.0
}
fn default_one() -> f64 {
    1.0
}
fn default_theta() -> f64 {
    0.5
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants {
            m: default_m(),
            d: default_d(),
            d0: default_d(),
            d1: default_one(),
            d2: default_one(),
            theta: default_theta(),
        }
    }
}

impl BoundConstants {
    /// Sets one constant by its report name (M, D, D0, D1, D2, theta).
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), BoundsError> {
        let slot = match key {
            "M" => &mut self.m,
            "D" => &mut self.d,
            "D0" => &mut self.d0,
            "D1" => &mut self.d1,
            "D2" => &mut self.d2,
            "theta" => &mut self.theta,
            _ => return Err(BoundsError::UnknownConstant { key: key.to_string() }),
        };
        *slot = value;
        Ok(())
    }
}

/// Tail bound 2·exp(−γ²θ/4) for the deviation P(|T − θ| ≥ γθ) of a sum
/// with mean θ.
pub fn chernoff_bound(theta: f64, gamma: f64) -> Result<f64, BoundsError> {
    require(theta > 0.0 && theta.is_finite(), "theta", theta, "positive and finite")?;
    require(gamma > 0.0 && gamma <= 0.5, "gamma", gamma, "in (0, 1/2]")?;
    Ok(2.0 * (-gamma * gamma * theta / 4.0).exp())
}

/// α := (1−p)^(1/p − 1), the probability that a fixed vertex has exactly
/// one neighbour in a class of 1/p vertices, conditioned suitably. For
/// p → 0 this tends to 1/e; it stays above 1/(2e) throughout p ≤ 0.01.
pub fn alpha(p: f64) -> Result<f64, BoundsError> {
    require(p > 0.0 && p < 1.0, "p", p, "strictly between 0 and 1")?;
    Ok((1.0 - p).powf(1.0 / p - 1.0))
}

/// ζ ≤ d·e^d·(e·d/q)^((d−r)/2): failure probability bound for a degree-d
/// vertex under a random q-colouring to miss r unique colours. Computed in
/// log-space; decays only when q is well above e·d.
pub fn zeta_bound(d: f64, q: f64, r: f64) -> Result<f64, BoundsError> {
    require(d.is_finite() && d >= 0.0, "d", d, "finite and non-negative")?;
    require(q > 0.0 && q.is_finite(), "q", q, "positive and finite")?;
    require(r >= 0.0 && r <= d, "r", r, "in [0, d]")?;
    if d == 0.0 {
        return Ok(0.0);
    }
    let log_zeta = d.ln() + d + 0.5 * (d - r) * (1.0 + d.ln() - q.ln());
    Ok(log_zeta.exp())
}

/// Which colour-number bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TheoremKind {
    EtaInjective { eta: f64 },
    RUnique { r: u32 },
    TreeUnique { t: usize },
}

/// One evaluated hypothesis of a theorem: does it hold for these inputs?
#[derive(Debug, Clone, Serialize)]
pub struct ValidityNote {
    pub hypothesis: String,
    pub holds: bool,
    pub detail: String,
}

/// An evaluated pair of colour-number bounds plus the hypothesis audit.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: BTreeMap<String, f64>,
    pub lower: f64,
    pub upper: f64,
    pub validity: Vec<ValidityNote>,
}

/// Evaluates the stated lower/upper bounds for the chosen colour number:
///
/// * η-injective: η·np/2 ≤ χ ≤ D·np
/// * r-unique:        r ≤ χ ≤ D₀·max(r, ln n)
/// * tree-unique (t vertices): D₁·np/ln n ≤ χ ≤ D₂·(np)^(2(1−1/t))
///
/// The report's validity notes record whether p ≥ M·ln(n)/n (all kinds) and
/// r ≤ θ·np (r-unique) hold; a lower bound exceeding the upper bound is
/// flagged as a constants misconfiguration rather than rejected.
pub fn theorem_bounds(
    kind: &TheoremKind,
    n: usize,
    p: f64,
    constants: &BoundConstants,
) -> Result<BoundReport, BoundsError> {
    require(n >= 2, "n", n as f64, "at least 2")?;
    require(p > 0.0 && p < 1.0, "p", p, "strictly between 0 and 1")?;
    let nf = n as f64;
    let np = nf * p;
    let log_n = nf.ln();
    let mut inputs = BTreeMap::new();
    inputs.insert("n".to_string(), nf);
    inputs.insert("p".to_string(), p);
    inputs.insert("np".to_string(), np);
    inputs.insert("M".to_string(), constants.m);

    let mut validity = Vec::new();
    let sparsity = constants.m * log_n / nf;
    validity.push(ValidityNote {
        hypothesis: "p ≥ M·ln(n)/n".to_string(),
        holds: p >= sparsity,
        detail: format!("p = {p}, M·ln(n)/n = {sparsity}"),
    });

    let (name, lower, upper) = match *kind {
        TheoremKind::EtaInjective { eta } => {
            require(eta > 0.0 && eta < 1.0, "eta", eta, "strictly between 0 and 1")?;
            inputs.insert("eta".to_string(), eta);
            inputs.insert("D".to_string(), constants.d);
            ("eta-injective", eta * np / 2.0, constants.d * np)
        }
        TheoremKind::RUnique { r } => {
            require(r >= 1, "r", r as f64, "at least 1")?;
            inputs.insert("r".to_string(), r as f64);
            inputs.insert("D0".to_string(), constants.d0);
            inputs.insert("theta".to_string(), constants.theta);
            let cap = constants.theta * np;
            validity.push(ValidityNote {
                hypothesis: "r ≤ θ·np".to_string(),
                holds: (r as f64) <= cap,
                detail: format!("r = {r}, θ·np = {cap}"),
            });
            ("r-unique", r as f64, constants.d0 * (r as f64).max(log_n))
        }
        TheoremKind::TreeUnique { t } => {
            require(t >= 2, "t", t as f64, "at least 2")?;
            inputs.insert("t".to_string(), t as f64);
            inputs.insert("D1".to_string(), constants.d1);
            inputs.insert("D2".to_string(), constants.d2);
            let exponent = 2.0 * (1.0 - 1.0 / t as f64);
            (
                "tree-unique",
                constants.d1 * np / log_n,
                constants.d2 * np.powf(exponent),
            )
        }
    };
    if lower > upper {
        validity.push(ValidityNote {
            hypothesis: "lower ≤ upper".to_string(),
            holds: false,
            detail: format!(
                "lower = {lower}, upper = {upper}: constants are misconfigured for these inputs"
            ),
        });
    }
    Ok(BoundReport { name: name.to_string(), inputs, lower, upper, validity })
}

/// Evaluated local-lemma sufficient condition for tree-unique colourability
/// with palette q, where z is half the pattern size.
#[derive(Debug, Clone, Serialize)]
pub struct LllReport {
    /// Whether q^z ≥ 2·C₃·(np)^(2z−1) holds.
    pub satisfied: bool,
    /// The smallest q satisfying the condition: (2·C₃)^(1/z)·(np)^((2z−1)/z).
    pub q_min: f64,
    /// z·ln q − ln(2·C₃) − (2z−1)·ln(np); non-negative iff satisfied.
    pub log_margin: f64,
    /// y(τ) = 2z·(ze/q)^z, the per-event weight.
    pub y: f64,
    /// C₂·(np)^(2z−1), the dependency-neighbourhood size bound.
    pub neighbour_bound: f64,
}

/// Checks the sufficient condition q^z ≥ 2·C₃·(np)^(2z−1) under which the
/// weight y(τ) = 2z(ze/q)^z survives its dependency neighbourhood of at
/// most C₂(np)^(2z−1) events. Requires q ≥ 2z.
pub fn lll_condition(
    q: f64,
    z: u32,
    np: f64,
    c2: f64,
    c3: f64,
) -> Result<LllReport, BoundsError> {
    require(z >= 1, "z", z as f64, "at least 1")?;
    require(q >= 2.0 * z as f64, "q", q, "at least 2z")?;
    require(np > 0.0 && np.is_finite(), "np", np, "positive and finite")?;
    require(c2 > 0.0, "C2", c2, "positive")?;
    require(c3 > 0.0, "C3", c3, "positive")?;
    let zf = z as f64;
    let log_margin = zf * q.ln() - (2.0 * c3).ln() - (2.0 * zf - 1.0) * np.ln();
    let q_min = (2.0 * c3).powf(1.0 / zf) * np.powf((2.0 * zf - 1.0) / zf);
    let y = 2.0 * zf * (zf * std::f64::consts::E / q).powf(zf);
    let neighbour_bound = c2 * np.powf(2.0 * zf - 1.0);
    Ok(LllReport { satisfied: log_margin >= 0.0, q_min, log_margin, y, neighbour_bound })
}

/// Packing bound: if every colour class has at most s = 2·ln(n)/(C·p)
/// vertices, at least n/s = C·n·p/(2·ln n) colours are needed. Callers
/// ensure n ≥ 2, 0 < p < 1 and C > 0.
pub fn packing_lower_bound(n: usize, p: f64, c: f64) -> f64 {
    c * n as f64 * p / (2.0 * (n as f64).ln())
}
