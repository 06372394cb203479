//! Comparing functions on `N(X)`.
//!
//! For a nonzero norm `f`, `C_f(g) = sup { |l| : l f <= g } = inf_{x != 0}
//! g(x) / f(x)`. Structured pairs get an exact value; everything else is
//! bracketed by a multi-start pattern search over the euclidean unit sphere,
//! which yields an upper bound only.

mod closed_form;
mod search;
mod verdict;
mod witness;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::json::sig17;
use crate::norm::{Coordinates, DenseVec, NormError, NormExpr, Point, SparseVec};

pub use closed_form::comparing_exact_pq;
pub(crate) use closed_form::{closed_form, lower_bound};
pub use search::{minimize_ratio, probe_directions, SearchOutcome};
pub use verdict::{
    check_primitive_inequality, equivalence_verdict, psi, random_probes, spectrum,
    topology_comparison, Bracket, EquivalenceVerdict, Sandwich, SpectrumDescriptor,
};
pub use witness::{
    family_scan, nonequivalence_witness, FamilyScan, PairStatus, ScanEntry, WitnessError,
    WitnessFamily, WitnessSequence, DEFAULT_N_CHECK,
};

/// Carrier of the norms being compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// `R^n`.
    Rn(usize),
    /// Finitely supported sequences, with the standard basis `e_1, e_2, ...`.
    C00,
}

impl Space {
    pub fn finite_dim(&self) -> Option<usize> {
        match self {
            Space::Rn(n) => Some(*n),
            Space::C00 => None,
        }
    }

    /// First basis vector of the space.
    pub fn e1(&self) -> Point {
        match self {
            Space::Rn(n) => DenseVec::unit(0, *n).into(),
            Space::C00 => SparseVec::new([(1, 1.0)]).expect("valid entry").into(),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Rn(n) => write!(f, "rn:{n}"),
            Space::C00 => f.write_str("c00"),
        }
    }
}

/// Knobs for the numerical fallback.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparingConfig {
    /// Number of seeded random starting points for the pattern search.
    pub starts: usize,
    /// Iteration cap per start.
    pub max_iters: usize,
    /// Step-size floor at which a descent counts as converged.
    pub tol_opt: f64,
    pub seed: u64,
    /// Evaluate the deterministic probe set (signed basis vectors and sign
    /// patterns of the all-ones vector) in addition to the descents.
    pub probes: bool,
    /// Dimension of the finite section of `c00` searched for upper bounds.
    pub c00_section: usize,
}

impl Default for ComparingConfig {
    fn default() -> Self {
        Self {
            starts: 32,
            max_iters: 10_000,
            tol_opt: 1e-10,
            seed: 42,
            probes: true,
            c00_section: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    Bracketed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    /// Exact infimum certified by an analytic witness sequence (not attained).
    WitnessFamily,
    Minimization,
}

/// Value bracket for `C_f(g)`.
///
/// `lower` is proved to be `<= C_f(g)`; `upper` is a ratio attained at
/// `witness`, hence `>= C_f(g)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparingResult {
    #[serde(serialize_with = "sig17")]
    pub lower: f64,
    #[serde(serialize_with = "sig17")]
    pub upper: f64,
    pub status: Status,
    pub method: Method,
    #[serde(serialize_with = "witness_literal")]
    pub witness: Option<Point>,
    /// False when some descent hit the iteration cap.
    pub converged: bool,
}

fn witness_literal<S: serde::Serializer>(w: &Option<Point>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

impl ComparingResult {
    pub(crate) fn exact(value: f64, method: Method, witness: Option<Point>) -> Self {
        Self {
            lower: value,
            upper: value,
            status: Status::Exact,
            method,
            witness,
            converged: true,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    /// The exact value, if one is known.
    pub fn value(&self) -> Option<f64> {
        self.is_exact().then_some(self.lower)
    }

    /// Rescales the result, as for `C_f(|alpha| g)`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            lower: self.lower * factor,
            upper: self.upper * factor,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComparingError {
    #[error("the reference norm is the zero function")]
    ZeroReference,
    #[error("weighted norms are not defined on c00")]
    WeightedOnC00,
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error("no closed form applies: {0}")]
    PatternMismatch(String),
    #[error("sandwich constants violated at {point}")]
    SandwichViolation { point: String },
}

/// Checks that `f` and `g` can be evaluated on `space`.
pub(crate) fn check_space(expr: &NormExpr, space: Space) -> Result<(), ComparingError> {
    let required = expr.required_dim()?;
    match (space, required) {
        (_, None) => Ok(()),
        (Space::C00, Some(_)) => Err(ComparingError::WeightedOnC00),
        (Space::Rn(n), Some(d)) if n == d => Ok(()),
        (Space::Rn(n), Some(d)) => Err(NormError::DimensionMismatch {
            expected: d,
            found: Some(n),
        }
        .into()),
    }
}

/// `C_f(g) = inf_{x != 0} g(x) / f(x)`.
///
/// Exact for proportional expressions, for pairs of single (scaled) leaves
/// with uniform weights, and for `g = O`. Otherwise the ratio is minimized
/// over the unit sphere (over the section `R^d` of `c00`) and the result is
/// bracketed between a termwise lower bound and the best ratio found.
pub fn comparing_function(
    f: &NormExpr,
    g: &NormExpr,
    space: Space,
    config: &ComparingConfig,
) -> Result<ComparingResult, ComparingError> {
    if f.is_zero() {
        return Err(ComparingError::ZeroReference);
    }
    check_space(f, space)?;
    check_space(g, space)?;
    if let Some(exact) = closed_form::closed_form(f, g, space) {
        return Ok(exact);
    }
    let dim = match space {
        Space::Rn(n) => n,
        Space::C00 => config.c00_section.max(1),
    };
    let lower = lower_bound(f, g, space);
    let outcome = minimize_ratio(f, g, dim, config)?;
    let witness = match space {
        Space::Rn(_) => Point::Dense(DenseVec::new(outcome.witness)?),
        Space::C00 => Point::Sparse(SparseVec::from_coords(&outcome.witness)?),
    };
    Ok(ComparingResult {
        lower: lower.min(outcome.ratio),
        upper: outcome.ratio,
        status: Status::Bracketed,
        method: Method::Minimization,
        witness: Some(witness),
        converged: outcome.converged,
    })
}

/// `g(x) / f(x)` at a single point.
pub fn ratio_at<C: Coordinates + ?Sized>(
    f: &NormExpr,
    g: &NormExpr,
    x: &C,
) -> Result<f64, NormError> {
    Ok(g.eval(x)? / f.eval(x)?)
}
