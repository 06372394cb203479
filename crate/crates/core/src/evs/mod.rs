//! Abstract exponential vector spaces and a sample-based axiom checker.
//!
//! An evs is a partially ordered set `(X, <=)` with a commutative addition
//! with identity `theta` and a scalar multiplication such that
//!
//! * **A1** `(X, +)` is a commutative semigroup with identity `theta`;
//! * **A2** `x <= y` implies `x + z <= y + z` and `a x <= a y`;
//! * **A3** `a(x + y) = a x + a y`, `a(b x) = (ab) x`,
//!   `(a + b) x <= a x + b x` and `1 x = x`;
//! * **A4** `a x = theta` iff `a = 0` or `x = theta`;
//! * **A5** `x + (-1) x = theta` iff `x` is primitive (minimal);
//! * **A6** every `x` lies above some primitive element.
//!
//! Scalars are real. Checks run on a deterministic sample of elements and
//! scalars, so a pass means "not refuted on the sample".

mod check;

use std::fmt;

use thiserror::Error;

use crate::comparing::ComparingError;
use crate::tolerance::ToleranceError;

pub use check::{
    check_axioms, check_properties, primitives_of, replay, sample_scalars, AxiomEntry,
    AxiomReport, Axioms, CheckKind, Counterexample, EntryStatus, PropertyEntry, PropertyReport,
};

/// Outcome of an order decision that cannot always be certified.
#[derive(Debug, Clone, PartialEq)]
pub enum Ternary<W> {
    /// Proved.
    CertifiedTrue,
    /// Not refuted by any evaluated point, but not proved either.
    SampledTrue,
    /// False, with a concrete counterexample.
    Refuted(W),
}

impl<W> Ternary<W> {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Ternary::Refuted(_))
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Ternary::CertifiedTrue)
    }

    /// Maps a boolean decision with no witness payload.
    pub fn from_bool(holds: bool, witness: impl FnOnce() -> W) -> Self {
        if holds {
            Ternary::CertifiedTrue
        } else {
            Ternary::Refuted(witness())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvsError {
    #[error("sampler yielded {got} elements, {wanted} requested")]
    Instance { got: usize, wanted: usize },
    #[error("at least 3 samples are required, got {0}")]
    TooFewSamples(usize),
    #[error(transparent)]
    Tolerance(#[from] ToleranceError),
    #[error("no primitive element below {0} in the candidate pool")]
    A6Violation(String),
    #[error(transparent)]
    Comparing(#[from] ComparingError),
    #[error("counterexample cannot be replayed: {0}")]
    Replay(String),
}

/// An exponential vector space over the reals.
///
/// Implementations must be deterministic: `sample(seed, n)` returns the same
/// elements for the same arguments, and `sample(seed, n)` is a prefix of
/// `sample(seed, m)` for `n <= m`.
pub trait EvsInstance: Sync {
    type Element: Clone + fmt::Debug + Send + Sync;
    /// Counterexample payload of a refuted order decision.
    type Witness: fmt::Display;

    fn carrier_id(&self) -> String;

    /// The additive identity `theta`.
    fn zero(&self) -> Self::Element;

    fn add(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;

    fn smul(&self, alpha: f64, x: &Self::Element) -> Self::Element;

    fn leq(&self, x: &Self::Element, y: &Self::Element) -> Result<Ternary<Self::Witness>, EvsError>;

    /// Element equality up to the crate tolerance.
    fn equal(&self, x: &Self::Element, y: &Self::Element) -> Result<bool, EvsError>;

    /// Membership in the primitive space `X_0` (instance-supplied oracle).
    fn is_primitive(&self, x: &Self::Element) -> bool;

    /// Deterministic sample; should contain `theta` and characteristic
    /// elements of the carrier.
    fn sample(&self, seed: u64, count: usize) -> Vec<Self::Element>;

    /// Text form used in reports.
    fn render(&self, x: &Self::Element) -> String;
}
