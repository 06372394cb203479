//! Exponential vector space (evs) structure on the set of norms of a linear
//! space, together with comparing functions and certificates of norm
//! (non-)equivalence.
//!
//! The crate is organised around five pieces:
//!
//! * [`evs`] : the abstract evs interface and a sample-based axiom checker.
//! * [`norm`] : norm expressions over `R^n` and `c00`, their evaluation and
//!   the evs operations on them.
//! * [`comparing`] : comparing functions `C_f(g) = inf g(x)/f(x)`, spectra,
//!   equivalence verdicts and witness sequences.
//! * [`instances`] : concrete evs instances (norms, finite point sets under
//!   Minkowski sum, the cone `[0, inf) x R^m`) and deliberately broken
//!   mutants used to exercise the checker.
//! * [`json`] : helpers for the stable JSON reports.

pub mod comparing;
pub mod evs;
pub mod instances;
pub mod json;
pub mod norm;
pub mod tolerance;

pub use comparing::{
    comparing_function, equivalence_verdict, ComparingConfig, ComparingResult, EquivalenceVerdict,
    Space,
};
pub use evs::{check_axioms, check_properties, AxiomReport, EvsInstance, Ternary};
pub use norm::{DenseVec, NormExpr, SparseVec};
