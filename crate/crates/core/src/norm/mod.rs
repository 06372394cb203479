//! The evs `N(X)` of norms on `R^n` or `c00`, plus the zero function `O`.
//!
//! Norms are finite expressions over weighted `p`-norm and sup-norm leaves
//! combined with the evs operations: pointwise sum and modulus scalar
//! multiple `(alpha f)(x) = |alpha| f(x)`.

mod expr;
mod order;
mod parse;
mod vector;

use thiserror::Error;

pub use expr::{dominated_termwise, evs_add, evs_smul, Leaf, NormExpr, Term};
pub use order::{
    converges_pointwise, leq_norms, norm_axiom_check, NormAxiomReport, OrderDecision,
};
pub(crate) use parse::Cursor;
pub use vector::{Coordinates, DenseVec, Point, SparseVec};
pub(crate) use vector::project_to_sphere;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormError {
    #[error("dimension mismatch: expected {expected}, found {}", .found.map_or("c00".to_string(), |d| d.to_string()))]
    DimensionMismatch { expected: usize, found: Option<usize> },
    #[error("invalid exponent p = {0} (p >= 1 required)")]
    InvalidP(f64),
    #[error("weights must be a nonempty list of positive finite numbers")]
    InvalidWeights,
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("vector must have at least one coordinate")]
    EmptyVector,
    #[error("sequence indices start at 1")]
    InvalidIndex,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
