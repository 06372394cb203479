//! Floating point equality used throughout the crate.

use thiserror::Error;

/// Relative tolerance for element equality.
pub const EPS_EQ: f64 = 1e-9;

/// Absolute floor applied to [`EPS_EQ`] near zero.
pub const ABS_FLOOR: f64 = 1e-12;

/// Two values differ by more than the equality tolerance but by less than ten
/// times it, so neither "equal" nor "different" can be reported honestly.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("indeterminate comparison: {lhs:e} vs {rhs:e} (difference {diff:e} inside the tolerance band)")]
pub struct ToleranceError {
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
}

fn threshold(a: f64, b: f64) -> f64 {
    (EPS_EQ * a.abs().max(b.abs())).max(ABS_FLOOR)
}

/// Decides `a == b` up to [`EPS_EQ`] (relative) with an [`ABS_FLOOR`].
///
/// Differences in the band `(eps, 10 eps)` are reported as errors.
pub fn decide_eq(a: f64, b: f64) -> Result<bool, ToleranceError> {
    let diff = (a - b).abs();
    let thr = threshold(a, b);
    if diff <= thr {
        Ok(true)
    } else if diff >= 10.0 * thr {
        Ok(false)
    } else {
        Err(ToleranceError {
            lhs: a,
            rhs: b,
            diff,
        })
    }
}

/// `a == b` up to the equality tolerance, without an indeterminate band.
pub fn within_tolerance(a: f64, b: f64) -> bool {
    (a - b).abs() <= threshold(a, b)
}

/// Lenient equality: anything inside the tolerance band counts as equal.
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= 10.0 * threshold(a, b)
}

/// `a <= b` up to the equality tolerance.
pub fn approx_le(a: f64, b: f64) -> bool {
    a <= b || (a - b).abs() <= threshold(a, b)
}

/// Decides `a <= b`; a violation smaller than ten tolerances is indeterminate.
pub fn decide_le(a: f64, b: f64) -> Result<bool, ToleranceError> {
    if a <= b {
        return Ok(true);
    }
    decide_eq(a, b)
}
