//! Stable JSON encoding helpers.
//!
//! Reports keep their field order from the struct declarations and emit every
//! float with 17 significant digits, so identical inputs produce byte-identical
//! output.

use serde::{Serialize, Serializer};
use serde_json::Number;

/// Formats a finite float with 17 significant digits in JSON exponent form
/// with a signed exponent.
/// Non-finite values become the strings `"inf"`, `"-inf"` and `"nan"`.
pub fn format_sig17(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        let s = format!("{x:.16e}");
        match s.split_once('e') {
            Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
            _ => s,
        }
    }
}

fn number(x: f64) -> Option<Number> {
    if x.is_finite() {
        format_sig17(x).parse().ok()
    } else {
        None
    }
}

/// `serialize_with` adapter for `f64` fields.
pub fn sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    match number(*x) {
        Some(n) => n.serialize(s),
        None => s.serialize_str(&format_sig17(*x)),
    }
}

/// `serialize_with` adapter for `Option<f64>` fields.
pub fn sig17_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => sig17(v, s),
        None => s.serialize_none(),
    }
}

/// `serialize_with` adapter for float slices.
pub fn sig17_seq<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| Sig17(*x)))
}

/// Newtype that serializes an `f64` with [`sig17`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig17(pub f64);

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        sig17(&self.0, s)
    }
}

/// Serializes a value to a compact JSON string.
pub fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize infallibly")
}

/// Serializes a value to pretty-printed JSON.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize infallibly")
}
