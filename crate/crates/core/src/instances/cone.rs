use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::evs::{EvsError, EvsInstance, Ternary};
use crate::norm::{Cursor, NormError};
use crate::tolerance::{approx_le, decide_eq, within_tolerance, ABS_FLOOR};

/// An element `(r, a)` of `[0, inf) x R^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConePoint {
    pub r: f64,
    pub a: Vec<f64>,
}

impl ConePoint {
    pub fn new(r: f64, a: Vec<f64>) -> Result<Self, NormError> {
        if !r.is_finite() || a.iter().any(|x| !x.is_finite()) {
            return Err(NormError::NonFinite);
        }
        if r < 0.0 {
            return Err(NormError::Parse {
                pos: 0,
                msg: format!("radial part must be nonnegative, got {r}"),
            });
        }
        if a.is_empty() {
            return Err(NormError::EmptyVector);
        }
        Ok(Self { r, a })
    }

    pub fn origin(m: usize) -> Self {
        Self {
            r: 0.0,
            a: vec![0.0; m],
        }
    }

    fn check_dim(&self, other: &Self) -> Result<(), NormError> {
        if self.a.len() == other.a.len() {
            Ok(())
        } else {
            Err(NormError::DimensionMismatch {
                expected: self.a.len(),
                found: Some(other.a.len()),
            })
        }
    }
}

/// `(r, a) + (s, b) = (r + s, a + b)`.
pub fn cone_add(x: &ConePoint, y: &ConePoint) -> Result<ConePoint, NormError> {
    x.check_dim(y)?;
    Ok(ConePoint {
        r: x.r + y.r,
        a: x.a.iter().zip(&y.a).map(|(p, q)| p + q).collect(),
    })
}

/// `alpha (r, a) = (|alpha| r, alpha a)`.
pub fn cone_smul(alpha: f64, x: &ConePoint) -> ConePoint {
    ConePoint {
        r: alpha.abs() * x.r,
        a: x.a.iter().map(|p| alpha * p).collect(),
    }
}

/// `(r, a) <= (s, b)` iff `r <= s` and `a = b`.
pub fn cone_leq(x: &ConePoint, y: &ConePoint) -> Result<Ternary<String>, NormError> {
    x.check_dim(y)?;
    if !x.a.iter().zip(&y.a).all(|(p, q)| within_tolerance(*p, *q)) {
        return Ok(Ternary::Refuted(format!(
            "vector parts differ: {} vs {}",
            fmt_vec(&x.a),
            fmt_vec(&y.a)
        )));
    }
    if !approx_le(x.r, y.r) {
        return Ok(Ternary::Refuted(format!("radial parts: {} > {}", x.r, y.r)));
    }
    Ok(Ternary::CertifiedTrue)
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for ConePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.r, fmt_vec(&self.a))
    }
}

impl FromStr for ConePoint {
    type Err = NormError;

    /// `(r; [a1,...,am])`.
    fn from_str(s: &str) -> Result<Self, NormError> {
        let mut cur = Cursor::new(s);
        cur.expect('(')?;
        let r = cur.finite()?;
        cur.expect(';')?;
        let a = cur.dense()?.into_coords();
        cur.expect(')')?;
        cur.finish()?;
        Self::new(r, a).map_err(|e| cur.error(e.to_string()))
    }
}

/// The product evs `[0, inf) x R^m` with primitive space `{0} x R^m`.
#[derive(Debug, Clone)]
pub struct ConeInstance {
    m: usize,
}

impl ConeInstance {
    pub fn new(m: usize) -> Result<Self, NormError> {
        if m == 0 {
            return Err(NormError::EmptyVector);
        }
        Ok(Self { m })
    }
}

/// Groups of three sharing a vector part: `(0; a)`, `(r; a)`, `(s; a)` with
/// `r < s`, after `theta`.
pub(crate) fn cone_samples(m: usize, seed: u64, count: usize) -> Vec<ConePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![ConePoint::origin(m)];
    while out.len() < count {
        let a: Vec<f64> = (0..m)
            .map(|_| f64::from(rng.random_range(-4i32..=4)) / 2.0)
            .collect();
        let r = f64::from(rng.random_range(1i32..=4)) / 2.0;
        let s = r + f64::from(rng.random_range(1i32..=4)) / 2.0;
        for radial in [0.0, r, s] {
            out.push(ConePoint { r: radial, a: a.clone() });
        }
    }
    out.truncate(count);
    out
}

pub(crate) fn cone_equal(x: &ConePoint, y: &ConePoint) -> Result<bool, EvsError> {
    if x.a.len() != y.a.len() || !decide_eq(x.r, y.r)? {
        return Ok(false);
    }
    for (p, q) in x.a.iter().zip(&y.a) {
        if !decide_eq(*p, *q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl EvsInstance for ConeInstance {
    type Element = ConePoint;
    type Witness = String;

    fn carrier_id(&self) -> String {
        format!("cone:{}", self.m)
    }

    fn zero(&self) -> ConePoint {
        ConePoint::origin(self.m)
    }

    fn add(&self, x: &ConePoint, y: &ConePoint) -> ConePoint {
        cone_add(x, y).expect("sampled points share a dimension")
    }

    fn smul(&self, alpha: f64, x: &ConePoint) -> ConePoint {
        cone_smul(alpha, x)
    }

    fn leq(&self, x: &ConePoint, y: &ConePoint) -> Result<Ternary<String>, EvsError> {
        Ok(cone_leq(x, y).expect("sampled points share a dimension"))
    }

    fn equal(&self, x: &ConePoint, y: &ConePoint) -> Result<bool, EvsError> {
        cone_equal(x, y)
    }

    fn is_primitive(&self, x: &ConePoint) -> bool {
        x.r.abs() <= ABS_FLOOR
    }

    fn sample(&self, seed: u64, count: usize) -> Vec<ConePoint> {
        cone_samples(self.m, seed, count)
    }

    fn render(&self, x: &ConePoint) -> String {
        x.to_string()
    }
}
