use serde::Serialize;
use thiserror::Error;

use crate::json::sig17;
use crate::norm::{NormExpr, SparseVec};
use crate::tolerance::EPS_EQ;

use super::closed_form::recip;

/// Default number of leading terms checked against the analytic ratio.
pub const DEFAULT_N_CHECK: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("unknown witness family '{0}'")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("exponents must be distinct (repeated {0})")]
    NotDistinct(f64),
    #[error("ratio mismatch at n = {n}: evaluated {evaluated:e}, formula {formula:e}")]
    Mismatch { n: usize, evaluated: f64, formula: f64 },
    #[error("ratio does not decrease at n = {n}")]
    NotMonotone { n: usize },
}

/// Explicit sequences in `c00` whose norm ratio tends to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WitnessFamily {
    /// `x^n = (1, 2, ..., n, 0, ...)`, ratio `||x||_inf / ||x||_1 = 2/(n+1)`.
    C00SupVsOne,
    /// `x_n = e_1 + 2 e_2 + ... + n e_n` over the standard basis; same ratio.
    HamelSupVsOne,
    /// `x_n = n e_1 + ... + n e_n`, ratio `||x||_p / ||x||_q = n^(1/p - 1/q)`.
    PVsQ { p: f64, q: f64 },
}

impl WitnessFamily {
    pub const IDS: [&'static str; 3] = ["c00_sup_vs_one", "hamel_sup_vs_one", "p_vs_q"];

    pub fn from_id(id: &str, p: Option<f64>, q: Option<f64>) -> Result<Self, WitnessError> {
        match id {
            "c00_sup_vs_one" => Ok(Self::C00SupVsOne),
            "hamel_sup_vs_one" => Ok(Self::HamelSupVsOne),
            "p_vs_q" => {
                let (Some(p), Some(q)) = (p, q) else {
                    return Err(WitnessError::BadParams("p_vs_q needs both p and q".into()));
                };
                Self::p_vs_q(p, q)
            }
            other => Err(WitnessError::UnknownFamily(other.to_string())),
        }
    }

    pub fn p_vs_q(p: f64, q: f64) -> Result<Self, WitnessError> {
        if p.is_nan() || q.is_nan() || p < 1.0 || q < 1.0 {
            return Err(WitnessError::BadParams(format!("p = {p}, q = {q}: both must be >= 1")));
        }
        if p <= q {
            return Err(WitnessError::BadParams(format!("p = {p}, q = {q}: p > q required")));
        }
        Ok(Self::PVsQ { p, q })
    }

    pub fn id(&self) -> &'static str {
        match self {
            Self::C00SupVsOne => Self::IDS[0],
            Self::HamelSupVsOne => Self::IDS[1],
            Self::PVsQ { .. } => Self::IDS[2],
        }
    }

    /// The norm in the denominator (`f` in `C_f(g)`).
    pub fn reference(&self) -> NormExpr {
        match self {
            Self::C00SupVsOne | Self::HamelSupVsOne => NormExpr::one(),
            Self::PVsQ { q, .. } => NormExpr::p(*q).expect("validated exponent"),
        }
    }

    /// The norm in the numerator (`g` in `C_f(g)`).
    pub fn target(&self) -> NormExpr {
        match self {
            Self::C00SupVsOne | Self::HamelSupVsOne => NormExpr::sup(),
            Self::PVsQ { p, .. } => NormExpr::p(*p).expect("validated exponent"),
        }
    }

    /// The `n`-th vector of the sequence (`n >= 1`).
    pub fn vector(&self, n: usize) -> SparseVec {
        let entries = (1..=n).map(|k| match self {
            Self::C00SupVsOne | Self::HamelSupVsOne => (k, k as f64),
            Self::PVsQ { .. } => (k, n as f64),
        });
        SparseVec::new(entries).expect("positive indices and finite values")
    }

    /// Analytic value of the ratio at index `n`.
    pub fn formula(&self, n: usize) -> f64 {
        match self {
            Self::C00SupVsOne | Self::HamelSupVsOne => 2.0 / (n as f64 + 1.0),
            Self::PVsQ { p, q } => (n as f64).powf(recip(*p) - recip(*q)),
        }
    }

    pub fn params(&self) -> Option<(f64, f64)> {
        match self {
            Self::PVsQ { p, q } => Some((*p, *q)),
            _ => None,
        }
    }
}

/// A witness sequence bound to its pair of norms.
///
/// `reference` and `target` are positive multiples of the family's norms, so
/// the analytic ratio is the family formula times `factor`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSequence {
    pub family: WitnessFamily,
    pub reference: NormExpr,
    pub target: NormExpr,
    pub factor: f64,
}

/// One line of a witness export.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessRow {
    pub n: usize,
    pub vector: String,
    #[serde(serialize_with = "sig17")]
    pub ratio: f64,
    #[serde(serialize_with = "sig17")]
    pub formula_ratio: f64,
}

impl WitnessSequence {
    pub fn new(family: WitnessFamily) -> Self {
        Self {
            family,
            reference: family.reference(),
            target: family.target(),
            factor: 1.0,
        }
    }

    pub fn with_norms(family: WitnessFamily, reference: NormExpr, target: NormExpr, factor: f64) -> Self {
        Self {
            family,
            reference,
            target,
            factor,
        }
    }

    /// Analytic ratio at index `n`.
    pub fn formula(&self, n: usize) -> f64 {
        self.family.formula(n) * self.factor
    }

    /// `target(x_n) / reference(x_n)` evaluated on the actual vector.
    pub fn evaluated_ratio(&self, n: usize) -> f64 {
        let x = self.family.vector(n);
        let num = self.target.eval(&x).expect("unweighted norms accept c00");
        let den = self.reference.eval(&x).expect("unweighted norms accept c00");
        num / den
    }

    pub fn row(&self, n: usize) -> WitnessRow {
        WitnessRow {
            n,
            vector: self.family.vector(n).to_string(),
            ratio: self.evaluated_ratio(n),
            formula_ratio: self.formula(n),
        }
    }

    pub fn rows(&self, n_max: usize) -> Vec<WitnessRow> {
        (1..=n_max).map(|n| self.row(n)).collect()
    }

    /// Index from which the analytic ratio strictly decreases towards 0.
    pub fn decreasing_from(&self) -> usize {
        1
    }

    /// Evaluated ratios match the formula to `EPS_EQ` relative error and
    /// strictly decrease for `n = 1..=n_check`.
    pub fn validate(&self, n_check: usize) -> Result<(), WitnessError> {
        let mut previous = f64::INFINITY;
        for n in 1..=n_check {
            let evaluated = self.evaluated_ratio(n);
            let formula = self.formula(n);
            if (evaluated - formula).abs() > EPS_EQ * formula {
                return Err(WitnessError::Mismatch {
                    n,
                    evaluated,
                    formula,
                });
            }
            if n > self.decreasing_from() && formula >= previous {
                return Err(WitnessError::NotMonotone { n });
            }
            previous = formula;
        }
        Ok(())
    }
}

/// Builds and validates the sequence for a family id.
pub fn nonequivalence_witness(
    family: &str,
    p: Option<f64>,
    q: Option<f64>,
    n_check: usize,
) -> Result<WitnessSequence, WitnessError> {
    let seq = WitnessSequence::new(WitnessFamily::from_id(family, p, q)?);
    seq.validate(n_check)?;
    Ok(seq)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStatus {
    NonequivalentCertified,
    Error(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEntry {
    #[serde(serialize_with = "sig17")]
    pub p: f64,
    #[serde(serialize_with = "sig17")]
    pub q: f64,
    pub status: PairStatus,
    /// Evaluated ratio at `n = n_check`.
    #[serde(serialize_with = "sig17")]
    pub last_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyScan {
    #[serde(serialize_with = "crate::json::sig17_seq")]
    pub p_values: Vec<f64>,
    pub n_check: usize,
    pub pairs: Vec<ScanEntry>,
}

impl FamilyScan {
    pub fn all_certified(&self) -> bool {
        self.pairs
            .iter()
            .all(|e| e.status == PairStatus::NonequivalentCertified)
    }
}

/// For every pair of distinct exponents, certifies `||.||_max` and
/// `||.||_min` non-equivalent on `c00` through the `p_vs_q` family.
pub fn family_scan(p_values: &[f64], n_check: usize) -> Result<FamilyScan, WitnessError> {
    for (i, a) in p_values.iter().enumerate() {
        if a.is_nan() || *a < 1.0 {
            return Err(WitnessError::BadParams(format!("p = {a}: p >= 1 required")));
        }
        if p_values[..i].contains(a) {
            return Err(WitnessError::NotDistinct(*a));
        }
    }
    let mut pairs = Vec::new();
    for i in 0..p_values.len() {
        for j in i + 1..p_values.len() {
            let (p, q) = if p_values[i] > p_values[j] {
                (p_values[i], p_values[j])
            } else {
                (p_values[j], p_values[i])
            };
            let (status, last_ratio) = match WitnessFamily::p_vs_q(p, q) {
                Ok(family) => {
                    let seq = WitnessSequence::new(family);
                    let last = seq.evaluated_ratio(n_check.max(1));
                    match seq.validate(n_check) {
                        Ok(()) => (PairStatus::NonequivalentCertified, last),
                        Err(e) => (PairStatus::Error(e.to_string()), last),
                    }
                }
                Err(e) => (PairStatus::Error(e.to_string()), f64::NAN),
            };
            pairs.push(ScanEntry {
                p,
                q,
                status,
                last_ratio,
            });
        }
    }
    Ok(FamilyScan {
        p_values: p_values.to_vec(),
        n_check,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_n4() {
        let f = WitnessFamily::C00SupVsOne;
        assert_eq!(f.vector(4).to_string(), "{1:1, 2:2, 3:3, 4:4}");
        let seq = WitnessSequence::new(f);
        assert!((seq.evaluated_ratio(4) - 0.4).abs() < 1e-15);
        assert!((f.formula(4) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn p2_q1_n9_is_one_third() {
        let seq = nonequivalence_witness("p_vs_q", Some(2.0), Some(1.0), 64).unwrap();
        assert!((seq.evaluated_ratio(9) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(seq.family.vector(3).to_string(), "{1:3, 2:3, 3:3}");
    }

    #[test]
    fn bad_params_and_unknown() {
        assert!(matches!(
            nonequivalence_witness("p_vs_q", Some(1.0), Some(2.0), 8),
            Err(WitnessError::BadParams(_))
        ));
        assert!(matches!(
            nonequivalence_witness("p_vs_q", Some(2.0), Some(2.0), 8),
            Err(WitnessError::BadParams(_))
        ));
        assert!(matches!(
            nonequivalence_witness("nope", None, None, 8),
            Err(WitnessError::UnknownFamily(_))
        ));
        assert!(matches!(
            nonequivalence_witness("p_vs_q", Some(2.0), None, 8),
            Err(WitnessError::BadParams(_))
        ));
    }

    #[test]
    fn hamel_matches_c00() {
        let a = WitnessSequence::new(WitnessFamily::C00SupVsOne);
        let b = WitnessSequence::new(WitnessFamily::HamelSupVsOne);
        for n in 1..=20 {
            assert_eq!(a.evaluated_ratio(n), b.evaluated_ratio(n));
        }
        assert_ne!(a.family.id(), b.family.id());
    }

    #[test]
    fn scan_examples() {
        let scan = family_scan(&[1.0, 1.5, 2.0, 3.0, f64::INFINITY], 50).unwrap();
        assert_eq!(scan.pairs.len(), 10);
        assert!(scan.all_certified());
        assert!(family_scan(&[2.0], 50).unwrap().pairs.is_empty());
        assert_eq!(family_scan(&[2.0, 2.0], 50), Err(WitnessError::NotDistinct(2.0)));
    }
}
