use std::cmp::Ordering;
use std::fmt;

use super::vector::Coordinates;
use super::NormError;

/// A base norm: a weighted `p`-norm or a weighted sup-norm.
///
/// `weights == None` means every weight is 1 and the leaf is usable in any
/// dimension, including `c00`. Explicit weights pin the dimension.
#[derive(Debug, Clone, PartialEq)]
pub enum Leaf {
    P { p: f64, weights: Option<Vec<f64>> },
    Sup { weights: Option<Vec<f64>> },
}

impl Leaf {
    /// The exponent `p`, with `f64::INFINITY` for the sup-norm.
    pub fn exponent(&self) -> f64 {
        match self {
            Leaf::P { p, .. } => *p,
            Leaf::Sup { .. } => f64::INFINITY,
        }
    }

    pub fn weights(&self) -> Option<&[f64]> {
        match self {
            Leaf::P { weights, .. } | Leaf::Sup { weights } => weights.as_deref(),
        }
    }

    /// Factor `k` with `leaf = k * (unweighted leaf)` when all weights agree.
    pub fn uniform_factor(&self) -> Option<f64> {
        let Some(w) = self.weights() else {
            return Some(1.0);
        };
        let first = w[0];
        if w.iter().any(|&x| x != first) {
            return None;
        }
        Some(match self {
            Leaf::P { p, .. } => first.powf(1.0 / p),
            Leaf::Sup { .. } => first,
        })
    }

    /// The same norm with all weights reset to 1.
    pub fn unweighted(&self) -> Leaf {
        match self {
            Leaf::P { p, .. } => Leaf::P {
                p: *p,
                weights: None,
            },
            Leaf::Sup { .. } => Leaf::Sup { weights: None },
        }
    }

    fn check<C: Coordinates + ?Sized>(&self, x: &C) -> Result<(), NormError> {
        if let Some(w) = self.weights() {
            if x.dim() != Some(w.len()) {
                return Err(NormError::DimensionMismatch {
                    expected: w.len(),
                    found: x.dim(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn eval_unchecked<C: Coordinates + ?Sized>(&self, x: &C) -> f64 {
        let weight = |i: usize| self.weights().map_or(1.0, |w| w[i]);
        match self {
            Leaf::Sup { .. } => {
                let mut m = 0.0f64;
                x.for_each(|i, v| m = m.max(weight(i) * v.abs()));
                m
            }
            Leaf::P { p, .. } if *p == 1.0 => {
                let mut s = 0.0;
                x.for_each(|i, v| s += weight(i) * v.abs());
                s
            }
            Leaf::P { p, .. } => {
                // scale by the largest entry so |x_i|^p cannot overflow
                let mut m = 0.0f64;
                x.for_each(|_, v| m = m.max(v.abs()));
                if m == 0.0 {
                    return 0.0;
                }
                let mut s = 0.0;
                x.for_each(|i, v| {
                    if v != 0.0 {
                        s += weight(i) * (v.abs() / m).powf(*p);
                    }
                });
                m * s.powf(1.0 / p)
            }
        }
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn weights(f: &mut fmt::Formatter<'_>, w: &[f64]) -> fmt::Result {
            f.write_str("w=")?;
            for (i, x) in w.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        }
        match self {
            Leaf::P { p, weights: None } => write!(f, "p({p})"),
            Leaf::P {
                p,
                weights: Some(w),
            } => {
                write!(f, "p({p}; ")?;
                weights(f, w)?;
                f.write_str(")")
            }
            Leaf::Sup { weights: None } => f.write_str("sup"),
            Leaf::Sup { weights: Some(w) } => {
                f.write_str("sup(")?;
                weights(f, w)?;
                f.write_str(")")
            }
        }
    }
}

/// One summand `coef * leaf` of a normalized expression; `coef > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coef: f64,
    pub leaf: Leaf,
}

/// An element of `N(X)`: the zero function or a norm built from base norms
/// by evs sums and evs scalar multiples.
#[derive(Debug, Clone, PartialEq)]
pub enum NormExpr {
    Zero,
    Leaf(Leaf),
    Sum(Vec<NormExpr>),
    Scale(f64, Box<NormExpr>),
}

impl NormExpr {
    pub fn zero() -> Self {
        NormExpr::Zero
    }

    /// `||.||_1`.
    pub fn one() -> Self {
        NormExpr::Leaf(Leaf::P {
            p: 1.0,
            weights: None,
        })
    }

    /// `||.||_inf`.
    pub fn sup() -> Self {
        NormExpr::Leaf(Leaf::Sup { weights: None })
    }

    /// `||.||_p`; `p = inf` gives the sup-norm leaf.
    pub fn p(p: f64) -> Result<Self, NormError> {
        Self::leaf(p, None)
    }

    /// `(sum w_i |x_i|^p)^(1/p)`, or `max w_i |x_i|` for `p = inf`.
    pub fn weighted(p: f64, weights: Vec<f64>) -> Result<Self, NormError> {
        Self::leaf(p, Some(weights))
    }

    fn leaf(p: f64, weights: Option<Vec<f64>>) -> Result<Self, NormError> {
        if p.is_nan() || p < 1.0 {
            return Err(NormError::InvalidP(p));
        }
        if let Some(w) = &weights {
            if w.is_empty() || w.iter().any(|x| !x.is_finite() || *x <= 0.0) {
                return Err(NormError::InvalidWeights);
            }
        }
        Ok(NormExpr::Leaf(if p.is_infinite() {
            Leaf::Sup { weights }
        } else {
            Leaf::P { p, weights }
        }))
    }

    pub fn sum(children: Vec<NormExpr>) -> Self {
        NormExpr::Sum(children)
    }

    /// `alpha` must be finite.
    pub fn scale(alpha: f64, child: NormExpr) -> Self {
        debug_assert!(alpha.is_finite());
        NormExpr::Scale(alpha, Box::new(child))
    }

    /// The expression as a positive combination of distinct leaves, sorted
    /// by their text form.
    pub fn terms(&self) -> Vec<Term> {
        let mut raw = Vec::new();
        collect_terms(self, 1.0, &mut raw);
        let mut merged: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match merged.iter_mut().find(|m| m.leaf == t.leaf) {
                Some(m) => m.coef += t.coef,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.coef != 0.0);
        let mut keyed: Vec<(String, Term)> =
            merged.into_iter().map(|t| (t.leaf.to_string(), t)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.coef.total_cmp(&b.1.coef)));
        keyed.into_iter().map(|(_, t)| t).collect()
    }

    /// Canonical form: `Zero`, a single (scaled) leaf, or a flat `Sum` of
    /// scaled leaves with distinct leaves in text order.
    pub fn normalize(&self) -> NormExpr {
        Self::from_terms(self.terms())
    }

    pub fn from_terms(terms: Vec<Term>) -> NormExpr {
        let mut nodes: Vec<NormExpr> = terms
            .into_iter()
            .filter(|t| t.coef != 0.0)
            .map(|t| {
                if t.coef == 1.0 {
                    NormExpr::Leaf(t.leaf)
                } else {
                    NormExpr::Scale(t.coef, Box::new(NormExpr::Leaf(t.leaf)))
                }
            })
            .collect();
        match nodes.len() {
            0 => NormExpr::Zero,
            1 => nodes.pop().unwrap(),
            _ => NormExpr::Sum(nodes),
        }
    }

    /// True when the expression denotes the zero function `O`.
    pub fn is_zero(&self) -> bool {
        match self {
            NormExpr::Zero => true,
            NormExpr::Leaf(_) => false,
            NormExpr::Sum(children) => children.iter().all(NormExpr::is_zero),
            NormExpr::Scale(alpha, child) => *alpha == 0.0 || child.is_zero(),
        }
    }

    pub fn leaves(&self) -> Vec<&Leaf> {
        let mut out = Vec::new();
        collect_leaves(self, &mut out);
        out
    }

    /// Dimension pinned by weighted leaves, if any.
    pub fn required_dim(&self) -> Result<Option<usize>, NormError> {
        let mut dim: Option<usize> = None;
        for leaf in self.leaves() {
            if let Some(w) = leaf.weights() {
                match dim {
                    Some(d) if d != w.len() => {
                        return Err(NormError::DimensionMismatch {
                            expected: d,
                            found: Some(w.len()),
                        })
                    }
                    _ => dim = Some(w.len()),
                }
            }
        }
        Ok(dim)
    }

    /// Checks that `x` is a valid argument.
    pub fn check_point<C: Coordinates + ?Sized>(&self, x: &C) -> Result<(), NormError> {
        self.leaves().into_iter().try_for_each(|l| l.check(x))
    }

    /// Value of the denoted function at `x`.
    pub fn eval<C: Coordinates + ?Sized>(&self, x: &C) -> Result<f64, NormError> {
        self.check_point(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked<C: Coordinates + ?Sized>(&self, x: &C) -> f64 {
        match self {
            NormExpr::Zero => 0.0,
            NormExpr::Leaf(leaf) => leaf.eval_unchecked(x),
            NormExpr::Sum(children) => children.iter().map(|c| c.eval_unchecked(x)).sum(),
            NormExpr::Scale(alpha, child) => alpha.abs() * child.eval_unchecked(x),
        }
    }
}

fn collect_terms(expr: &NormExpr, factor: f64, out: &mut Vec<Term>) {
    if factor == 0.0 {
        return;
    }
    match expr {
        NormExpr::Zero => {}
        NormExpr::Leaf(leaf) => out.push(Term {
            coef: factor,
            leaf: leaf.clone(),
        }),
        NormExpr::Sum(children) => {
            for c in children {
                collect_terms(c, factor, out);
            }
        }
        NormExpr::Scale(alpha, child) => collect_terms(child, factor * alpha.abs(), out),
    }
}

fn collect_leaves<'a>(expr: &'a NormExpr, out: &mut Vec<&'a Leaf>) {
    match expr {
        NormExpr::Zero => {}
        NormExpr::Leaf(leaf) => out.push(leaf),
        NormExpr::Sum(children) => children.iter().for_each(|c| collect_leaves(c, out)),
        NormExpr::Scale(_, child) => collect_leaves(child, out),
    }
}

/// evs addition: the pointwise sum `(f + g)(x) = f(x) + g(x)`, normalized.
pub fn evs_add(f: &NormExpr, g: &NormExpr) -> NormExpr {
    NormExpr::Sum(vec![f.clone(), g.clone()]).normalize()
}

/// evs scalar multiple: `(alpha f)(x) = |alpha| f(x)`, normalized.
pub fn evs_smul(alpha: f64, f: &NormExpr) -> NormExpr {
    NormExpr::scale(alpha, f.clone()).normalize()
}

/// Termwise domination: every leaf of `f` appears in `g` with at least the
/// same coefficient. Implies `f <= g` pointwise.
pub fn dominated_termwise(f: &[Term], g: &[Term]) -> bool {
    f.iter().all(|t| {
        g.iter()
            .find(|u| u.leaf == t.leaf)
            .is_some_and(|u| u.coef.partial_cmp(&t.coef) != Some(Ordering::Less))
    })
}

impl fmt::Display for NormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormExpr::Zero => f.write_str("zero"),
            NormExpr::Leaf(leaf) => leaf.fmt(f),
            NormExpr::Sum(children) => {
                f.write_str("sum(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    c.fmt(f)?;
                }
                f.write_str(")")
            }
            NormExpr::Scale(alpha, child) => write!(f, "scale({alpha}, {child})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::{DenseVec, SparseVec};

    fn v(xs: &[f64]) -> DenseVec {
        DenseVec::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn sup_and_one_on_staircase() {
        for n in 1..=20usize {
            let x = SparseVec::from_coords(&(1..=n).map(|k| k as f64).collect::<Vec<_>>()).unwrap();
            assert_eq!(NormExpr::sup().eval(&x).unwrap(), n as f64);
            assert_eq!(NormExpr::one().eval(&x).unwrap(), (n * (n + 1) / 2) as f64);
        }
    }

    #[test]
    fn negative_scale_uses_modulus() {
        let e = NormExpr::scale(-2.0, NormExpr::one());
        assert_eq!(e.eval(&v(&[1.0, 0.0])).unwrap(), 2.0);
    }

    #[test]
    fn add_examples() {
        let g = NormExpr::p(2.0).unwrap();
        assert_eq!(evs_add(&NormExpr::Zero, &g), g);
        let s = evs_add(&NormExpr::one(), &NormExpr::sup());
        assert_eq!(s.eval(&v(&[1.0, 1.0])).unwrap(), 3.0);
        let d = evs_add(&NormExpr::one(), &NormExpr::one());
        assert_eq!(d.eval(&v(&[3.0, 4.0])).unwrap(), 14.0);
        assert_eq!(d, NormExpr::scale(2.0, NormExpr::one()));
    }

    #[test]
    fn smul_examples() {
        assert_eq!(evs_smul(0.0, &NormExpr::sup()), NormExpr::Zero);
        let f = NormExpr::weighted(3.0, vec![1.0, 2.0]).unwrap();
        let x = v(&[0.3, -1.7]);
        assert_eq!(
            evs_smul(-1.0, &f).eval(&x).unwrap(),
            f.eval(&x).unwrap()
        );
        assert_eq!(
            evs_smul(2.0, &NormExpr::scale(3.0, NormExpr::one())),
            NormExpr::scale(6.0, NormExpr::one())
        );
    }

    #[test]
    fn invalid_p_rejected() {
        assert_eq!(NormExpr::p(0.5), Err(NormError::InvalidP(0.5)));
        assert!(NormExpr::p(f64::NAN).is_err());
        assert!(NormExpr::weighted(2.0, vec![1.0, 0.0]).is_err());
        assert_eq!(NormExpr::p(f64::INFINITY).unwrap(), NormExpr::sup());
    }

    #[test]
    fn weighted_dimension_checked() {
        let f = NormExpr::weighted(2.0, vec![1.0, 1.0, 4.0]).unwrap();
        assert!(matches!(
            f.eval(&v(&[1.0, 2.0])),
            Err(NormError::DimensionMismatch { expected: 3, found: Some(2) })
        ));
        let sparse = SparseVec::from_coords(&[1.0]).unwrap();
        assert!(f.eval(&sparse).is_err());
        assert_eq!(f.eval(&v(&[0.0, 0.0, 1.0])).unwrap(), 2.0);
    }

    #[test]
    fn large_entries_do_not_overflow() {
        let f = NormExpr::p(4.0).unwrap();
        let x = v(&[1e200, 1e200]);
        let expected = 1e200 * 2f64.powf(0.25);
        assert!((f.eval(&x).unwrap() - expected).abs() / expected < 1e-14);
    }

    #[test]
    fn zero_detection() {
        assert!(NormExpr::scale(0.0, NormExpr::one()).is_zero());
        assert!(NormExpr::sum(vec![NormExpr::Zero, NormExpr::Zero]).is_zero());
        assert!(!NormExpr::sum(vec![NormExpr::Zero, NormExpr::sup()]).is_zero());
    }

    #[test]
    fn normalization_merges_and_sorts() {
        let e = NormExpr::sum(vec![
            NormExpr::sup(),
            NormExpr::scale(-2.0, NormExpr::sum(vec![NormExpr::one(), NormExpr::sup()])),
        ]);
        let n = e.normalize();
        assert_eq!(n.to_string(), "sum(scale(2, p(1)), scale(3, sup))");
        assert_eq!(n.normalize(), n);
    }
}
