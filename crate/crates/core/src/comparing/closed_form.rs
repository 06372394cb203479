use crate::norm::{DenseVec, Leaf, NormExpr, Term};
use crate::tolerance::approx_eq;

use super::{ComparingError, ComparingResult, Method, Space};

/// `C_{||.||_q}(||.||_p)` for unweighted norms on `space`.
///
/// On `R^n` this is `n^(1/p - 1/q)` when `p > q` (attained on the all-ones
/// direction) and `1` when `p <= q` (attained at `e_1`). On `c00` the `p > q`
/// infimum is `lim n^(1/p - 1/q) = 0` and is not attained.
pub fn comparing_exact_pq(p: f64, q: f64, space: Space) -> Result<ComparingResult, ComparingError> {
    for v in [p, q] {
        if v.is_nan() || v < 1.0 {
            return Err(crate::norm::NormError::InvalidP(v).into());
        }
    }
    if p <= q {
        return Ok(ComparingResult::exact(1.0, Method::ClosedForm, Some(space.e1())));
    }
    Ok(match space {
        Space::Rn(n) => {
            let exponent = recip(p) - recip(q);
            let value = (n as f64).powf(exponent);
            let witness = DenseVec::ones(n).normalized();
            ComparingResult::exact(value, Method::ClosedForm, Some(witness.into()))
        }
        Space::C00 => ComparingResult::exact(0.0, Method::WitnessFamily, None),
    })
}

pub(crate) fn recip(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// Exact `C_f(g)` for the pattern table, `None` when no pattern applies.
pub(crate) fn closed_form(f: &NormExpr, g: &NormExpr, space: Space) -> Option<ComparingResult> {
    let tf = f.terms();
    let tg = g.terms();
    if tg.is_empty() {
        return Some(ComparingResult::exact(0.0, Method::ClosedForm, Some(space.e1())));
    }
    if let Some(t) = proportional(&tf, &tg) {
        return Some(ComparingResult::exact(t, Method::ClosedForm, Some(space.e1())));
    }
    if let ([a], [b]) = (tf.as_slice(), tg.as_slice()) {
        let kf = a.coef * a.leaf.uniform_factor()?;
        let kg = b.coef * b.leaf.uniform_factor()?;
        let base = comparing_exact_pq(b.leaf.exponent(), a.leaf.exponent(), space).ok()?;
        return Some(base.scaled(kg / kf));
    }
    None
}

/// `t` with `g = t f` termwise.
fn proportional(f: &[Term], g: &[Term]) -> Option<f64> {
    if f.len() != g.len() || f.is_empty() {
        return None;
    }
    let t = g[0].coef / f[0].coef;
    f.iter()
        .zip(g)
        .all(|(a, b)| a.leaf == b.leaf && approx_eq(b.coef / a.coef, t))
        .then_some(t)
}

/// `(lo, hi)` with `lo ||x|| <= leaf(x) <= hi ||x||` for the unweighted norm
/// of the same exponent.
fn factor_range(leaf: &Leaf) -> (f64, f64) {
    let Some(w) = leaf.weights() else {
        return (1.0, 1.0);
    };
    let lo = w.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = w.iter().copied().fold(0.0, f64::max);
    let root = |v: f64| match leaf {
        Leaf::P { p, .. } => v.powf(1.0 / p),
        Leaf::Sup { .. } => v,
    };
    (root(lo), root(hi))
}

/// Certified lower bound on `C_L(M)` for two leaves.
fn leaf_lower_bound(l: &Leaf, m: &Leaf, space: Space) -> f64 {
    let Ok(base) = comparing_exact_pq(m.exponent(), l.exponent(), space) else {
        return 0.0;
    };
    let (_, hi_l) = factor_range(l);
    let (lo_m, _) = factor_range(m);
    base.lower * lo_m / hi_l
}

/// Certified lower bound on `C_f(g)` for nonzero `f`.
///
/// Uses superadditivity in `g`, `C_f(sum b_j M_j) >= sum b_j C_f(M_j)`, and
/// `f <= sum a_i L_i <= (sum a_i / C_{L_i}(M)) M` for each leaf `M` of `g`.
pub(crate) fn lower_bound(f: &NormExpr, g: &NormExpr, space: Space) -> f64 {
    let tf = f.terms();
    let tg = g.terms();
    if tf.is_empty() {
        return 0.0;
    }
    tg.iter()
        .map(|m| {
            let denom: f64 = tf
                .iter()
                .map(|l| {
                    let c = leaf_lower_bound(&l.leaf, &m.leaf, space);
                    if c > 0.0 {
                        l.coef / c
                    } else {
                        f64::INFINITY
                    }
                })
                .sum();
            m.coef * recip(denom)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> NormExpr {
        s.parse().unwrap()
    }

    #[test]
    fn sup_vs_one_is_one_over_n() {
        for n in 2..=6 {
            let r = comparing_exact_pq(f64::INFINITY, 1.0, Space::Rn(n)).unwrap();
            assert!((r.lower - 1.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn identical_and_reverse_order() {
        assert_eq!(comparing_exact_pq(2.0, 2.0, Space::Rn(5)).unwrap().value(), Some(1.0));
        let r = comparing_exact_pq(1.0, 2.0, Space::Rn(9)).unwrap();
        assert_eq!(r.value(), Some(1.0));
        assert_eq!(r.witness, Some(DenseVec::unit(0, 9).into()));
    }

    #[test]
    fn c00_limit_is_zero_without_witness() {
        let r = comparing_exact_pq(f64::INFINITY, 1.0, Space::C00).unwrap();
        assert_eq!(r.value(), Some(0.0));
        assert_eq!(r.method, Method::WitnessFamily);
        assert!(r.witness.is_none());
        assert_eq!(comparing_exact_pq(1.0, 3.0, Space::C00).unwrap().value(), Some(1.0));
    }

    #[test]
    fn uniform_weights_and_scales_fold_in() {
        // p(2; w=4,4) = 2 ||.||_2 and scale(3, sup): C = 3 * 2^(-1/2) / 2
        let r = closed_form(&e("p(2; w=4,4)"), &e("scale(3, sup)"), Space::Rn(2)).unwrap();
        let expected = 3.0 * 2f64.powf(-0.5) / 2.0;
        assert!((r.lower - expected).abs() < 1e-15);
        let r = closed_form(&e("sum(one)"), &e("scale(2, sup)"), Space::Rn(3)).unwrap();
        assert!((r.lower - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn proportional_sums() {
        let f = e("sum(p(3; w=1,2), sup)");
        let g = e("scale(-7, sum(sup, p(3; w=1,2)))");
        assert_eq!(closed_form(&f, &g, Space::Rn(2)).unwrap().value(), Some(7.0));
    }

    #[test]
    fn non_uniform_or_mixed_sums_fall_through() {
        assert!(closed_form(&e("p(2; w=1,2)"), &e("sup"), Space::Rn(2)).is_none());
        assert!(closed_form(&e("sum(p(1), sup)"), &e("p(2)"), Space::Rn(2)).is_none());
    }
}
