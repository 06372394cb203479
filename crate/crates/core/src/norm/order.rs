use serde::Serialize;

use crate::comparing::{
    check_space, closed_form, comparing_function, lower_bound, probe_directions, random_probes, ComparingConfig,
    ComparingError, Space,
};
use crate::evs::Ternary;
use crate::tolerance::{ABS_FLOOR, EPS_EQ};

use super::expr::{dominated_termwise, Term};
use super::{Coordinates, DenseVec, NormError, NormExpr, Point, SparseVec};

/// Result of deciding `f <= g` pointwise; a refutation carries a point with
/// `f(x) > g(x) (1 + EPS_EQ)`.
pub type OrderDecision = Ternary<Point>;

fn strictly_above(f: &NormExpr, g: &NormExpr, x: &Point) -> Result<bool, NormError> {
    Ok(f.eval(x)? > g.eval(x)? * (1.0 + EPS_EQ) + ABS_FLOOR)
}

/// Removes the common part `sum min(a_i, b_i) L_i` of two term lists.
fn cancel_common(f: &[Term], g: &[Term]) -> (NormExpr, NormExpr) {
    let reduce = |own: &[Term], other: &[Term]| {
        NormExpr::from_terms(
            own.iter()
                .map(|t| {
                    let shared = other
                        .iter()
                        .find(|u| u.leaf == t.leaf)
                        .map_or(0.0, |u| u.coef.min(t.coef));
                    Term {
                        coef: t.coef - shared,
                        leaf: t.leaf.clone(),
                    }
                })
                .collect(),
        )
    };
    (reduce(f, g), reduce(g, f))
}

fn probe_points(space: Space, config: &ComparingConfig) -> Vec<Point> {
    match space {
        Space::Rn(n) => probe_directions(n)
            .into_iter()
            .map(|c| DenseVec::new(c).expect("unit vector").into())
            .collect(),
        Space::C00 => probe_directions(config.c00_section.max(1))
            .into_iter()
            .map(|c| SparseVec::from_coords(&c).expect("unit vector").into())
            .collect(),
    }
}

/// Decides `f <= g` in `N(X)`, i.e. `f(x) <= g(x)` for all `x`.
///
/// By homogeneity this is `C_f(g) >= 1`. Termwise domination and exact
/// comparing values (also after cancelling the common part) certify; any point with `f(x) > g(x)` refutes; a
/// numerical search that finds no violation yields `SampledTrue`.
pub fn leq_norms(
    f: &NormExpr,
    g: &NormExpr,
    space: Space,
    config: &ComparingConfig,
) -> Result<OrderDecision, ComparingError> {
    check_space(f, space)?;
    check_space(g, space)?;
    if f.is_zero() {
        return Ok(Ternary::CertifiedTrue);
    }
    let (tf, tg) = (f.terms(), g.terms());
    if dominated_termwise(&tf, &tg) {
        return Ok(Ternary::CertifiedTrue);
    }
    if tg.is_empty() {
        return Ok(Ternary::Refuted(space.e1()));
    }
    // f = f' + c and g = g' + c with c >= 0, so f' <= g' implies f <= g.
    let (rf, rg) = cancel_common(&tf, &tg);
    if rf.is_zero() {
        return Ok(Ternary::CertifiedTrue);
    }
    if !rg.is_zero() {
        let exact = closed_form(&rf, &rg, space).and_then(|r| r.value());
        if exact.unwrap_or_else(|| lower_bound(&rf, &rg, space)) >= 1.0 - EPS_EQ {
            return Ok(Ternary::CertifiedTrue);
        }
    }
    for x in probe_points(space, config) {
        if strictly_above(f, g, &x)? {
            return Ok(Ternary::Refuted(x));
        }
    }
    let r = comparing_function(f, g, space, config)?;
    if let Some(v) = r.value() {
        if v >= 1.0 - EPS_EQ {
            return Ok(Ternary::CertifiedTrue);
        }
    }
    if let Some(x) = r.witness {
        if strictly_above(f, g, &x)? {
            return Ok(Ternary::Refuted(x));
        }
    }
    Ok(Ternary::SampledTrue)
}

/// For each probe, whether `seq_k(x) -> target(x)`: the last error is below
/// `tol` and the errors over the last three entries do not increase.
pub fn converges_pointwise<C: Coordinates>(
    seq: &[NormExpr],
    target: &NormExpr,
    probes: &[C],
    tol: f64,
) -> Result<Vec<bool>, NormError> {
    probes
        .iter()
        .map(|x| {
            let t = target.eval(x)?;
            let errs = seq
                .iter()
                .map(|e| Ok((e.eval(x)? - t).abs()))
                .collect::<Result<Vec<f64>, NormError>>()?;
            let Some(&last) = errs.last() else {
                return Ok(false);
            };
            let tail = &errs[errs.len().saturating_sub(3)..];
            Ok(last < tol && tail.windows(2).all(|w| w[1] <= w[0]))
        })
        .collect()
}

/// Sampled check that an expression satisfies the norm axioms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormAxiomReport {
    pub expr: String,
    pub samples: usize,
    /// Point `x != 0` with value 0, if found.
    pub definiteness: Option<String>,
    /// `(x, lambda)` with `f(lambda x) != |lambda| f(x)`, if found.
    pub homogeneity: Option<String>,
    /// `(x, y)` with `f(x + y) > f(x) + f(y)`, if found.
    pub triangle: Option<String>,
}

impl NormAxiomReport {
    pub fn passed(&self) -> bool {
        self.definiteness.is_none() && self.homogeneity.is_none() && self.triangle.is_none()
    }
}

/// Checks definiteness, absolute homogeneity and the triangle inequality of
/// `expr` on `R^dim` at `n_samples` seeded random points.
pub fn norm_axiom_check(
    expr: &NormExpr,
    dim: usize,
    seed: u64,
    n_samples: usize,
) -> Result<NormAxiomReport, ComparingError> {
    let space = Space::Rn(dim);
    check_space(expr, space)?;
    let xs = random_probes(space, n_samples, seed);
    let ys = random_probes(space, n_samples, seed.wrapping_add(1));
    let lambdas: Vec<f64> = random_probes(Space::Rn(1), n_samples, seed.wrapping_add(2))
        .iter()
        .map(|p| match p {
            Point::Dense(v) => 3.0 * v.coords()[0],
            Point::Sparse(_) => unreachable!("dense space"),
        })
        .collect();
    let dense = |p: &Point| match p {
        Point::Dense(v) => v.clone(),
        Point::Sparse(_) => unreachable!("dense space"),
    };
    let mut report = NormAxiomReport {
        expr: expr.to_string(),
        samples: n_samples,
        definiteness: None,
        homogeneity: None,
        triangle: None,
    };
    let zero = DenseVec::new(vec![0.0; dim])?;
    if expr.eval(&zero)? != 0.0 {
        report.definiteness = Some(zero.to_string());
    }
    for ((x, y), lambda) in xs.iter().zip(&ys).zip(&lambdas) {
        let (x, y) = (dense(x), dense(y));
        let fx = expr.eval(&x)?;
        if report.definiteness.is_none() && fx <= 0.0 {
            report.definiteness = Some(x.to_string());
        }
        let scaled = expr.eval(&x.scaled(*lambda))?;
        if report.homogeneity.is_none()
            && (scaled - lambda.abs() * fx).abs() > EPS_EQ * scaled.max(lambda.abs() * fx) + ABS_FLOOR
        {
            report.homogeneity = Some(format!("({x}, {lambda})"));
        }
        let sum: Vec<f64> = x.coords().iter().zip(y.coords()).map(|(a, b)| a + b).collect();
        let fsum = expr.eval(sum.as_slice())?;
        let fy = expr.eval(&y)?;
        if report.triangle.is_none() && fsum > (fx + fy) * (1.0 + EPS_EQ) + ABS_FLOOR {
            report.triangle = Some(format!("({x}, {y})"));
        }
    }
    Ok(report)
}
