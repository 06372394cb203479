//! Instances that each violate exactly one axiom, used to show that the
//! checker attributes failures to the right axiom.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::evs::{EvsError, EvsInstance, Ternary};
use crate::norm::{DenseVec, NormError, Term};
use crate::tolerance::{approx_le, decide_eq, ABS_FLOOR};

use super::cone::{cone_equal, cone_samples, ConePoint};
use super::norms::{equality_probes, norm_samples};

fn half_line_samples(seed: u64, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![0.0, 0.5, 1.0, 2.5];
    while out.len() < count {
        out.push(f64::from(rng.random_range(1i32..=12)) / 4.0);
    }
    out.truncate(count);
    out
}

fn half_line_leq(x: f64, y: f64) -> Ternary<String> {
    Ternary::from_bool(approx_le(x, y), || format!("{x} > {y}"))
}

macro_rules! half_line {
    ($name:ident, $id:literal, add = |$r:ident, $s:ident| $add:expr, smul = |$al:ident, $x:ident| $smul:expr, primitive = |$p:ident| $prim:expr) => {
        #[derive(Debug, Clone, Copy, Default)]
        pub struct $name;

        impl EvsInstance for $name {
            type Element = f64;
            type Witness = String;

            fn carrier_id(&self) -> String {
                $id.into()
            }

            fn zero(&self) -> f64 {
                0.0
            }

            fn add(&self, $r: &f64, $s: &f64) -> f64 {
                let ($r, $s) = (*$r, *$s);
                $add
            }

            fn smul(&self, $al: f64, $x: &f64) -> f64 {
                let $x = *$x;
                $smul
            }

            fn leq(&self, x: &f64, y: &f64) -> Result<Ternary<String>, EvsError> {
                Ok(half_line_leq(*x, *y))
            }

            fn equal(&self, x: &f64, y: &f64) -> Result<bool, EvsError> {
                Ok(decide_eq(*x, *y)?)
            }

            fn is_primitive(&self, $p: &f64) -> bool {
                let $p = *$p;
                $prim
            }

            fn sample(&self, seed: u64, count: usize) -> Vec<f64> {
                half_line_samples(seed, count)
            }

            fn render(&self, x: &f64) -> String {
                x.to_string()
            }
        }
    };
}

half_line!(
    SkewAddition,
    "mutant:a1:skew-addition",
    add = |r, s| r + 2.0 * s,
    smul = |alpha, x| alpha.abs() * x,
    primitive = |p| p.abs() <= ABS_FLOOR
);

half_line!(
    SquaredScaling,
    "mutant:a3:squared-scaling",
    add = |r, s| r + s,
    smul = |alpha, x| alpha * alpha * x,
    primitive = |p| p.abs() <= ABS_FLOOR
);

half_line!(
    InflatedPrimitives,
    "mutant:a5:inflated-primitives",
    add = |r, s| r + s,
    smul = |alpha, x| alpha.abs() * x,
    primitive = |p| p <= 1.0
);

/// `[0, inf) x R` with the usual operations but the order
/// `(r, a) <= (s, b)` iff `s - r >= |b^3 - a^3|`, which is a partial order
/// that translations do not preserve.
#[derive(Debug, Clone, Copy, Default)]
pub struct CubicOrder;

fn scalar_cone_samples(seed: u64, count: usize) -> Vec<ConePoint> {
    let mut out = vec![
        ConePoint::origin(1),
        ConePoint { r: 1.0, a: vec![0.5] },
    ];
    out.extend(cone_samples(1, seed, count).into_iter().skip(1));
    out.truncate(count);
    out
}

fn cone_pair_add(x: &ConePoint, y: &ConePoint) -> ConePoint {
    ConePoint {
        r: x.r + y.r,
        a: vec![x.a[0] + y.a[0]],
    }
}

fn cone_pair_smul(alpha: f64, x: &ConePoint) -> ConePoint {
    ConePoint {
        r: alpha.abs() * x.r,
        a: vec![alpha * x.a[0]],
    }
}

impl EvsInstance for CubicOrder {
    type Element = ConePoint;
    type Witness = String;

    fn carrier_id(&self) -> String {
        "mutant:a2:cubic-order".into()
    }

    fn zero(&self) -> ConePoint {
        ConePoint::origin(1)
    }

    fn add(&self, x: &ConePoint, y: &ConePoint) -> ConePoint {
        cone_pair_add(x, y)
    }

    fn smul(&self, alpha: f64, x: &ConePoint) -> ConePoint {
        cone_pair_smul(alpha, x)
    }

    fn leq(&self, x: &ConePoint, y: &ConePoint) -> Result<Ternary<String>, EvsError> {
        let gap = y.r - x.r;
        let need = (y.a[0].powi(3) - x.a[0].powi(3)).abs();
        Ok(Ternary::from_bool(approx_le(need, gap), || {
            format!("s - r = {gap} < |b^3 - a^3| = {need}")
        }))
    }

    fn equal(&self, x: &ConePoint, y: &ConePoint) -> Result<bool, EvsError> {
        cone_equal(x, y)
    }

    fn is_primitive(&self, x: &ConePoint) -> bool {
        x.r.abs() <= ABS_FLOOR
    }

    fn sample(&self, seed: u64, count: usize) -> Vec<ConePoint> {
        scalar_cone_samples(seed, count)
    }

    fn render(&self, x: &ConePoint) -> String {
        x.to_string()
    }
}

/// `[0, inf) x {0, 1}`: radial part with a sticky flag. Zero times a
/// flagged element keeps the flag, so `0 x != theta` for `x = (0, 1)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct StickyFlag;

impl EvsInstance for StickyFlag {
    type Element = (f64, bool);
    type Witness = String;

    fn carrier_id(&self) -> String {
        "mutant:a4:sticky-flag".into()
    }

    fn zero(&self) -> (f64, bool) {
        (0.0, false)
    }

    fn add(&self, x: &(f64, bool), y: &(f64, bool)) -> (f64, bool) {
        (x.0 + y.0, x.1 || y.1)
    }

    fn smul(&self, alpha: f64, x: &(f64, bool)) -> (f64, bool) {
        (alpha.abs() * x.0, x.1)
    }

    fn leq(&self, x: &(f64, bool), y: &(f64, bool)) -> Result<Ternary<String>, EvsError> {
        Ok(Ternary::from_bool(approx_le(x.0, y.0) && (!x.1 || y.1), || {
            format!("{} not below {}", render_flag(x), render_flag(y))
        }))
    }

    fn equal(&self, x: &(f64, bool), y: &(f64, bool)) -> Result<bool, EvsError> {
        Ok(x.1 == y.1 && decide_eq(x.0, y.0)?)
    }

    fn is_primitive(&self, x: &(f64, bool)) -> bool {
        x.0.abs() <= ABS_FLOOR && !x.1
    }

    fn sample(&self, seed: u64, count: usize) -> Vec<(f64, bool)> {
        let mut out = vec![(0.0, false), (0.0, true)];
        out.extend(
            half_line_samples(seed, count)
                .into_iter()
                .skip(1)
                .enumerate()
                .map(|(i, r)| (r, i % 2 == 1)),
        );
        out.truncate(count);
        out
    }

    fn render(&self, x: &(f64, bool)) -> String {
        render_flag(x)
    }
}

fn render_flag(x: &(f64, bool)) -> String {
    format!("({}, {})", x.0, u8::from(x.1))
}

/// `{(r, a) in [0, inf) x R : r > 0 unless a = 0}`: closed under the cone
/// operations, but no primitive element lies below `(r, a)` for `a != 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PuncturedCone;

impl EvsInstance for PuncturedCone {
    type Element = ConePoint;
    type Witness = String;

    fn carrier_id(&self) -> String {
        "mutant:a6:punctured-cone".into()
    }

    fn zero(&self) -> ConePoint {
        ConePoint::origin(1)
    }

    fn add(&self, x: &ConePoint, y: &ConePoint) -> ConePoint {
        cone_pair_add(x, y)
    }

    fn smul(&self, alpha: f64, x: &ConePoint) -> ConePoint {
        cone_pair_smul(alpha, x)
    }

    fn leq(&self, x: &ConePoint, y: &ConePoint) -> Result<Ternary<String>, EvsError> {
        Ok(super::cone::cone_leq(x, y).expect("scalar cone"))
    }

    fn equal(&self, x: &ConePoint, y: &ConePoint) -> Result<bool, EvsError> {
        cone_equal(x, y)
    }

    fn is_primitive(&self, x: &ConePoint) -> bool {
        x.r.abs() <= ABS_FLOOR
    }

    fn sample(&self, seed: u64, count: usize) -> Vec<ConePoint> {
        scalar_cone_samples(seed, 2 * count + 4)
            .into_iter()
            .filter(|p| p.r > 0.0 || p.a[0] == 0.0)
            .take(count)
            .collect()
    }

    fn render(&self, x: &ConePoint) -> String {
        x.to_string()
    }
}

/// `N(R^n)` with the signed scalar multiple `(alpha f)(x) = alpha f(x)`.
/// Elements are signed combinations of base norms.
#[derive(Debug, Clone)]
pub struct SignedScaling {
    dim: usize,
    probes: Vec<DenseVec>,
}

impl SignedScaling {
    pub fn new(dim: usize) -> Result<Self, NormError> {
        if dim == 0 {
            return Err(NormError::EmptyVector);
        }
        Ok(Self {
            dim,
            probes: equality_probes(dim),
        })
    }
}

fn signed_eval(f: &[Term], x: &DenseVec) -> f64 {
    f.iter().map(|t| t.coef * t.leaf.eval_unchecked(x)).sum()
}

fn merge(terms: impl IntoIterator<Item = Term>) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for t in terms {
        match out.iter_mut().find(|u| u.leaf == t.leaf) {
            Some(u) => u.coef += t.coef,
            None => out.push(t),
        }
    }
    out.retain(|t| t.coef != 0.0);
    out
}

fn render_signed(f: &[Term]) -> String {
    if f.is_empty() {
        return "zero".into();
    }
    let parts: Vec<String> = f.iter().map(|t| format!("{}*{}", t.coef, t.leaf)).collect();
    parts.join(" + ")
}

impl EvsInstance for SignedScaling {
    type Element = Vec<Term>;
    type Witness = DenseVec;

    fn carrier_id(&self) -> String {
        format!("mutant:signed-scaling:{}", self.dim)
    }

    fn zero(&self) -> Vec<Term> {
        Vec::new()
    }

    fn add(&self, x: &Vec<Term>, y: &Vec<Term>) -> Vec<Term> {
        merge(x.iter().chain(y).cloned())
    }

    fn smul(&self, alpha: f64, x: &Vec<Term>) -> Vec<Term> {
        merge(x.iter().map(|t| Term {
            coef: alpha * t.coef,
            leaf: t.leaf.clone(),
        }))
    }

    fn leq(&self, x: &Vec<Term>, y: &Vec<Term>) -> Result<Ternary<DenseVec>, EvsError> {
        for p in &self.probes {
            let (a, b) = (signed_eval(x, p), signed_eval(y, p));
            if !approx_le(a, b) {
                return Ok(Ternary::Refuted(p.clone()));
            }
        }
        Ok(Ternary::SampledTrue)
    }

    fn equal(&self, x: &Vec<Term>, y: &Vec<Term>) -> Result<bool, EvsError> {
        for p in &self.probes {
            if !decide_eq(signed_eval(x, p), signed_eval(y, p))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn is_primitive(&self, x: &Vec<Term>) -> bool {
        x.is_empty()
    }

    fn sample(&self, seed: u64, count: usize) -> Vec<Vec<Term>> {
        norm_samples(self.dim, seed, count)
            .iter()
            .map(|f| f.terms())
            .collect()
    }

    fn render(&self, x: &Vec<Term>) -> String {
        render_signed(x)
    }
}

