use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::json::{sig17, Sig17};
use crate::norm::{DenseVec, NormError, NormExpr, Point, SparseVec};
use crate::tolerance::{ABS_FLOOR, EPS_EQ};

use super::witness::{WitnessFamily, WitnessSequence};
use super::{comparing_function, ComparingConfig, ComparingError, ComparingResult, Space};

/// A closed interval of nonnegative reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    #[serde(serialize_with = "sig17")]
    pub lower: f64,
    #[serde(serialize_with = "sig17")]
    pub upper: f64,
}

impl Bracket {
    pub fn of(r: &ComparingResult) -> Self {
        Self {
            lower: r.lower,
            upper: r.upper,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<f64> {
        self.is_point().then_some(self.lower)
    }
}

/// The comparing spectrum `{l : l f <= g}`: the closed disc of radius
/// `C_f(g)`, known exactly or up to a bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDescriptor {
    pub radius: Bracket,
}

impl SpectrumDescriptor {
    /// `Some(true)` for certain members, `Some(false)` for certain
    /// non-members, `None` inside the radius bracket.
    pub fn membership(&self, lambda: f64) -> Option<bool> {
        let m = lambda.abs();
        if m <= self.radius.lower {
            Some(true)
        } else if m > self.radius.upper {
            Some(false)
        } else {
            None
        }
    }
}

pub fn spectrum(
    f: &NormExpr,
    g: &NormExpr,
    space: Space,
    config: &ComparingConfig,
) -> Result<SpectrumDescriptor, ComparingError> {
    let r = comparing_function(f, g, space, config)?;
    Ok(SpectrumDescriptor {
        radius: Bracket::of(&r),
    })
}

/// Checks `c f(x) <= g(x)` (up to `EPS_EQ`) at every probe point.
pub fn check_primitive_inequality(
    f: &NormExpr,
    g: &NormExpr,
    c: f64,
    probes: &[Point],
) -> Result<bool, NormError> {
    for x in probes {
        let lhs = c * f.eval(x)?;
        let rhs = g.eval(x)?;
        if lhs > rhs * (1.0 + EPS_EQ) + ABS_FLOOR {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `g` induces a finer topology than `f`, i.e. `C_f(g) != 0`.
/// `None` when only a bracket with lower bound 0 is available.
pub fn topology_comparison(
    f: &NormExpr,
    g: &NormExpr,
    space: Space,
    config: &ComparingConfig,
) -> Result<Option<bool>, ComparingError> {
    if g.is_zero() {
        return Err(ComparingError::ZeroReference);
    }
    let r = comparing_function(f, g, space, config)?;
    Ok(r.value().map(|v| v > 0.0))
}

/// `min {C_f(g), C_g(f)}` as a bracket.
pub fn psi(
    f: &NormExpr,
    g: &NormExpr,
    space: Space,
    config: &ComparingConfig,
) -> Result<Bracket, ComparingError> {
    let a = comparing_function(f, g, space, config)?;
    let b = comparing_function(g, f, space, config)?;
    Ok(psi_of(&a, &b))
}

fn psi_of(a: &ComparingResult, b: &ComparingResult) -> Bracket {
    Bracket {
        lower: a.lower.min(b.lower),
        upper: a.upper.min(b.upper),
    }
}

/// Constants with `lambda f <= g <= mu f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sandwich {
    pub lambda: f64,
    pub mu: f64,
}

impl Serialize for Sandwich {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [Sig17(self.lambda), Sig17(self.mu)].serialize(s)
    }
}

/// Outcome of the equivalence test `C_f(g) C_g(f) != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict {
    pub f: NormExpr,
    pub g: NormExpr,
    pub space: Space,
    pub c_fg: ComparingResult,
    pub c_gf: ComparingResult,
    pub psi: Bracket,
    /// `None` when the brackets do not decide the question.
    pub equivalent: Option<bool>,
    pub sandwich: Option<Sandwich>,
    pub divergence_witness: Option<WitnessSequence>,
}

/// Seeded random probe points: gaussian vectors in `R^n`, or sparse vectors
/// with up to 16 nonzero entries among the first 32 indices of `c00`.
pub fn random_probes(space: Space, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| match space {
            Space::Rn(n) => {
                let coords: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                let v = DenseVec::new(coords).expect("finite gaussian samples");
                if v.euclidean_norm() == 0.0 {
                    DenseVec::unit(0, n).into()
                } else {
                    v.into()
                }
            }
            Space::C00 => {
                let k = rng.random_range(1..=16usize);
                let entries: Vec<(usize, f64)> = (0..k)
                    .map(|_| (rng.random_range(1..=32usize), StandardNormal.sample(&mut rng)))
                    .collect();
                let v = SparseVec::new(entries).expect("valid entries");
                if v.is_zero() {
                    space.e1()
                } else {
                    v.into()
                }
            }
        })
        .collect()
}

const SANDWICH_PROBES: usize = 1000;

/// The registered `c00` family driving `C_f(g)` to zero, if any.
fn registered_family(f: &NormExpr, g: &NormExpr) -> Option<WitnessSequence> {
    let tf = f.terms();
    let tg = g.terms();
    let ([a], [b]) = (tf.as_slice(), tg.as_slice()) else {
        return None;
    };
    if a.leaf.weights().is_some() || b.leaf.weights().is_some() {
        return None;
    }
    let (q, p) = (a.leaf.exponent(), b.leaf.exponent());
    if p <= q {
        return None;
    }
    let family = if q == 1.0 && p.is_infinite() {
        WitnessFamily::C00SupVsOne
    } else {
        WitnessFamily::p_vs_q(p, q).ok()?
    };
    Some(WitnessSequence::with_norms(
        family,
        f.clone(),
        g.clone(),
        b.coef / a.coef,
    ))
}

/// Decides equivalence of two nonzero norms.
///
/// Equivalent when both comparing values have positive certified lower
/// bounds; the sandwich `lambda f <= g <= mu f` uses those bounds and is
/// checked at 1000 random probes. Not equivalent when one comparing value is
/// exactly zero; undetermined otherwise.
pub fn equivalence_verdict(
    f: &NormExpr,
    g: &NormExpr,
    space: Space,
    config: &ComparingConfig,
) -> Result<EquivalenceVerdict, ComparingError> {
    if f.is_zero() || g.is_zero() {
        return Err(ComparingError::ZeroReference);
    }
    let c_fg = comparing_function(f, g, space, config)?;
    let c_gf = comparing_function(g, f, space, config)?;
    let psi = psi_of(&c_fg, &c_gf);
    let mut verdict = EquivalenceVerdict {
        f: f.clone(),
        g: g.clone(),
        space,
        c_fg,
        c_gf,
        psi,
        equivalent: None,
        sandwich: None,
        divergence_witness: None,
    };
    let (a, b) = (verdict.c_fg.lower, verdict.c_gf.lower);
    match (verdict.c_fg.value(), verdict.c_gf.value()) {
        _ if a > 0.0 && b > 0.0 => {
            let sandwich = Sandwich {
                lambda: a,
                mu: 1.0 / b,
            };
            for x in random_probes(space, SANDWICH_PROBES, config.seed) {
                let (fx, gx) = (f.eval(&x)?, g.eval(&x)?);
                let slack = EPS_EQ * gx.max(fx) + ABS_FLOOR;
                if sandwich.lambda * fx > gx + slack || gx > sandwich.mu * fx + slack {
                    return Err(ComparingError::SandwichViolation {
                        point: x.to_string(),
                    });
                }
            }
            verdict.equivalent = Some(true);
            verdict.sandwich = Some(sandwich);
        }
        (Some(0.0), _) => {
            verdict.equivalent = Some(false);
            verdict.divergence_witness = registered_family(f, g);
        }
        (_, Some(0.0)) => {
            verdict.equivalent = Some(false);
            verdict.divergence_witness = registered_family(g, f);
        }
        _ => {}
    }
    Ok(verdict)
}

struct WitnessInfo<'a> {
    seq: &'a WitnessSequence,
    direction: &'static str,
}

impl Serialize for WitnessInfo<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let fam = &self.seq.family;
        let mut st = s.serialize_struct("WitnessFamily", 7)?;
        st.serialize_field("id", fam.id())?;
        st.serialize_field("p", &fam.params().map(|(p, _)| Sig17(p)))?;
        st.serialize_field("q", &fam.params().map(|(_, q)| Sig17(q)))?;
        st.serialize_field("direction", self.direction)?;
        st.serialize_field("reference", &self.seq.reference.to_string())?;
        st.serialize_field("target", &self.seq.target.to_string())?;
        st.serialize_field("factor", &Sig17(self.seq.factor))?;
        st.end()
    }
}

struct Equivalent(Option<bool>);

impl Serialize for Equivalent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(b) => s.serialize_bool(b),
            None => s.serialize_str("undetermined"),
        }
    }
}

struct PsiValue(Bracket);

impl Serialize for PsiValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.value() {
            Some(v) => Sig17(v).serialize(s),
            None => [Sig17(self.0.lower), Sig17(self.0.upper)].serialize(s),
        }
    }
}

impl Serialize for EquivalenceVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EquivalenceVerdict", 9)?;
        st.serialize_field("f", &self.f.to_string())?;
        st.serialize_field("g", &self.g.to_string())?;
        st.serialize_field("space", &self.space.to_string())?;
        st.serialize_field("c_fg", &self.c_fg)?;
        st.serialize_field("c_gf", &self.c_gf)?;
        st.serialize_field("psi", &PsiValue(self.psi))?;
        st.serialize_field("equivalent", &Equivalent(self.equivalent))?;
        st.serialize_field("sandwich", &self.sandwich)?;
        let direction = if self.c_fg.value() == Some(0.0) {
            "c_fg"
        } else {
            "c_gf"
        };
        st.serialize_field(
            "witness_family",
            &self
                .divergence_witness
                .as_ref()
                .map(|seq| WitnessInfo { seq, direction }),
        )?;
        st.end()
    }
}
