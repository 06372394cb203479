use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::json::sig17_seq;

use super::{EvsError, EvsInstance, Ternary};

/// Individual sub-checks, in the order they run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    A1Identity,
    A1Commutative,
    A1Associative,
    A2Additive,
    A2Scalar,
    A3Distributive,
    A3Compose,
    A3Subadditive,
    A3Unit,
    A4ZeroProduct,
    A5Inverse,
    A5Minimal,
    A6PrimitiveBelow,
    SinglePrimitive,
    ZeroPrimitive,
    Homogeneous,
    Convex,
    Balanced,
}

impl CheckKind {
    /// Axiom label (`"A1"`...`"A6"`) or property name.
    pub fn label(&self) -> &'static str {
        use CheckKind::*;
        match self {
            A1Identity | A1Commutative | A1Associative => "A1",
            A2Additive | A2Scalar => "A2",
            A3Distributive | A3Compose | A3Subadditive | A3Unit => "A3",
            A4ZeroProduct => "A4",
            A5Inverse | A5Minimal => "A5",
            A6PrimitiveBelow => "A6",
            SinglePrimitive => "single_primitive",
            ZeroPrimitive => "zero_primitive",
            Homogeneous => "homogeneous",
            Convex => "convex",
            Balanced => "balanced",
        }
    }
}

/// A replayable violation: the sample is regenerated from `seed` and
/// `n_samples`, the scalars are stored verbatim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub check: CheckKind,
    pub seed: u64,
    pub n_samples: usize,
    pub indices: Vec<usize>,
    #[serde(serialize_with = "sig17_seq")]
    pub scalars: Vec<f64>,
    pub elements: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomEntry {
    pub status: EntryStatus,
    pub trials: usize,
    /// Order decisions that held only on sampled points.
    pub sampled: usize,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_instance: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AxiomEntry {
    pub fn passed(&self) -> bool {
        self.status == EntryStatus::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axioms {
    #[serde(rename = "A1")]
    pub a1: AxiomEntry,
    #[serde(rename = "A2")]
    pub a2: AxiomEntry,
    #[serde(rename = "A3")]
    pub a3: AxiomEntry,
    #[serde(rename = "A4")]
    pub a4: AxiomEntry,
    #[serde(rename = "A5")]
    pub a5: AxiomEntry,
    #[serde(rename = "A6")]
    pub a6: AxiomEntry,
}

impl Axioms {
    pub fn entries(&self) -> [(&'static str, &AxiomEntry); 6] {
        [
            ("A1", &self.a1),
            ("A2", &self.a2),
            ("A3", &self.a3),
            ("A4", &self.a4),
            ("A5", &self.a5),
            ("A6", &self.a6),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.entries().iter().all(|(_, e)| e.passed())
    }

    /// Labels of the failing axioms.
    pub fn failing(&self) -> Vec<&'static str> {
        self.entries()
            .iter()
            .filter(|(_, e)| !e.passed())
            .map(|(l, _)| *l)
            .collect()
    }
}

pub type PropertyEntry = AxiomEntry;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub single_primitive: PropertyEntry,
    pub zero_primitive: PropertyEntry,
    pub homogeneous: PropertyEntry,
    pub convex: PropertyEntry,
    pub balanced: PropertyEntry,
}

impl PropertyReport {
    pub fn entries(&self) -> [(&'static str, &PropertyEntry); 5] {
        [
            ("single_primitive", &self.single_primitive),
            ("zero_primitive", &self.zero_primitive),
            ("homogeneous", &self.homogeneous),
            ("convex", &self.convex),
            ("balanced", &self.balanced),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.entries().iter().all(|(_, e)| e.passed())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub instance: String,
    pub seed: u64,
    pub n_samples: usize,
    #[serde(serialize_with = "sig17_seq")]
    pub scalars: Vec<f64>,
    pub axioms: Axioms,
    pub properties: PropertyReport,
}

impl AxiomReport {
    pub fn axioms_pass(&self) -> bool {
        self.axioms.all_pass()
    }
}

const DESIGNATED_SCALARS: [f64; 8] = [1.0, -1.0, 0.0, 0.5, -2.0, 2.0, -0.25, 3.0];

/// Deterministic scalar sample: `1, -1, 0, 1/2, -2, 2, -1/4, 3`, then
/// uniform draws from `[-4, 4]`.
pub fn sample_scalars(seed: u64, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ca1_ab1e);
    (0..count)
        .map(|i| {
            DESIGNATED_SCALARS
                .get(i)
                .copied()
                .unwrap_or_else(|| rng.random_range(-4.0..4.0))
        })
        .collect()
}

enum Outcome {
    Holds { sampled: bool },
    Violated(String),
}

const HOLDS: Outcome = Outcome::Holds { sampled: false };

fn order<W: fmt::Display>(t: Ternary<W>, what: impl FnOnce() -> String) -> Outcome {
    match t {
        Ternary::CertifiedTrue => HOLDS,
        Ternary::SampledTrue => Outcome::Holds { sampled: true },
        Ternary::Refuted(w) => Outcome::Violated(format!("{} fails (witness {w})", what())),
    }
}

fn equality(eq: bool, what: impl FnOnce() -> String) -> Outcome {
    if eq {
        HOLDS
    } else {
        Outcome::Violated(format!("{} fails", what()))
    }
}

/// Scalar used by the balancedness check: `alpha` itself inside the unit
/// disc, `1/alpha` outside it.
fn unit_disc(alpha: f64) -> f64 {
    if alpha.abs() <= 1.0 {
        alpha
    } else {
        1.0 / alpha
    }
}

struct Ctx<'a, I: EvsInstance> {
    inst: &'a I,
    elems: Vec<I::Element>,
    pool: Vec<I::Element>,
    zero: I::Element,
    seed: u64,
}

impl<'a, I: EvsInstance> Ctx<'a, I> {
    fn new(inst: &'a I, seed: u64, n_samples: usize) -> Result<Self, EvsError> {
        if n_samples < 3 {
            return Err(EvsError::TooFewSamples(n_samples));
        }
        let elems = inst.sample(seed, n_samples);
        if elems.len() < n_samples {
            return Err(EvsError::Instance {
                got: elems.len(),
                wanted: n_samples,
            });
        }
        let mut elems = elems;
        elems.truncate(n_samples);
        let zero = inst.zero();
        let mut pool = elems.clone();
        pool.push(zero.clone());
        Ok(Self {
            inst,
            elems,
            pool,
            zero,
            seed,
        })
    }

    fn r(&self, i: usize) -> String {
        self.inst.render(&self.elems[i])
    }

    fn counterexample(&self, kind: CheckKind, idx: &[usize], sc: &[f64], detail: String) -> Counterexample {
        Counterexample {
            check: kind,
            seed: self.seed,
            n_samples: self.elems.len(),
            indices: idx.to_vec(),
            scalars: sc.to_vec(),
            elements: idx.iter().map(|&i| self.r(i)).collect(),
            detail,
        }
    }

    fn a2_additive(&self, i: usize, j: usize, k: usize) -> Result<Outcome, EvsError> {
        let inst = self.inst;
        let (x, y, z) = (&self.elems[i], &self.elems[j], &self.elems[k]);
        Ok(order(inst.leq(&inst.add(x, z), &inst.add(y, z))?, || {
            format!("x <= y => x + z <= y + z with x = {}, y = {}, z = {}", self.r(i), self.r(j), self.r(k))
        }))
    }

    fn a2_scalar(&self, i: usize, j: usize, a: f64) -> Result<Outcome, EvsError> {
        let inst = self.inst;
        let (x, y) = (&self.elems[i], &self.elems[j]);
        Ok(order(inst.leq(&inst.smul(a, x), &inst.smul(a, y))?, || {
            format!("x <= y => a x <= a y with x = {}, y = {}, a = {a}", self.r(i), self.r(j))
        }))
    }

    fn premise(&self, i: usize, j: usize) -> Result<bool, EvsError> {
        Ok(!self.inst.leq(&self.elems[i], &self.elems[j])?.is_refuted())
    }

    /// Standalone evaluation of one sub-check.
    fn eval(&self, kind: CheckKind, idx: &[usize], sc: &[f64]) -> Result<Outcome, EvsError> {
        use CheckKind::*;
        let inst = self.inst;
        let e = |k: usize| &self.elems[idx[k]];
        let theta = &self.zero;
        Ok(match kind {
            A1Identity => {
                let ok = inst.equal(&inst.add(e(0), theta), e(0))? && inst.equal(&inst.add(theta, e(0)), e(0))?;
                equality(ok, || format!("x + theta = x with x = {}", self.r(idx[0])))
            }
            A1Commutative => equality(inst.equal(&inst.add(e(0), e(1)), &inst.add(e(1), e(0)))?, || {
                format!("x + y = y + x with x = {}, y = {}", self.r(idx[0]), self.r(idx[1]))
            }),
            A1Associative => {
                let l = inst.add(&inst.add(e(0), e(1)), e(2));
                let r = inst.add(e(0), &inst.add(e(1), e(2)));
                equality(inst.equal(&l, &r)?, || {
                    format!(
                        "(x + y) + z = x + (y + z) with x = {}, y = {}, z = {}",
                        self.r(idx[0]),
                        self.r(idx[1]),
                        self.r(idx[2])
                    )
                })
            }
            A2Additive => {
                if !self.premise(idx[0], idx[1])? {
                    HOLDS
                } else {
                    self.a2_additive(idx[0], idx[1], idx[2])?
                }
            }
            A2Scalar => {
                if !self.premise(idx[0], idx[1])? {
                    HOLDS
                } else {
                    self.a2_scalar(idx[0], idx[1], sc[0])?
                }
            }
            A3Distributive => {
                let a = sc[0];
                let l = inst.smul(a, &inst.add(e(0), e(1)));
                let r = inst.add(&inst.smul(a, e(0)), &inst.smul(a, e(1)));
                equality(inst.equal(&l, &r)?, || {
                    format!("a(x + y) = a x + a y with a = {a}, x = {}, y = {}", self.r(idx[0]), self.r(idx[1]))
                })
            }
            A3Compose => {
                let (a, b) = (sc[0], sc[1]);
                let l = inst.smul(a, &inst.smul(b, e(0)));
                let r = inst.smul(a * b, e(0));
                equality(inst.equal(&l, &r)?, || {
                    format!("a(b x) = (ab) x with a = {a}, b = {b}, x = {}", self.r(idx[0]))
                })
            }
            A3Subadditive => {
                let (a, b) = (sc[0], sc[1]);
                let l = inst.smul(a + b, e(0));
                let r = inst.add(&inst.smul(a, e(0)), &inst.smul(b, e(0)));
                order(inst.leq(&l, &r)?, || {
                    format!("(a + b) x <= a x + b x with a = {a}, b = {b}, x = {}", self.r(idx[0]))
                })
            }
            A3Unit => equality(inst.equal(&inst.smul(1.0, e(0)), e(0))?, || {
                format!("1 x = x with x = {}", self.r(idx[0]))
            }),
            A4ZeroProduct => {
                let a = sc[0];
                let lhs = inst.equal(&inst.smul(a, e(0)), theta)?;
                let rhs = a == 0.0 || inst.equal(e(0), theta)?;
                equality(lhs == rhs, || {
                    format!(
                        "a x = theta <=> (a = 0 or x = theta) with a = {a}, x = {} (a x = theta: {lhs})",
                        self.r(idx[0])
                    )
                })
            }
            A5Inverse => {
                let x = e(0);
                let cancels = inst.equal(&inst.add(x, &inst.smul(-1.0, x)), theta)?;
                let primitive = inst.is_primitive(x);
                equality(cancels == primitive, || {
                    format!(
                        "x + (-1) x = theta <=> x primitive with x = {} (cancels: {cancels}, primitive: {primitive})",
                        self.r(idx[0])
                    )
                })
            }
            A5Minimal => {
                let (p, y) = (e(0), e(1));
                if !inst.is_primitive(p) || inst.equal(p, y)? || inst.leq(y, p)?.is_refuted() {
                    HOLDS
                } else {
                    Outcome::Violated(format!(
                        "primitive {} is not minimal: {} lies below it",
                        self.r(idx[0]),
                        self.r(idx[1])
                    ))
                }
            }
            A6PrimitiveBelow | SinglePrimitive | ZeroPrimitive => {
                let x = e(0);
                match primitives_of(inst, x, &self.pool) {
                    Err(EvsError::A6Violation(_)) => Outcome::Violated(format!(
                        "no sampled primitive below {}",
                        self.r(idx[0])
                    )),
                    Err(other) => return Err(other),
                    Ok(ps) => {
                        let mut distinct: Vec<&I::Element> = Vec::new();
                        for p in &ps {
                            let mut seen = false;
                            for q in &distinct {
                                if inst.equal(p, q)? {
                                    seen = true;
                                    break;
                                }
                            }
                            if !seen {
                                distinct.push(p);
                            }
                        }
                        let list = || distinct.iter().map(|p| inst.render(p)).collect::<Vec<_>>().join(", ");
                        match kind {
                            SinglePrimitive if distinct.len() != 1 => Outcome::Violated(format!(
                                "P_x = {{{}}} for x = {}",
                                list(),
                                self.r(idx[0])
                            )),
                            ZeroPrimitive if distinct.len() != 1 || !inst.equal(distinct[0], theta)? => {
                                Outcome::Violated(format!("P_x = {{{}}} for x = {}", list(), self.r(idx[0])))
                            }
                            _ => HOLDS,
                        }
                    }
                }
            }
            Homogeneous => {
                let a = sc[0];
                equality(inst.equal(&inst.smul(a, e(0)), &inst.smul(a.abs(), e(0)))?, || {
                    format!("a x = |a| x with a = {a}, x = {}", self.r(idx[0]))
                })
            }
            Convex => {
                let (a, b) = (sc[0].abs(), sc[1].abs());
                let l = inst.smul(a + b, e(0));
                let r = inst.add(&inst.smul(a, e(0)), &inst.smul(b, e(0)));
                equality(inst.equal(&l, &r)?, || {
                    format!("(a + b) x = a x + b x with a = {a}, b = {b}, x = {}", self.r(idx[0]))
                })
            }
            Balanced => {
                let a = unit_disc(sc[0]);
                order(inst.leq(&inst.smul(a, e(0)), e(0))?, || {
                    format!("a x <= x with a = {a}, x = {}", self.r(idx[0]))
                })
            }
        })
    }
}

/// All primitive elements of `pool` not refuted to lie below `x`.
///
/// An empty result violates A6 and is reported as [`EvsError::A6Violation`].
pub fn primitives_of<I: EvsInstance>(
    inst: &I,
    x: &I::Element,
    pool: &[I::Element],
) -> Result<Vec<I::Element>, EvsError> {
    let mut out = Vec::new();
    for p in pool {
        if inst.is_primitive(p) && !inst.leq(p, x)?.is_refuted() {
            out.push(p.clone());
        }
    }
    if out.is_empty() {
        return Err(EvsError::A6Violation(inst.render(x)));
    }
    Ok(out)
}

#[derive(Default)]
struct Tally {
    trials: usize,
    sampled: usize,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn failed(&self) -> bool {
        self.counterexample.is_some()
    }

    /// Records one evaluation; returns `true` once a violation is stored.
    fn record<I: EvsInstance>(
        &mut self,
        ctx: &Ctx<'_, I>,
        kind: CheckKind,
        idx: &[usize],
        sc: &[f64],
        outcome: Outcome,
    ) -> bool {
        self.trials += 1;
        match outcome {
            Outcome::Holds { sampled } => {
                self.sampled += usize::from(sampled);
                false
            }
            Outcome::Violated(detail) => {
                self.counterexample = Some(ctx.counterexample(kind, idx, sc, detail));
                true
            }
        }
    }

    fn entry(self) -> AxiomEntry {
        AxiomEntry {
            status: if self.failed() {
                EntryStatus::Fail
            } else {
                EntryStatus::Pass
            },
            trials: self.trials,
            sampled: self.sampled,
            counterexample: self.counterexample,
            strict_instance: None,
            note: None,
        }
    }
}

/// Runs `kind` over every index tuple of the given arity and scalar tuple of
/// the given arity, in lexicographic order, stopping at the first violation.
fn sweep<I: EvsInstance>(
    ctx: &Ctx<'_, I>,
    tally: &mut Tally,
    kind: CheckKind,
    arity: usize,
    scalars: &[f64],
    scalar_arity: usize,
) -> Result<(), EvsError> {
    let n = ctx.elems.len();
    let s = scalars.len();
    let combos = |base: usize, k: usize| -> Vec<Vec<usize>> {
        let total = base.pow(k as u32);
        (0..total)
            .map(|mut c| {
                let mut v = vec![0; k];
                for slot in v.iter_mut().rev() {
                    *slot = c % base;
                    c /= base;
                }
                v
            })
            .collect()
    };
    for idx in combos(n, arity) {
        for sidx in combos(s, scalar_arity) {
            let sc: Vec<f64> = sidx.iter().map(|&k| scalars[k]).collect();
            let outcome = ctx.eval(kind, &idx, &sc)?;
            if tally.record(ctx, kind, &idx, &sc, outcome) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn check_a2<I: EvsInstance>(ctx: &Ctx<'_, I>, scalars: &[f64]) -> Result<AxiomEntry, EvsError> {
    let n = ctx.elems.len();
    let mut tally = Tally::default();
    let mut premises = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if ctx.premise(i, j)? {
                premises.push((i, j));
            }
        }
    }
    'additive: for &(i, j) in &premises {
        for k in 0..n {
            let outcome = ctx.a2_additive(i, j, k)?;
            if tally.record(ctx, CheckKind::A2Additive, &[i, j, k], &[], outcome) {
                break 'additive;
            }
        }
    }
    if !tally.failed() {
        'scalar: for &(i, j) in &premises {
            for &a in scalars {
                let outcome = ctx.a2_scalar(i, j, a)?;
                if tally.record(ctx, CheckKind::A2Scalar, &[i, j], &[a], outcome) {
                    break 'scalar;
                }
            }
        }
    }
    let mut entry = tally.entry();
    entry.note = Some(format!("{} comparable ordered pairs", premises.len()));
    Ok(entry)
}

fn check_a3<I: EvsInstance>(ctx: &Ctx<'_, I>, scalars: &[f64]) -> Result<AxiomEntry, EvsError> {
    let mut tally = Tally::default();
    let mut strict = None;
    sweep(ctx, &mut tally, CheckKind::A3Distributive, 2, scalars, 1)?;
    if !tally.failed() {
        sweep(ctx, &mut tally, CheckKind::A3Compose, 1, scalars, 2)?;
    }
    if !tally.failed() {
        'outer: for i in 0..ctx.elems.len() {
            for &a in scalars {
                for &b in scalars {
                    let outcome = ctx.eval(CheckKind::A3Subadditive, &[i], &[a, b])?;
                    let held = matches!(outcome, Outcome::Holds { .. });
                    if tally.record(ctx, CheckKind::A3Subadditive, &[i], &[a, b], outcome) {
                        break 'outer;
                    }
                    if held && strict.is_none() {
                        let inst = ctx.inst;
                        let x = &ctx.elems[i];
                        let l = inst.smul(a + b, x);
                        let r = inst.add(&inst.smul(a, x), &inst.smul(b, x));
                        if !inst.equal(&l, &r)? {
                            strict = Some(ctx.counterexample(
                                CheckKind::A3Subadditive,
                                &[i],
                                &[a, b],
                                format!("strict: (a + b) x < a x + b x with a = {a}, b = {b}, x = {}", ctx.r(i)),
                            ));
                        }
                    }
                }
            }
        }
    }
    if !tally.failed() {
        sweep(ctx, &mut tally, CheckKind::A3Unit, 1, &[], 0)?;
    }
    let mut entry = tally.entry();
    entry.strict_instance = strict;
    Ok(entry)
}

fn single<I: EvsInstance>(
    ctx: &Ctx<'_, I>,
    kinds: &[(CheckKind, usize, usize)],
    scalars: &[f64],
) -> Result<AxiomEntry, EvsError> {
    let mut tally = Tally::default();
    for &(kind, arity, scalar_arity) in kinds {
        if tally.failed() {
            break;
        }
        sweep(ctx, &mut tally, kind, arity, scalars, scalar_arity)?;
    }
    Ok(tally.entry())
}

fn properties<I: EvsInstance>(ctx: &Ctx<'_, I>, scalars: &[f64]) -> Result<PropertyReport, EvsError> {
    Ok(PropertyReport {
        single_primitive: single(ctx, &[(CheckKind::SinglePrimitive, 1, 0)], scalars)?,
        zero_primitive: single(ctx, &[(CheckKind::ZeroPrimitive, 1, 0)], scalars)?,
        homogeneous: single(ctx, &[(CheckKind::Homogeneous, 1, 1)], scalars)?,
        convex: single(ctx, &[(CheckKind::Convex, 1, 2)], scalars)?,
        balanced: single(ctx, &[(CheckKind::Balanced, 1, 1)], scalars)?,
    })
}

/// Evaluates A1-A6 and the derived properties on `n_samples` sampled
/// elements and `n_scalars` sampled scalars.
pub fn check_axioms<I: EvsInstance>(
    inst: &I,
    seed: u64,
    n_samples: usize,
    n_scalars: usize,
) -> Result<AxiomReport, EvsError> {
    let ctx = Ctx::new(inst, seed, n_samples)?;
    let scalars = sample_scalars(seed, n_scalars);
    let a1 = single(
        &ctx,
        &[
            (CheckKind::A1Identity, 1, 0),
            (CheckKind::A1Commutative, 2, 0),
            (CheckKind::A1Associative, 3, 0),
        ],
        &scalars,
    )?;
    let a2 = check_a2(&ctx, &scalars)?;
    let a3 = check_a3(&ctx, &scalars)?;
    let a4 = single(&ctx, &[(CheckKind::A4ZeroProduct, 1, 1)], &scalars)?;
    let mut a5 = single(
        &ctx,
        &[(CheckKind::A5Inverse, 1, 0), (CheckKind::A5Minimal, 2, 0)],
        &scalars,
    )?;
    if a5.passed() {
        a5.note = Some("primitivity oracle not refuted on the sample".into());
    }
    let a6 = single(&ctx, &[(CheckKind::A6PrimitiveBelow, 1, 0)], &scalars)?;
    Ok(AxiomReport {
        instance: inst.carrier_id(),
        seed,
        n_samples,
        scalars: scalars.clone(),
        axioms: Axioms { a1, a2, a3, a4, a5, a6 },
        properties: properties(&ctx, &scalars)?,
    })
}

/// Evaluates only the derived properties (single/zero primitivity,
/// homogeneity, convexity, balancedness).
pub fn check_properties<I: EvsInstance>(
    inst: &I,
    seed: u64,
    n_samples: usize,
    n_scalars: usize,
) -> Result<PropertyReport, EvsError> {
    let ctx = Ctx::new(inst, seed, n_samples)?;
    properties(&ctx, &sample_scalars(seed, n_scalars))
}

/// Re-evaluates a counterexample from scratch; `true` when it still violates
/// its check.
pub fn replay<I: EvsInstance>(inst: &I, cx: &Counterexample) -> Result<bool, EvsError> {
    let ctx = Ctx::new(inst, cx.seed, cx.n_samples)?;
    if cx.indices.iter().any(|&i| i >= ctx.elems.len()) {
        return Err(EvsError::Replay(format!("index out of range in {:?}", cx.indices)));
    }
    Ok(matches!(
        ctx.eval(cx.check, &cx.indices, &cx.scalars)?,
        Outcome::Violated(_)
    ))
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance {} (seed {}, {} samples, {} scalars)", self.instance, self.seed, self.n_samples, self.scalars.len())?;
        let line = |f: &mut fmt::Formatter<'_>, name: &str, e: &AxiomEntry| -> fmt::Result {
            let status = if e.passed() { "pass" } else { "FAIL" };
            write!(f, "  {name:<17} {status:<5} trials={:<7} sampled={}", e.trials, e.sampled)?;
            if let Some(cx) = &e.counterexample {
                write!(f, "\n      counterexample: {}", cx.detail)?;
            }
            if let Some(s) = &e.strict_instance {
                write!(f, "\n      {}", s.detail)?;
            }
            writeln!(f)
        };
        for (name, e) in self.axioms.entries() {
            line(f, name, e)?;
        }
        writeln!(f, "  properties:")?;
        for (name, e) in self.properties.entries() {
            line(f, name, e)?;
        }
        Ok(())
    }
}

