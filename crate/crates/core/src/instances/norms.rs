use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::comparing::{probe_directions, random_probes, ComparingConfig, Space};
use crate::evs::{EvsError, EvsInstance, Ternary};
use crate::norm::{evs_add, evs_smul, leq_norms, DenseVec, NormError, NormExpr, Point, Term};
use crate::tolerance::{decide_eq, within_tolerance};

/// `N(R^n)`: norms on `R^n` plus the zero function.
#[derive(Debug, Clone)]
pub struct NormInstance {
    dim: usize,
    config: ComparingConfig,
    probes: Vec<DenseVec>,
}

/// Search settings used for order decisions inside the axiom checker.
pub fn checker_config() -> ComparingConfig {
    ComparingConfig {
        starts: 4,
        max_iters: 1_000,
        tol_opt: 1e-8,
        probes: false,
        ..ComparingConfig::default()
    }
}

impl NormInstance {
    pub fn new(dim: usize) -> Result<Self, NormError> {
        if dim == 0 {
            return Err(NormError::EmptyVector);
        }
        Ok(Self {
            dim,
            config: checker_config(),
            probes: equality_probes(dim),
        })
    }

    pub fn with_config(mut self, config: ComparingConfig) -> Self {
        self.config = config;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Deterministic probe points for pointwise equality: signed basis vectors,
/// sign patterns of the ones vector (small `n`) and seeded sphere points.
pub(crate) fn equality_probes(dim: usize) -> Vec<DenseVec> {
    let mut out: Vec<DenseVec> = probe_directions(dim)
        .into_iter()
        .map(|c| DenseVec::new(c).expect("finite probe"))
        .collect();
    out.extend(random_probes(Space::Rn(dim), 32, 0x9e37).into_iter().map(|p| match p {
        Point::Dense(v) => v,
        Point::Sparse(_) => unreachable!("dense space"),
    }));
    out
}

fn same_terms(a: &[Term], b: &[Term]) -> bool {
    a.len() == b.len()
        && a
            .iter()
            .zip(b)
            .all(|(s, t)| s.leaf == t.leaf && within_tolerance(s.coef, t.coef))
}

/// Pointwise equality: identical normal forms certify; otherwise the values
/// must agree at every probe.
pub(crate) fn pointwise_equal(
    f: &NormExpr,
    g: &NormExpr,
    probes: &[DenseVec],
) -> Result<bool, EvsError> {
    if same_terms(&f.terms(), &g.terms()) {
        return Ok(true);
    }
    for x in probes {
        let (a, b) = (f.eval_unchecked(x), g.eval_unchecked(x));
        if !decide_eq(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Leaf menu for random sample elements.
fn random_leaf(rng: &mut ChaCha8Rng, dim: usize) -> NormExpr {
    match rng.random_range(0..7) {
        0 => NormExpr::one(),
        1 => NormExpr::sup(),
        2 => NormExpr::p(1.5).expect("valid p"),
        3 => NormExpr::p(2.0).expect("valid p"),
        4 => NormExpr::p(3.0).expect("valid p"),
        5 => {
            let w = (0..dim).map(|_| rng.random_range(0.5..2.0)).collect();
            NormExpr::weighted(2.0, w).expect("positive weights")
        }
        _ => {
            let w = (0..dim).map(|_| rng.random_range(0.5..2.0)).collect();
            NormExpr::weighted(f64::INFINITY, w).expect("positive weights")
        }
    }
}

/// Sample of `N(R^dim)`: `O`, the base norms, weighted norms, sums and
/// scalar multiples, followed by seeded random positive combinations.
pub fn norm_samples(dim: usize, seed: u64, count: usize) -> Vec<NormExpr> {
    let p = |p: f64| NormExpr::p(p).expect("valid p");
    let ramp: Vec<f64> = (1..=dim).map(|i| i as f64).collect();
    let mut bump = vec![1.0; dim];
    bump[0] = 2.0;
    let fixed = vec![
        NormExpr::zero(),
        NormExpr::one(),
        NormExpr::sup(),
        p(2.0),
        p(3.0),
        NormExpr::weighted(2.0, ramp).expect("positive weights"),
        NormExpr::weighted(f64::INFINITY, bump).expect("positive weights"),
        NormExpr::sum(vec![NormExpr::one(), p(2.0)]),
        NormExpr::scale(2.5, NormExpr::sup()),
        NormExpr::scale(0.5, NormExpr::sum(vec![p(2.0), NormExpr::sup()])),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<NormExpr> = fixed.into_iter().take(count).collect();
    while out.len() < count {
        let k = rng.random_range(1..=3);
        let parts = (0..k)
            .map(|_| {
                let leaf = random_leaf(&mut rng, dim);
                let c: f64 = rng.random_range(0.25..3.0);
                NormExpr::scale(c, leaf)
            })
            .collect();
        out.push(NormExpr::sum(parts).normalize());
    }
    out
}

impl EvsInstance for NormInstance {
    type Element = NormExpr;
    type Witness = Point;

    fn carrier_id(&self) -> String {
        format!("norms:{}", self.dim)
    }

    fn zero(&self) -> NormExpr {
        NormExpr::zero()
    }

    fn add(&self, x: &NormExpr, y: &NormExpr) -> NormExpr {
        evs_add(x, y)
    }

    fn smul(&self, alpha: f64, x: &NormExpr) -> NormExpr {
        evs_smul(alpha, x)
    }

    fn leq(&self, x: &NormExpr, y: &NormExpr) -> Result<Ternary<Point>, EvsError> {
        Ok(leq_norms(x, y, Space::Rn(self.dim), &self.config)?)
    }

    fn equal(&self, x: &NormExpr, y: &NormExpr) -> Result<bool, EvsError> {
        pointwise_equal(x, y, &self.probes)
    }

    fn is_primitive(&self, x: &NormExpr) -> bool {
        x.is_zero()
    }

    fn sample(&self, seed: u64, count: usize) -> Vec<NormExpr> {
        norm_samples(self.dim, seed, count)
    }

    fn render(&self, x: &NormExpr) -> String {
        x.to_string()
    }
}
