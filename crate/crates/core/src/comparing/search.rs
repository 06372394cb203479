use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::norm::{project_to_sphere, NormExpr, NormError};

use super::ComparingConfig;

/// Best point found by [`minimize_ratio`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub ratio: f64,
    /// Unit-sphere point attaining `ratio`.
    pub witness: Vec<f64>,
    pub converged: bool,
    pub evaluations: usize,
}

/// Signed basis vectors and, for `n <= 10`, every sign pattern of the
/// all-ones vector, all on the unit sphere.
pub fn probe_directions(n: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for s in [1.0, -1.0] {
            let mut x = vec![0.0; n];
            x[i] = s;
            out.push(x);
        }
    }
    let scale = 1.0 / (n as f64).sqrt();
    if n <= 10 {
        for mask in 0u32..(1 << n) {
            out.push(
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { -scale } else { scale })
                    .collect(),
            );
        }
    } else {
        out.push(vec![scale; n]);
        out.push(vec![-scale; n]);
    }
    out
}

struct Objective<'a> {
    f: &'a NormExpr,
    g: &'a NormExpr,
}

impl Objective<'_> {
    fn ratio(&self, x: &[f64]) -> f64 {
        let denom = self.f.eval_unchecked(x);
        if denom > 0.0 {
            self.g.eval_unchecked(x) / denom
        } else {
            f64::INFINITY
        }
    }
}

/// Smaller ratio first, then the lexicographically smaller point.
fn better(a: (f64, &[f64]), b: (f64, &[f64])) -> bool {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => {
            a.1.iter()
                .zip(b.1)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                == Some(std::cmp::Ordering::Less)
        }
    }
}

/// Pattern search on the sphere: poll `x +- step e_i`, project back, move to
/// the best improving neighbour (doubling the step), otherwise halve the step.
fn descend(obj: &Objective<'_>, mut x: Vec<f64>, config: &ComparingConfig) -> (f64, Vec<f64>, bool, usize) {
    let n = x.len();
    let mut r = obj.ratio(&x);
    let mut evals = 1;
    let mut step = 0.5;
    let mut trial = vec![0.0; n];
    let mut best = vec![0.0; n];
    for _ in 0..config.max_iters {
        if step < config.tol_opt {
            return (r, x, true, evals);
        }
        let mut best_r = r;
        for i in 0..n {
            for s in [step, -step] {
                trial.copy_from_slice(&x);
                trial[i] += s;
                project_to_sphere(&mut trial);
                let rt = obj.ratio(&trial);
                evals += 1;
                if rt < best_r {
                    best_r = rt;
                    best.copy_from_slice(&trial);
                }
            }
        }
        if best_r < r {
            r = best_r;
            x.copy_from_slice(&best);
            step = (step * 2.0).min(0.5);
        } else {
            step *= 0.5;
        }
    }
    (r, x, step < config.tol_opt, evals)
}

/// Minimizes `g(x) / f(x)` over the unit sphere of `R^dim`.
///
/// Starting points are drawn from a generator seeded with `config.seed`, so
/// the outcome is reproducible and independent of the thread count.
pub fn minimize_ratio(
    f: &NormExpr,
    g: &NormExpr,
    dim: usize,
    config: &ComparingConfig,
) -> Result<SearchOutcome, NormError> {
    let probe = vec![1.0; dim];
    f.check_point(probe.as_slice())?;
    g.check_point(probe.as_slice())?;
    let obj = Objective { f, g };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let starts: Vec<Vec<f64>> = (0..config.starts)
        .map(|_| {
            let mut x: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
            project_to_sphere(&mut x);
            x
        })
        .collect();

    let runs: Vec<(f64, Vec<f64>, bool, usize)> = starts
        .into_par_iter()
        .map(|x| descend(&obj, x, config))
        .collect();

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut consider = |r: f64, x: Vec<f64>| match &best {
        Some((br, bx)) if !better((r, &x), (*br, bx)) => {}
        _ => best = Some((r, x)),
    };
    let mut evaluations = 0;
    if config.probes {
        for x in probe_directions(dim) {
            evaluations += 1;
            consider(obj.ratio(&x), x);
        }
    }
    let mut converged = true;
    for (r, x, ok, evals) in runs {
        converged &= ok;
        evaluations += evals;
        consider(r, x);
    }
    let (ratio, witness) = best.unwrap_or_else(|| {
        let mut x = vec![1.0; dim];
        project_to_sphere(&mut x);
        (obj.ratio(&x), x)
    });
    Ok(SearchOutcome {
        ratio,
        witness,
        converged,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probes_cover_basis_and_sign_patterns() {
        let p = probe_directions(3);
        assert_eq!(p.len(), 6 + 8);
        for x in &p {
            let n: f64 = x.iter().map(|v| v * v).sum();
            assert!((n - 1.0).abs() < 1e-15);
        }
        assert_eq!(probe_directions(12).len(), 24 + 2);
    }

    #[test]
    fn descent_without_probes_finds_one_over_n() {
        let cfg = ComparingConfig {
            probes: false,
            ..Default::default()
        };
        let out = minimize_ratio(&NormExpr::one(), &NormExpr::sup(), 4, &cfg).unwrap();
        assert!(out.converged);
        assert!((out.ratio - 0.25).abs() < 1e-8, "{}", out.ratio);
    }

    #[test]
    fn deterministic_given_seed() {
        let f: NormExpr = "p(3; w=1,2,3)".parse().unwrap();
        let g: NormExpr = "sum(p(1), sup)".parse().unwrap();
        let cfg = ComparingConfig::default();
        let a = minimize_ratio(&f, &g, 3, &cfg).unwrap();
        let b = minimize_ratio(&f, &g, 3, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_starts_falls_back_to_ones() {
        let cfg = ComparingConfig {
            starts: 0,
            probes: false,
            ..Default::default()
        };
        let out = minimize_ratio(&NormExpr::one(), &NormExpr::sup(), 2, &cfg).unwrap();
        assert!((out.ratio - 0.5).abs() < 1e-15);
    }
}
