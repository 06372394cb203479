use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::evs::{EvsError, EvsInstance, Ternary};
use crate::norm::{Cursor, DenseVec, NormError};
use crate::tolerance::within_tolerance;

/// A nonempty finite subset of `R^d`, stored sorted lexicographically with
/// points closer than the equality tolerance merged.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

fn same_point(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| within_tolerance(*x, *y))
}

fn lex(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

impl FinitePointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, NormError> {
        let dim = points.first().ok_or(NormError::EmptyVector)?.len();
        if dim == 0 {
            return Err(NormError::EmptyVector);
        }
        for p in &points {
            if p.len() != dim {
                return Err(NormError::DimensionMismatch {
                    expected: dim,
                    found: Some(p.len()),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(NormError::NonFinite);
            }
        }
        Ok(Self::canonical(dim, points))
    }

    fn canonical(dim: usize, mut points: Vec<Vec<f64>>) -> Self {
        for p in points.iter_mut() {
            for x in p.iter_mut() {
                if *x == 0.0 {
                    *x = 0.0;
                }
            }
        }
        points.sort_by(|a, b| lex(a, b));
        let mut kept: Vec<Vec<f64>> = Vec::with_capacity(points.len());
        for p in points {
            if !kept.iter().any(|k| same_point(k, &p)) {
                kept.push(p);
            }
        }
        Self { dim, points: kept }
    }

    /// `{0}`, the identity of the Minkowski sum.
    pub fn origin(dim: usize) -> Self {
        Self {
            dim,
            points: vec![vec![0.0; dim]],
        }
    }

    pub fn singleton(point: Vec<f64>) -> Result<Self, NormError> {
        Self::new(vec![point])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        self.points.iter().any(|p| same_point(p, point))
    }

    /// `A = -A`.
    pub fn is_symmetric(&self) -> bool {
        self.points
            .iter()
            .all(|p| self.contains(&p.iter().map(|x| -x).collect::<Vec<_>>()))
    }

    fn check_dim(&self, other: &Self) -> Result<(), NormError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(NormError::DimensionMismatch {
                expected: self.dim,
                found: Some(other.dim),
            })
        }
    }
}

/// `A + B = {a + b : a in A, b in B}`.
pub fn minkowski_sum(a: &FinitePointSet, b: &FinitePointSet) -> Result<FinitePointSet, NormError> {
    a.check_dim(b)?;
    let sums = a
        .points
        .iter()
        .flat_map(|p| {
            b.points
                .iter()
                .map(move |q| p.iter().zip(q).map(|(x, y)| x + y).collect())
        })
        .collect();
    Ok(FinitePointSet::canonical(a.dim, sums))
}

/// `alpha A = {alpha a : a in A}`; `0 A = {0}`.
pub fn set_scale(alpha: f64, a: &FinitePointSet) -> FinitePointSet {
    let scaled = a
        .points
        .iter()
        .map(|p| p.iter().map(|x| alpha * x).collect())
        .collect();
    FinitePointSet::canonical(a.dim, scaled)
}

/// `A <= B` iff `A` is a subset of `B`; a refutation names a point of `A`
/// missing from `B`.
pub fn subset_leq(a: &FinitePointSet, b: &FinitePointSet) -> Result<Ternary<DenseVec>, NormError> {
    a.check_dim(b)?;
    Ok(match a.points.iter().find(|p| !b.contains(p)) {
        None => Ternary::CertifiedTrue,
        Some(p) => Ternary::Refuted(DenseVec::new(p.clone())?),
    })
}

impl fmt::Display for FinitePointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in p.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("}")
    }
}

impl FromStr for FinitePointSet {
    type Err = NormError;

    /// `{[0,0],[1,0]}`.
    fn from_str(s: &str) -> Result<Self, NormError> {
        let mut cur = Cursor::new(s);
        cur.expect('{')?;
        let mut points = vec![cur.dense()?.into_coords()];
        while cur.eat(',') {
            points.push(cur.dense()?.into_coords());
        }
        cur.expect('}')?;
        cur.finish()?;
        Self::new(points).map_err(|e| match e {
            NormError::Parse { .. } => e,
            other => cur.error(other.to_string()),
        })
    }
}

/// The hyperspace evs of nonempty finite subsets of `R^d` with Minkowski
/// sum, pointwise scaling and inclusion.
#[derive(Debug, Clone)]
pub struct HyperspaceInstance {
    dim: usize,
    symmetric: bool,
}

impl HyperspaceInstance {
    pub fn new(dim: usize) -> Result<Self, NormError> {
        if dim == 0 {
            return Err(NormError::EmptyVector);
        }
        Ok(Self {
            dim,
            symmetric: false,
        })
    }

    /// Restricts the sampler to sets that are symmetric about the origin and
    /// contain it.
    pub fn symmetric(dim: usize) -> Result<Self, NormError> {
        Ok(Self {
            symmetric: true,
            ..Self::new(dim)?
        })
    }

    fn grid_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..self.dim)
            .map(|_| f64::from(rng.random_range(-4i32..=4)) / 2.0)
            .collect()
    }

    fn symmetrize(&self, points: Vec<Vec<f64>>) -> FinitePointSet {
        let mut all = vec![vec![0.0; self.dim]];
        for p in points {
            all.push(p.iter().map(|x| -x).collect());
            all.push(p);
        }
        FinitePointSet::canonical(self.dim, all)
    }
}

impl EvsInstance for HyperspaceInstance {
    type Element = FinitePointSet;
    type Witness = DenseVec;

    fn carrier_id(&self) -> String {
        if self.symmetric {
            format!("hyperspace:{}:symmetric", self.dim)
        } else {
            format!("hyperspace:{}", self.dim)
        }
    }

    fn zero(&self) -> FinitePointSet {
        FinitePointSet::origin(self.dim)
    }

    fn add(&self, x: &FinitePointSet, y: &FinitePointSet) -> FinitePointSet {
        minkowski_sum(x, y).expect("sampled sets share a dimension")
    }

    fn smul(&self, alpha: f64, x: &FinitePointSet) -> FinitePointSet {
        set_scale(alpha, x)
    }

    fn leq(&self, x: &FinitePointSet, y: &FinitePointSet) -> Result<Ternary<DenseVec>, EvsError> {
        Ok(subset_leq(x, y).expect("sampled sets share a dimension"))
    }

    fn equal(&self, x: &FinitePointSet, y: &FinitePointSet) -> Result<bool, EvsError> {
        Ok(x.len() == y.len() && x.points.iter().all(|p| y.contains(p)))
    }

    /// Singletons.
    fn is_primitive(&self, x: &FinitePointSet) -> bool {
        x.len() == 1
    }

    /// Groups of three: a singleton `{p}`, a set containing `p`, and a
    /// superset of that set, all on the half-integer grid. The symmetric
    /// variant emits `{0}` and symmetrized sets instead.
    fn sample(&self, seed: u64, count: usize) -> Vec<FinitePointSet> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = vec![self.zero()];
        while out.len() < count {
            if self.symmetric {
                let k = rng.random_range(1..=3);
                let pts = (0..k).map(|_| self.grid_point(&mut rng)).collect();
                out.push(self.symmetrize(pts));
                continue;
            }
            let p = self.grid_point(&mut rng);
            let mut set = vec![p.clone()];
            out.push(FinitePointSet::canonical(self.dim, set.clone()));
            for _ in 0..rng.random_range(1..=2) {
                set.push(self.grid_point(&mut rng));
            }
            out.push(FinitePointSet::canonical(self.dim, set.clone()));
            set.push(self.grid_point(&mut rng));
            out.push(FinitePointSet::canonical(self.dim, set));
        }
        out.truncate(count);
        out
    }

    fn render(&self, x: &FinitePointSet) -> String {
        x.to_string()
    }
}
