use std::collections::BTreeMap;
use std::fmt;

use super::NormError;

/// Read access to the coordinates of a point, with 0-based indices.
pub trait Coordinates {
    /// Fixed dimension, or `None` for finitely supported sequences.
    fn dim(&self) -> Option<usize>;

    /// Largest index (0-based) carrying a nonzero value, plus one.
    fn support_end(&self) -> usize;

    /// Calls `f(index, value)` for every stored coordinate.
    fn for_each<F: FnMut(usize, f64)>(&self, f: F);
}

impl Coordinates for [f64] {
    fn dim(&self) -> Option<usize> {
        Some(self.len())
    }

    fn support_end(&self) -> usize {
        self.len()
    }

    fn for_each<F: FnMut(usize, f64)>(&self, mut f: F) {
        for (i, &v) in self.iter().enumerate() {
            f(i, v);
        }
    }
}

/// A point of `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVec {
    coords: Vec<f64>,
}

impl DenseVec {
    pub fn new(coords: Vec<f64>) -> Result<Self, NormError> {
        if coords.is_empty() {
            return Err(NormError::EmptyVector);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(NormError::NonFinite);
        }
        Ok(Self { coords })
    }

    /// Standard basis vector `e_{index+1}` of `R^dim`.
    pub fn unit(index: usize, dim: usize) -> Self {
        let mut coords = vec![0.0; dim];
        coords[index] = 1.0;
        Self { coords }
    }

    pub fn ones(dim: usize) -> Self {
        Self {
            coords: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn euclidean_norm(&self) -> f64 {
        euclidean_norm(&self.coords)
    }

    /// Rescaled onto the euclidean unit sphere (the zero vector is returned
    /// unchanged).
    pub fn normalized(&self) -> Self {
        let mut coords = self.coords.clone();
        project_to_sphere(&mut coords);
        Self { coords }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * lambda).collect(),
        }
    }
}

impl Coordinates for DenseVec {
    fn dim(&self) -> Option<usize> {
        Some(self.coords.len())
    }

    fn support_end(&self) -> usize {
        self.coords.len()
    }

    fn for_each<F: FnMut(usize, f64)>(&self, f: F) {
        self.coords.as_slice().for_each(f)
    }
}

impl fmt::Display for DenseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// A finitely supported sequence (an element of `c00`).
///
/// Indices are 1-based as in `e_1, e_2, ...`; zero values are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVec {
    entries: BTreeMap<usize, f64>,
}

impl SparseVec {
    pub fn new<I: IntoIterator<Item = (usize, f64)>>(entries: I) -> Result<Self, NormError> {
        let mut map = BTreeMap::new();
        for (index, value) in entries {
            if index == 0 {
                return Err(NormError::InvalidIndex);
            }
            if !value.is_finite() {
                return Err(NormError::NonFinite);
            }
            if value != 0.0 {
                map.insert(index, value);
            } else {
                map.remove(&index);
            }
        }
        Ok(Self { entries: map })
    }

    /// `c_1 e_1 + ... + c_n e_n` for a dense coefficient list.
    pub fn from_coords(coords: &[f64]) -> Result<Self, NormError> {
        Self::new(coords.iter().enumerate().map(|(i, &c)| (i + 1, c)))
    }

    pub fn entries(&self) -> &BTreeMap<usize, f64> {
        &self.entries
    }

    pub fn get(&self, index: usize) -> f64 {
        self.entries.get(&index).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of nonzero entries.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Dense coordinates `(x_1, ..., x_len)`.
    pub fn to_dense(&self, len: usize) -> Vec<f64> {
        let mut out = vec![0.0; len];
        for (&i, &v) in &self.entries {
            if i <= len {
                out[i - 1] = v;
            }
        }
        out
    }
}

impl Coordinates for SparseVec {
    fn dim(&self) -> Option<usize> {
        None
    }

    fn support_end(&self) -> usize {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    fn for_each<F: FnMut(usize, f64)>(&self, mut f: F) {
        for (&i, &v) in &self.entries {
            f(i - 1, v);
        }
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}:{v}")?;
        }
        f.write_str("}")
    }
}

/// A point of either carrier space.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Dense(DenseVec),
    Sparse(SparseVec),
}

impl Coordinates for Point {
    fn dim(&self) -> Option<usize> {
        match self {
            Point::Dense(v) => Coordinates::dim(v),
            Point::Sparse(v) => v.dim(),
        }
    }

    fn support_end(&self) -> usize {
        match self {
            Point::Dense(v) => v.support_end(),
            Point::Sparse(v) => v.support_end(),
        }
    }

    fn for_each<F: FnMut(usize, f64)>(&self, f: F) {
        match self {
            Point::Dense(v) => v.for_each(f),
            Point::Sparse(v) => v.for_each(f),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Dense(v) => v.fmt(f),
            Point::Sparse(v) => v.fmt(f),
        }
    }
}

impl From<DenseVec> for Point {
    fn from(v: DenseVec) -> Self {
        Point::Dense(v)
    }
}

impl From<SparseVec> for Point {
    fn from(v: SparseVec) -> Self {
        Point::Sparse(v)
    }
}

pub(crate) fn euclidean_norm(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn project_to_sphere(xs: &mut [f64]) {
    let n = euclidean_norm(xs);
    if n > 0.0 {
        for x in xs.iter_mut() {
            *x /= n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_drops_zeros() {
        let v = SparseVec::new([(1, 1.0), (3, 0.0), (2, 2.0)]).unwrap();
        assert_eq!(v.support_len(), 2);
        assert_eq!(v.to_string(), "{1:1, 2:2}");
        assert_eq!(v.support_end(), 2);
    }

    #[test]
    fn sparse_rejects_index_zero() {
        assert_eq!(SparseVec::new([(0, 1.0)]), Err(NormError::InvalidIndex));
    }

    #[test]
    fn dense_literal() {
        let v = DenseVec::new(vec![1.0, -2.5, 0.0]).unwrap();
        assert_eq!(v.to_string(), "[1,-2.5,0]");
        assert!(DenseVec::new(vec![]).is_err());
        assert!(DenseVec::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn normalized_is_unit() {
        let v = DenseVec::new(vec![3.0, 4.0]).unwrap().normalized();
        assert!((v.euclidean_norm() - 1.0).abs() < 1e-15);
        assert_eq!(v.coords(), &[0.6, 0.8]);
    }
}
