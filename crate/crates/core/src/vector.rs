//! Points of `E = ℝ^d` (and of its dual, identified with `ℝ^d`).

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// A finite point in `ℝ^d`, `d ≥ 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("vector must have dimension at least 1"));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::invalid(format!("vector entry {bad} is not finite")));
        }
        Ok(Vector(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim.max(1)])
    }

    /// The `i`-th standard basis vector scaled by `scale`.
    pub fn unit(dim: usize, i: usize, scale: f64) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = scale;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Dimension-checked inner product.
    pub fn try_dot(&self, other: &Vector) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.dot(other))
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|a| a * s).collect())
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn norm2(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Arithmetic mean of a nonempty list of equal-dimension vectors.
    pub fn mean(points: &[Vector]) -> Option<Vector> {
        let first = points.first()?;
        let mut acc = vec![0.0; first.dim()];
        for p in points {
            for (a, c) in acc.iter_mut().zip(&p.0) {
                *a += c;
            }
        }
        let n = points.len() as f64;
        Some(Vector(acc.into_iter().map(|a| a / n).collect()))
    }

    /// Concatenates two vectors, `(x, x*)` → a point of `E × E*`.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Vector(v)
    }

    pub fn split_at(&self, mid: usize) -> (Vector, Vector) {
        let (a, b) = self.0.split_at(mid);
        (Vector(a.to_vec()), Vector(b.to_vec()))
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Vector::new(v)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl<const N: usize> From<[f64; N]> for Vector {
    /// Literal constructor for tests and fixtures; panics on non-finite entries.
    fn from(a: [f64; N]) -> Self {
        Vector::new(a.to_vec()).expect("vector literal must be finite and nonempty")
    }
}

impl From<f64> for Vector {
    fn from(a: f64) -> Self {
        Vector::from([a])
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_nonfinite() {
        assert!(Vector::new(vec![]).is_err());
        assert!(Vector::new(vec![1.0, f64::NAN]).is_err());
        assert!(serde_json::from_str::<Vector>("[]").is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Vector::from([1.0, 2.0]);
        let b = Vector::from([3.0, -1.0]);
        assert_eq!(a.dot(&b), 1.0);
        assert_eq!(a.axpy(2.0, &b), Vector::from([7.0, 0.0]));
        assert_eq!(a.concat(&b).split_at(2), (a.clone(), b.clone()));
        assert!(a.try_dot(&Vector::from([1.0])).is_err());
    }
}
