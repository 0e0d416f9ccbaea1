use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::graph::{DualPair, OperatorGraph};
use crate::error::{check_dim, Error, Result};
use crate::vector::Vector;

/// A square real matrix acting on column vectors; serialized as a list of rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct LinearOperator {
    rows: Vec<Vec<f64>>,
}

impl TryFrom<Vec<Vec<f64>>> for LinearOperator {
    type Error = Error;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        LinearOperator::new(rows)
    }
}

impl From<LinearOperator> for Vec<Vec<f64>> {
    fn from(m: LinearOperator) -> Self {
        m.rows
    }
}

impl LinearOperator {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::Empty("matrix rows"));
        }
        for r in &rows {
            if r.len() != d {
                return Err(Error::invalid(format!(
                    "matrix must be square: {d} rows but a row of length {}",
                    r.len()
                )));
            }
            if r.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid("matrix entries must be finite"));
            }
        }
        Ok(LinearOperator { rows })
    }

    pub fn identity(d: usize) -> Self {
        let rows = (0..d)
            .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        LinearOperator { rows }
    }

    /// Counter-clockwise rotation of the plane by `theta`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        LinearOperator {
            rows: vec![vec![c, -s], vec![s, c]],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim(), x.dim())?;
        Vector::new(
            self.rows
                .iter()
                .map(|r| r.iter().zip(x.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Smallest eigenvalue of the symmetric part `(M + Mᵀ)/2`.
    pub fn min_symmetric_eigenvalue(&self) -> f64 {
        let d = self.dim();
        let m = DMatrix::from_fn(d, d, |i, j| 0.5 * (self.rows[i][j] + self.rows[j][i]));
        m.symmetric_eigenvalues().min()
    }

    /// `M + Mᵀ ⪰ 0` up to `tol`.
    pub fn is_monotone(&self, tol: f64) -> bool {
        self.min_symmetric_eigenvalue() >= -tol
    }
}

/// `‖M + Mᵀ‖_max ≤ tol`.
pub fn is_skew(m: &LinearOperator, tol: f64) -> bool {
    let d = m.dim();
    (0..d).all(|i| (0..d).all(|j| (m.entry(i, j) + m.entry(j, i)).abs() <= tol))
}

/// The graph `{(p, Mp)}` over `points`.
pub fn linear_graph(m: &LinearOperator, points: &[Vector]) -> Result<OperatorGraph> {
    let pairs = points
        .iter()
        .map(|p| DualPair::new(p.clone(), m.apply(p)?))
        .collect::<Result<Vec<_>>>()?;
    OperatorGraph::new("linear", pairs)
}

/// `k` points `(cos 2πi/k, sin 2πi/k)` on the unit circle.
pub fn circle_points(k: usize) -> Vec<Vector> {
    (0..k)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / k as f64;
            Vector::from([t.cos(), t.sin()])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn close(a: &Vector, b: &Vector) -> bool {
        a.sub(b).norm_inf() < 1e-12
    }

    #[test]
    fn graph_examples() {
        let g = linear_graph(&LinearOperator::identity(2), &[Vector::from([1.0, 0.0])]).unwrap();
        assert_eq!(g.pairs()[0].xstar, Vector::from([1.0, 0.0]));
        let g = linear_graph(&LinearOperator::rotation(FRAC_PI_2), &[Vector::from([1.0, 0.0])]).unwrap();
        assert!(close(&g.pairs()[0].xstar, &Vector::from([0.0, 1.0])));
        let s = LinearOperator::new(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let g = linear_graph(&s, &[Vector::from([0.0, 1.0])]).unwrap();
        assert_eq!(g.pairs()[0].xstar, Vector::from([-1.0, 0.0]));
    }

    #[test]
    fn skewness() {
        let s = LinearOperator::new(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert!(is_skew(&s, 1e-12));
        assert!(!is_skew(&LinearOperator::identity(2), 1e-12));
        assert!(!is_skew(&LinearOperator::rotation(FRAC_PI_3), 1e-9));
        assert!(is_skew(&LinearOperator::rotation(FRAC_PI_2), 1e-12));
    }

    #[test]
    fn monotone_by_eigenvalues() {
        assert!(LinearOperator::rotation(1.0).is_monotone(1e-12));
        assert!(!LinearOperator::rotation(2.0).is_monotone(1e-12));
        let m = LinearOperator::new(vec![vec![1.0, 4.0], vec![0.0, 1.0]]).unwrap();
        assert!((m.min_symmetric_eigenvalue() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn shape_validation() {
        assert!(LinearOperator::new(vec![vec![1.0, 2.0]]).is_err());
        assert!(LinearOperator::new(vec![]).is_err());
        assert!(serde_json::from_str::<LinearOperator>("[[0,-1],[1,0]]").is_ok());
    }
}
