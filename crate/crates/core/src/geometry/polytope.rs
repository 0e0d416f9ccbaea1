use serde::{Deserialize, Serialize};

use super::lp::{LpResult, StandardForm};
use crate::error::{check_dim, Error, Result};
use crate::vector::Vector;

/// A polytope in V-representation: the convex hull of finitely many points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vector>", into = "Vec<Vector>")]
pub struct Polytope {
    vertices: Vec<Vector>,
}

impl Polytope {
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        let first = vertices.first().ok_or(Error::Empty("polytope vertex list"))?;
        let d = first.dim();
        for v in &vertices {
            check_dim(d, v.dim())?;
        }
        Ok(Polytope { vertices })
    }

    pub fn point(p: Vector) -> Self {
        Polytope { vertices: vec![p] }
    }

    /// The box `∏ [lo_i, hi_i]` listed by its `2^d` corners.
    pub fn cuboid(lo: &[f64], hi: &[f64]) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        let d = lo.len();
        let corners = (0..1usize << d)
            .map(|mask| {
                Vector::new(
                    (0..d)
                        .map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] })
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Polytope::new(corners)
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn centroid(&self) -> Vector {
        Vector::mean(&self.vertices).expect("polytope is nonempty")
    }

    /// `σ_P(x) = max_v ⟨x, v⟩`, exact for polytopes.
    pub fn support_value(&self, x: &Vector) -> Result<f64> {
        check_dim(self.dim(), x.dim())?;
        Ok(self
            .vertices
            .iter()
            .map(|v| v.dot(x))
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// Indices of the vertices within `tol` of the support value in direction `x`.
    pub fn support_face(&self, x: &Vector, tol: f64) -> Result<Vec<usize>> {
        let s = self.support_value(x)?;
        Ok(self
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.dot(x) >= s - tol)
            .map(|(i, _)| i)
            .collect())
    }

    pub fn translate(&self, shift: &Vector) -> Polytope {
        Polytope {
            vertices: self.vertices.iter().map(|v| v.add(shift)).collect(),
        }
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        Ok(convex_conic_combination(&self.vertices, &[], x, None, tol)?.is_optimal())
    }
}

impl TryFrom<Vec<Vector>> for Polytope {
    type Error = Error;
    fn try_from(v: Vec<Vector>) -> Result<Self> {
        Polytope::new(v)
    }
}

impl From<Polytope> for Vec<Vector> {
    fn from(p: Polytope) -> Self {
        p.vertices
    }
}

/// Finds `λ` in the simplex over `points` and `μ ≥ 0` over `generators` with
/// `Σ λ_i p_i + Σ μ_j g_j = target`, minimising `Σ λ_i cost_i` when a cost is given.
///
/// The certificate lists `λ` followed by `μ`. When `points` is empty only the
/// conic part is used (no simplex row).
pub fn convex_conic_combination(
    points: &[Vector],
    generators: &[Vector],
    target: &Vector,
    point_cost: Option<&[f64]>,
    tol: f64,
) -> Result<LpResult> {
    let d = target.dim();
    for v in points.iter().chain(generators) {
        check_dim(d, v.dim())?;
    }
    let np = points.len();
    let nvars = np + generators.len();
    let mut lp = StandardForm::new(nvars);
    if let Some(c) = point_cost {
        check_dim(np, c.len())?;
        lp.cost[..np].copy_from_slice(c);
    }
    for k in 0..d {
        let row = points
            .iter()
            .chain(generators)
            .map(|v| v[k])
            .collect::<Vec<_>>();
        lp.push_row(row, target[k]);
    }
    if np > 0 {
        let mut row = vec![0.0; nvars];
        row[..np].iter_mut().for_each(|r| *r = 1.0);
        lp.push_row(row, 1.0);
    }
    lp.solve(tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_values() {
        let sq = Polytope::cuboid(&[-1.0, -1.0], &[1.0, 1.0]).unwrap();
        assert_eq!(sq.support_value(&Vector::from([1.0, 0.0])).unwrap(), 1.0);
        let p = Polytope::point(Vector::from([2.0, 3.0]));
        assert_eq!(p.support_value(&Vector::from([1.0, 1.0])).unwrap(), 5.0);
        let seg = Polytope::new(vec![Vector::from([-1.0, 0.0]), Vector::from([1.0, 0.0])]).unwrap();
        assert_eq!(seg.support_value(&Vector::from([0.5, 7.0])).unwrap(), 0.5);
    }

    #[test]
    fn dimension_errors() {
        let seg = Polytope::new(vec![Vector::from([-1.0, 0.0]), Vector::from([1.0, 0.0])]).unwrap();
        assert!(seg.support_value(&Vector::from([1.0])).is_err());
        assert!(Polytope::new(vec![Vector::from([1.0]), Vector::from([1.0, 2.0])]).is_err());
        assert!(Polytope::new(vec![]).is_err());
    }

    #[test]
    fn membership() {
        let sq = Polytope::cuboid(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert!(sq.contains(&Vector::from([0.3, 0.9]), 1e-9).unwrap());
        assert!(!sq.contains(&Vector::from([1.1, 0.5]), 1e-9).unwrap());
    }
}
