use serde::{Deserialize, Serialize};

use super::lp::{LpStatus, StandardForm};
use super::polytope::{convex_conic_combination, Polytope};
use crate::error::{check_dim, Result};
use crate::extended::Extended;
use crate::vector::Vector;

/// The cone of nonnegative combinations of finitely many generators.
/// An empty generator list is the trivial cone `{0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyhedralCone {
    dim: usize,
    generators: Vec<Vector>,
}

impl PolyhedralCone {
    pub fn new(dim: usize, generators: Vec<Vector>) -> Result<Self> {
        for g in &generators {
            check_dim(dim, g.dim())?;
        }
        Ok(PolyhedralCone { dim, generators })
    }

    pub fn zero(dim: usize) -> Self {
        PolyhedralCone {
            dim,
            generators: Vec::new(),
        }
    }

    pub fn orthant(dim: usize) -> Self {
        PolyhedralCone {
            dim,
            generators: (0..dim).map(|i| Vector::unit(dim, i, 1.0)).collect(),
        }
    }

    /// The whole space, generated by `±e_i`.
    pub fn whole_space(dim: usize) -> Self {
        let mut generators = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            generators.push(Vector::unit(dim, i, 1.0));
            generators.push(Vector::unit(dim, i, -1.0));
        }
        PolyhedralCone { dim, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.norm_inf() == 0.0)
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        if self.generators.is_empty() {
            return Ok(x.norm_inf() <= tol);
        }
        Ok(convex_conic_combination(&[], &self.generators, x, None, tol)?.is_optimal())
    }

    /// `σ_C(x) = sup_{c ∈ C} ⟨x, c⟩`, computed by the generator LP
    /// `max Σ μ_j ⟨x, g_j⟩, μ ≥ 0`: zero when bounded, `+∞` otherwise.
    pub fn support_value(&self, x: &Vector) -> Result<Extended> {
        check_dim(self.dim, x.dim())?;
        let mut lp = StandardForm::new(self.generators.len());
        for (c, g) in lp.cost.iter_mut().zip(&self.generators) {
            *c = -g.dot(x);
        }
        let r = lp.solve(0.0)?;
        Ok(match r.status {
            LpStatus::Unbounded => Extended::PosInf,
            _ => Extended::Finite(-r.value),
        })
    }

    pub fn polar(&self) -> PolarCone {
        polar_cone(self)
    }
}

/// A cone in H-representation `{x : ⟨x, n_j⟩ ≤ 0 ∀ j}`; the empty list is the whole space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarCone {
    dim: usize,
    normals: Vec<Vector>,
}

impl PolarCone {
    pub fn new(dim: usize, normals: Vec<Vector>) -> Result<Self> {
        for n in &normals {
            check_dim(dim, n.dim())?;
        }
        Ok(PolarCone { dim, normals })
    }

    /// The polar of `cone(generators)`.
    pub fn of_generators(dim: usize, generators: Vec<Vector>) -> Result<Self> {
        Self::new(dim, generators)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    pub fn is_whole_space(&self) -> bool {
        self.normals.iter().all(|n| n.norm_inf() == 0.0)
    }

    /// Largest constraint value `max_j ⟨x, n_j⟩` (`-inf` for the whole space).
    pub fn violation(&self, x: &Vector) -> f64 {
        self.normals
            .iter()
            .map(|n| n.dot(x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(self.violation(x) <= tol)
    }

    /// `σ_{C°} = i_C`: the indicator of the cone generated by the normals.
    pub fn support_value(&self, x: &Vector, tol: f64) -> Result<Extended> {
        let c = PolyhedralCone::new(self.dim, self.normals.clone())?;
        Ok(if c.contains(x, tol)? {
            Extended::ZERO
        } else {
            Extended::PosInf
        })
    }
}

/// `C° = {x : ⟨x, g⟩ ≤ 0 for every generator g}`.
pub fn polar_cone(c: &PolyhedralCone) -> PolarCone {
    PolarCone {
        dim: c.dim,
        normals: c.generators.clone(),
    }
}

/// Decides `x ∈ K + C` by LP feasibility with L1 residual at most `tol`.
/// `K + C` is closed for polyhedral data, so this is also membership in the closure.
pub fn minkowski_membership(
    k: &Polytope,
    c: &PolyhedralCone,
    x: &Vector,
    tol: f64,
) -> Result<bool> {
    check_dim(k.dim(), c.dim())?;
    check_dim(k.dim(), x.dim())?;
    Ok(convex_conic_combination(k.vertices(), c.generators(), x, None, tol)?.is_optimal())
}

/// Decides `x ∈ P + Q°` for a polytope `P` and an H-cone `Q°`.
///
/// Variables: `λ` in the simplex over vertices of `P`, `w = w⁺ − w⁻` free, slacks `s_j`
/// with `⟨w, n_j⟩ + s_j = 0`.
pub fn polytope_plus_polar_membership(
    p: &Polytope,
    q: &PolarCone,
    x: &Vector,
    tol: f64,
) -> Result<bool> {
    let d = p.dim();
    check_dim(d, q.dim())?;
    check_dim(d, x.dim())?;
    if q.is_whole_space() {
        return Ok(true);
    }
    let nv = p.vertices().len();
    let nj = q.normals().len();
    let nvars = nv + 2 * d + nj;
    let mut lp = StandardForm::new(nvars);
    for k in 0..d {
        let mut row = vec![0.0; nvars];
        for (i, v) in p.vertices().iter().enumerate() {
            row[i] = v[k];
        }
        row[nv + k] = 1.0;
        row[nv + d + k] = -1.0;
        lp.push_row(row, x[k]);
    }
    let mut simplex = vec![0.0; nvars];
    simplex[..nv].iter_mut().for_each(|r| *r = 1.0);
    lp.push_row(simplex, 1.0);
    for (j, n) in q.normals().iter().enumerate() {
        let mut row = vec![0.0; nvars];
        for k in 0..d {
            row[nv + k] = n[k];
            row[nv + d + k] = -n[k];
        }
        row[nv + 2 * d + j] = 1.0;
        lp.push_row(row, 0.0);
    }
    Ok(lp.solve(tol)?.is_optimal())
}

/// `|⟨v, k − k'⟩| ≤ tol` for all vertices `v` of `V` and `k, k'` of `K`.
/// Vertex checks suffice because the pairing is bilinear.
pub fn orthogonality_check(v: &Polytope, k: &Polytope, tol: f64) -> Result<bool> {
    check_dim(v.dim(), k.dim())?;
    let base = &k.vertices()[0];
    for kv in k.vertices() {
        let diff = kv.sub(base);
        for vv in v.vertices() {
            if vv.dot(&diff).abs() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: [f64; 2], b: [f64; 2]) -> Polytope {
        Polytope::new(vec![Vector::from(a), Vector::from(b)]).unwrap()
    }

    #[test]
    fn minkowski_examples() {
        let k = seg([0.0, 0.0], [1.0, 0.0]);
        let c = PolyhedralCone::new(2, vec![Vector::from([0.0, 1.0])]).unwrap();
        assert!(minkowski_membership(&k, &c, &Vector::from([0.5, 2.0]), 1e-9).unwrap());
        assert!(!minkowski_membership(&k, &c, &Vector::from([2.0, 0.0]), 1e-9).unwrap());
        let origin = Polytope::point(Vector::from([0.0, 0.0]));
        let diag = PolyhedralCone::new(2, vec![Vector::from([1.0, 1.0])]).unwrap();
        assert!(minkowski_membership(&origin, &diag, &Vector::from([3.0, 3.0]), 1e-9).unwrap());
        assert!(minkowski_membership(&k, &c, &Vector::from([0.5]), 1e-9).is_err());
    }

    #[test]
    fn polar_examples() {
        let p = polar_cone(&PolyhedralCone::orthant(2));
        assert!(p.contains(&Vector::from([-1.0, -3.0]), 1e-9).unwrap());
        assert!(!p.contains(&Vector::from([0.1, -3.0]), 1e-9).unwrap());
        let whole = polar_cone(&PolyhedralCone::zero(2));
        assert!(whole.is_whole_space());
        assert!(whole.contains(&Vector::from([5.0, 5.0]), 0.0).unwrap());
        // cone{(1,1)}° is the halfplane x1 + x2 ≤ 0, verified against σ_C on samples.
        let c = PolyhedralCone::new(2, vec![Vector::from([1.0, 1.0])]).unwrap();
        let pc = polar_cone(&c);
        for i in -4..=4 {
            for j in -4..=4 {
                let x = Vector::from([i as f64 * 0.5, j as f64 * 0.5]);
                let half_plane = x[0] + x[1] <= 0.0;
                assert_eq!(pc.contains(&x, 1e-12).unwrap(), half_plane);
                let sigma = c.support_value(&x).unwrap();
                assert_eq!(sigma.is_finite(), half_plane, "at {x}");
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        let k = seg([0.0, 0.0], [1.0, 0.0]);
        assert!(orthogonality_check(&seg([0.0, -1.0], [0.0, 1.0]), &k, 1e-9).unwrap());
        assert!(!orthogonality_check(&seg([-1.0, 0.0], [1.0, 0.0]), &k, 1e-9).unwrap());
        // K − K spans (1, −1), V lies on the (1, 1) diagonal.
        let v = seg([2.0, 2.0], [-2.0, -2.0]);
        let k = seg([1.5, -0.5], [2.5, -1.5]);
        assert!(orthogonality_check(&v, &k, 1e-9).unwrap());
    }

    #[test]
    fn polytope_plus_polar() {
        // V + C° for V = {0}×[−1,1], C = cone{(0,1)}: ℝ × (−∞, 1].
        let v = seg([0.0, -1.0], [0.0, 1.0]);
        let polar = polar_cone(&PolyhedralCone::new(2, vec![Vector::from([0.0, 1.0])]).unwrap());
        assert!(polytope_plus_polar_membership(&v, &polar, &Vector::from([7.0, 1.0]), 1e-9).unwrap());
        assert!(polytope_plus_polar_membership(&v, &polar, &Vector::from([-3.0, -9.0]), 1e-9).unwrap());
        assert!(!polytope_plus_polar_membership(&v, &polar, &Vector::from([0.0, 1.01]), 1e-9).unwrap());
    }
}
