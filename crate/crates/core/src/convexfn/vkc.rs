//! The support-plus-indicator family
//! `f(x) = σ_V(x − x̂) + i_{K+C}(x) + ⟨x, x̄*⟩ + c` with `0 ∈ V ⊥ K − K`.
//!
//! Subdifferentials of these functions have a singleton Fitzpatrick family.
//! For polytopes `K`, `V` and a polyhedral cone `C` the conjugate is
//! `f*(s) = σ_K(s − x̄*) + i_{V + C°}(s − x̄*) − c`.

use serde::{Deserialize, Serialize};

use super::function::{ConvexFunction, Subdifferential};
use crate::error::{check_dim, Error, Result};
use crate::extended::Extended;
use crate::geometry::{
    minkowski_membership, orthogonality_check, polytope_plus_polar_membership, PolarCone,
    PolyhedralCone, Polytope,
};
use crate::vector::Vector;
use crate::DEFAULT_TOL;

/// Structural data `(K, V, C, x̂, x̄*, c)`; validated on construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VkcJson", into = "VkcJson")]
pub struct VkcSpec {
    k: Polytope,
    v: Polytope,
    cone: PolyhedralCone,
    xhat: Vector,
    xbar_star: Vector,
    c: f64,
}

/// Wire format: `{"K": [[..]], "V": [[..]], "C": [[..]], "xhat": [..], "xbar_star": [..], "c": x}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VkcJson {
    #[serde(rename = "K")]
    pub k: Vec<Vector>,
    #[serde(rename = "V")]
    pub v: Vec<Vector>,
    #[serde(rename = "C", default)]
    pub cone: Vec<Vector>,
    pub xhat: Option<Vector>,
    pub xbar_star: Option<Vector>,
    #[serde(default)]
    pub c: f64,
}

impl TryFrom<VkcJson> for VkcSpec {
    type Error = Error;
    fn try_from(j: VkcJson) -> Result<Self> {
        let k = Polytope::new(j.k)?;
        let d = k.dim();
        let xhat = j.xhat.unwrap_or_else(|| k.vertices()[0].clone());
        let xbar_star = j.xbar_star.unwrap_or_else(|| Vector::zeros(d));
        VkcSpec::new(
            k,
            Polytope::new(j.v)?,
            PolyhedralCone::new(d, j.cone)?,
            xhat,
            xbar_star,
            j.c,
        )
    }
}

impl From<VkcSpec> for VkcJson {
    fn from(s: VkcSpec) -> Self {
        VkcJson {
            k: s.k.vertices().to_vec(),
            v: s.v.vertices().to_vec(),
            cone: s.cone.generators().to_vec(),
            xhat: Some(s.xhat),
            xbar_star: Some(s.xbar_star),
            c: s.c,
        }
    }
}

impl VkcSpec {
    /// Validates `0 ∈ V`, `V ⊥ K − K` and `x̂ ∈ K` at [`DEFAULT_TOL`].
    pub fn new(
        k: Polytope,
        v: Polytope,
        cone: PolyhedralCone,
        xhat: Vector,
        xbar_star: Vector,
        c: f64,
    ) -> Result<Self> {
        let d = k.dim();
        check_dim(d, v.dim())?;
        check_dim(d, cone.dim())?;
        check_dim(d, xhat.dim())?;
        check_dim(d, xbar_star.dim())?;
        if !c.is_finite() {
            return Err(Error::invalid("additive constant c must be finite"));
        }
        if !v.contains(&Vector::zeros(d), DEFAULT_TOL)? {
            return Err(Error::invalid("V must contain the origin"));
        }
        if !orthogonality_check(&v, &k, DEFAULT_TOL)? {
            return Err(Error::invalid("V must be orthogonal to K − K"));
        }
        if !k.contains(&xhat, DEFAULT_TOL)? {
            return Err(Error::invalid("xhat must lie in K"));
        }
        Ok(VkcSpec {
            k,
            v,
            cone,
            xhat,
            xbar_star,
            c,
        })
    }

    /// Untilted spec with `x̂` the first vertex of `K`.
    pub fn untilted(k: Polytope, v: Polytope, cone: PolyhedralCone) -> Result<Self> {
        let d = k.dim();
        let xhat = k.vertices()[0].clone();
        VkcSpec::new(k, v, cone, xhat, Vector::zeros(d), 0.0)
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    pub fn k(&self) -> &Polytope {
        &self.k
    }

    pub fn v(&self) -> &Polytope {
        &self.v
    }

    pub fn cone(&self) -> &PolyhedralCone {
        &self.cone
    }

    pub fn xhat(&self) -> &Vector {
        &self.xhat
    }

    pub fn xbar_star(&self) -> &Vector {
        &self.xbar_star
    }

    pub fn constant(&self) -> f64 {
        self.c
    }

    /// Same function with a different base point of `K`.
    pub fn with_xhat(&self, xhat: Vector) -> Result<Self> {
        VkcSpec::new(
            self.k.clone(),
            self.v.clone(),
            self.cone.clone(),
            xhat,
            self.xbar_star.clone(),
            self.c,
        )
    }

    pub fn with_tilt(&self, xbar_star: Vector, c: f64) -> Result<Self> {
        VkcSpec::new(
            self.k.clone(),
            self.v.clone(),
            self.cone.clone(),
            self.xhat.clone(),
            xbar_star,
            c,
        )
    }

    /// `C°`.
    pub fn polar(&self) -> PolarCone {
        self.cone.polar()
    }

    /// Minimum of the untilted function (attained on `K`).
    pub fn min_value(&self) -> f64 {
        0.0
    }

    pub fn in_domain(&self, x: &Vector, tol: f64) -> Result<bool> {
        minkowski_membership(&self.k, &self.cone, x, tol)
    }

    /// Domain membership is checked first, so `+∞` short-circuits the support term.
    pub fn eval(&self, x: &Vector, tol: f64) -> Result<Extended> {
        check_dim(self.dim(), x.dim())?;
        if !self.in_domain(x, tol)? {
            return Ok(Extended::PosInf);
        }
        let sigma = self.v.support_value(&x.sub(&self.xhat))?;
        Ok(Extended::Finite(sigma + x.dot(&self.xbar_star) + self.c))
    }

    /// Direct evaluation of the conjugate at `s`.
    pub fn conjugate_at(&self, s: &Vector, tol: f64) -> Result<Extended> {
        check_dim(self.dim(), s.dim())?;
        let u = s.sub(&self.xbar_star);
        if !polytope_plus_polar_membership(&self.v, &self.polar(), &u, tol)? {
            return Ok(Extended::PosInf);
        }
        Ok(Extended::Finite(self.k.support_value(&u)? - self.min_value() - self.c))
    }

    /// `N_{K+C}(x)` as the polar of `cone({k_i − x} ∪ {c_j})`.
    pub fn normal_cone(&self, x: &Vector) -> Result<PolarCone> {
        let mut gens: Vec<Vector> = self.k.vertices().iter().map(|k| k.sub(x)).collect();
        gens.extend(self.cone.generators().iter().cloned());
        gens.retain(|g| g.norm_inf() > 0.0);
        PolarCone::of_generators(self.dim(), gens)
    }

    /// `∂f(x) = face_V(x − x̂) + x̄* + N_{K+C}(x)`.
    pub fn subdifferential(&self, x: &Vector, tol: f64) -> Result<Subdifferential> {
        check_dim(self.dim(), x.dim())?;
        if !self.in_domain(x, tol)? {
            return Err(Error::OutsideDomain);
        }
        let z = x.sub(&self.xhat);
        let face = self.v.support_face(&z, tol.max(1e-12) * (1.0 + z.norm_inf()))?;
        let verts = face
            .into_iter()
            .map(|i| self.v.vertices()[i].add(&self.xbar_star))
            .collect();
        Ok(Subdifferential::new(Polytope::new(verts)?, Some(self.normal_cone(x)?)))
    }
}

/// `f*` for a valid spec, as an exact [`ConvexFunction`]:
/// `σ_K + i_{V + C°}`, shifted by `x̄*` in the argument and by `−c` in value.
pub fn conjugate_vkc(spec: &VkcSpec) -> ConvexFunction {
    let untilted = ConvexFunction::Sum(vec![
        ConvexFunction::IndicatorDual {
            base: spec.v.clone(),
            polar: spec.polar(),
        },
        ConvexFunction::SupportOfPolytope { set: spec.k.clone() },
    ]);
    let d = spec.dim();
    if spec.xbar_star.norm_inf() == 0.0 && spec.c == 0.0 {
        return untilted;
    }
    ConvexFunction::Composite {
        base: Box::new(untilted),
        tilt: Vector::zeros(d),
        shift: -spec.c,
        argshift: spec.xbar_star.clone(),
    }
}

/// `eval_vkc`: evaluates the spec's function at `x`.
pub fn eval_vkc(spec: &VkcSpec, x: &Vector) -> Result<Extended> {
    spec.eval(x, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: [f64; 2], b: [f64; 2]) -> Polytope {
        Polytope::new(vec![Vector::from(a), Vector::from(b)]).unwrap()
    }

    pub(crate) fn strip() -> VkcSpec {
        VkcSpec::untilted(
            seg([0.0, 0.0], [1.0, 0.0]),
            seg([0.0, -1.0], [0.0, 1.0]),
            PolyhedralCone::new(2, vec![Vector::from([0.0, 1.0])]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn strip_values() {
        let s = strip();
        assert_eq!(eval_vkc(&s, &Vector::from([0.5, 2.0])).unwrap(), Extended::Finite(2.0));
        assert_eq!(eval_vkc(&s, &Vector::from([2.0, 0.0])).unwrap(), Extended::PosInf);
        for xh in [[0.0, 0.0], [1.0, 0.0], [0.3, 0.0]] {
            assert_eq!(eval_vkc(&s, &Vector::from(xh)).unwrap(), Extended::Finite(0.0));
        }
    }

    #[test]
    fn base_point_invariance() {
        let s = strip();
        let s2 = s.with_xhat(Vector::from([1.0, 0.0])).unwrap();
        for x in [[0.2, 3.0], [0.9, 0.1], [1.0, 7.5], [0.0, 0.0]] {
            let x = Vector::from(x);
            assert_eq!(s.eval(&x, 1e-9).unwrap(), s2.eval(&x, 1e-9).unwrap());
        }
    }

    #[test]
    fn rejects_invalid_specs() {
        let k = seg([0.0, 0.0], [1.0, 0.0]);
        // V along the same axis as K − K.
        let bad_v = seg([-1.0, 0.0], [1.0, 0.0]);
        assert!(VkcSpec::untilted(k.clone(), bad_v, PolyhedralCone::zero(2)).is_err());
        // 0 ∉ V
        let off = seg([0.0, 1.0], [0.0, 2.0]);
        assert!(VkcSpec::untilted(k.clone(), off, PolyhedralCone::zero(2)).is_err());
        let v = seg([0.0, -1.0], [0.0, 1.0]);
        let far = Vector::from([3.0, 0.0]);
        assert!(VkcSpec::new(k, v, PolyhedralCone::zero(2), far, Vector::zeros(2), 0.0).is_err());
    }

    #[test]
    fn strip_conjugate_closed_form() {
        let s = strip();
        let fs = conjugate_vkc(&s);
        for (a, b) in [(-1.0, 0.3), (0.7, 1.0), (2.0, -4.0), (0.5, 1.2)] {
            let p = Vector::from([a, b]);
            let expect = if b <= 1.0 {
                Extended::Finite(f64::max(0.0, a))
            } else {
                Extended::PosInf
            };
            assert_eq!(fs.eval(&p).unwrap(), expect, "at {p}");
            assert_eq!(s.conjugate_at(&p, 1e-9).unwrap(), expect);
        }
    }

    #[test]
    fn abs_conjugate_is_interval_indicator() {
        let s = VkcSpec::untilted(
            Polytope::point(Vector::from(0.0)),
            Polytope::new(vec![Vector::from(-1.0), Vector::from(1.0)]).unwrap(),
            PolyhedralCone::whole_space(1),
        )
        .unwrap();
        let fs = conjugate_vkc(&s);
        assert_eq!(fs.eval(&Vector::from(0.5)).unwrap(), Extended::Finite(0.0));
        assert_eq!(fs.eval(&Vector::from(-1.0)).unwrap(), Extended::Finite(0.0));
        assert_eq!(fs.eval(&Vector::from(1.5)).unwrap(), Extended::PosInf);
    }

    #[test]
    fn constant_shifts_conjugate_down() {
        let s = strip();
        let s5 = s.with_tilt(Vector::zeros(2), 5.0).unwrap();
        let (f0, f5) = (conjugate_vkc(&s), conjugate_vkc(&s5));
        for p in [[0.3, 0.2], [-2.0, 1.0], [4.0, -1.0]] {
            let p = Vector::from(p);
            let a = f0.eval(&p).unwrap().finite().unwrap();
            let b = f5.eval(&p).unwrap().finite().unwrap();
            assert!((a - 5.0 - b).abs() < 1e-12);
        }
    }

    #[test]
    fn subdifferential_on_bottom_edge() {
        let s = strip();
        let sd = s.subdifferential(&Vector::from([0.5, 0.0]), 1e-9).unwrap();
        // {0} × (−∞, 1]
        assert!(sd.contains(&Vector::from([0.0, 1.0]), 1e-9).unwrap());
        assert!(sd.contains(&Vector::from([0.0, -25.0]), 1e-9).unwrap());
        assert!(!sd.contains(&Vector::from([0.0, 1.1]), 1e-9).unwrap());
        assert!(!sd.contains(&Vector::from([0.1, 0.0]), 1e-9).unwrap());
        assert!(s.subdifferential(&Vector::from([2.0, 0.0]), 1e-9).is_err());
    }
}
