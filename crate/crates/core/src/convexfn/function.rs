use super::grid::FieldGrid;
use super::vkc::VkcSpec;
use crate::error::{check_dim, Error, Result};
use crate::extended::Extended;
use crate::geometry::{
    convex_conic_combination, minkowski_membership, polytope_plus_polar_membership, PolarCone,
    PolyhedralCone, Polytope,
};
use crate::vector::Vector;
use crate::DEFAULT_TOL;

/// Proper convex lsc functions with exact or sampled representations.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexFunction {
    /// `x ↦ max_i ⟨m_i, x⟩ + b_i`.
    AffineMax {
        slopes: Vec<Vector>,
        intercepts: Vec<f64>,
    },
    /// `i_{K + C}` for a polytope `K` and a generated cone `C`.
    IndicatorPolyhedron { set: Polytope, cone: PolyhedralCone },
    /// `i_{P + Q°}` for a polytope `P` and an H-cone `Q°`.
    IndicatorDual { base: Polytope, polar: PolarCone },
    /// `σ_P`.
    SupportOfPolytope { set: Polytope },
    /// `x ↦ base(x − argshift) + ⟨x, tilt⟩ + shift`.
    Composite {
        base: Box<ConvexFunction>,
        tilt: Vector,
        shift: f64,
        argshift: Vector,
    },
    /// Pointwise sum; indicator terms are evaluated first.
    Sum(Vec<ConvexFunction>),
    Vkc(Box<VkcSpec>),
    /// Multilinear interpolant of a sampled field, `+∞` off the lattice box.
    GridSampled(FieldGrid),
}

impl ConvexFunction {
    pub fn affine_max(slopes: Vec<Vector>, intercepts: Vec<f64>) -> Result<Self> {
        let first = slopes.first().ok_or(Error::Empty("affine pieces"))?;
        for s in &slopes {
            check_dim(first.dim(), s.dim())?;
        }
        check_dim(slopes.len(), intercepts.len())?;
        if intercepts.iter().any(|b| !b.is_finite()) {
            return Err(Error::invalid("affine intercepts must be finite"));
        }
        Ok(ConvexFunction::AffineMax { slopes, intercepts })
    }

    /// `|x|` on the real line.
    pub fn abs() -> Self {
        ConvexFunction::AffineMax {
            slopes: vec![Vector::from(1.0), Vector::from(-1.0)],
            intercepts: vec![0.0, 0.0],
        }
    }

    pub fn composite(base: ConvexFunction, tilt: Vector, shift: f64) -> Self {
        let d = tilt.dim();
        ConvexFunction::Composite {
            base: Box::new(base),
            tilt,
            shift,
            argshift: Vector::zeros(d),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexFunction::AffineMax { slopes, .. } => slopes.first().map_or(0, Vector::dim),
            ConvexFunction::IndicatorPolyhedron { set, .. } => set.dim(),
            ConvexFunction::IndicatorDual { base, .. } => base.dim(),
            ConvexFunction::SupportOfPolytope { set } => set.dim(),
            ConvexFunction::Composite { tilt, .. } => tilt.dim(),
            ConvexFunction::Sum(terms) => terms.first().map_or(0, ConvexFunction::dim),
            ConvexFunction::Vkc(s) => s.dim(),
            ConvexFunction::GridSampled(g) => g.dim(),
        }
    }

    fn is_indicator(&self) -> bool {
        matches!(
            self,
            ConvexFunction::IndicatorPolyhedron { .. } | ConvexFunction::IndicatorDual { .. }
        )
    }

    pub fn eval(&self, x: &Vector) -> Result<Extended> {
        self.eval_tol(x, DEFAULT_TOL)
    }

    /// Evaluates with membership tolerance `tol` for indicator terms.
    pub fn eval_tol(&self, x: &Vector, tol: f64) -> Result<Extended> {
        check_dim(self.dim(), x.dim())?;
        match self {
            ConvexFunction::AffineMax { slopes, intercepts } => {
                if slopes.is_empty() {
                    return Err(Error::Empty("affine pieces"));
                }
                let v = slopes
                    .iter()
                    .zip(intercepts)
                    .map(|(m, b)| m.dot(x) + b)
                    .fold(f64::NEG_INFINITY, f64::max);
                Ok(Extended::Finite(v))
            }
            ConvexFunction::IndicatorPolyhedron { set, cone } => {
                Ok(indicator(minkowski_membership(set, cone, x, tol)?))
            }
            ConvexFunction::IndicatorDual { base, polar } => {
                Ok(indicator(polytope_plus_polar_membership(base, polar, x, tol)?))
            }
            ConvexFunction::SupportOfPolytope { set } => Ok(Extended::Finite(set.support_value(x)?)),
            ConvexFunction::Composite {
                base,
                tilt,
                shift,
                argshift,
            } => Ok(base.eval_tol(&x.sub(argshift), tol)? + (x.dot(tilt) + shift)),
            ConvexFunction::Sum(terms) => {
                let mut acc = Extended::ZERO;
                for t in terms.iter().filter(|t| t.is_indicator()) {
                    acc = acc + t.eval_tol(x, tol)?;
                    if acc.is_infinite() {
                        return Ok(acc);
                    }
                }
                for t in terms.iter().filter(|t| !t.is_indicator()) {
                    acc = acc + t.eval_tol(x, tol)?;
                    if acc.is_infinite() {
                        return Ok(acc);
                    }
                }
                Ok(acc)
            }
            ConvexFunction::Vkc(s) => s.eval(x, tol),
            ConvexFunction::GridSampled(g) => g.interpolate(x),
        }
    }

    /// Exact conjugate value `f*(s)` for the variants that admit one.
    ///
    /// Affine maxima use the LP `min −Σλ_i b_i` over `Σλ_i m_i = s`, `λ` in the simplex.
    /// Sums and sampled grids are rejected; use the grid transform for those.
    pub fn conjugate_at(&self, s: &Vector, tol: f64) -> Result<Extended> {
        check_dim(self.dim(), s.dim())?;
        match self {
            ConvexFunction::AffineMax { slopes, intercepts } => {
                let cost: Vec<f64> = intercepts.iter().map(|b| -b).collect();
                let r = convex_conic_combination(slopes, &[], s, Some(&cost), tol)?;
                Ok(if r.is_optimal() {
                    Extended::Finite(r.value)
                } else {
                    Extended::PosInf
                })
            }
            ConvexFunction::IndicatorPolyhedron { set, cone } => {
                if cone.polar().contains(s, tol)? {
                    Ok(Extended::Finite(set.support_value(s)?))
                } else {
                    Ok(Extended::PosInf)
                }
            }
            ConvexFunction::IndicatorDual { base, polar } => {
                Ok(polar.support_value(s, tol)? + base.support_value(s)?)
            }
            ConvexFunction::SupportOfPolytope { set } => Ok(indicator(set.contains(s, tol)?)),
            ConvexFunction::Composite {
                base,
                tilt,
                shift,
                argshift,
            } => {
                let u = s.sub(tilt);
                Ok(base.conjugate_at(&u, tol)? + (argshift.dot(&u) - shift))
            }
            ConvexFunction::Vkc(spec) => spec.conjugate_at(s, tol),
            ConvexFunction::Sum(_) => Err(Error::Unsupported(
                "exact conjugate of a sum; use conjugate_grid".into(),
            )),
            ConvexFunction::GridSampled(_) => Err(Error::Unsupported(
                "exact conjugate of a sampled grid; use conjugate_grid".into(),
            )),
        }
    }

    /// Exact conjugate as a function, where available.
    pub fn conjugate(&self) -> Result<ConvexFunction> {
        Ok(match self {
            ConvexFunction::Vkc(spec) => super::vkc::conjugate_vkc(spec),
            ConvexFunction::SupportOfPolytope { set } => ConvexFunction::IndicatorPolyhedron {
                set: set.clone(),
                cone: PolyhedralCone::zero(set.dim()),
            },
            ConvexFunction::IndicatorPolyhedron { set, cone } if cone.is_trivial() => {
                ConvexFunction::SupportOfPolytope { set: set.clone() }
            }
            _ => {
                return Err(Error::Unsupported(
                    "closed-form conjugate for this representation".into(),
                ))
            }
        })
    }

    /// `∂f(x)` as a polytope of subgradients plus an optional normal cone.
    ///
    /// Affine maxima contribute the hull of the `tol`-active slopes, polyhedral
    /// indicators their normal cone, sampled 1-d grids the interval between the
    /// one-sided slopes of the interpolant. Sums combine by the polyhedral sum rule;
    /// at most one term may carry a nontrivial normal cone.
    pub fn subdifferential(&self, x: &Vector, tol: f64) -> Result<Subdifferential> {
        check_dim(self.dim(), x.dim())?;
        let d = self.dim();
        match self {
            ConvexFunction::AffineMax { slopes, intercepts } => {
                let vals: Vec<f64> = slopes
                    .iter()
                    .zip(intercepts)
                    .map(|(m, b)| m.dot(x) + b)
                    .collect();
                let top = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let scale = tol * (1.0 + top.abs());
                let active = slopes
                    .iter()
                    .zip(&vals)
                    .filter(|(_, &v)| v >= top - scale)
                    .map(|(m, _)| m.clone())
                    .collect();
                Ok(Subdifferential::new(Polytope::new(dedup(active))?, None))
            }
            ConvexFunction::IndicatorPolyhedron { set, cone } => {
                if !minkowski_membership(set, cone, x, tol)? {
                    return Err(Error::OutsideDomain);
                }
                let mut gens: Vec<Vector> = set.vertices().iter().map(|k| k.sub(x)).collect();
                gens.extend(cone.generators().iter().cloned());
                gens.retain(|g| g.norm_inf() > 0.0);
                Ok(Subdifferential::new(
                    Polytope::point(Vector::zeros(d)),
                    Some(PolarCone::of_generators(d, gens)?),
                ))
            }
            ConvexFunction::SupportOfPolytope { set } => {
                let face = set.support_face(x, tol * (1.0 + x.norm_inf()))?;
                let verts = face.into_iter().map(|i| set.vertices()[i].clone()).collect();
                Ok(Subdifferential::new(Polytope::new(verts)?, None))
            }
            ConvexFunction::Composite {
                base,
                tilt,
                argshift,
                ..
            } => {
                let inner = base.subdifferential(&x.sub(argshift), tol)?;
                Ok(inner.shifted(tilt))
            }
            ConvexFunction::Sum(terms) => {
                let mut acc = Subdifferential::new(Polytope::point(Vector::zeros(d)), None);
                for t in terms {
                    acc = acc.minkowski_sum(&t.subdifferential(x, tol)?)?;
                }
                Ok(acc)
            }
            ConvexFunction::Vkc(spec) => spec.subdifferential(x, tol),
            ConvexFunction::GridSampled(g) => grid_subdifferential(g, x),
            ConvexFunction::IndicatorDual { .. } => Err(Error::Unsupported(
                "normal cones of sets given with an H-cone part".into(),
            )),
        }
    }
}

fn indicator(member: bool) -> Extended {
    if member {
        Extended::ZERO
    } else {
        Extended::PosInf
    }
}

fn dedup(mut pts: Vec<Vector>) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::with_capacity(pts.len());
    for p in pts.drain(..) {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn grid_subdifferential(g: &FieldGrid, x: &Vector) -> Result<Subdifferential> {
    if g.dim() != 1 {
        return Err(Error::Unsupported(
            "subgradients of sampled grids in more than one dimension".into(),
        ));
    }
    let axis = g.lattice().axes()[0];
    let h = axis.spacing();
    let (cell, t) = axis.locate(x[0]).ok_or(Error::OutsideDomain)?;
    let val = |i: usize| g.value(i).finite();
    let slope = |i: usize| match (val(i), val(i + 1)) {
        (Some(a), Some(b)) => Some((b - a) / h),
        _ => None,
    };
    if t > 0.0 && t < 1.0 {
        let s = slope(cell).ok_or(Error::OutsideDomain)?;
        return Ok(Subdifferential::new(Polytope::point(Vector::from(s)), None));
    }
    let node = if t == 0.0 { cell } else { cell + 1 };
    val(node).ok_or(Error::OutsideDomain)?;
    let left = if node > 0 { slope(node - 1) } else { None };
    let right = if node + 1 < axis.count { slope(node) } else { None };
    // A +∞ neighbour inside the lattice is a domain boundary: add its normal ray.
    let left_wall = node > 0 && left.is_none();
    let right_wall = node + 1 < axis.count && right.is_none();
    let mut verts = Vec::new();
    verts.extend(left.map(Vector::from));
    verts.extend(right.map(Vector::from));
    if verts.is_empty() {
        verts.push(Vector::from(0.0));
    }
    let cone = match (left_wall, right_wall) {
        (false, false) => None,
        (true, false) => Some(PolarCone::of_generators(1, vec![Vector::from(1.0)])?),
        (false, true) => Some(PolarCone::of_generators(1, vec![Vector::from(-1.0)])?),
        (true, true) => Some(PolarCone::of_generators(1, vec![])?),
    };
    Ok(Subdifferential::new(Polytope::new(dedup(verts))?, cone))
}

/// A subdifferential `conv(points) + N`, with `N = {0}` when absent.
#[derive(Clone, Debug, PartialEq)]
pub struct Subdifferential {
    bounded: Polytope,
    normal_cone: Option<PolarCone>,
}

impl Subdifferential {
    pub fn new(bounded: Polytope, normal_cone: Option<PolarCone>) -> Self {
        Subdifferential {
            bounded,
            normal_cone,
        }
    }

    /// Listed subgradients spanning the bounded part.
    pub fn vertices(&self) -> &[Vector] {
        self.bounded.vertices()
    }

    pub fn bounded_part(&self) -> &Polytope {
        &self.bounded
    }

    pub fn normal_cone(&self) -> Option<&PolarCone> {
        self.normal_cone.as_ref()
    }

    pub fn centroid(&self) -> Vector {
        self.bounded.centroid()
    }

    pub fn contains(&self, s: &Vector, tol: f64) -> Result<bool> {
        match &self.normal_cone {
            None => self.bounded.contains(s, tol),
            Some(n) => polytope_plus_polar_membership(&self.bounded, n, s, tol),
        }
    }

    fn shifted(&self, by: &Vector) -> Subdifferential {
        Subdifferential {
            bounded: self.bounded.translate(by),
            normal_cone: self.normal_cone.clone(),
        }
    }

    fn minkowski_sum(&self, other: &Subdifferential) -> Result<Subdifferential> {
        let mut verts = Vec::new();
        for a in self.bounded.vertices() {
            for b in other.bounded.vertices() {
                verts.push(a.add(b));
            }
        }
        let normal_cone = match (&self.normal_cone, &other.normal_cone) {
            (None, n) | (n, None) => n.clone(),
            (Some(_), Some(_)) => {
                return Err(Error::Unsupported(
                    "sum of two terms with nontrivial normal cones".into(),
                ))
            }
        };
        Ok(Subdifferential {
            bounded: Polytope::new(dedup(verts))?,
            normal_cone,
        })
    }
}

/// `x* ∈ ∂_ε f(x)` via `f(x) + f*(x*) ≤ ⟨x, x*⟩ + ε + tol`; an infinite value gives `false`.
pub fn eps_subgradient_test(
    f: &ConvexFunction,
    f_star: &ConvexFunction,
    x: &Vector,
    xstar: &Vector,
    eps: f64,
    tol: f64,
) -> Result<bool> {
    if eps < 0.0 {
        return Err(Error::invalid("eps must be nonnegative"));
    }
    check_dim(x.dim(), xstar.dim())?;
    let total = f.eval_tol(x, tol)? + f_star.eval_tol(xstar, tol)?;
    Ok(match total {
        Extended::Finite(v) => v <= x.dot(xstar) + eps + tol,
        Extended::PosInf => false,
    })
}
