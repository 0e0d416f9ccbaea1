use rayon::prelude::*;
use serde::Serialize;

use crate::convexfn::Lattice;
use crate::error::{check_dim, Result};
use crate::extended::Extended;
use crate::geometry::convex_conic_combination;
use crate::operators::{DualPair, OperatorGraph};
use crate::vector::Vector;

fn term(p: &DualPair, x: &Vector, xstar: &Vector) -> f64 {
    p.x.dot(xstar) + x.dot(&p.xstar) - p.coupling()
}

/// `F(x, x*) = max_{(y, y*) ∈ G} ⟨y, x*⟩ + ⟨x, y*⟩ − ⟨y, y*⟩`.
pub fn fitzpatrick_value(g: &OperatorGraph, x: &Vector, xstar: &Vector) -> Result<f64> {
    check_dim(g.dim(), x.dim())?;
    check_dim(g.dim(), xstar.dim())?;
    Ok(g.pairs()
        .iter()
        .map(|p| term(p, x, xstar))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// The pairs attaining `F(x, x*)` within `tol`, in graph order.
pub fn argmax_set(g: &OperatorGraph, x: &Vector, xstar: &Vector, tol: f64) -> Result<Vec<DualPair>> {
    let top = fitzpatrick_value(g, x, xstar)?;
    Ok(g.pairs()
        .iter()
        .filter(|p| term(p, x, xstar) >= top - tol)
        .cloned()
        .collect())
}

/// `P(x, x*) = min Σ λ_i ⟨a_i, a_i*⟩` over `λ` in the simplex with `Σ λ_i (a_i, a_i*) = (x, x*)`.
///
/// `+∞` when `(x, x*)` is outside `conv G`, i.e. when the phase-one residual exceeds `tol`.
pub fn p_value(g: &OperatorGraph, x: &Vector, xstar: &Vector, tol: f64) -> Result<Extended> {
    check_dim(g.dim(), x.dim())?;
    check_dim(g.dim(), xstar.dim())?;
    let points: Vec<Vector> = g.pairs().iter().map(|p| p.x.concat(&p.xstar)).collect();
    let cost: Vec<f64> = g.pairs().iter().map(DualPair::coupling).collect();
    let r = convex_conic_combination(&points, &[], &x.concat(xstar), Some(&cost), tol)?;
    Ok(if r.is_optimal() {
        Extended::Finite(r.value)
    } else {
        Extended::PosInf
    })
}

/// A brute-force sup over a lattice, split by where it was attained.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjugateEstimate {
    pub value: f64,
    pub interior_max: f64,
    pub boundary_max: f64,
    /// The boundary beats the interior by more than `tol`: the sup likely lies beyond the box.
    pub diverged: bool,
}

/// `P(x, x*) = F*(x*, x)` evaluated by maximising `⟨y, x*⟩ + ⟨y*, x⟩ − F(y, y*)` over the
/// nodes of a lattice on `E × E*` (coordinates `y` first, then `y*`).
///
/// `F` is tabulated once on construction.
pub struct PConjugateOracle {
    lattice: Lattice,
    nodes: Vec<(Vector, Vector, f64, bool)>,
}

impl PConjugateOracle {
    pub fn new(g: &OperatorGraph, lattice: &Lattice) -> Result<Self> {
        let d = g.dim();
        check_dim(2 * d, lattice.dim())?;
        let nodes = (0..lattice.len())
            .into_par_iter()
            .map(|i| {
                let (y, ys) = lattice.point(i).split_at(d);
                let f = fitzpatrick_value(g, &y, &ys)?;
                let boundary = lattice.on_boundary(&lattice.unravel(i));
                Ok((y, ys, f, boundary))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PConjugateOracle {
            lattice: lattice.clone(),
            nodes,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn eval(&self, x: &Vector, xstar: &Vector, tol: f64) -> Result<ConjugateEstimate> {
        let d = self.lattice.dim() / 2;
        check_dim(d, x.dim())?;
        check_dim(d, xstar.dim())?;
        let (mut interior, mut boundary) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (y, ys, f, on_boundary) in &self.nodes {
            let v = y.dot(xstar) + ys.dot(x) - f;
            if *on_boundary {
                boundary = boundary.max(v);
            } else {
                interior = interior.max(v);
            }
        }
        Ok(ConjugateEstimate {
            value: interior.max(boundary),
            interior_max: interior,
            boundary_max: boundary,
            diverged: boundary > interior + tol,
        })
    }
}

/// One-off evaluation of [`PConjugateOracle`]; tabulate once when querying many points.
pub fn p_via_conjugate(
    g: &OperatorGraph,
    x: &Vector,
    xstar: &Vector,
    lattice: &Lattice,
    tol: f64,
) -> Result<ConjugateEstimate> {
    PConjugateOracle::new(g, lattice)?.eval(x, xstar, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexfn::Axis;

    fn v(x: f64) -> Vector {
        Vector::from(x)
    }

    fn identity() -> OperatorGraph {
        OperatorGraph::from_scalars("id", &(-2..=2).map(|i| (i as f64, i as f64)).collect::<Vec<_>>()).unwrap()
    }

    fn abs_graph() -> OperatorGraph {
        OperatorGraph::from_scalars(
            "abs",
            &[(-2.0, -1.0), (-1.0, -1.0), (0.0, -1.0), (0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 1.0)],
        )
        .unwrap()
    }

    fn two_point() -> OperatorGraph {
        OperatorGraph::from_scalars("two", &[(-1.0, -1.0), (1.0, 1.0)]).unwrap()
    }

    #[test]
    fn fitzpatrick_examples() {
        let zero = OperatorGraph::from_scalars("", &[(0.0, 0.0)]).unwrap();
        assert_eq!(fitzpatrick_value(&zero, &v(3.0), &v(-7.0)).unwrap(), 0.0);
        assert_eq!(fitzpatrick_value(&identity(), &v(1.0), &v(-1.0)).unwrap(), 0.0);
        assert_eq!(fitzpatrick_value(&abs_graph(), &v(2.0), &v(0.5)).unwrap(), 2.0);
    }

    #[test]
    fn argmax_examples() {
        assert_eq!(argmax_set(&identity(), &v(1.0), &v(1.0), 1e-9).unwrap(), vec![DualPair::from((1.0, 1.0))]);
        assert_eq!(argmax_set(&abs_graph(), &v(2.0), &v(0.5), 1e-9).unwrap(), vec![DualPair::from((0.0, 1.0))]);
    }

    #[test]
    fn p_examples() {
        let g = two_point();
        assert_eq!(p_value(&g, &v(0.0), &v(0.0), 1e-9).unwrap(), Extended::Finite(1.0));
        assert_eq!(p_value(&g, &v(1.0), &v(1.0), 1e-9).unwrap(), Extended::Finite(1.0));
        assert_eq!(p_value(&g, &v(2.0), &v(2.0), 1e-9).unwrap(), Extended::PosInf);
        assert_eq!(p_value(&g, &v(0.0), &v(0.5), 1e-9).unwrap(), Extended::PosInf);
    }

    #[test]
    fn conjugate_route_matches_lp() {
        let g = two_point();
        let l = Lattice::cube(Axis::new(-2.0, 2.0, 41).unwrap(), 2);
        let o = PConjugateOracle::new(&g, &l).unwrap();
        for t in [-1.0, -0.5, 0.0, 0.3, 1.0] {
            let e = o.eval(&v(t), &v(t), 1e-9).unwrap();
            assert!((e.value - 1.0).abs() < 1e-9);
            assert!(!e.diverged);
        }
        // Off the diagonal the sup runs to the boundary.
        assert!(o.eval(&v(0.0), &v(0.5), 1e-9).unwrap().diverged);
    }
}
