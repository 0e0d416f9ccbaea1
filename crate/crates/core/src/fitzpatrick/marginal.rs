//! Marginal functions of `P_A` and the sandwich `F ≤ (marginal)* ≤ P`.
//!
//! Infima and suprema range over the lattice nodes together with the graph's own
//! points, so the lower inequality holds exactly even when the graph is off-lattice.

use rayon::prelude::*;
use serde::Serialize;

use super::value::{fitzpatrick_value, p_value};
use crate::convexfn::{FieldGrid, Lattice};
use crate::error::{check_dim, Error, Result};
use crate::extended::Extended;
use crate::operators::OperatorGraph;
use crate::vector::Vector;

fn with_graph_points(lattice: &Lattice, extra: impl Iterator<Item = Vector>) -> Vec<Vector> {
    let mut pts = lattice.points();
    for p in extra {
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// `P(x_i, s_j)` for all `x_i` in `xs` and `s_j` in `ss`.
fn p_table(g: &OperatorGraph, xs: &[Vector], ss: &[Vector], tol: f64) -> Result<Vec<Vec<Extended>>> {
    xs.par_iter()
        .map(|x| ss.iter().map(|s| p_value(g, x, s, tol)).collect::<Result<Vec<_>>>())
        .collect()
}

fn min_finite(it: impl Iterator<Item = Extended>) -> Extended {
    it.fold(Extended::PosInf, Extended::min)
}

fn max_affine(x: &Vector, pts: &[Vector], vals: &[Extended]) -> f64 {
    pts.iter()
        .zip(vals)
        .filter_map(|(p, v)| v.finite().map(|v| x.dot(p) - v))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn check_lattices(g: &OperatorGraph, primal: &Lattice, dual: &Lattice) -> Result<()> {
    check_dim(g.dim(), primal.dim())?;
    check_dim(g.dim(), dual.dim())
}

/// `f_{A,w}(x) = inf_{a*} P(x, a*) − ⟨w, a*⟩` on the primal lattice.
pub fn marginal_primal(
    g: &OperatorGraph,
    w: &Vector,
    primal: &Lattice,
    dual: &Lattice,
    tol: f64,
) -> Result<FieldGrid> {
    check_lattices(g, primal, dual)?;
    if !g.has_domain_point(w, tol) {
        return Err(Error::invalid(format!("w = {w} is not in the sampled domain")));
    }
    let ss = with_graph_points(dual, g.pairs().iter().map(|p| p.xstar.clone()));
    let xs = primal.points();
    let table = p_table(g, &xs, &ss, tol)?;
    let values = table
        .iter()
        .map(|row| min_finite(row.iter().zip(&ss).map(|(p, s)| *p - w.dot(s))))
        .collect();
    FieldGrid::new(primal.clone(), values)
}

/// `g_{A,v*}(x*) = inf_a P(a, x*) − ⟨a, v*⟩` on the dual lattice.
pub fn marginal_dual(
    g: &OperatorGraph,
    vstar: &Vector,
    primal: &Lattice,
    dual: &Lattice,
    tol: f64,
) -> Result<FieldGrid> {
    check_lattices(g, primal, dual)?;
    if !g.has_image(vstar, tol) {
        return Err(Error::invalid(format!("v* = {vstar} is not in the sampled image")));
    }
    let xs = with_graph_points(primal, g.pairs().iter().map(|p| p.x.clone()));
    let ss = dual.points();
    let table = p_table(g, &xs, &ss, tol)?;
    let values = (0..ss.len())
        .map(|j| min_finite(xs.iter().enumerate().map(|(i, a)| table[i][j] - a.dot(vstar))))
        .collect();
    FieldGrid::new(dual.clone(), values)
}

/// Slack of one chain `F ≤ h* ≤ P` over its evaluation points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    /// `min (h* − F)`.
    pub lower_slack: f64,
    /// `min (P − h*)` over points where `P` is finite.
    pub upper_slack: f64,
    pub points: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichReport {
    /// `F(x, v*) ≤ g*_{A,v*}(x) ≤ P(x, v*)` on the primal points.
    pub chain_primal: ChainReport,
    /// `F(w, x*) ≤ f*_{A,w}(x*) ≤ P(w, x*)` on the dual points.
    pub chain_dual: ChainReport,
    pub worst_slack: f64,
    pub passed: bool,
}

fn chain(lower: &[f64], mid: &[f64], upper: &[Extended], tol: f64) -> ChainReport {
    let lower_slack = mid
        .iter()
        .zip(lower)
        .map(|(m, l)| m - l)
        .fold(f64::INFINITY, f64::min);
    let upper_slack = upper
        .iter()
        .zip(mid)
        .filter_map(|(u, m)| u.finite().map(|u| u - m))
        .fold(f64::INFINITY, f64::min);
    ChainReport {
        lower_slack,
        upper_slack,
        points: mid.len(),
        holds: lower_slack >= -tol && upper_slack >= -tol,
    }
}

/// Checks both inequality chains for the marginals at `w ∈ dom G` and `v* ∈ Im G`.
pub fn sandwich_test(
    g: &OperatorGraph,
    w: &Vector,
    vstar: &Vector,
    primal: &Lattice,
    dual: &Lattice,
    tol: f64,
) -> Result<SandwichReport> {
    check_lattices(g, primal, dual)?;
    check_dim(g.dim(), w.dim())?;
    check_dim(g.dim(), vstar.dim())?;
    if !g.has_domain_point(w, tol) {
        return Err(Error::invalid(format!("w = {w} is not in the sampled domain")));
    }
    if !g.has_image(vstar, tol) {
        return Err(Error::invalid(format!("v* = {vstar} is not in the sampled image")));
    }
    let xs = with_graph_points(primal, g.pairs().iter().map(|p| p.x.clone()));
    let ss = with_graph_points(dual, g.pairs().iter().map(|p| p.xstar.clone()));
    let table = p_table(g, &xs, &ss, tol)?;

    // Chain through g_{A,v*}.
    let gv: Vec<Extended> = (0..ss.len())
        .map(|j| min_finite(xs.iter().enumerate().map(|(i, a)| table[i][j] - a.dot(vstar))))
        .collect();
    let g_conj: Vec<f64> = xs.iter().map(|x| max_affine(x, &ss, &gv)).collect();
    let f_lo: Vec<f64> = xs
        .iter()
        .map(|x| fitzpatrick_value(g, x, vstar))
        .collect::<Result<_>>()?;
    let p_hi: Vec<Extended> = xs
        .par_iter()
        .map(|x| p_value(g, x, vstar, tol))
        .collect::<Result<_>>()?;
    let chain_primal = chain(&f_lo, &g_conj, &p_hi, tol);

    // Chain through f_{A,w}.
    let fw: Vec<Extended> = table
        .iter()
        .map(|row| min_finite(row.iter().zip(&ss).map(|(p, s)| *p - w.dot(s))))
        .collect();
    let f_conj: Vec<f64> = ss.iter().map(|s| max_affine(s, &xs, &fw)).collect();
    let f_lo: Vec<f64> = ss
        .iter()
        .map(|s| fitzpatrick_value(g, w, s))
        .collect::<Result<_>>()?;
    let p_hi: Vec<Extended> = ss
        .par_iter()
        .map(|s| p_value(g, w, s, tol))
        .collect::<Result<_>>()?;
    let chain_dual = chain(&f_lo, &f_conj, &p_hi, tol);

    let worst_slack = chain_primal
        .lower_slack
        .min(chain_primal.upper_slack)
        .min(chain_dual.lower_slack)
        .min(chain_dual.upper_slack);
    Ok(SandwichReport {
        passed: chain_primal.holds && chain_dual.holds,
        chain_primal,
        chain_dual,
        worst_slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexfn::Axis;

    fn line(min: f64, max: f64, n: usize) -> Lattice {
        Lattice::new(vec![Axis::new(min, max, n).unwrap()]).unwrap()
    }

    fn two_point() -> OperatorGraph {
        OperatorGraph::from_scalars("two", &[(-1.0, -1.0), (1.0, 1.0)]).unwrap()
    }

    #[test]
    fn two_point_primal_marginal() {
        let l = line(-2.0, 2.0, 9);
        let f = marginal_primal(&two_point(), &Vector::from(-1.0), &l, &l, 1e-9).unwrap();
        for i in 0..l.len() {
            let x = l.point(i)[0];
            let want = if x.abs() <= 1.0 { Extended::Finite(1.0 + x) } else { Extended::PosInf };
            match (f.value(i), want) {
                (Extended::Finite(a), Extended::Finite(b)) => assert!((a - b).abs() < 1e-9, "x = {x}"),
                (a, b) => assert_eq!(a, b, "x = {x}"),
            }
        }
        assert!(marginal_primal(&two_point(), &Vector::from(0.0), &l, &l, 1e-9).is_err());
    }

    #[test]
    fn single_pair_marginal_is_point_indicator() {
        let g = OperatorGraph::from_scalars("", &[(0.0, 0.0)]).unwrap();
        let l = line(-1.0, 1.0, 5);
        let f = marginal_primal(&g, &Vector::from(0.0), &l, &l, 1e-9).unwrap();
        let finite: Vec<usize> = (0..l.len()).filter(|&i| f.value(i).is_finite()).collect();
        assert_eq!(finite, vec![2]);
        assert_eq!(f.value(2), Extended::ZERO);
    }

    #[test]
    fn sandwich_holds() {
        let l = line(-2.0, 2.0, 17);
        let r = sandwich_test(&two_point(), &Vector::from(1.0), &Vector::from(1.0), &l, &l, 1e-9).unwrap();
        assert!(r.passed, "{r:?}");
        let g = OperatorGraph::from_scalars("", &[(0.5, -0.5)]).unwrap();
        let r = sandwich_test(&g, &Vector::from(0.5), &Vector::from(-0.5), &l, &l, 1e-9).unwrap();
        assert!(r.passed);
        assert!(r.chain_primal.upper_slack.abs() < 1e-9);
    }
}
