use serde::Serialize;

use super::value::fitzpatrick_value;
use crate::convexfn::ConvexFunction;
use crate::error::{check_dim, Result};
use crate::extended::Extended;
use crate::operators::OperatorGraph;
use crate::vector::Vector;

/// `Φ_f(x, x*) = f(x) + f*(x*)`.
pub fn phi_value(
    f: &ConvexFunction,
    f_star: &ConvexFunction,
    x: &Vector,
    xstar: &Vector,
    tol: f64,
) -> Result<Extended> {
    Ok(f.eval_tol(x, tol)? + f_star.eval_tol(xstar, tol)?)
}

/// Both routes to the representation gap at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub phi: Extended,
    pub fitzpatrick: f64,
    /// `Φ_f − F`; `+∞` outside `dom Φ_f`.
    pub gap: Extended,
    /// Minimum over the graph of the two-sided ε decomposition.
    pub direct: Extended,
    /// Graph index attaining `direct`.
    pub witness: Option<usize>,
    pub in_domain: bool,
}

impl GapReport {
    /// `|gap − direct|`, `0` when both are `+∞`, `+∞` when exactly one is.
    pub fn route_difference(&self) -> f64 {
        match (self.gap, self.direct) {
            (Extended::Finite(a), Extended::Finite(b)) => (a - b).abs(),
            (Extended::PosInf, Extended::PosInf) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

/// `min_{(y, y*) ∈ G} [f(w) + f*(y*) − ⟨w, y*⟩] + [f(y) + f*(v*) − ⟨y, v*⟩]`, with its argmin.
///
/// Both brackets are ε-subgradient gaps, so the sum is nonnegative and equals
/// `Φ_f(w, v*) − F(w, v*)` whenever every graph pair satisfies Fenchel–Young with equality.
pub fn direct_gap(
    f: &ConvexFunction,
    f_star: &ConvexFunction,
    g: &OperatorGraph,
    w: &Vector,
    vstar: &Vector,
    tol: f64,
) -> Result<(Extended, Option<usize>)> {
    check_dim(g.dim(), w.dim())?;
    check_dim(g.dim(), vstar.dim())?;
    let fw = f.eval_tol(w, tol)?;
    let fsv = f_star.eval_tol(vstar, tol)?;
    let mut best = Extended::PosInf;
    let mut arg = None;
    for (i, p) in g.pairs().iter().enumerate() {
        let first = fw + f_star.eval_tol(&p.xstar, tol)? - w.dot(&p.xstar);
        let second = f.eval_tol(&p.x, tol)? + fsv - p.x.dot(vstar);
        let total = first + second;
        let better = match (total, best) {
            (Extended::Finite(a), Extended::Finite(b)) => a < b,
            (Extended::Finite(_), Extended::PosInf) => true,
            _ => false,
        };
        if better {
            best = total;
            arg = Some(i);
        }
    }
    Ok((best, arg))
}

/// The gap `Φ_f − F_{∂f}` at `(w, v*)` by subtraction and by direct graph search.
pub fn gap_value(
    f: &ConvexFunction,
    f_star: &ConvexFunction,
    g: &OperatorGraph,
    w: &Vector,
    vstar: &Vector,
    tol: f64,
) -> Result<GapReport> {
    let phi = phi_value(f, f_star, w, vstar, tol)?;
    let fitz = fitzpatrick_value(g, w, vstar)?;
    let (direct, witness) = direct_gap(f, f_star, g, w, vstar, tol)?;
    Ok(GapReport {
        phi,
        fitzpatrick: fitz,
        gap: phi - fitz,
        direct,
        witness,
        in_domain: phi.is_finite(),
    })
}
