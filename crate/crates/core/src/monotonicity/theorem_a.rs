use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cyclic::{is_cyclically_monotone, is_n_monotone};
use crate::convexfn::Lattice;
use crate::error::{check_dim, Error, Result};
use crate::fitzpatrick::fitzpatrick_value;
use crate::operators::{DualPair, OperatorGraph};
use crate::vector::Vector;

/// Convexity and subgradient checks for `g(x) = F(x, v*)` on a lattice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremAReport {
    pub convex_ok: bool,
    pub subgradient_ok: bool,
    pub passed: bool,
    /// Largest `g(mid) − (g(a) + g(b))/2` seen.
    pub worst_midpoint_excess: f64,
    /// Largest `g(x) + ⟨y − x, x*⟩ − g(y)` seen.
    pub worst_subgradient_violation: f64,
    /// Graph pair and lattice point realising the worst subgradient violation.
    pub witness: Option<(DualPair, Vector)>,
    /// Graph pairs lying on lattice nodes (the ones checked).
    pub pairs_checked: usize,
}

/// Above this many node pairs the midpoint test samples instead of enumerating.
const EXHAUSTIVE_PAIRS: usize = 1 << 20;
const SAMPLED_PAIRS: usize = 200_000;

/// Checks that `x ↦ F(x, v*)` is midpoint convex on the lattice and that every on-lattice
/// graph pair `(x, x*)` satisfies `g(y) ≥ g(x) + ⟨y − x, x*⟩ − tol` at every node `y`.
///
/// Requires `v*` in the sampled image and a 3-monotone graph.
pub fn theorem_a_suite(g: &OperatorGraph, vstar: &Vector, lattice: &Lattice, tol: f64) -> Result<TheoremAReport> {
    check_dim(g.dim(), vstar.dim())?;
    check_dim(g.dim(), lattice.dim())?;
    if !g.has_image(vstar, tol) {
        return Err(Error::invalid(format!("v* = {vstar} is not in the sampled image")));
    }
    if !is_cyclically_monotone(g, tol).monotone && !is_n_monotone(g, 3, tol)?.monotone {
        return Err(Error::invalid("graph is not 3-monotone"));
    }
    let pts = lattice.points();
    let vals: Vec<f64> = pts
        .iter()
        .map(|x| fitzpatrick_value(g, x, vstar))
        .collect::<Result<_>>()?;
    let shape = lattice.shape();

    let mut worst_mid: f64 = 0.0;
    let mut midpoint = |a: &[usize], b: &[usize]| {
        if a.iter().zip(b).any(|(i, j)| (i + j) % 2 == 1) {
            return;
        }
        let m: Vec<usize> = a.iter().zip(b).map(|(i, j)| (i + j) / 2).collect();
        let excess = vals[lattice.ravel(&m)] - 0.5 * (vals[lattice.ravel(a)] + vals[lattice.ravel(b)]);
        worst_mid = worst_mid.max(excess);
    };
    let n = pts.len();
    if n.saturating_mul(n) <= EXHAUSTIVE_PAIRS {
        for i in 0..n {
            let a = lattice.unravel(i);
            for j in i + 1..n {
                midpoint(&a, &lattice.unravel(j));
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..SAMPLED_PAIRS {
            let a: Vec<usize> = shape.iter().map(|&k| rng.gen_range(0..k)).collect();
            let b: Vec<usize> = shape.iter().map(|&k| rng.gen_range(0..k)).collect();
            midpoint(&a, &b);
        }
    }

    let mut worst_sub: f64 = 0.0;
    let mut witness = None;
    let mut checked = 0;
    for p in g.pairs() {
        let Some(flat) = lattice.node_of(&p.x) else { continue };
        checked += 1;
        let gx = vals[flat];
        for (y, gy) in pts.iter().zip(&vals) {
            let v = gx + y.sub(&p.x).dot(&p.xstar) - gy;
            if v > worst_sub {
                worst_sub = v;
                witness = Some((p.clone(), y.clone()));
            }
        }
    }
    let convex_ok = worst_mid <= tol;
    let subgradient_ok = worst_sub <= tol;
    Ok(TheoremAReport {
        convex_ok,
        subgradient_ok,
        passed: convex_ok && subgradient_ok,
        worst_midpoint_excess: worst_mid,
        worst_subgradient_violation: worst_sub,
        witness,
        pairs_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexfn::{Axis, ConvexFunction};
    use crate::operators::sample_subdifferential;

    fn line(min: f64, max: f64, n: usize) -> Lattice {
        Lattice::new(vec![Axis::new(min, max, n).unwrap()]).unwrap()
    }

    #[test]
    fn abs_passes() {
        let l = line(-3.0, 3.0, 61);
        let g = sample_subdifferential(&ConvexFunction::abs(), &l, 1e-9).unwrap();
        let r = theorem_a_suite(&g, &Vector::from(1.0), &l, 1e-9).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.pairs_checked > 0);
    }

    #[test]
    fn identity_fails_subgradient_inequality() {
        let l = line(-2.0, 2.0, 41);
        let g = OperatorGraph::new(
            "id",
            l.points().into_iter().map(|p| DualPair { x: p.clone(), xstar: p }).collect(),
        )
        .unwrap();
        let r = theorem_a_suite(&g, &Vector::from(0.0), &l, 1e-9).unwrap();
        assert!(r.convex_ok);
        assert!(!r.subgradient_ok);
        assert!(r.worst_subgradient_violation >= 0.25);
    }

    #[test]
    fn single_pair_and_bad_image() {
        let g = OperatorGraph::from_scalars("", &[(0.5, 2.0)]).unwrap();
        let l = line(-1.0, 1.0, 5);
        assert!(theorem_a_suite(&g, &Vector::from(2.0), &l, 1e-9).unwrap().passed);
        assert!(theorem_a_suite(&g, &Vector::from(1.0), &l, 1e-9).is_err());
    }
}
