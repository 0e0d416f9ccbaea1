use rayon::prelude::*;
use serde::Serialize;

use super::gap::direct_gap;
use super::value::fitzpatrick_value;
use crate::convexfn::{conjugate_vkc, ConvexFunction, Lattice, VkcSpec};
use crate::error::{check_dim, Error, Result};
use crate::extended::Extended;
use crate::operators::{sample_subdifferential_vkc, DualPair, OperatorGraph};

/// Two points `((x, x*), (y, y*))` of `E × E*`.
pub type ProbePair = (DualPair, DualPair);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithSingleton,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingletonVerdict {
    /// `min F(x, x*) + F(y, y*) − ⟨x, y*⟩ − ⟨y, x*⟩` over the probes.
    pub min_residual: f64,
    pub witness_pair: ProbePair,
    pub verdict: Verdict,
    pub probes: usize,
}

/// Evaluates the two-point inequality of a singleton Fitzpatrick family at every probe.
///
/// The verdict is `Refuted` exactly when `min_residual < −tol`. Callers decide which
/// probes are trustworthy: the sampled `F` underestimates the true one, so a negative
/// residual is conclusive only where sampled and true `F` agree.
pub fn singleton_test(g: &OperatorGraph, probes: &[ProbePair], tol: f64) -> Result<SingletonVerdict> {
    if probes.is_empty() {
        return Err(Error::Empty("singleton probes"));
    }
    let residuals = probes
        .par_iter()
        .map(|(a, b)| {
            Ok(fitzpatrick_value(g, &a.x, &a.xstar)? + fitzpatrick_value(g, &b.x, &b.xstar)?
                - a.x.dot(&b.xstar)
                - b.x.dot(&a.xstar))
        })
        .collect::<Result<Vec<f64>>>()?;
    let (k, &min_residual) = residuals
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("probes are nonempty");
    Ok(SingletonVerdict {
        min_residual,
        witness_pair: probes[k].clone(),
        verdict: if min_residual < -tol {
            Verdict::Refuted
        } else {
            Verdict::ConsistentWithSingleton
        },
        probes: probes.len(),
    })
}

/// All ordered pairs of graph points.
pub fn graph_probes(g: &OperatorGraph) -> Vec<ProbePair> {
    let p = g.pairs();
    p.iter()
        .flat_map(|a| p.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsOutcome {
    pub eps: f64,
    pub failures: usize,
    pub passed: bool,
}

/// Search for ε-decompositions through the sampled graph at each probe.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub outcomes: Vec<EpsOutcome>,
    /// Largest, over probes, of the best decomposition value.
    pub worst_gap: f64,
    pub worst_probe: Option<DualPair>,
    /// Graph pair achieving the best decomposition at `worst_probe`.
    pub worst_witness: Option<DualPair>,
    pub probes_used: usize,
    /// Probes outside `dom f × dom f*`.
    pub probes_skipped: usize,
    pub passed: bool,
}

/// For every probe `(x, x*) ∈ dom f × dom f*` and every `ε`, looks for `(y, y*) ∈ G` with
/// `[f(x) + f*(y*) − ⟨x, y*⟩] + [f(y) + f*(x*) − ⟨y, x*⟩] ≤ ε`.
pub fn singleton_criterion(
    f: &ConvexFunction,
    f_star: &ConvexFunction,
    g: &OperatorGraph,
    probes: &[DualPair],
    eps: &[f64],
    tol: f64,
) -> Result<CriterionReport> {
    if let Some(e) = eps.iter().find(|e| e.is_nan() || **e <= 0.0) {
        return Err(Error::invalid(format!("eps values must be positive, got {e}")));
    }
    if eps.is_empty() {
        return Err(Error::Empty("eps values"));
    }
    let results = probes
        .par_iter()
        .map(|p| {
            let in_dom = f.eval_tol(&p.x, tol)?.is_finite() && f_star.eval_tol(&p.xstar, tol)?.is_finite();
            if !in_dom {
                return Ok(None);
            }
            direct_gap(f, f_star, g, &p.x, &p.xstar, tol).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut used = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = None;
    let mut gaps = Vec::new();
    for (i, r) in results.iter().enumerate() {
        let Some((value, witness)) = r else { continue };
        used += 1;
        let v = match value {
            Extended::Finite(v) => *v,
            Extended::PosInf => f64::INFINITY,
        };
        gaps.push(v);
        if v > worst {
            worst = v;
            worst_at = Some((i, *witness));
        }
    }
    let outcomes: Vec<EpsOutcome> = eps
        .iter()
        .map(|&e| {
            let failures = gaps.iter().filter(|&&v| v > e + tol).count();
            EpsOutcome {
                eps: e,
                failures,
                passed: failures == 0,
            }
        })
        .collect();
    Ok(CriterionReport {
        passed: used > 0 && outcomes.iter().all(|o| o.passed),
        worst_gap: if used > 0 { worst } else { 0.0 },
        worst_probe: worst_at.map(|(i, _)| probes[i].clone()),
        worst_witness: worst_at.and_then(|(_, w)| w.map(|j| g.pairs()[j].clone())),
        probes_used: used,
        probes_skipped: probes.len() - used,
        outcomes,
    })
}

/// [`singleton_criterion`] for a structural spec with its exact conjugate, the graph
/// sampled on `graph_lattice` and the probes taken from the nodes of `probe_lattice`
/// (over `E × E*`).
pub fn singleton_criterion_vkc(
    spec: &VkcSpec,
    eps: &[f64],
    probe_lattice: &Lattice,
    graph_lattice: &Lattice,
    tol: f64,
) -> Result<CriterionReport> {
    let d = spec.dim();
    check_dim(2 * d, probe_lattice.dim())?;
    let f = ConvexFunction::Vkc(Box::new(spec.clone()));
    let f_star = conjugate_vkc(spec);
    let g = sample_subdifferential_vkc(spec, graph_lattice, tol)?;
    let probes: Vec<DualPair> = probe_lattice
        .points()
        .into_iter()
        .map(|p| {
            let (x, xstar) = p.split_at(d);
            DualPair { x, xstar }
        })
        .collect();
    singleton_criterion(&f, &f_star, &g, &probes, eps, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexfn::{Axis, FieldGrid};
    use crate::geometry::{PolyhedralCone, Polytope};
    use crate::vector::Vector;

    fn pair(x: f64, s: f64) -> DualPair {
        DualPair::from((x, s))
    }

    fn identity() -> OperatorGraph {
        OperatorGraph::from_scalars("id", &(-8..=8).map(|i| (0.25 * i as f64, 0.25 * i as f64)).collect::<Vec<_>>())
            .unwrap()
    }

    fn abs_graph() -> OperatorGraph {
        OperatorGraph::from_scalars(
            "abs",
            &[(-2.0, -1.0), (-1.0, -1.0), (0.0, -1.0), (0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 1.0)],
        )
        .unwrap()
    }

    fn abs_spec() -> VkcSpec {
        VkcSpec::untilted(
            Polytope::point(Vector::from(0.0)),
            Polytope::new(vec![Vector::from(-1.0), Vector::from(1.0)]).unwrap(),
            PolyhedralCone::whole_space(1),
        )
        .unwrap()
    }

    #[test]
    fn identity_refuted() {
        let v = singleton_test(&identity(), &[(pair(1.0, -1.0), pair(-1.0, 1.0))], 1e-9).unwrap();
        assert!((v.min_residual + 2.0).abs() < 1e-12);
        assert_eq!(v.verdict, Verdict::Refuted);
    }

    #[test]
    fn abs_probe_is_consistent() {
        let v = singleton_test(&abs_graph(), &[(pair(2.0, 0.5), pair(-1.0, -0.7))], 1e-9).unwrap();
        assert!((v.min_residual - 4.9).abs() < 1e-12);
        assert_eq!(v.verdict, Verdict::ConsistentWithSingleton);
        let g = abs_graph();
        let all = singleton_test(&g, &graph_probes(&g), 1e-9).unwrap();
        assert_eq!(all.verdict, Verdict::ConsistentWithSingleton);
        assert_eq!(all.probes, 49);
    }

    #[test]
    fn empty_probes_error() {
        assert!(singleton_test(&abs_graph(), &[], 1e-9).is_err());
    }

    #[test]
    fn abs_criterion_passes() {
        let probe = Lattice::new(vec![Axis::new(-3.0, 3.0, 13).unwrap(), Axis::new(-1.0, 1.0, 9).unwrap()]).unwrap();
        let graph = Lattice::new(vec![Axis::new(-3.0, 3.0, 13).unwrap()]).unwrap();
        let r = singleton_criterion_vkc(&abs_spec(), &[0.1], &probe, &graph, 1e-9).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.probes_skipped, 0);
        assert!(singleton_criterion_vkc(&abs_spec(), &[0.0], &probe, &graph, 1e-9).is_err());
    }

    #[test]
    fn half_square_criterion_fails() {
        let l = Lattice::new(vec![Axis::new(-3.0, 3.0, 121).unwrap()]).unwrap();
        let q = ConvexFunction::GridSampled(
            FieldGrid::from_fn(l.clone(), |x| Ok(Extended::Finite(0.5 * x[0] * x[0]))).unwrap(),
        );
        let g = OperatorGraph::new(
            "id",
            l.points().into_iter().map(|p| DualPair { x: p.clone(), xstar: p }).collect(),
        )
        .unwrap();
        let r = singleton_criterion(&q, &q, &g, &[pair(1.0, 0.0)], &[0.1], 1e-9).unwrap();
        assert!(!r.passed);
        assert!((r.worst_gap - 0.25).abs() < 1e-9);
    }
}
