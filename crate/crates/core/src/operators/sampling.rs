use super::graph::{DualPair, OperatorGraph};
use crate::convexfn::{ConvexFunction, Lattice, VkcSpec};
use crate::error::{check_dim, Error, Result};
use crate::vector::Vector;

/// Samples `Gr(∂f)` at the lattice nodes lying in `dom f`.
///
/// Each node contributes one pair per listed subgradient (vertices of the bounded
/// part of `∂f(x)`) and, when there are several, one more for their centroid.
pub fn sample_subdifferential(f: &ConvexFunction, lattice: &Lattice, tol: f64) -> Result<OperatorGraph> {
    check_dim(f.dim(), lattice.dim())?;
    let mut pairs = Vec::new();
    for x in lattice.points() {
        if f.eval_tol(&x, tol)?.is_infinite() {
            continue;
        }
        let sd = match f.subdifferential(&x, tol) {
            Ok(sd) => sd,
            Err(Error::OutsideDomain) => continue,
            Err(e) => return Err(e),
        };
        push_node(&mut pairs, &x, sd.vertices());
    }
    if pairs.is_empty() {
        return Err(Error::Empty("lattice points in the domain"));
    }
    OperatorGraph::new("subdifferential", pairs)
}

pub fn sample_subdifferential_vkc(spec: &VkcSpec, lattice: &Lattice, tol: f64) -> Result<OperatorGraph> {
    sample_subdifferential(&ConvexFunction::Vkc(Box::new(spec.clone())), lattice, tol)
}

fn push_node(pairs: &mut Vec<DualPair>, x: &Vector, subgradients: &[Vector]) {
    for s in subgradients {
        pairs.push(DualPair {
            x: x.clone(),
            xstar: s.clone(),
        });
    }
    if subgradients.len() > 1 {
        if let Some(c) = Vector::mean(subgradients) {
            pairs.push(DualPair { x: x.clone(), xstar: c });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexfn::{Axis, FieldGrid};
    use crate::extended::Extended;
    use crate::geometry::{PolyhedralCone, Polytope};

    fn line(min: f64, max: f64, n: usize) -> Lattice {
        Lattice::new(vec![Axis::new(min, max, n).unwrap()]).unwrap()
    }

    #[test]
    fn abs_sample() {
        let g = sample_subdifferential(&ConvexFunction::abs(), &line(-2.0, 2.0, 5), 1e-9).unwrap();
        let got: Vec<(f64, f64)> = g.pairs().iter().map(|p| (p.x[0], p.xstar[0])).collect();
        let mut want = vec![(-2.0, -1.0), (-1.0, -1.0), (0.0, -1.0), (0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 1.0)];
        let mut got_sorted = got.clone();
        got_sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(got_sorted, want);
    }

    #[test]
    fn grid_slopes_approximate_identity() {
        let l = line(-2.0, 2.0, 41);
        let f = ConvexFunction::GridSampled(
            FieldGrid::from_fn(l.clone(), |x| Ok(Extended::Finite(0.5 * x[0] * x[0]))).unwrap(),
        );
        let g = sample_subdifferential(&f, &l, 1e-9).unwrap();
        assert!(g.pairs().iter().all(|p| (p.x[0] - p.xstar[0]).abs() <= 0.05 + 1e-12));
    }

    #[test]
    fn disjoint_lattice_is_an_error() {
        let f = ConvexFunction::IndicatorPolyhedron {
            set: Polytope::new(vec![Vector::from(5.0), Vector::from(6.0)]).unwrap(),
            cone: PolyhedralCone::zero(1),
        };
        assert!(matches!(
            sample_subdifferential(&f, &line(-1.0, 1.0, 5), 1e-9),
            Err(Error::Empty(_))
        ));
    }
}
