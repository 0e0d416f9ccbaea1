//! Discrete Legendre–Fenchel transform on box lattices.
//!
//! The transform is separable: `f*(s) = sup_{x_1} [s_1 x_1 + sup_{x_2} (s_2 x_2 + … − f(x))]`,
//! so it is computed one axis at a time. Each 1-d pass takes the upper concave hull
//! of the line and sweeps the sorted dual nodes against its edge slopes.

use rayon::prelude::*;

use super::function::ConvexFunction;
use super::grid::{FieldGrid, Lattice};
use crate::error::{check_dim, Error, Result};
use crate::extended::Extended;

/// Values of the partial sup `q`; `NegInf` stands for `f = +∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Ext3 {
    NegInf,
    Finite(f64),
    PosInf,
}

/// Samples `f` on `primal` and transforms it onto `dual`.
///
/// The primal lattice should cover the effective domain of `f`; cells whose
/// maximiser sits on the primal box boundary while the dual slope points further
/// outward are reported as `+∞`.
pub fn conjugate_grid(
    f: &ConvexFunction,
    primal: &Lattice,
    dual: &Lattice,
    tol: f64,
) -> Result<FieldGrid> {
    check_dim(f.dim(), primal.dim())?;
    let sampled = FieldGrid::from_fn(primal.clone(), |x| f.eval_tol(x, tol))?;
    legendre_grid(&sampled, dual, tol)
}

/// Discrete conjugate of a sampled field onto `dual`.
pub fn legendre_grid(f: &FieldGrid, dual: &Lattice, tol: f64) -> Result<FieldGrid> {
    let primal = f.lattice();
    check_dim(primal.dim(), dual.dim())?;
    let mut shape = primal.shape();
    let mut data: Vec<Ext3> = f
        .values()
        .iter()
        .map(|v| match v {
            Extended::Finite(x) => Ext3::Finite(-x),
            Extended::PosInf => Ext3::NegInf,
        })
        .collect();
    for axis in 0..primal.dim() {
        let xs = primal.axes()[axis].coords();
        let ss = dual.axes()[axis].coords();
        data = transform_axis(&data, &shape, axis, &xs, &ss, tol);
        shape[axis] = ss.len();
    }
    let values = data
        .into_iter()
        .map(|q| match q {
            Ext3::Finite(v) => Ok(Extended::Finite(v)),
            Ext3::PosInf => Ok(Extended::PosInf),
            Ext3::NegInf => Err(Error::invalid(
                "function is +inf on the whole primal lattice",
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    FieldGrid::new(dual.clone(), values)
}

/// Applies the 1-d transform along `axis` to every line of `data`.
fn transform_axis(
    data: &[Ext3],
    shape: &[usize],
    axis: usize,
    xs: &[f64],
    ss: &[f64],
    tol: f64,
) -> Vec<Ext3> {
    let inner: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let n = shape[axis];
    let m = ss.len();
    let lines: Vec<Vec<Ext3>> = (0..outer * inner)
        .into_par_iter()
        .map(|line| {
            let (o, i) = (line / inner, line % inner);
            let q: Vec<Ext3> = (0..n).map(|k| data[(o * n + k) * inner + i]).collect();
            transform_line(xs, &q, ss, tol)
        })
        .collect();
    let mut out = vec![Ext3::NegInf; outer * m * inner];
    for (line, vals) in lines.into_iter().enumerate() {
        let (o, i) = (line / inner, line % inner);
        for (k, v) in vals.into_iter().enumerate() {
            out[(o * m + k) * inner + i] = v;
        }
    }
    out
}

/// `sup_k s·x_k + q_k` for every `s` in `ss` (ascending).
fn transform_line(xs: &[f64], q: &[Ext3], ss: &[f64], tol: f64) -> Vec<Ext3> {
    if q.contains(&Ext3::PosInf) {
        return vec![Ext3::PosInf; ss.len()];
    }
    let hull = upper_hull(xs, q);
    if hull.is_empty() {
        return vec![Ext3::NegInf; ss.len()];
    }
    let last_node = xs.len() - 1;
    // u[k] is the dual slope at which the maximiser moves from hull[k] to hull[k+1].
    let u: Vec<f64> = hull
        .windows(2)
        .map(|w| -(w[1].1 - w[0].1) / (xs[w[1].0] - xs[w[0].0]))
        .collect();
    let mut out = Vec::with_capacity(ss.len());
    let mut k = 0;
    for &s in ss {
        while k < u.len() && s > u[k] {
            k += 1;
        }
        let (idx, val) = hull[k];
        let beyond = hull.len() > 1
            && ((idx == 0 && k == 0 && s < u[0] - tol)
                || (idx == last_node && k == u.len() && s > u[u.len() - 1] + tol));
        if beyond {
            out.push(Ext3::PosInf);
        } else {
            out.push(Ext3::Finite(s * xs[idx] + val));
        }
    }
    out
}

/// Upper concave hull of the finite points `(x_k, q_k)`, as (index, value), left to right.
fn upper_hull(xs: &[f64], q: &[Ext3]) -> Vec<(usize, f64)> {
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for (k, v) in q.iter().enumerate() {
        let Ext3::Finite(y) = *v else { continue };
        while hull.len() >= 2 {
            let (i0, y0) = hull[hull.len() - 2];
            let (i1, y1) = hull[hull.len() - 1];
            // Drop the middle point when it lies on or below the chord.
            let cross = (xs[i1] - xs[i0]) * (y - y0) - (y1 - y0) * (xs[k] - xs[i0]);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((k, y));
    }
    hull
}

/// Error scale of the grid conjugate: `Σ_a (h_a / 2)(max |s_a| + L_a)`, with `h_a` the
/// primal spacing, `s_a` ranging over the dual axis and `L_a` the largest finite
/// difference quotient of the sampled values along axis `a`.
pub fn grid_modulus(f: &FieldGrid, dual: &Lattice) -> Result<f64> {
    check_dim(f.dim(), dual.dim())?;
    Ok(f
        .lattice()
        .axes()
        .iter()
        .zip(dual.axes())
        .enumerate()
        .map(|(a, (p, d))| {
            let smax = d.min.abs().max(d.max.abs());
            0.5 * p.spacing() * (smax + f.lipschitz_along(a))
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexfn::grid::Axis;
    use crate::geometry::{PolyhedralCone, Polytope};
    use crate::vector::Vector;

    fn line(min: f64, max: f64, n: usize) -> Lattice {
        Lattice::new(vec![Axis::new(min, max, n).unwrap()]).unwrap()
    }

    fn at(g: &FieldGrid, s: f64) -> Extended {
        g.interpolate(&Vector::from(s)).unwrap()
    }

    #[test]
    fn half_square() {
        let f = FieldGrid::from_fn(line(-4.0, 4.0, 401), |x| Ok(Extended::Finite(0.5 * x[0] * x[0])))
            .unwrap();
        let g = legendre_grid(&f, &line(-2.0, 2.0, 41), 1e-9).unwrap();
        let v = at(&g, 1.0).finite().unwrap();
        assert!((v - 0.5).abs() < 1e-3);
    }

    #[test]
    fn abs_flags_outside_slope_range() {
        let g = conjugate_grid(&ConvexFunction::abs(), &line(-3.0, 3.0, 61), &line(-2.0, 2.0, 9), 1e-9)
            .unwrap();
        assert!(at(&g, 0.5).finite().unwrap().abs() < 1e-6);
        assert_eq!(at(&g, 1.5), Extended::PosInf);
        assert_eq!(at(&g, -1.5), Extended::PosInf);
        assert!(at(&g, 1.0).finite().unwrap().abs() < 1e-12);
    }

    #[test]
    fn point_indicator() {
        let f = ConvexFunction::IndicatorPolyhedron {
            set: Polytope::point(Vector::from(0.0)),
            cone: PolyhedralCone::zero(1),
        };
        let g = conjugate_grid(&f, &line(-1.0, 1.0, 21), &line(-5.0, 5.0, 11), 1e-9).unwrap();
        assert!(g.values().iter().all(|v| *v == Extended::ZERO));
    }

    #[test]
    fn everywhere_infinite_is_an_error() {
        let f = FieldGrid::new(line(0.0, 1.0, 3), vec![Extended::PosInf; 3]).unwrap();
        assert!(legendre_grid(&f, &line(0.0, 1.0, 3), 1e-9).is_err());
    }

    #[test]
    fn separable_two_d() {
        // f(x, y) = |x| + y²/2 has f* = i_{[−1,1]}(s) + t²/2.
        let p = Lattice::new(vec![Axis::new(-3.0, 3.0, 61).unwrap(), Axis::new(-3.0, 3.0, 301).unwrap()])
            .unwrap();
        let f = FieldGrid::from_fn(p, |x| Ok(Extended::Finite(x[0].abs() + 0.5 * x[1] * x[1]))).unwrap();
        let d = Lattice::cube(Axis::new(-1.5, 1.5, 7).unwrap(), 2);
        let g = legendre_grid(&f, &d, 1e-9).unwrap();
        let m = grid_modulus(&f, &d).unwrap();
        for (i, v) in g.values().iter().enumerate() {
            let s = d.point(i);
            if s[0].abs() > 1.0 {
                assert_eq!(*v, Extended::PosInf);
            } else {
                assert!((v.finite().unwrap() - 0.5 * s[1] * s[1]).abs() <= m);
            }
        }
    }

    #[test]
    fn biconjugate_of_convex_grid() {
        let p = line(-2.0, 2.0, 81);
        let f = FieldGrid::from_fn(p.clone(), |x| Ok(Extended::Finite((x[0] - 0.3).abs() + x[0] * x[0])))
            .unwrap();
        let d = line(-6.0, 6.0, 241);
        let g = legendre_grid(&f, &d, 1e-9).unwrap();
        let ff = legendre_grid(&g, &p, 1e-9).unwrap();
        let m = grid_modulus(&f, &d).unwrap() + grid_modulus(&g, &p).unwrap();
        for (a, b) in f.values().iter().zip(ff.values()) {
            assert!((a.finite().unwrap() - b.finite().unwrap()).abs() <= m);
        }
    }
}
