//! Infimal convolution of sampled fields.

use rayon::prelude::*;

use super::grid::{Axis, FieldGrid, Lattice};
use crate::error::{Error, Result};
use crate::extended::Extended;

/// `(f □ g)(x) = min_{y + z = x} f(y) + g(z)` over lattice nodes.
///
/// Both lattices must have the same dimension and the same spacing per axis; the
/// result lives on the Minkowski sum of the two boxes with `n_f + n_g − 1` nodes
/// per axis. The minimisation is exhaustive.
pub fn inf_convolution_grid(f: &FieldGrid, g: &FieldGrid) -> Result<FieldGrid> {
    let (lf, lg) = (f.lattice(), g.lattice());
    if lf.dim() != lg.dim() {
        return Err(Error::LatticeMismatch(format!(
            "dimensions {} and {}",
            lf.dim(),
            lg.dim()
        )));
    }
    let mut axes = Vec::with_capacity(lf.dim());
    for (k, (a, b)) in lf.axes().iter().zip(lg.axes()).enumerate() {
        let (ha, hb) = (a.spacing(), b.spacing());
        if (ha - hb).abs() > 1e-9 * ha.max(hb) {
            return Err(Error::LatticeMismatch(format!(
                "axis {k} spacings {ha} and {hb} differ"
            )));
        }
        axes.push(Axis::new(a.min + b.min, a.max + b.max, a.count + b.count - 1)?);
    }
    let out = Lattice::new(axes)?;
    let gf: Vec<(Vec<usize>, f64)> = finite_nodes(f);
    let values = (0..out.len())
        .into_par_iter()
        .map(|flat| {
            let target = out.unravel(flat);
            let mut best = Extended::PosInf;
            for (i, fv) in &gf {
                let mut j = Vec::with_capacity(i.len());
                let mut ok = true;
                for (k, (&t, &ik)) in target.iter().zip(i).enumerate() {
                    if t < ik || t - ik >= lg.axes()[k].count {
                        ok = false;
                        break;
                    }
                    j.push(t - ik);
                }
                if !ok {
                    continue;
                }
                if let Extended::Finite(gv) = g.value(lg.ravel(&j)) {
                    best = best.min(Extended::Finite(fv + gv));
                }
            }
            best
        })
        .collect();
    FieldGrid::new(out, values)
}

fn finite_nodes(f: &FieldGrid) -> Vec<(Vec<usize>, f64)> {
    f.values()
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.finite().map(|x| (f.lattice().unravel(i), x)))
        .collect()
}
