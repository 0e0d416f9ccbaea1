use super::cyclic::is_cyclically_monotone;
use crate::convexfn::ConvexFunction;
use crate::error::{Error, Result};
use crate::operators::OperatorGraph;

/// Rockafellar's construction `f(x) = max_i d_i + ⟨x − a_i, a_i*⟩`, where `d_i` is the
/// longest-path weight from `base` to `i` under `w(i → j) = ⟨a_j − a_i, a_i*⟩`.
///
/// Potentials use `|G| − 1` relaxation rounds in index order, updating only on strict
/// improvement. Graphs with a positive cycle (beyond `tol` per edge) are rejected.
pub fn rockafellar_potential(g: &OperatorGraph, base: usize, tol: f64) -> Result<ConvexFunction> {
    let m = g.len();
    if base >= m {
        return Err(Error::invalid(format!("base index {base} out of range for {m} pairs")));
    }
    let check = is_cyclically_monotone(g, tol);
    if let Some(w) = check.witness {
        return Err(Error::PositiveCycle(w));
    }
    let p = g.pairs();
    let mut d = vec![f64::NEG_INFINITY; m];
    d[base] = 0.0;
    for _ in 1..m {
        let mut changed = false;
        for i in 0..m {
            if d[i] == f64::NEG_INFINITY {
                continue;
            }
            for j in 0..m {
                let cand = d[i] + p[j].x.sub(&p[i].x).dot(&p[i].xstar);
                if cand > d[j] {
                    d[j] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let slopes = p.iter().map(|q| q.xstar.clone()).collect();
    let intercepts = p.iter().zip(&d).map(|(q, di)| di - q.coupling()).collect();
    ConvexFunction::affine_max(slopes, intercepts)
}
