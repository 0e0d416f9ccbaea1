use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::OperatorGraph;

/// An offending cycle: graph indices in visiting order and `Σ ⟨a_{i+1} − a_i, a_i*⟩`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleWitness {
    pub indices: Vec<usize>,
    pub cycle_sum: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityVerdict {
    pub monotone: bool,
    pub witness: Option<CycleWitness>,
}

/// Limits on exhaustive tuple enumeration. Exceeding either is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnumerationCaps {
    pub max_n: usize,
    pub max_tuples: u64,
}

impl Default for EnumerationCaps {
    /// `n ≤ 6` and `|G|^n ≤ 64 000` (so `|G| ≤ 40` at `n = 3`).
    fn default() -> Self {
        EnumerationCaps {
            max_n: 6,
            max_tuples: 64_000,
        }
    }
}

/// `w[i][j] = ⟨a_j − a_i, a_i*⟩`.
fn edge_weights(g: &OperatorGraph) -> Vec<Vec<f64>> {
    let p = g.pairs();
    p.iter()
        .map(|ai| p.iter().map(|aj| aj.x.sub(&ai.x).dot(&ai.xstar)).collect())
        .collect()
}

/// The cycle sum of `indices`, closed back to the first index.
pub fn cycle_sum(g: &OperatorGraph, indices: &[usize]) -> f64 {
    let p = g.pairs();
    let n = indices.len();
    (0..n)
        .map(|k| {
            let (i, j) = (indices[k], indices[(k + 1) % n]);
            p[j].x.sub(&p[i].x).dot(&p[i].xstar)
        })
        .sum()
}

pub fn is_n_monotone(g: &OperatorGraph, n: usize, tol: f64) -> Result<MonotonicityVerdict> {
    is_n_monotone_with(g, n, tol, EnumerationCaps::default())
}

/// Exhaustive check over all `|G|^n` tuples (repetitions allowed); a tuple fails
/// when its cycle sum exceeds `n·tol`. The witness is a tuple of maximal sum.
pub fn is_n_monotone_with(
    g: &OperatorGraph,
    n: usize,
    tol: f64,
    caps: EnumerationCaps,
) -> Result<MonotonicityVerdict> {
    if n < 2 {
        return Err(Error::invalid(format!("cycle length must be at least 2, got {n}")));
    }
    if n > caps.max_n {
        return Err(Error::CapExceeded(format!("n = {n} exceeds max_n = {}", caps.max_n)));
    }
    let m = g.len();
    let tuples = (m as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if tuples > caps.max_tuples {
        return Err(Error::CapExceeded(format!(
            "{m}^{n} = {tuples} tuples exceeds max_tuples = {}",
            caps.max_tuples
        )));
    }
    let w = edge_weights(g);
    let best = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut path = vec![first; n];
            let mut best = (f64::NEG_INFINITY, path.clone());
            dfs(&w, &mut path, 1, 0.0, &mut best);
            best
        })
        // Deterministic reduction: larger sum wins, ties to the smaller first index.
        .reduce_with(|a, b| if b.0 > a.0 { b } else { a })
        .expect("graph is nonempty");
    let (sum, indices) = best;
    if sum > n as f64 * tol {
        Ok(MonotonicityVerdict {
            monotone: false,
            witness: Some(CycleWitness {
                indices,
                cycle_sum: sum,
            }),
        })
    } else {
        Ok(MonotonicityVerdict {
            monotone: true,
            witness: None,
        })
    }
}

fn dfs(w: &[Vec<f64>], path: &mut Vec<usize>, depth: usize, acc: f64, best: &mut (f64, Vec<usize>)) {
    let n = path.len();
    let prev = path[depth - 1];
    if depth == n {
        let total = acc + w[prev][path[0]];
        if total > best.0 {
            best.0 = total;
            best.1.clone_from(path);
        }
        return;
    }
    for j in 0..w.len() {
        path[depth] = j;
        dfs(w, path, depth + 1, acc + w[prev][j], best);
    }
}

/// Bellman–Ford search for a cycle with `Σ (w − tol) > 0` on the complete digraph.
pub fn is_cyclically_monotone(g: &OperatorGraph, tol: f64) -> MonotonicityVerdict {
    let w = edge_weights(g);
    let m = w.len();
    let mut dist = vec![0.0f64; m];
    let mut pred: Vec<Option<usize>> = vec![None; m];
    let mut last_update = None;
    for _ in 0..m {
        last_update = None;
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let cand = dist[i] + w[i][j] - tol;
                if cand > dist[j] {
                    dist[j] = cand;
                    pred[j] = Some(i);
                    last_update = Some(j);
                }
            }
        }
        if last_update.is_none() {
            break;
        }
    }
    let Some(mut v) = last_update else {
        return MonotonicityVerdict {
            monotone: true,
            witness: None,
        };
    };
    for _ in 0..m {
        v = pred[v].expect("updated vertices have predecessors");
    }
    let start = v;
    let mut cycle = vec![start];
    let mut u = pred[start].expect("cycle vertex has a predecessor");
    while u != start {
        cycle.push(u);
        u = pred[u].expect("cycle vertex has a predecessor");
    }
    cycle.reverse();
    let sum = cycle_sum(g, &cycle);
    MonotonicityVerdict {
        monotone: false,
        witness: Some(CycleWitness {
            indices: cycle,
            cycle_sum: sum,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{circle_points, linear_graph, LinearOperator};
    use crate::vector::Vector;
    use std::f64::consts::FRAC_PI_2;

    fn three_points() -> OperatorGraph {
        let pts = [Vector::from([1.0, 0.0]), Vector::from([0.0, 1.0]), Vector::from([-1.0, 0.0])];
        linear_graph(&LinearOperator::rotation(FRAC_PI_2), &pts).unwrap()
    }

    #[test]
    fn quarter_turn_is_monotone_not_three_monotone() {
        let g = three_points();
        assert!(is_n_monotone(&g, 2, 1e-9).unwrap().monotone);
        let v = is_n_monotone(&g, 3, 1e-9).unwrap();
        assert!(!v.monotone);
        let wit = v.witness.unwrap();
        assert!((wit.cycle_sum - 2.0).abs() < 1e-12);
        assert!((cycle_sum(&g, &wit.indices) - wit.cycle_sum).abs() < 1e-12);
        let c = is_cyclically_monotone(&g, 1e-9);
        assert!(!c.monotone);
        assert!(c.witness.unwrap().cycle_sum > 0.0);
    }

    #[test]
    fn identity_is_cyclically_monotone() {
        let g = OperatorGraph::from_scalars("id", &(-4..=4).map(|i| (i as f64, i as f64)).collect::<Vec<_>>())
            .unwrap();
        for n in 2..=4 {
            assert!(is_n_monotone(&g, n, 1e-9).unwrap().monotone);
        }
        assert!(is_cyclically_monotone(&g, 1e-9).monotone);
    }

    #[test]
    fn caps_refuse() {
        let g = linear_graph(&LinearOperator::identity(2), &circle_points(41)).unwrap();
        assert!(matches!(is_n_monotone(&g, 3, 1e-9), Err(Error::CapExceeded(_))));
        assert!(matches!(is_n_monotone(&three_points(), 7, 1e-9), Err(Error::CapExceeded(_))));
        assert!(is_n_monotone(&three_points(), 1, 1e-9).is_err());
    }

    #[test]
    fn circle_witness_is_a_positive_cycle() {
        let g = linear_graph(&LinearOperator::rotation(FRAC_PI_2), &circle_points(12)).unwrap();
        let v = is_cyclically_monotone(&g, 1e-9);
        let w = v.witness.unwrap();
        assert!(w.cycle_sum > w.indices.len() as f64 * 1e-9);
    }
}
