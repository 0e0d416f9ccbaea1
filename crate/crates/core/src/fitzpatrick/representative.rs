use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::convexfn::FieldGrid;
use crate::error::{check_dim, Result};
use crate::extended::Extended;
use crate::operators::{DualPair, OperatorGraph};
use crate::vector::Vector;

/// Outcome of the three representative-function axioms on a sampled `h`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepresentativeReport {
    /// Convexity: no midpoint violation on the sampled node pairs.
    pub r1_convex_ok: bool,
    /// `h ≥ ⟨x, x*⟩` at every lattice node.
    pub r2_minorized_ok: bool,
    /// `h = ⟨a, a*⟩` at every graph pair.
    pub r3_graph_equality_ok: bool,
    pub worst_violation: f64,
    /// One offending pair per failed axiom (for R1, the two endpoints).
    pub witnesses: Vec<DualPair>,
    /// Graph pairs that were not lattice nodes and were checked by interpolation.
    pub off_lattice_pairs: usize,
}

/// Checks R1–R3 for a field over `E × E*` (coordinates `x` first, then `x*`).
///
/// R1 draws `midpoint_samples` random node pairs whose index offsets are even in
/// every axis, so the midpoint is again a node. Off-lattice graph pairs in R3 are
/// interpolated and compared with a tolerance widened by `Σ_a h_a L_a / 2`.
pub fn representative_check(
    h: &FieldGrid,
    g: &OperatorGraph,
    tol: f64,
    midpoint_samples: usize,
    seed: u64,
) -> Result<RepresentativeReport> {
    let d = g.dim();
    check_dim(2 * d, h.dim())?;
    let lattice = h.lattice();
    let coupling = |p: &Vector| {
        let (x, xs) = p.split_at(d);
        x.dot(&xs)
    };
    let as_pair = |p: &Vector| {
        let (x, xstar) = p.split_at(d);
        DualPair { x, xstar }
    };
    let mut witnesses = Vec::new();
    let mut worst: f64 = 0.0;

    // R1.
    let shape = lattice.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r1_worst: f64 = 0.0;
    let mut r1_pair = None;
    for _ in 0..midpoint_samples {
        let a: Vec<usize> = shape.iter().map(|&n| rng.gen_range(0..n)).collect();
        let b: Vec<usize> = a
            .iter()
            .zip(&shape)
            .map(|(&i, &n)| {
                let same_parity: Vec<usize> = (i % 2..n).step_by(2).collect();
                same_parity[rng.gen_range(0..same_parity.len())]
            })
            .collect();
        let mid: Vec<usize> = a.iter().zip(&b).map(|(i, j)| (i + j) / 2).collect();
        let (Extended::Finite(ha), Extended::Finite(hb)) =
            (h.value(lattice.ravel(&a)), h.value(lattice.ravel(&b)))
        else {
            continue;
        };
        let excess = match h.value(lattice.ravel(&mid)) {
            Extended::Finite(hm) => hm - 0.5 * (ha + hb),
            Extended::PosInf => f64::INFINITY,
        };
        if excess > r1_worst {
            r1_worst = excess;
            r1_pair = Some((lattice.point_at(&a), lattice.point_at(&b)));
        }
    }
    let r1_convex_ok = r1_worst <= tol;
    if !r1_convex_ok {
        worst = worst.max(r1_worst);
        if let Some((a, b)) = r1_pair {
            witnesses.push(as_pair(&a));
            witnesses.push(as_pair(&b));
        }
    }

    // R2.
    let mut r2_worst: f64 = 0.0;
    let mut r2_at = None;
    for (i, v) in h.values().iter().enumerate() {
        if let Extended::Finite(hv) = v {
            let p = lattice.point(i);
            let deficit = coupling(&p) - hv;
            if deficit > r2_worst {
                r2_worst = deficit;
                r2_at = Some(p);
            }
        }
    }
    let r2_minorized_ok = r2_worst <= tol;
    if !r2_minorized_ok {
        worst = worst.max(r2_worst);
        witnesses.extend(r2_at.map(|p| as_pair(&p)));
    }

    // R3.
    let widen: f64 = (0..h.dim())
        .map(|a| 0.5 * lattice.axes()[a].spacing() * h.lipschitz_along(a))
        .sum();
    let mut off = 0;
    let mut r3_ok = true;
    let mut r3_worst: f64 = 0.0;
    let mut r3_at = None;
    for p in g.pairs() {
        let z = p.x.concat(&p.xstar);
        let (value, allowed) = match lattice.node_of(&z) {
            Some(flat) => (h.value(flat), tol),
            None => {
                off += 1;
                (h.interpolate(&z)?, tol + widen)
            }
        };
        let err = match value {
            Extended::Finite(v) => (v - p.coupling()).abs(),
            Extended::PosInf => f64::INFINITY,
        };
        if err > allowed {
            r3_ok = false;
        }
        if err > r3_worst {
            r3_worst = err;
            r3_at = Some(p.clone());
        }
    }
    if !r3_ok {
        worst = worst.max(r3_worst);
        witnesses.extend(r3_at);
    }
    Ok(RepresentativeReport {
        r1_convex_ok,
        r2_minorized_ok,
        r3_graph_equality_ok: r3_ok,
        worst_violation: worst,
        witnesses,
        off_lattice_pairs: off,
    })
}
