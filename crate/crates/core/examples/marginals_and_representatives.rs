// Marginal sandwich and representative-function axioms for a two-point graph.

use fitzkit::convexfn::{Axis, FieldGrid, Lattice};
use fitzkit::fitzpatrick::{p_value, representative_check, sandwich_test};
use fitzkit::operators::OperatorGraph;
use fitzkit::{Extended, Result, Vector, DEFAULT_TOL};

pub fn run() -> Result<()> {
    let g = OperatorGraph::from_scalars("two-point", &[(-1.0, -1.0), (1.0, 1.0)])?;
    let line = Lattice::new(vec![Axis::new(-2.0, 2.0, 17)?])?;
    let rep = sandwich_test(&g, &Vector::from(1.0), &Vector::from(1.0), &line, &line, DEFAULT_TOL)?;
    println!("sandwich passed = {} (worst slack {:.3e})", rep.passed, rep.worst_slack);

    let pd = Lattice::cube(Axis::new(-1.5, 1.5, 13)?, 2);
    let h = FieldGrid::from_fn(pd.clone(), |p| {
        let (x, xs) = p.split_at(1);
        p_value(&g, &x, &xs, DEFAULT_TOL)
    })?;
    let r = representative_check(&h, &g, DEFAULT_TOL, 2000, 7)?;
    println!(
        "P is a representative: R1 {} R2 {} R3 {}",
        r.r1_convex_ok, r.r2_minorized_ok, r.r3_graph_equality_ok
    );

    // the coupling itself is not convex, so R1 fails with a witness
    let c = FieldGrid::from_fn(pd, |p| Ok(Extended::Finite(p.coords()[0] * p.coords()[1])))?;
    let r = representative_check(&c, &g, DEFAULT_TOL, 2000, 7)?;
    println!("<x, x*>: R1 {} with {} witness pair(s)", r.r1_convex_ok, r.witnesses.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
