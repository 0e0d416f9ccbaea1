// Representation gap and singleton tests: |x| passes, x²/2 is refuted.

use fitzkit::convexfn::{conjugate_vkc, Axis, ConvexFunction, Lattice};
use fitzkit::fitzpatrick::{gap_value, singleton_criterion_vkc, singleton_test};
use fitzkit::operators::{sample_subdifferential_vkc, DualPair, OperatorGraph};
use fitzkit::scenario::abs_spec;
use fitzkit::{Result, Vector, DEFAULT_TOL};

pub fn run() -> Result<()> {
    let spec = abs_spec();
    let f = ConvexFunction::Vkc(Box::new(spec.clone()));
    let f_star = conjugate_vkc(&spec);
    let xs = Lattice::new(vec![Axis::new(-3.0, 3.0, 61)?])?;
    let g = sample_subdifferential_vkc(&spec, &xs, DEFAULT_TOL)?;
    let rep = gap_value(&f, &f_star, &g, &Vector::from(2.0), &Vector::from(0.5), DEFAULT_TOL)?;
    println!("|x|: gap(2, 0.5) = {} (direct {})", rep.gap, rep.direct);

    let probes = Lattice::new(vec![Axis::new(-3.0, 3.0, 13)?, Axis::new(-1.0, 1.0, 9)?])?;
    let crit = singleton_criterion_vkc(&spec, &[0.1, 1.0], &probes, &xs, DEFAULT_TOL)?;
    println!("|x|: singleton criterion passed = {} over {} probes", crit.passed, crit.probes_used);

    let pts: Vec<(f64, f64)> = (-4..=4).map(|i| (i as f64 * 0.5, i as f64 * 0.5)).collect();
    let id = OperatorGraph::from_scalars("identity", &pts)?;
    let probe = (DualPair::from((1.0, -1.0)), DualPair::from((-1.0, 1.0)));
    let v = singleton_test(&id, &[probe], DEFAULT_TOL)?;
    println!("x²/2: residual {} -> {:?}", v.min_residual, v.verdict);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
