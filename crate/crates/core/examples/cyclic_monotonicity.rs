// Rotation thresholds, negative-cycle witnesses, Rockafellar potentials and subdifferential recovery.

use fitzkit::convexfn::{Axis, Lattice};
use fitzkit::monotonicity::{is_cyclically_monotone, is_n_monotone, rockafellar_potential, theorem_a_suite};
use fitzkit::operators::{circle_points, linear_graph, sample_subdifferential_vkc, LinearOperator, OperatorGraph};
use fitzkit::scenario::abs_spec;
use fitzkit::{Result, Vector, DEFAULT_TOL};

pub fn run() -> Result<()> {
    for theta in [std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_3 - 0.1] {
        let g = linear_graph(&LinearOperator::rotation(theta), &circle_points(12))?;
        let two = is_n_monotone(&g, 2, DEFAULT_TOL)?;
        let three = is_n_monotone(&g, 3, DEFAULT_TOL)?;
        let cyc = is_cyclically_monotone(&g, DEFAULT_TOL);
        println!("θ = {theta:.4}: 2-monotone {} 3-monotone {} cyclic {}", two.monotone, three.monotone, cyc.monotone);
        if let Some(w) = cyc.witness {
            println!("  positive cycle {:?} with sum {:.4}", w.indices, w.cycle_sum);
        }
    }

    // a few pairs of ∂|x|; the potential is the smallest convex function through them
    let g = OperatorGraph::from_scalars("abs", &[(-2.0, -1.0), (0.0, 0.0), (0.0, 0.5), (2.0, 1.0)])?;
    let f = rockafellar_potential(&g, 0, DEFAULT_TOL)?;
    for x in [-2.0, 0.0, 1.0, 2.0] {
        println!("potential({x}) = {}", f.eval(&Vector::from(x))?);
    }

    let lattice = Lattice::new(vec![Axis::new(-3.0, 3.0, 61)?])?;
    let g = sample_subdifferential_vkc(&abs_spec(), &lattice, DEFAULT_TOL)?;
    let rep = theorem_a_suite(&g, &Vector::from(1.0), &lattice, DEFAULT_TOL)?;
    println!("recovery of the graph from F(., 1): passed {} over {} pairs", rep.passed, rep.pairs_checked);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
