// Fitzpatrick function and maximal representative of sampled identity, two ways.

use fitzkit::convexfn::{Axis, Lattice};
use fitzkit::fitzpatrick::{argmax_set, fitzpatrick_value, p_value, PConjugateOracle};
use fitzkit::operators::OperatorGraph;
use fitzkit::{Result, Vector, DEFAULT_TOL};

pub fn run() -> Result<()> {
    let pts: Vec<(f64, f64)> = (-4..=4).map(|i| (i as f64 * 0.5, i as f64 * 0.5)).collect();
    let g = OperatorGraph::from_scalars("identity", &pts)?;
    let oracle = PConjugateOracle::new(&g, &Lattice::cube(Axis::new(-2.0, 2.0, 41)?, 2))?;

    // P is +inf off the convex hull of the graph; the lattice estimate is then flagged as diverged
    println!("{:>5} {:>5} {:>8} {:>8} {:>8} diverged", "x", "x*", "F", "P(lp)", "P(conj)");
    for (a, b) in [(1.0, 0.0), (0.5, 0.5), (0.75, 0.75), (-0.5, 1.5)] {
        let (x, xs) = (Vector::from(a), Vector::from(b));
        let f = fitzpatrick_value(&g, &x, &xs)?;
        let p = p_value(&g, &x, &xs, DEFAULT_TOL)?;
        let est = oracle.eval(&x, &xs, DEFAULT_TOL)?;
        println!("{a:>5} {b:>5} {f:>8.4} {:>8} {:>8.4} {}", p.to_string(), est.value, est.diverged);
    }
    let maximizers = argmax_set(&g, &Vector::from(1.0), &Vector::from(0.0), DEFAULT_TOL)?;
    println!("argmax at (1, 0): {} graph pair(s)", maximizers.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
