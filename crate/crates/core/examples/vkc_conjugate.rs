// Closed-form conjugate of a support-plus-indicator function against a grid transform.

use fitzkit::convexfn::{conjugate_grid, conjugate_vkc, grid_modulus, Axis, ConvexFunction, Lattice, VkcSpec};
use fitzkit::geometry::{PolyhedralCone, Polytope};
use fitzkit::{Result, Vector, DEFAULT_TOL};

/// `f(x, y) = y` on the strip `[0, 1] × [0, ∞)`, built from `K = [0,1]×{0}`,
/// `V = {0}×[−1,1]` and the ray `C = {0}×ℝ₊`. Its conjugate is
/// `max(0, x*) + i_{y* ≤ 1}`.
fn strip() -> Result<VkcSpec> {
    VkcSpec::untilted(
        Polytope::new(vec![Vector::from([0.0, 0.0]), Vector::from([1.0, 0.0])])?,
        Polytope::new(vec![Vector::from([0.0, -1.0]), Vector::from([0.0, 1.0])])?,
        PolyhedralCone::new(2, vec![Vector::from([0.0, 1.0])])?,
    )
}

pub fn run() -> Result<()> {
    let spec = strip()?;
    let f = ConvexFunction::Vkc(Box::new(spec.clone()));
    let f_star = conjugate_vkc(&spec);
    for s in [[0.5, 0.5], [-2.0, 1.0], [1.0, 1.5]] {
        let s = Vector::from(s);
        println!("f*({s}) = {}", f_star.eval(&s)?);
    }

    let primal = Lattice::new(vec![Axis::new(-0.5, 1.5, 41)?, Axis::new(-1.0, 4.0, 51)?])?;
    let dual = Lattice::cube(Axis::new(-2.0, 2.0, 41)?, 2);
    let grid = conjugate_grid(&f, &primal, &dual, DEFAULT_TOL)?;
    let sampled = fitzkit::convexfn::FieldGrid::from_fn(primal, |x| f.eval(x))?;
    let modulus = grid_modulus(&sampled, &dual)?;
    let mut worst: f64 = 0.0;
    for i in 0..dual.len() {
        let s = dual.point(i);
        if let (Some(a), Some(b)) = (f_star.eval(&s)?.finite(), grid.value(i).finite()) {
            worst = worst.max((a - b).abs());
        }
    }
    println!("max |f* − grid f*| on finite cells = {worst:.3e} (modulus {modulus:.3e})");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
