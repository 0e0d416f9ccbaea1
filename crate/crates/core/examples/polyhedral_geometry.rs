// Support functions, polar cones and Minkowski membership on a small square.

use fitzkit::geometry::{minkowski_membership, polar_cone, PolyhedralCone, Polytope};
use fitzkit::{Result, Vector, DEFAULT_TOL};

pub fn run() -> Result<()> {
    let square = Polytope::cuboid(&[-1.0, -1.0], &[1.0, 1.0])?;
    let dir = Vector::from([2.0, -1.0]);
    let face = square.support_face(&dir, DEFAULT_TOL)?;
    println!("sigma_square({dir}) = {} at vertices {face:?}", square.support_value(&dir)?);

    let orthant = PolyhedralCone::orthant(2);
    let polar = polar_cone(&orthant);
    for p in [Vector::from([-1.0, -3.0]), Vector::from([1.0, -1.0])] {
        println!("{p} in polar(orthant): {}", polar.contains(&p, DEFAULT_TOL)?);
    }

    // square + orthant contains every point with both coordinates ≥ −1
    for p in [Vector::from([5.0, -1.0]), Vector::from([0.0, -1.5])] {
        println!("{p} in square + orthant: {}", minkowski_membership(&square, &orthant, &p, DEFAULT_TOL)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
