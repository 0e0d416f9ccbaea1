// Grid Legendre transform and inf-convolution of sampled 1-d functions.

use fitzkit::convexfn::{inf_convolution_grid, legendre_grid, Axis, FieldGrid, Lattice};
use fitzkit::{Extended, Result, Vector, DEFAULT_TOL};

pub fn run() -> Result<()> {
    let line = Lattice::new(vec![Axis::new(-2.0, 2.0, 81)?])?;
    let half_square = FieldGrid::from_fn(line.clone(), |x| Ok(Extended::Finite(0.5 * x.dot(x))))?;
    let conj = legendre_grid(&half_square, &line, DEFAULT_TOL)?;
    for s in [-1.0, 0.0, 1.5] {
        println!("(x²/2)*({s}) ≈ {}", conj.interpolate(&Vector::from(s))?);
    }

    // |x| □ i_[−1/2, 1/2] is the distance to the interval
    let abs = FieldGrid::from_fn(line.clone(), |x| Ok(Extended::Finite(x.norm_inf())))?;
    let interval = FieldGrid::from_fn(line, |x| {
        Ok(if x.norm_inf() <= 0.5 { Extended::Finite(0.0) } else { Extended::PosInf })
    })?;
    let dist = inf_convolution_grid(&abs, &interval)?;
    for x in [-1.5, 0.25, 1.0] {
        println!("dist({x}, [−1/2, 1/2]) ≈ {}", dist.interpolate(&Vector::from(x))?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
