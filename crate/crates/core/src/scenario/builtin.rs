//! Canonical fixture scenarios.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use super::schema::{
    GridValues, LatticeDef, LinearSamples, MonotonicityCheck, ObjectBody, ObjectDef, Scenario, SuiteDef,
};
use crate::convexfn::{Axis, VkcSpec};
use crate::error::{Error, Result};
use crate::extended::Extended;
use crate::geometry::{PolyhedralCone, Polytope};
use crate::operators::{DualPair, LinearOperator, OperatorGraph};
use crate::vector::Vector;

/// Names accepted by [`generate_builtin`]; `rotation` takes an angle, e.g. `rotation(1.0472)`.
pub const BUILTIN_NAMES: &[&str] = &["abs", "quadratic", "skew2d", "rotation(θ)", "strip-vkc", "two-point"];

fn axis(min: f64, max: f64, count: usize) -> Axis {
    Axis::new(min, max, count).expect("fixture axes are valid")
}

fn lattice(id: &str, axes: Vec<Axis>) -> LatticeDef {
    LatticeDef { id: id.into(), axes }
}

fn object(id: &str, body: ObjectBody) -> ObjectDef {
    ObjectDef { id: id.into(), body }
}

fn scenario(name: &str, lattices: Vec<LatticeDef>, objects: Vec<ObjectDef>, suites: Vec<SuiteDef>) -> Scenario {
    Scenario {
        name: name.into(),
        tol: crate::DEFAULT_TOL,
        seed: 7,
        lattices,
        objects,
        suites,
    }
}

pub fn generate_builtin(name: &str) -> Result<Scenario> {
    if let Some(arg) = name.strip_prefix("rotation(").and_then(|r| r.strip_suffix(')')) {
        let theta: f64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("rotation angle `{arg}` is not a number")))?;
        if !theta.is_finite() {
            return Err(Error::invalid("rotation angle must be finite"));
        }
        return Ok(rotation(theta));
    }
    match name {
        "abs" => Ok(abs()),
        "quadratic" => Ok(quadratic()),
        "skew2d" => Ok(skew2d()),
        "strip-vkc" => Ok(strip_vkc()),
        "two-point" => Ok(two_point()),
        _ => Err(Error::invalid(format!(
            "unknown builtin `{name}`; expected one of {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

/// `f = |x|` as `σ_{[−1,1]}` on the whole line.
pub fn abs_spec() -> VkcSpec {
    VkcSpec::untilted(
        Polytope::point(Vector::from(0.0)),
        Polytope::new(vec![Vector::from(-1.0), Vector::from(1.0)]).expect("segment"),
        PolyhedralCone::whole_space(1),
    )
    .expect("valid spec")
}

/// `f(x, y) = |y|` on `[0, 1] × [0, ∞)`.
pub fn strip_spec() -> VkcSpec {
    VkcSpec::untilted(
        Polytope::new(vec![Vector::from([0.0, 0.0]), Vector::from([1.0, 0.0])]).expect("segment"),
        Polytope::new(vec![Vector::from([0.0, -1.0]), Vector::from([0.0, 1.0])]).expect("segment"),
        PolyhedralCone::new(2, vec![Vector::from([0.0, 1.0])]).expect("ray"),
    )
    .expect("valid spec")
}

fn abs() -> Scenario {
    scenario(
        "abs",
        vec![
            lattice("x", vec![axis(-3.0, 3.0, 61)]),
            lattice("pd", vec![axis(-3.0, 3.0, 61), axis(-1.0, 1.0, 41)]),
        ],
        vec![object(
            "f",
            ObjectBody::Vkc {
                spec: abs_spec(),
                graph_lattice: "x".into(),
            },
        )],
        vec![
            SuiteDef::FieldDump {
                object: "f".into(),
                lattice: "pd".into(),
            },
            SuiteDef::Singleton {
                object: "f".into(),
                lattice: Some("pd".into()),
                probes: vec![],
                random_probes: 200,
                graph_probes: true,
                expect: Default::default(),
            },
            SuiteDef::Gap {
                object: "f".into(),
                lattice: "pd".into(),
                expect_zero: true,
                route_tol: 1e-4,
                zero_tol: 1e-6,
            },
            SuiteDef::TheoremA {
                object: "f".into(),
                vstar: Vector::from(1.0),
                lattice: "x".into(),
                expect: Default::default(),
            },
        ],
    )
}

fn quadratic() -> Scenario {
    let x = axis(-3.0, 3.0, 121);
    let values: Vec<Extended> = x.coords().iter().map(|t| Extended::Finite(0.5 * t * t)).collect();
    let graph = OperatorGraph::new(
        "identity",
        x.coords()
            .into_iter()
            .map(|t| DualPair::from((t, t)))
            .collect(),
    )
    .expect("nonempty");
    scenario(
        "quadratic",
        vec![lattice("pd", vec![axis(-2.0, 2.0, 20), axis(-2.0, 2.0, 20)])],
        vec![object(
            "q",
            ObjectBody::Grid {
                axes: vec![x],
                values: values.clone(),
                conjugate: GridValues { axes: vec![x], values },
                graph: Some(graph),
            },
        )],
        vec![
            SuiteDef::Singleton {
                object: "q".into(),
                lattice: None,
                probes: vec![(DualPair::from((1.0, -1.0)), DualPair::from((-1.0, 1.0)))],
                random_probes: 0,
                graph_probes: false,
                expect: Default::default(),
            },
            SuiteDef::Gap {
                object: "q".into(),
                lattice: "pd".into(),
                expect_zero: false,
                route_tol: 1e-4,
                zero_tol: 1e-6,
            },
        ],
    )
}

fn circle_object(id: &str, m: LinearOperator) -> ObjectDef {
    object(
        id,
        ObjectBody::Linear {
            matrix: m,
            samples: LinearSamples::Circle(12),
        },
    )
}

fn skew2d() -> Scenario {
    let s = LinearOperator::new(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).expect("square");
    scenario(
        "skew2d",
        vec![lattice("box", vec![axis(-1.0, 1.0, 11); 4])],
        vec![circle_object("S", s)],
        vec![
            SuiteDef::Singleton {
                object: "S".into(),
                lattice: Some("box".into()),
                probes: vec![],
                random_probes: 200,
                graph_probes: true,
                expect: Default::default(),
            },
            SuiteDef::Monotonicity {
                object: "S".into(),
                checks: vec![
                    MonotonicityCheck { n: 2, expect: true },
                    MonotonicityCheck { n: 3, expect: false },
                ],
                cyclic: Some(false),
                max_n: None,
                max_tuples: None,
            },
        ],
    )
}

/// Expectations are analytic: a pair sums to `−cos θ·|a − b|²`, and the
/// equilateral triple among the 12 circle points turns positive past `|θ| = π/3`.
fn rotation(theta: f64) -> Scenario {
    let wrapped = theta.sin().atan2(theta.cos()).abs();
    scenario(
        &format!("rotation-{theta}"),
        vec![],
        vec![circle_object("R", LinearOperator::rotation(theta))],
        vec![SuiteDef::Monotonicity {
            object: "R".into(),
            checks: vec![
                MonotonicityCheck {
                    n: 2,
                    expect: wrapped <= FRAC_PI_2,
                },
                MonotonicityCheck {
                    n: 3,
                    expect: wrapped <= FRAC_PI_3,
                },
            ],
            cyclic: None,
            max_n: None,
            max_tuples: None,
        }],
    )
}

fn strip_vkc() -> Scenario {
    scenario(
        "strip-vkc",
        vec![
            lattice("g", vec![axis(0.0, 1.0, 5), axis(0.0, 2.0, 9)]),
            lattice(
                "probe",
                vec![axis(0.0, 1.0, 5), axis(0.0, 2.0, 5), axis(-1.0, 1.0, 5), axis(-1.0, 1.0, 5)],
            ),
        ],
        vec![object(
            "f",
            ObjectBody::Vkc {
                spec: strip_spec(),
                graph_lattice: "g".into(),
            },
        )],
        vec![
            SuiteDef::TheoremB {
                object: "f".into(),
                eps: vec![0.1],
                probe_lattice: "probe".into(),
                expect: Default::default(),
            },
            SuiteDef::Gap {
                object: "f".into(),
                lattice: "probe".into(),
                expect_zero: true,
                route_tol: 1e-4,
                zero_tol: 1e-6,
            },
        ],
    )
}

fn two_point() -> Scenario {
    let g = OperatorGraph::from_scalars("two-point", &[(-1.0, -1.0), (1.0, 1.0)]).expect("nonempty");
    scenario(
        "two-point",
        vec![
            lattice("line", vec![axis(-2.0, 2.0, 17)]),
            lattice("pd", vec![axis(-1.5, 1.5, 13), axis(-1.5, 1.5, 13)]),
        ],
        vec![object("G", ObjectBody::Graph { graph: g })],
        vec![
            SuiteDef::FieldDump {
                object: "G".into(),
                lattice: "pd".into(),
            },
            SuiteDef::Sandwich {
                object: "G".into(),
                w: Vector::from(1.0),
                vstar: Vector::from(1.0),
                primal: "line".into(),
                dual: "line".into(),
            },
            SuiteDef::Monotonicity {
                object: "G".into(),
                checks: vec![MonotonicityCheck { n: 2, expect: true }],
                cyclic: Some(true),
                max_n: None,
                max_tuples: None,
            },
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_validate_and_round_trip() {
        for name in ["abs", "quadratic", "skew2d", "rotation(1.0472)", "strip-vkc", "two-point"] {
            let s = generate_builtin(name).unwrap();
            s.validate().unwrap();
            let back = Scenario::from_json(&s.to_json_pretty()).unwrap();
            assert_eq!(back, s, "{name}");
        }
    }

    #[test]
    fn unknown_names() {
        assert!(generate_builtin("cubic").is_err());
        assert!(generate_builtin("rotation(abc)").is_err());
    }
}
