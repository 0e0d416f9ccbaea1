//! Scenario file format.
//!
//! ```json
//! {
//!   "name": "abs", "tol": 1e-9, "seed": 7,
//!   "lattices": [{"id": "x", "axes": [{"min": -3, "max": 3, "count": 61}]}],
//!   "objects": [{"id": "f", "kind": "vkc", "spec": {"K": [[0]], "V": [[-1], [1]], "C": [[1], [-1]]},
//!                "graph_lattice": "x"}],
//!   "suites": [{"kind": "gap", "object": "f", "lattice": "pd", "expect_zero": true}]
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::convexfn::{Axis, Lattice, VkcSpec};
use crate::error::{Error, Result};
use crate::extended::Extended;
use crate::operators::{DualPair, LinearOperator, OperatorGraph};
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub lattices: Vec<LatticeDef>,
    pub objects: Vec<ObjectDef>,
    pub suites: Vec<SuiteDef>,
}

fn default_tol() -> f64 {
    crate::DEFAULT_TOL
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDef {
    pub id: String,
    pub axes: Vec<Axis>,
}

impl LatticeDef {
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.axes.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectDef {
    pub id: String,
    #[serde(flatten)]
    pub body: ObjectBody,
}

/// Where a linear operator's graph is sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearSamples {
    Points(Vec<Vector>),
    /// `k` equally spaced unit-circle points (plane only).
    Circle(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectBody {
    /// Support-plus-indicator function; its graph is `∂f` sampled on `graph_lattice`.
    Vkc { spec: VkcSpec, graph_lattice: String },
    /// Linear operator with graph `{(p, Mp)}`.
    Linear { matrix: LinearOperator, samples: LinearSamples },
    /// Sampled convex function with a sampled conjugate. Without an explicit `graph`,
    /// the graph is `∂f` sampled on the function's own lattice (1-d only).
    Grid {
        axes: Vec<Axis>,
        values: Vec<Extended>,
        conjugate: GridValues,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        graph: Option<OperatorGraph>,
    },
    /// An explicit finite graph with no attached function.
    Graph { graph: OperatorGraph },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridValues {
    pub axes: Vec<Axis>,
    pub values: Vec<Extended>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonotonicityCheck {
    pub n: usize,
    #[serde(default = "yes")]
    pub expect: bool,
}

fn yes() -> bool {
    true
}

fn default_route_tol() -> f64 {
    1e-4
}

fn default_zero_tol() -> f64 {
    1e-6
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    #[default]
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SuiteDef {
    /// Tabulates `F`, `P`, `Φ_f` and the gap on a lattice over `E × E*`.
    FieldDump { object: String, lattice: String },
    /// Two-point singleton inequality on graph probes, explicit probes and seeded
    /// random lattice probes (random ones only count where the sampled `F` is exact).
    Singleton {
        object: String,
        #[serde(default)]
        lattice: Option<String>,
        #[serde(default)]
        probes: Vec<(DualPair, DualPair)>,
        #[serde(default)]
        random_probes: usize,
        #[serde(default = "yes")]
        graph_probes: bool,
        #[serde(default)]
        expect: Expectation,
    },
    /// Both gap routes on every node of a lattice over `E × E*`.
    Gap {
        object: String,
        lattice: String,
        #[serde(default)]
        expect_zero: bool,
        #[serde(default = "default_route_tol")]
        route_tol: f64,
        #[serde(default = "default_zero_tol")]
        zero_tol: f64,
    },
    /// Marginal-function sandwich at `w ∈ dom G`, `v* ∈ Im G`.
    Sandwich {
        object: String,
        w: Vector,
        vstar: Vector,
        primal: String,
        dual: String,
    },
    Monotonicity {
        object: String,
        #[serde(default)]
        checks: Vec<MonotonicityCheck>,
        #[serde(default)]
        cyclic: Option<bool>,
        #[serde(default)]
        max_n: Option<usize>,
        #[serde(default)]
        max_tuples: Option<u64>,
    },
    /// Convexity and subgradient recovery for `x ↦ F(x, v*)`.
    TheoremA {
        object: String,
        vstar: Vector,
        lattice: String,
        #[serde(default)]
        expect: Expectation,
    },
    /// ε-decomposition search through the sampled graph at every probe node.
    TheoremB {
        object: String,
        eps: Vec<f64>,
        probe_lattice: String,
        #[serde(default)]
        expect: Expectation,
    },
}

impl SuiteDef {
    pub fn kind(&self) -> &'static str {
        match self {
            SuiteDef::FieldDump { .. } => "field-dump",
            SuiteDef::Singleton { .. } => "singleton",
            SuiteDef::Gap { .. } => "gap",
            SuiteDef::Sandwich { .. } => "sandwich",
            SuiteDef::Monotonicity { .. } => "monotonicity",
            SuiteDef::TheoremA { .. } => "theorem-a",
            SuiteDef::TheoremB { .. } => "theorem-b",
        }
    }

    pub fn object(&self) -> &str {
        match self {
            SuiteDef::FieldDump { object, .. }
            | SuiteDef::Singleton { object, .. }
            | SuiteDef::Gap { object, .. }
            | SuiteDef::Sandwich { object, .. }
            | SuiteDef::Monotonicity { object, .. }
            | SuiteDef::TheoremA { object, .. }
            | SuiteDef::TheoremB { object, .. } => object,
        }
    }

    fn lattice_refs(&self) -> Vec<(&'static str, &str)> {
        match self {
            SuiteDef::FieldDump { lattice, .. }
            | SuiteDef::Gap { lattice, .. }
            | SuiteDef::TheoremA { lattice, .. } => vec![("lattice", lattice)],
            SuiteDef::Singleton { lattice, .. } => lattice.iter().map(|l| ("lattice", l.as_str())).collect(),
            SuiteDef::Sandwich { primal, dual, .. } => vec![("primal", primal), ("dual", dual)],
            SuiteDef::TheoremB { probe_lattice, .. } => vec![("probe_lattice", probe_lattice)],
            SuiteDef::Monotonicity { .. } => vec![],
        }
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn lattice(&self, id: &str) -> Result<Lattice> {
        self.lattices
            .iter()
            .find(|l| l.id == id)
            .ok_or_else(|| Error::invalid(format!("unknown lattice `{id}`")))?
            .lattice()
    }

    pub fn object(&self, id: &str) -> Result<&ObjectDef> {
        self.objects
            .iter()
            .find(|o| o.id == id)
            .ok_or_else(|| Error::invalid(format!("unknown object `{id}`")))
    }

    /// Checks tolerances, unique ids and that every reference resolves.
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::invalid(format!("key `tol`: must be a positive number, got {}", self.tol)));
        }
        if self.name.is_empty() || self.name.contains(['/', '\\']) || self.name.starts_with('.') {
            return Err(Error::invalid(format!("key `name`: `{}` is not a usable directory name", self.name)));
        }
        for (i, l) in self.lattices.iter().enumerate() {
            if self.lattices[..i].iter().any(|m| m.id == l.id) {
                return Err(Error::invalid(format!("key `lattices`: duplicate id `{}`", l.id)));
            }
            l.lattice()
                .map_err(|e| Error::invalid(format!("key `lattices[{i}]` (`{}`): {e}", l.id)))?;
        }
        for (i, o) in self.objects.iter().enumerate() {
            if self.objects[..i].iter().any(|m| m.id == o.id) {
                return Err(Error::invalid(format!("key `objects`: duplicate id `{}`", o.id)));
            }
            if let ObjectBody::Vkc { graph_lattice, .. } = &o.body {
                self.lattice(graph_lattice)
                    .map_err(|e| Error::invalid(format!("key `objects[{i}].graph_lattice`: {e}")))?;
            }
        }
        if self.suites.is_empty() {
            return Err(Error::invalid("key `suites`: at least one suite is required"));
        }
        for (i, s) in self.suites.iter().enumerate() {
            self.object(s.object())
                .map_err(|e| Error::invalid(format!("key `suites[{i}].object`: {e}")))?;
            for (key, id) in s.lattice_refs() {
                self.lattice(id)
                    .map_err(|e| Error::invalid(format!("key `suites[{i}].{key}`: {e}")))?;
            }
            match s {
                SuiteDef::Gap { route_tol, zero_tol, .. } if !(*route_tol > 0.0 && *zero_tol > 0.0) => {
                    return Err(Error::invalid(format!("key `suites[{i}]`: route_tol and zero_tol must be positive")));
                }
                SuiteDef::TheoremB { eps, .. } if eps.is_empty() || eps.iter().any(|e| e.is_nan() || *e <= 0.0) => {
                    return Err(Error::invalid(format!("key `suites[{i}].eps`: values must be positive")));
                }
                SuiteDef::Monotonicity { checks, cyclic, .. } if checks.is_empty() && cyclic.is_none() => {
                    return Err(Error::invalid(format!("key `suites[{i}]`: needs `checks` or `cyclic`")));
                }
                SuiteDef::Singleton {
                    lattice,
                    random_probes,
                    probes,
                    graph_probes,
                    ..
                } => {
                    if *random_probes > 0 && lattice.is_none() {
                        return Err(Error::invalid(format!(
                            "key `suites[{i}].lattice`: required when random_probes > 0"
                        )));
                    }
                    if probes.is_empty() && *random_probes == 0 && !graph_probes {
                        return Err(Error::invalid(format!("key `suites[{i}]`: no probes requested")));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}
