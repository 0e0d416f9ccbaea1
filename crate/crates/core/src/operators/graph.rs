use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::vector::Vector;

/// A primal-dual pair `(x, x*)`; serialized as `[[x..], [x*..]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(Vector, Vector)", into = "(Vector, Vector)")]
pub struct DualPair {
    pub x: Vector,
    pub xstar: Vector,
}

impl DualPair {
    pub fn new(x: Vector, xstar: Vector) -> Result<Self> {
        check_dim(x.dim(), xstar.dim())?;
        Ok(DualPair { x, xstar })
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    /// `⟨x, x*⟩`.
    pub fn coupling(&self) -> f64 {
        self.x.dot(&self.xstar)
    }
}

impl TryFrom<(Vector, Vector)> for DualPair {
    type Error = Error;
    fn try_from((x, xstar): (Vector, Vector)) -> Result<Self> {
        DualPair::new(x, xstar)
    }
}

impl From<DualPair> for (Vector, Vector) {
    fn from(p: DualPair) -> Self {
        (p.x, p.xstar)
    }
}

impl From<(f64, f64)> for DualPair {
    fn from((x, xstar): (f64, f64)) -> Self {
        DualPair {
            x: Vector::from(x),
            xstar: Vector::from(xstar),
        }
    }
}

/// A finite list of pairs standing in for `Gr(A)`.
///
/// Pairs share one dimension; exact duplicates are dropped on construction,
/// first occurrence kept.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct OperatorGraph {
    label: String,
    pairs: Vec<DualPair>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    #[serde(default)]
    label: String,
    pairs: Vec<DualPair>,
}

impl TryFrom<GraphJson> for OperatorGraph {
    type Error = Error;
    fn try_from(g: GraphJson) -> Result<Self> {
        OperatorGraph::new(g.label, g.pairs)
    }
}

impl From<OperatorGraph> for GraphJson {
    fn from(g: OperatorGraph) -> Self {
        GraphJson {
            label: g.label,
            pairs: g.pairs,
        }
    }
}

impl OperatorGraph {
    pub fn new(label: impl Into<String>, pairs: Vec<DualPair>) -> Result<Self> {
        let first = pairs.first().ok_or(Error::Empty("graph pairs"))?;
        let d = first.dim();
        let mut kept: Vec<DualPair> = Vec::with_capacity(pairs.len());
        for p in pairs {
            check_dim(d, p.dim())?;
            if !kept.contains(&p) {
                kept.push(p);
            }
        }
        Ok(OperatorGraph {
            label: label.into(),
            pairs: kept,
        })
    }

    /// One-dimensional graph from scalar pairs.
    pub fn from_scalars(label: impl Into<String>, pairs: &[(f64, f64)]) -> Result<Self> {
        OperatorGraph::new(label, pairs.iter().map(|&p| DualPair::from(p)).collect())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn pairs(&self) -> &[DualPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.pairs[0].dim()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `x*` values of the pairs whose `x*` equals `vstar` within `tol` (sup norm).
    pub fn has_image(&self, vstar: &Vector, tol: f64) -> bool {
        self.pairs
            .iter()
            .any(|p| p.xstar.dim() == vstar.dim() && p.xstar.sub(vstar).norm_inf() <= tol)
    }

    pub fn has_domain_point(&self, w: &Vector, tol: f64) -> bool {
        self.pairs
            .iter()
            .any(|p| p.x.dim() == w.dim() && p.x.sub(w).norm_inf() <= tol)
    }

    /// CSV with columns `x0.., xstar0..`, one row per pair.
    pub fn to_csv(&self) -> String {
        let d = self.dim();
        let mut out = String::new();
        let names: Vec<String> = (0..d)
            .map(|i| format!("x{i}"))
            .chain((0..d).map(|i| format!("xstar{i}")))
            .collect();
        out.push_str(&names.join(","));
        out.push('\n');
        for p in &self.pairs {
            let row: Vec<String> = p
                .x
                .coords()
                .iter()
                .chain(p.xstar.coords())
                .map(|c| c.to_string())
                .collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }
}

/// Maps every pair to `(λ₁x − w, λ₂x* − w*)`.
pub fn transform_graph(
    g: &OperatorGraph,
    lam1: f64,
    lam2: f64,
    w: &Vector,
    wstar: &Vector,
) -> Result<OperatorGraph> {
    check_scales(lam1, lam2)?;
    check_dim(g.dim(), w.dim())?;
    check_dim(g.dim(), wstar.dim())?;
    let pairs = g
        .pairs()
        .iter()
        .map(|p| transform_pair(p, lam1, lam2, w, wstar))
        .collect();
    OperatorGraph::new(g.label(), pairs)
}

pub(crate) fn check_scales(lam1: f64, lam2: f64) -> Result<()> {
    if lam1 > 0.0 && lam2 > 0.0 && lam1.is_finite() && lam2.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "scales must be positive, got {lam1} and {lam2}"
        )))
    }
}

/// The pair-level map used by [`transform_graph`].
pub fn transform_pair(p: &DualPair, lam1: f64, lam2: f64, w: &Vector, wstar: &Vector) -> DualPair {
    DualPair {
        x: p.x.scale(lam1).sub(w),
        xstar: p.xstar.scale(lam2).sub(wstar),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let g = OperatorGraph::from_scalars("two", &[(-1.0, -1.0), (1.0, 1.0)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"label":"two","pairs":[[[-1.0],[-1.0]],[[1.0],[1.0]]]}"#);
        let back: OperatorGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<OperatorGraph>(r#"{"pairs":[]}"#).is_err());
        assert!(serde_json::from_str::<OperatorGraph>(r#"{"pairs":[[[1.0],[1.0,2.0]]]}"#).is_err());
    }

    #[test]
    fn duplicates_dropped() {
        let g = OperatorGraph::from_scalars("", &[(0.0, 1.0), (0.0, 1.0), (0.0, -1.0)]).unwrap();
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn transform_examples() {
        let g = OperatorGraph::from_scalars("", &[(1.0, 1.0)]).unwrap();
        let z = Vector::zeros(1);
        assert_eq!(transform_graph(&g, 1.0, 1.0, &z, &z).unwrap(), g);
        let t = transform_graph(&g, 2.0, 3.0, &Vector::from(1.0), &z).unwrap();
        assert_eq!(t.pairs()[0], DualPair::from((1.0, 3.0)));
        assert!(transform_graph(&g, 0.0, 1.0, &z, &z).is_err());
        assert!(transform_graph(&g, 1.0, -2.0, &z, &z).is_err());
    }

    #[test]
    fn csv_layout() {
        let g = OperatorGraph::new(
            "",
            vec![DualPair::new(Vector::from([1.0, 0.5]), Vector::from([0.0, -2.0])).unwrap()],
        )
        .unwrap();
        assert_eq!(g.to_csv(), "x0,x1,xstar0,xstar1\n1,0.5,0,-2\n");
    }
}
