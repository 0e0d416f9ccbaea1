//! Rectangular lattices and sampled fields over them.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::extended::Extended;
use crate::vector::Vector;

/// A uniform grid `min, min + h, …, max` with `count ≥ 2` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AxisRaw")]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

#[derive(Deserialize)]
struct AxisRaw {
    min: f64,
    max: f64,
    count: usize,
}

impl TryFrom<AxisRaw> for Axis {
    type Error = Error;
    fn try_from(r: AxisRaw) -> Result<Self> {
        Axis::new(r.min, r.max, r.count)
    }
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::invalid(format!("axis count must be at least 2, got {count}")));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::invalid(format!("axis range [{min}, {max}] is not a finite interval")));
        }
        Ok(Axis { min, max, count })
    }

    /// Node `i`, computed as `min + (max − min)·i/(count − 1)` so both ends are exact.
    pub fn coord(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            return self.max;
        }
        self.min + (self.max - self.min) * (i as f64) / ((self.count - 1) as f64)
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / ((self.count - 1) as f64)
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.coord(i)).collect()
    }

    fn snap_tol(&self) -> f64 {
        1e-9 * self.spacing()
    }

    /// Cell index and fraction for `x`; `None` outside `[min, max]`.
    pub fn locate(&self, x: f64) -> Option<(usize, f64)> {
        let eps = self.snap_tol();
        if x < self.min - eps || x > self.max + eps {
            return None;
        }
        let u = ((x - self.min) / self.spacing()).clamp(0.0, (self.count - 1) as f64);
        let mut i = u.floor() as usize;
        if i >= self.count - 1 {
            i = self.count - 2;
        }
        let mut t = u - i as f64;
        if t.abs() * self.spacing() <= eps {
            t = 0.0;
        } else if (1.0 - t).abs() * self.spacing() <= eps {
            t = 1.0;
        }
        Some((i, t))
    }

    /// The node index lying within `1e-9·h` of `x`, if any.
    pub fn node(&self, x: f64) -> Option<usize> {
        match self.locate(x)? {
            (i, 0.0) => Some(i),
            (i, 1.0) => Some(i + 1),
            _ => None,
        }
    }
}

/// A tensor-product lattice; flat indices are row-major (last axis fastest).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Lattice {
    axes: Vec<Axis>,
}

impl Lattice {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::Empty("lattice axes"));
        }
        Ok(Lattice { axes })
    }

    /// Same axis repeated `dim` times.
    pub fn cube(axis: Axis, dim: usize) -> Self {
        Lattice {
            axes: vec![axis; dim.max(1)],
        }
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.count).collect()
    }

    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for (k, a) in self.axes.iter().enumerate().rev() {
            idx[k] = flat % a.count;
            flat /= a.count;
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.axes)
            .fold(0, |acc, (&i, a)| acc * a.count + i)
    }

    pub fn point_at(&self, idx: &[usize]) -> Vector {
        Vector::new(
            idx.iter()
                .zip(&self.axes)
                .map(|(&i, a)| a.coord(i))
                .collect(),
        )
        .expect("lattice coordinates are finite")
    }

    pub fn point(&self, flat: usize) -> Vector {
        self.point_at(&self.unravel(flat))
    }

    pub fn points(&self) -> Vec<Vector> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    /// Flat index of the node at `x`, if `x` is a node.
    pub fn node_of(&self, x: &Vector) -> Option<usize> {
        if x.dim() != self.dim() {
            return None;
        }
        let idx = self
            .axes
            .iter()
            .zip(x.coords())
            .map(|(a, &c)| a.node(c))
            .collect::<Option<Vec<_>>>()?;
        Some(self.ravel(&idx))
    }

    /// `true` when `idx` sits on the outer boundary of the lattice box.
    pub fn on_boundary(&self, idx: &[usize]) -> bool {
        idx.iter()
            .zip(&self.axes)
            .any(|(&i, a)| i == 0 || i + 1 == a.count)
    }
}

/// Values of an extended-real field on a lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldGrid {
    axes: Lattice,
    values: Vec<Extended>,
}

impl FieldGrid {
    pub fn new(lattice: Lattice, values: Vec<Extended>) -> Result<Self> {
        if values.len() != lattice.len() {
            return Err(Error::invalid(format!(
                "field has {} values but the lattice has {} nodes",
                values.len(),
                lattice.len()
            )));
        }
        Ok(FieldGrid {
            axes: lattice,
            values,
        })
    }

    /// Samples `f` at every node (in parallel, order preserved).
    pub fn from_fn<F>(lattice: Lattice, f: F) -> Result<Self>
    where
        F: Fn(&Vector) -> Result<Extended> + Sync,
    {
        let values = (0..lattice.len())
            .into_par_iter()
            .map(|i| f(&lattice.point(i)))
            .collect::<Result<Vec<_>>>()?;
        FieldGrid::new(lattice, values)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.axes
    }

    pub fn dim(&self) -> usize {
        self.axes.dim()
    }

    pub fn values(&self) -> &[Extended] {
        &self.values
    }

    pub fn value(&self, flat: usize) -> Extended {
        self.values[flat]
    }

    /// Multilinear interpolation; `+∞` outside the box or when any corner with
    /// nonzero weight is `+∞`.
    pub fn interpolate(&self, x: &Vector) -> Result<Extended> {
        check_dim(self.dim(), x.dim())?;
        let mut cells = Vec::with_capacity(self.dim());
        for (a, &c) in self.axes.axes().iter().zip(x.coords()) {
            match a.locate(c) {
                Some(cell) => cells.push(cell),
                None => return Ok(Extended::PosInf),
            }
        }
        let d = self.dim();
        let mut acc = 0.0;
        let mut idx = vec![0usize; d];
        for mask in 0..1usize << d {
            let mut w = 1.0;
            for (k, &(i, t)) in cells.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    w *= t;
                    idx[k] = i + 1;
                } else {
                    w *= 1.0 - t;
                    idx[k] = i;
                }
            }
            if w == 0.0 {
                continue;
            }
            match self.values[self.axes.ravel(&idx)] {
                Extended::Finite(v) => acc += w * v,
                Extended::PosInf => return Ok(Extended::PosInf),
            }
        }
        Ok(Extended::Finite(acc))
    }

    /// CSV with one column per axis followed by `value`; `+∞` is written `inf`.
    pub fn to_csv(&self, axis_names: &[&str]) -> String {
        let mut out = String::new();
        for k in 0..self.dim() {
            let name = axis_names
                .get(k)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("x{k}"));
            let _ = write!(out, "{name},");
        }
        out.push_str("value\n");
        for (i, v) in self.values.iter().enumerate() {
            for c in self.axes.point(i).coords() {
                let _ = write!(out, "{c},");
            }
            let _ = writeln!(out, "{v}");
        }
        out
    }

    /// Largest absolute finite difference quotient along `axis`.
    pub fn lipschitz_along(&self, axis: usize) -> f64 {
        let a = self.axes.axes()[axis];
        let h = a.spacing();
        let mut best: f64 = 0.0;
        for flat in 0..self.values.len() {
            let mut idx = self.axes.unravel(flat);
            if idx[axis] + 1 >= a.count {
                continue;
            }
            let v0 = self.values[flat];
            idx[axis] += 1;
            let v1 = self.values[self.axes.ravel(&idx)];
            if let (Extended::Finite(p), Extended::Finite(q)) = (v0, v1) {
                best = best.max((q - p).abs() / h);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis(min: f64, max: f64, count: usize) -> Axis {
        Axis::new(min, max, count).unwrap()
    }

    #[test]
    fn axis_validation() {
        assert!(Axis::new(0.0, 1.0, 1).is_err());
        assert!(Axis::new(1.0, 0.0, 3).is_err());
        assert!(serde_json::from_str::<Axis>(r#"{"min":0,"max":1,"count":1}"#).is_err());
        let a = axis(-1.0, 1.0, 3);
        assert_eq!(a.coords(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(a.node(0.0), Some(1));
        assert_eq!(a.node(0.5), None);
        assert_eq!(a.locate(1.5), None);
    }

    #[test]
    fn ravel_roundtrip() {
        let l = Lattice::new(vec![axis(0.0, 1.0, 3), axis(0.0, 1.0, 4)]).unwrap();
        for i in 0..l.len() {
            assert_eq!(l.ravel(&l.unravel(i)), i);
        }
        assert_eq!(l.point(5), Vector::from([0.5, 1.0 / 3.0]));
    }

    #[test]
    fn interpolation_is_multilinear_and_propagates_infinity() {
        let l = Lattice::new(vec![axis(0.0, 1.0, 2), axis(0.0, 1.0, 2)]).unwrap();
        let g = FieldGrid::from_fn(l.clone(), |p| Ok(Extended::Finite(p[0] + 2.0 * p[1]))).unwrap();
        let v = g.interpolate(&Vector::from([0.25, 0.5])).unwrap();
        assert!((v.finite().unwrap() - 1.25).abs() < 1e-12);
        assert_eq!(g.interpolate(&Vector::from([2.0, 0.5])).unwrap(), Extended::PosInf);
        let mut vals = g.values().to_vec();
        vals[3] = Extended::PosInf;
        let g = FieldGrid::new(l, vals).unwrap();
        assert_eq!(g.interpolate(&Vector::from([0.5, 0.5])).unwrap(), Extended::PosInf);
        assert_eq!(g.interpolate(&Vector::from([0.0, 0.0])).unwrap(), Extended::Finite(0.0));
    }

    #[test]
    fn csv_layout() {
        let l = Lattice::new(vec![axis(0.0, 1.0, 2)]).unwrap();
        let g = FieldGrid::new(l, vec![Extended::Finite(0.1), Extended::PosInf]).unwrap();
        assert_eq!(g.to_csv(&["x"]), "x,value\n0,0.1\n1,inf\n");
    }
}
