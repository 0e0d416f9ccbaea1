//! Dense two-phase simplex for small standard-form linear programs.
//!
//! Problems are `min cᵀx  s.t.  Ax = b, x ≥ 0`. Phase 1 minimises the exact
//! L1 residual `‖Ax − b‖₁` through paired artificial columns, so the
//! infeasibility threshold is a residual tolerance rather than a pivot artefact.
//! Pivoting follows Bland's rule, which rules out cycling on degenerate
//! vertices; instances here stay in the low hundreds of columns.

use serde::Serialize;

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-11;
const MAX_PIVOTS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of a linear program.
///
/// `value` follows the minimisation convention: `+inf` when infeasible and
/// `-inf` when unbounded below. `certificate` is the primal point (phase-1 best
/// point when infeasible) and `residual` its L1 residual `‖Ax − b‖₁`.
#[derive(Clone, Debug, Serialize)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: f64,
    pub certificate: Vec<f64>,
    pub residual: f64,
}

impl LpResult {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// `min cost·x  s.t.  rows·x = rhs, x ≥ 0`.
#[derive(Clone, Debug, Default)]
pub struct StandardForm {
    pub cost: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
}

impl StandardForm {
    pub fn new(num_vars: usize) -> Self {
        StandardForm {
            cost: vec![0.0; num_vars],
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    pub fn push_row(&mut self, row: Vec<f64>, rhs: f64) {
        debug_assert_eq!(row.len(), self.num_vars());
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Solves the program; `feas_tol` bounds the accepted L1 residual.
    pub fn solve(&self, feas_tol: f64) -> Result<LpResult> {
        let n = self.num_vars();
        let m = self.rows.len();
        if self.rhs.len() != m || self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::Lp("ragged constraint matrix".into()));
        }
        if self
            .rows
            .iter()
            .flatten()
            .chain(&self.rhs)
            .chain(&self.cost)
            .any(|v| !v.is_finite())
        {
            return Err(Error::Lp("non-finite coefficient".into()));
        }
        let mut t = Tableau::phase_one(self);
        t.run(n + 2 * m)?;
        let phase_one_value = -t.obj_rhs();
        if phase_one_value > feas_tol {
            let x = t.primal(n);
            let residual = self.residual(&x);
            return Ok(LpResult {
                status: LpStatus::Infeasible,
                value: f64::INFINITY,
                certificate: x,
                residual,
            });
        }
        t.drive_out_artificials(n);
        t.set_costs(&self.cost);
        // Artificial columns never re-enter.
        let status = t.run(n)?;
        let x = t.primal(n);
        let residual = self.residual(&x);
        Ok(match status {
            Phase::Optimal => LpResult {
                status: LpStatus::Optimal,
                value: self.cost.iter().zip(&x).map(|(c, v)| c * v).sum(),
                certificate: x,
                residual,
            },
            Phase::Unbounded => LpResult {
                status: LpStatus::Unbounded,
                value: f64::NEG_INFINITY,
                certificate: x,
                residual,
            },
        })
    }

    fn residual(&self, x: &[f64]) -> f64 {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| (row.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() - b).abs())
            .sum()
    }
}

enum Phase {
    Optimal,
    Unbounded,
}

/// Row-major dense tableau. The last row holds reduced costs, the last column
/// the right-hand side; `basis[i]` is the column basic in row `i`.
struct Tableau {
    cells: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn phase_one(lp: &StandardForm) -> Tableau {
        let n = lp.num_vars();
        let m = lp.rows.len();
        // columns: x (n) | a+ (m) | a- (m) | rhs
        let width = n + 2 * m + 1;
        let mut cells = Vec::with_capacity(m + 1);
        for (i, (row, &b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
            let sign = if b < 0.0 { -1.0 } else { 1.0 };
            let mut r = vec![0.0; width];
            for (j, a) in row.iter().enumerate() {
                r[j] = sign * a;
            }
            r[n + i] = 1.0;
            r[n + m + i] = -1.0;
            r[width - 1] = sign * b;
            cells.push(r);
        }
        let mut obj = vec![0.0; width];
        obj[n + m..n + 2 * m].fill(2.0);
        for r in &cells {
            for (j, o) in obj.iter_mut().enumerate() {
                if j < n || j == width - 1 || j >= n + m {
                    *o -= r[j];
                }
            }
        }
        // a+ columns are basic with zero reduced cost; a- then has cost 1 - (-1) = 2.
        obj[n + m..n + 2 * m].fill(2.0);
        cells.push(obj);
        Tableau {
            cells,
            basis: (n..n + m).collect(),
            width,
        }
    }

    fn rows(&self) -> usize {
        self.basis.len()
    }

    fn obj_rhs(&self) -> f64 {
        self.cells[self.rows()][self.width - 1]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.cells[r][c];
        for j in 0..w {
            self.cells[r][j] /= p;
        }
        let pivot_row = self.cells[r].clone();
        for (i, row) in self.cells.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for j in 0..w {
                    row[j] -= f * pivot_row[j];
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    /// Bland's-rule simplex over columns `0..allowed`.
    fn run(&mut self, allowed: usize) -> Result<Phase> {
        let m = self.rows();
        let rhs = self.width - 1;
        for _ in 0..MAX_PIVOTS {
            let entering = (0..allowed).find(|&j| self.cells[m][j] < -PIVOT_EPS);
            let Some(c) = entering else {
                return Ok(Phase::Optimal);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                let a = self.cells[i][c];
                if a > PIVOT_EPS {
                    let ratio = self.cells[i][rhs].max(0.0) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((k, best)) => {
                            if ratio < best - 1e-14
                                || (ratio <= best + 1e-14 && self.basis[i] < self.basis[k])
                            {
                                Some((i, ratio))
                            } else {
                                Some((k, best))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Ok(Phase::Unbounded),
                Some((r, _)) => self.pivot(r, c),
            }
        }
        Err(Error::Lp("pivot limit reached".into()))
    }

    /// Removes artificial columns from the basis after a successful phase 1.
    fn drive_out_artificials(&mut self, n: usize) {
        let rhs = self.width - 1;
        let mut i = 0;
        while i < self.rows() {
            if self.basis[i] >= n {
                // Accept the tolerance-level residual of this row.
                self.cells[i][rhs] = 0.0;
                let col = (0..n)
                    .filter(|&j| self.cells[i][j].abs() > PIVOT_EPS)
                    .max_by(|&a, &b| {
                        self.cells[i][a]
                            .abs()
                            .partial_cmp(&self.cells[i][b].abs())
                            .unwrap()
                    });
                match col {
                    Some(j) => {
                        self.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        // Redundant row.
                        self.cells.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    fn set_costs(&mut self, cost: &[f64]) {
        let m = self.rows();
        let w = self.width;
        let mut obj = vec![0.0; w];
        obj[..cost.len()].copy_from_slice(cost);
        for i in 0..m {
            let cb = cost.get(self.basis[i]).copied().unwrap_or(0.0);
            if cb != 0.0 {
                for (o, c) in obj.iter_mut().zip(&self.cells[i][..w]) {
                    *o -= cb * c;
                }
            }
        }
        self.cells[m] = obj;
    }

    fn primal(&self, n: usize) -> Vec<f64> {
        let rhs = self.width - 1;
        let mut x = vec![0.0; n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.cells[i][rhs].max(0.0);
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_program() {
        // min -x - y  s.t. x + s1 = 1, y + s2 = 2
        let mut lp = StandardForm::new(4);
        lp.cost = vec![-1.0, -1.0, 0.0, 0.0];
        lp.push_row(vec![1.0, 0.0, 1.0, 0.0], 1.0);
        lp.push_row(vec![0.0, 1.0, 0.0, 1.0], 2.0);
        let r = lp.solve(1e-9).unwrap();
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.value + 3.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = StandardForm::new(1);
        lp.push_row(vec![1.0], -1.0);
        assert_eq!(lp.solve(1e-9).unwrap().status, LpStatus::Infeasible);
        let mut lp = StandardForm::new(2);
        lp.cost = vec![-1.0, 0.0];
        lp.push_row(vec![1.0, -1.0], 0.0);
        assert_eq!(lp.solve(1e-9).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn phase_one_reports_l1_residual() {
        // x = 1 and x = 3 cannot both hold; best L1 residual is 2.
        let mut lp = StandardForm::new(1);
        lp.push_row(vec![1.0], 1.0);
        lp.push_row(vec![1.0], 3.0);
        let r = lp.solve(1e-9).unwrap();
        assert_eq!(r.status, LpStatus::Infeasible);
        assert!((r.residual - 2.0).abs() < 1e-12);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let mut lp = StandardForm::new(2);
        lp.cost = vec![1.0, 2.0];
        lp.push_row(vec![1.0, 1.0], 1.0);
        lp.push_row(vec![2.0, 2.0], 2.0);
        let r = lp.solve(1e-9).unwrap();
        assert!(r.is_optimal());
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_constraint_set() {
        let mut lp = StandardForm::new(2);
        lp.cost = vec![0.0, -1.0];
        assert_eq!(lp.solve(1e-9).unwrap().status, LpStatus::Unbounded);
        lp.cost = vec![0.0, 1.0];
        let r = lp.solve(1e-9).unwrap();
        assert_eq!(r.value, 0.0);
    }
}
