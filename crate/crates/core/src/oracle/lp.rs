//! Dense two-phase tableau simplex with Bland's rule.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-11;
const FEASIBILITY_TOL: f64 = 1e-9;
const MAX_ITERATIONS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// `maximize c'x` subject to `A x (<=|>=|=) b`, with `x >= 0` unless marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    objective: Vec<f64>,
    rows: Vec<Vec<f64>>,
    senses: Vec<Sense>,
    rhs: Vec<f64>,
    free: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

impl LinearProgram {
    pub fn maximize(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self { objective, rows: Vec::new(), senses: Vec::new(), rhs: Vec::new(), free: vec![false; n] }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constraint(&mut self, row: Vec<f64>, sense: Sense, rhs: f64) -> Result<&mut Self> {
        if row.len() != self.num_vars() {
            return Err(Error::InvalidInput(format!(
                "constraint has {} coefficients, program has {} variables",
                row.len(),
                self.num_vars()
            )));
        }
        self.rows.push(row);
        self.senses.push(sense);
        self.rhs.push(rhs);
        Ok(self)
    }

    /// Lifts the nonnegativity bound on variable `j`.
    pub fn free_var(&mut self, j: usize) -> &mut Self {
        self.free[j] = true;
        self
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let mut t = Tableau::build(self);
        t.phase_one()?;
        t.phase_two(self)?;
        let x = t.extract(self);
        let value = self.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        Ok(LpSolution { x, value })
    }
}

struct Tableau {
    /// Constraint rows, rhs in the last column.
    a: Vec<Vec<f64>>,
    basis: Vec<usize>,
    /// Column of each original variable; free variables also own the next column as their negative part.
    var_cols: Vec<usize>,
    artificial_start: usize,
    cols: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.rows.len();
        let mut var_cols = Vec::with_capacity(lp.num_vars());
        let mut structural = 0;
        for &f in &lp.free {
            var_cols.push(structural);
            structural += if f { 2 } else { 1 };
        }
        let extra = lp.senses.iter().filter(|s| **s != Sense::Eq).count();
        let artificial_start = structural + extra;
        let artificials = lp
            .senses
            .iter()
            .zip(&lp.rhs)
            .filter(|(s, b)| !matches!(normalized_sense(**s, **b), Sense::Le))
            .count();
        let cols = artificial_start + artificials;

        let mut a = vec![vec![0.0; cols + 1]; m];
        let mut basis = vec![0; m];
        let mut next_extra = structural;
        let mut next_art = artificial_start;
        for i in 0..m {
            let sign = if lp.rhs[i] < 0.0 { -1.0 } else { 1.0 };
            for (j, &coef) in lp.rows[i].iter().enumerate() {
                a[i][var_cols[j]] = sign * coef;
                if lp.free[j] {
                    a[i][var_cols[j] + 1] = -sign * coef;
                }
            }
            a[i][cols] = sign * lp.rhs[i];
            let sense = normalized_sense(lp.senses[i], lp.rhs[i]);
            match lp.senses[i] {
                Sense::Eq => {}
                _ => {
                    a[i][next_extra] = if sense == Sense::Le { 1.0 } else { -1.0 };
                    if sense == Sense::Le {
                        basis[i] = next_extra;
                    }
                    next_extra += 1;
                }
            }
            if sense != Sense::Le {
                a[i][next_art] = 1.0;
                basis[i] = next_art;
                next_art += 1;
            }
        }
        Self { a, basis, var_cols, artificial_start, cols }
    }

    /// Reduced-cost row `z - c'x` for `cost`, with basic columns eliminated.
    fn objective_row(&self, cost: &[f64]) -> Vec<f64> {
        let mut row: Vec<f64> = cost.iter().map(|c| -c).collect();
        row.push(0.0);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = row[b];
            if cb != 0.0 {
                for (r, v) in row.iter_mut().zip(&self.a[i]) {
                    *r -= cb * v;
                }
            }
        }
        row
    }

    fn pivot(&mut self, obj: &mut [f64], row: usize, col: usize) {
        let p = self.a[row][col];
        for v in self.a[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.a[row].clone();
        for (i, r) in self.a.iter_mut().enumerate() {
            if i != row && r[col] != 0.0 {
                let f = r[col];
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                r[col] = 0.0;
            }
        }
        let f = obj[col];
        if f != 0.0 {
            for (v, pv) in obj.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            obj[col] = 0.0;
        }
        self.basis[row] = col;
    }

    /// Runs Bland's rule on columns `0..allowed` until optimal.
    fn iterate(&mut self, obj: &mut [f64], allowed: usize) -> Result<()> {
        for _ in 0..MAX_ITERATIONS {
            let Some(col) = (0..allowed).find(|&j| obj[j] < -PIVOT_TOL) else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, r) in self.a.iter().enumerate() {
                if r[col] > PIVOT_TOL {
                    let ratio = r[self.cols] / r[col];
                    let better = match leave {
                        None => true,
                        Some((l, best)) => {
                            ratio < best - PIVOT_TOL || (ratio <= best + PIVOT_TOL && self.basis[i] < self.basis[l])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return Err(Error::Lp("objective is unbounded".into()));
            };
            self.pivot(obj, row, col);
        }
        Err(Error::Lp(format!("no convergence within {MAX_ITERATIONS} pivots")))
    }

    fn phase_one(&mut self) -> Result<()> {
        if self.artificial_start == self.cols {
            return Ok(());
        }
        let mut cost = vec![0.0; self.cols];
        for c in cost.iter_mut().skip(self.artificial_start) {
            *c = -1.0;
        }
        let mut obj = self.objective_row(&cost);
        self.iterate(&mut obj, self.cols)?;
        let infeasibility = -obj[self.cols];
        if infeasibility.abs() > FEASIBILITY_TOL * (1.0 + self.rhs_scale()) {
            return Err(Error::Lp(format!("constraints are infeasible (phase one residual {infeasibility:e})")));
        }
        // Drive remaining artificials out of the basis; rows with no other support are redundant.
        for i in 0..self.a.len() {
            if self.basis[i] >= self.artificial_start {
                if let Some(col) = (0..self.artificial_start).find(|&j| self.a[i][j].abs() > PIVOT_TOL) {
                    self.pivot(&mut obj, i, col);
                }
            }
        }
        Ok(())
    }

    fn phase_two(&mut self, lp: &LinearProgram) -> Result<()> {
        let mut cost = vec![0.0; self.cols];
        for (j, &c) in lp.objective.iter().enumerate() {
            cost[self.var_cols[j]] = c;
            if lp.free[j] {
                cost[self.var_cols[j] + 1] = -c;
            }
        }
        let mut obj = self.objective_row(&cost);
        self.iterate(&mut obj, self.artificial_start)
    }

    fn rhs_scale(&self) -> f64 {
        self.a.iter().map(|r| r[self.cols].abs()).fold(0.0, f64::max)
    }

    fn extract(&self, lp: &LinearProgram) -> Vec<f64> {
        let mut col_values = vec![0.0; self.cols];
        for (i, &b) in self.basis.iter().enumerate() {
            col_values[b] = self.a[i][self.cols];
        }
        lp.free
            .iter()
            .zip(&self.var_cols)
            .map(|(&f, &c)| if f { col_values[c] - col_values[c + 1] } else { col_values[c] })
            .collect()
    }
}

fn normalized_sense(sense: Sense, rhs: f64) -> Sense {
    match (sense, rhs < 0.0) {
        (Sense::Le, true) => Sense::Ge,
        (Sense::Ge, true) => Sense::Le,
        (s, _) => s,
    }
}
