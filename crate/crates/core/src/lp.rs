//! Dense two-phase primal simplex.
//!
//! Problems here are tiny (a few dozen rows, at most 3^10 columns), so a
//! plain tableau with Bland's rule is fast enough and fully deterministic.

use crate::error::{Error, Result};

/// Feasibility and optimality tolerance.
pub const LP_TOL: f64 = 1e-9;

const PIVOT_TOL: f64 = 1e-11;
const MAX_PIVOTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<f64>,
    rel: Relation,
    rhs: f64,
}

/// `minimize c·x` subject to linear rows, with `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    objective: Vec<f64>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(*value),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn minimize(objective: Vec<f64>) -> Self {
        LinearProgram {
            objective,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds `coeffs·x rel rhs`. Panics if `coeffs` has the wrong length,
    /// since that is always a construction bug.
    pub fn constrain(&mut self, coeffs: Vec<f64>, rel: Relation, rhs: f64) {
        assert_eq!(coeffs.len(), self.objective.len(), "constraint width");
        self.rows.push(Row { coeffs, rel, rhs });
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau {
    n: usize,
    cols: usize,
    artificial_from: usize,
    data: Vec<Vec<f64>>,
    basis: Vec<usize>,
    scale: f64,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.objective.len();
        let mut rows: Vec<Row> = lp.rows.clone();
        for r in rows.iter_mut() {
            if r.rhs < 0.0 {
                r.rhs = -r.rhs;
                r.coeffs.iter_mut().for_each(|c| *c = -*c);
                r.rel = match r.rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
        }
        let slack_count = rows.iter().filter(|r| r.rel != Relation::Eq).count();
        let art_count = rows.iter().filter(|r| r.rel != Relation::Le).count();
        let artificial_from = n + slack_count;
        let cols = artificial_from + art_count;
        let mut data = Vec::with_capacity(rows.len());
        let mut basis = Vec::with_capacity(rows.len());
        let (mut s, mut a) = (n, artificial_from);
        let mut scale: f64 = 1.0;
        for r in &rows {
            let mut t = vec![0.0; cols + 1];
            t[..n].copy_from_slice(&r.coeffs);
            t[cols] = r.rhs;
            scale = scale.max(r.rhs.abs());
            match r.rel {
                Relation::Le => {
                    t[s] = 1.0;
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    t[s] = -1.0;
                    s += 1;
                    t[a] = 1.0;
                    basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    t[a] = 1.0;
                    basis.push(a);
                    a += 1;
                }
            }
            data.push(t);
        }
        Tableau {
            n,
            cols,
            artificial_from,
            data,
            basis,
            scale,
        }
    }

    fn pivot(&mut self, z: &mut [f64], row: usize, col: usize) {
        let p = self.data[row][col];
        let width = self.cols + 1;
        for k in 0..width {
            self.data[row][k] /= p;
        }
        let pr = self.data[row].clone();
        for (i, r) in self.data.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for k in 0..width {
                    r[k] -= f * pr[k];
                }
                r[col] = 0.0;
            }
        }
        let f = z[col];
        if f != 0.0 {
            for k in 0..width {
                z[k] -= f * pr[k];
            }
            z[col] = 0.0;
        }
        self.basis[row] = col;
    }

    /// Reduced-cost row for `cost` over the first `active` columns.
    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut z = vec![0.0; self.cols + 1];
        z[..cost.len()].copy_from_slice(cost);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = z[b];
            if cb != 0.0 {
                for k in 0..=self.cols {
                    z[k] -= cb * self.data[i][k];
                }
            }
        }
        z
    }

    /// Runs simplex iterations; `Ok(false)` means unbounded.
    fn iterate(&mut self, z: &mut [f64], active: usize) -> Result<bool> {
        for _ in 0..MAX_PIVOTS {
            let Some(col) = (0..active).find(|&j| z[j] < -LP_TOL * 1e-2) else {
                return Ok(true);
            };
            let mut best: Option<(usize, f64)> = None;
            for (i, r) in self.data.iter().enumerate() {
                let a = r[col];
                if a > PIVOT_TOL {
                    let ratio = r[self.cols] / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-13 * (1.0 + br.abs())
                                || (ratio <= br + 1e-13 * (1.0 + br.abs())
                                    && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                None => return Ok(false),
                Some((row, _)) => self.pivot(z, row, col),
            }
        }
        Err(Error::Internal("simplex pivot limit reached".into()))
    }

    fn run(mut self, objective: &[f64]) -> Result<LpOutcome> {
        // Phase 1: minimise the sum of artificials.
        if self.artificial_from < self.cols {
            let mut phase1 = vec![0.0; self.cols];
            phase1[self.artificial_from..].iter_mut().for_each(|c| *c = 1.0);
            let mut z = self.reduced_costs(&phase1);
            self.iterate(&mut z, self.cols)?;
            let infeasibility = -z[self.cols];
            if infeasibility > LP_TOL * self.scale {
                return Ok(LpOutcome::Infeasible);
            }
            // Drive remaining artificials out of the basis, dropping rows
            // that turn out to be redundant.
            let mut i = 0;
            while i < self.data.len() {
                if self.basis[i] >= self.artificial_from {
                    let col = (0..self.artificial_from)
                        .filter(|&j| self.data[i][j].abs() > 1e-9)
                        .max_by(|&a, &b| {
                            self.data[i][a]
                                .abs()
                                .partial_cmp(&self.data[i][b].abs())
                                .unwrap()
                        });
                    match col {
                        Some(col) => self.pivot(&mut z, i, col),
                        None => {
                            self.data.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }
        let mut z = self.reduced_costs(objective);
        if !self.iterate(&mut z, self.artificial_from)? {
            return Ok(LpOutcome::Unbounded);
        }
        let mut x = vec![0.0; self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.data[i][self.cols];
            }
        }
        let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        Ok(LpOutcome::Optimal { x, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimal(lp: &LinearProgram) -> (Vec<f64>, f64) {
        match lp.solve().unwrap() {
            LpOutcome::Optimal { x, value } => (x, value),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn textbook_maximisation() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let mut lp = LinearProgram::minimize(vec![-3.0, -5.0]);
        lp.constrain(vec![1.0, 0.0], Relation::Le, 4.0);
        lp.constrain(vec![0.0, 2.0], Relation::Le, 12.0);
        lp.constrain(vec![3.0, 2.0], Relation::Le, 18.0);
        let (x, v) = optimal(&lp);
        assert!((v + 36.0).abs() < 1e-9);
        assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn equality_and_ge_rows() {
        // min x + y, x + 2y = 4, x >= 1 -> x = 1, y = 1.5
        let mut lp = LinearProgram::minimize(vec![1.0, 1.0]);
        lp.constrain(vec![1.0, 2.0], Relation::Eq, 4.0);
        lp.constrain(vec![1.0, 0.0], Relation::Ge, 1.0);
        let (x, v) = optimal(&lp);
        assert!((v - 2.5).abs() < 1e-9, "{x:?}");
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::minimize(vec![1.0]);
        lp.constrain(vec![1.0], Relation::Le, 1.0);
        lp.constrain(vec![1.0], Relation::Ge, 2.0);
        assert_eq!(lp.solve().unwrap(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::minimize(vec![-1.0, 0.0]);
        lp.constrain(vec![1.0, -1.0], Relation::Le, 1.0);
        assert_eq!(lp.solve().unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_and_redundant_rows() {
        // -x - y = -2 twice (redundant), min x -> 0 with y = 2.
        let mut lp = LinearProgram::minimize(vec![1.0, 0.0]);
        lp.constrain(vec![-1.0, -1.0], Relation::Eq, -2.0);
        lp.constrain(vec![-1.0, -1.0], Relation::Eq, -2.0);
        let (x, v) = optimal(&lp);
        assert!(v.abs() < 1e-12);
        assert!((x[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic Beale cycling example; Bland's rule must terminate.
        let mut lp = LinearProgram::minimize(vec![-0.75, 150.0, -0.02, 6.0]);
        lp.constrain(vec![0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0);
        lp.constrain(vec![0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0);
        lp.constrain(vec![0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0);
        let (_, v) = optimal(&lp);
        assert!((v + 0.05).abs() < 1e-9);
    }
}
