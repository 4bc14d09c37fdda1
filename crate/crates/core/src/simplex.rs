//! Dense tableau simplex for problems of the form
//!
//! ```text
//! maximize  c·x   subject to  A x <= b,  x >= 0,  b >= 0
//! ```
//!
//! The slack basis is feasible at the origin, so no phase one is needed.
//! Pricing is Dantzig's rule; after a run of degenerate pivots the solver
//! switches to Bland's rule so it cannot cycle.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

const MAX_REFACTORS: usize = 5;
const PIVOT_TOL: f64 = 1e-12;
/// Default optimality tolerance on reduced costs.
pub const OPT_TOL: f64 = 1e-10;
const DEGENERATE_RUN: usize = 50;

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    /// A column may enter while its reduced cost is below `-opt_tol`.
    pub opt_tol: f64,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Shadow price of each constraint row.
    pub duals: Vec<f64>,
    /// Basic column per row; columns `>= x.len()` are slacks.
    pub basis: Vec<usize>,
    pub pivots: usize,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>) -> Self {
        Self {
            objective,
            constraints: Vec::new(),
            rhs: Vec::new(),
            opt_tol: OPT_TOL,
        }
    }

    pub fn add_constraint(&mut self, row: Vec<f64>, rhs: f64) {
        debug_assert_eq!(row.len(), self.objective.len());
        self.constraints.push(row);
        self.rhs.push(rhs);
    }

    pub fn solve(&self) -> Result<LpSolution> {
        self.solve_with_limit(100_000)
    }

    pub fn solve_with_limit(&self, max_pivots: usize) -> Result<LpSolution> {
        let n = self.objective.len();
        let m = self.constraints.len();
        if let Some(bad) = self.rhs.iter().find(|b| **b < 0.0) {
            return Err(Error::Domain(format!(
                "right-hand side must be nonnegative, got {bad}"
            )));
        }
        let width = n + m + 1;
        let mut basis: Vec<usize> = (n..n + m).collect();
        let mut t = self.tableau(&basis).expect("slack basis is nonsingular");

        let mut pivots = 0;
        let mut refactors = 0;
        loop {
            self.pivot_until_optimal(&mut t, &mut basis, &mut pivots, max_pivots)?;
            // Rebuild the tableau from the original data to shed accumulated
            // roundoff, and keep pivoting if it reveals an improving column.
            if refactors == MAX_REFACTORS {
                break;
            }
            let Some(fresh) = self.tableau(&basis) else {
                break;
            };
            t = fresh;
            refactors += 1;
            if (0..n + m).all(|j| t[j] >= -self.opt_tol) {
                break;
            }
        }

        let mut x = vec![0.0; n];
        for (i, &bcol) in basis.iter().enumerate() {
            if bcol < n {
                x[bcol] = t[(i + 1) * width + width - 1].max(0.0);
            }
        }
        let duals = (0..m).map(|i| t[n + i]).collect();
        Ok(LpSolution {
            x,
            objective: t[width - 1],
            duals,
            basis,
            pivots,
        })
    }

    fn pivot_until_optimal(
        &self,
        t: &mut [f64],
        basis: &mut [usize],
        pivots: &mut usize,
        max_pivots: usize,
    ) -> Result<()> {
        let n = self.objective.len();
        let m = self.constraints.len();
        let width = n + m + 1;
        let mut degenerate = 0;
        loop {
            let bland = degenerate >= DEGENERATE_RUN;
            let entering = if bland {
                (0..n + m).find(|&j| t[j] < -self.opt_tol)
            } else {
                let mut best = None;
                let mut most = -self.opt_tol;
                for j in 0..n + m {
                    if t[j] < most {
                        most = t[j];
                        best = Some(j);
                    }
                }
                best
            };
            let Some(col) = entering else { return Ok(()) };

            let mut leaving: Option<(usize, f64)> = None;
            for i in 0..m {
                let a = t[(i + 1) * width + col];
                if a > PIVOT_TOL {
                    let ratio = t[(i + 1) * width + width - 1].max(0.0) / a;
                    let better = match leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - 1e-14
                                || (ratio <= lr + 1e-14
                                    && if bland {
                                        basis[i] < basis[li]
                                    } else {
                                        a > t[(li + 1) * width + col]
                                    })
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, ratio)) = leaving else {
                return Err(Error::Unbounded);
            };
            if ratio.abs() < 1e-14 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            pivot(t, width, row + 1, col);
            basis[row] = col;
            *pivots += 1;
            if *pivots > max_pivots {
                return Err(Error::Infeasible(format!(
                    "pivot limit {max_pivots} reached"
                )));
            }
        }
    }

    /// Tableau for the given basis, computed directly from the problem data:
    /// rows `B⁻¹ [A | I | b]` under the reduced-cost row `c_B B⁻¹ [A | I] - [c | 0]`.
    fn tableau(&self, basis: &[usize]) -> Option<Vec<f64>> {
        let n = self.objective.len();
        let m = self.constraints.len();
        let width = n + m + 1;
        let column = |j: usize| -> DVector<f64> {
            if j < n {
                DVector::from_fn(m, |i, _| self.constraints[i][j])
            } else {
                DVector::from_fn(m, |i, _| if i == j - n { 1.0 } else { 0.0 })
            }
        };
        let mut b = DMatrix::zeros(m, m);
        for (r, &j) in basis.iter().enumerate() {
            b.set_column(r, &column(j));
        }
        let lu = b.lu();
        let mut full = DMatrix::zeros(m, width);
        for j in 0..n + m {
            full.set_column(j, &column(j));
        }
        full.set_column(width - 1, &DVector::from_column_slice(&self.rhs));
        let body = lu.solve(&full)?;
        if body.iter().any(|v| !v.is_finite()) {
            return None;
        }
        let cost = |j: usize| if j < n { self.objective[j] } else { 0.0 };
        let mut t = vec![0.0; (m + 1) * width];
        for c in 0..width {
            let mut z: f64 = basis
                .iter()
                .enumerate()
                .map(|(r, &j)| cost(j) * body[(r, c)])
                .sum();
            if c < n + m {
                z -= cost(c);
            }
            t[c] = z;
            for r in 0..m {
                t[(r + 1) * width + c] = body[(r, c)];
            }
        }
        for (r, &j) in basis.iter().enumerate() {
            for rr in 0..=m {
                t[rr * width + j] = if rr == r + 1 { 1.0 } else { 0.0 };
            }
        }
        Some(t)
    }
}

fn pivot(t: &mut [f64], width: usize, row: usize, col: usize) {
    let p = t[row * width + col];
    for v in &mut t[row * width..(row + 1) * width] {
        *v /= p;
    }
    let pivot_row: Vec<f64> = t[row * width..(row + 1) * width].to_vec();
    let rows = t.len() / width;
    for r in 0..rows {
        if r == row {
            continue;
        }
        let factor = t[r * width + col];
        if factor == 0.0 {
            continue;
        }
        for (v, pr) in t[r * width..(r + 1) * width].iter_mut().zip(&pivot_row) {
            *v -= factor * pr;
        }
        t[r * width + col] = 0.0;
    }
}
