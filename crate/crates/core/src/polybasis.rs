//! Normalized Gegenbauer polynomials `G_k^{(n)}` and expansions in that basis.
//!
//! The normalization is `G_k^{(n)}(1) = 1`, obtained from the three-term
//! recurrence
//!
//! ```text
//! G_0 = 1,  G_1 = t,
//! G_k = ((2k + n - 4) t G_{k-1} - (k - 1) G_{k-2}) / (k + n - 3)
//! ```
//!
//! For `n = 3` these are the Legendre polynomials and for `n = 2` the
//! Chebyshev polynomials of the first kind. A function `f(t)` is positive
//! definite on `S^{n-1}` exactly when its expansion in this basis has
//! nonnegative coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {n}")));
    }
    Ok(())
}

fn check_arg(t: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("argument {t} outside [-1, 1]")));
    }
    Ok(())
}

/// Recurrence coefficients `(a_k, b_k)` with `G_k = a_k t G_{k-1} - b_k G_{k-2}`.
#[inline]
fn recurrence(n: usize, k: usize) -> (f64, f64) {
    let denom = (k + n - 3) as f64;
    ((2 * k + n - 4) as f64 / denom, (k - 1) as f64 / denom)
}

/// Values `G_0(t), ..., G_degree(t)` in dimension `n`, without domain checks.
pub(crate) fn gegenbauer_values(n: usize, degree: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(degree + 1);
    out.push(1.0);
    if degree >= 1 {
        out.push(t);
    }
    for k in 2..=degree {
        let (a, b) = recurrence(n, k);
        let next = a * t * out[k - 1] - b * out[k - 2];
        out.push(next);
    }
    out
}

/// Evaluates `G_k^{(n)}(t)`.
pub fn gegenbauer_eval(n: usize, k: usize, t: f64) -> Result<f64> {
    check_dim(n)?;
    check_arg(t)?;
    if t == 1.0 {
        return Ok(1.0);
    }
    Ok(gegenbauer_values(n, k, t)[k])
}

/// Polynomial `f(t) = Σ f_k G_k^{(n)}(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GegenbauerSeries {
    dim: usize,
    coeffs: Vec<f64>,
}

impl GegenbauerSeries {
    pub fn new(dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(dim)?;
        if coeffs.is_empty() {
            return Err(Error::Domain(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(Self { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates the series at `t ∈ [-1, 1]`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        check_arg(t)?;
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        if t == 1.0 {
            return self.coeffs.iter().sum();
        }
        // Clenshaw summation over the three-term recurrence.
        let n = self.dim;
        let d = self.degree();
        let a = |k: usize| if k <= d { recurrence(n, k).0 } else { 0.0 };
        let b = |k: usize| if k <= d { recurrence(n, k).1 } else { 0.0 };
        let (mut b1, mut b2) = (0.0, 0.0);
        for k in (1..=d).rev() {
            let bk = self.coeffs[k] + a(k + 1) * t * b1 - b(k + 2) * b2;
            b2 = b1;
            b1 = bk;
        }
        let b_2 = if d >= 2 { recurrence(n, 2).1 } else { 0.0 };
        self.coeffs[0] + b1 * t - b_2 * b2
    }

    /// Monomial coefficients `c_0, ..., c_d` of the same polynomial.
    pub fn to_monomial(&self) -> Vec<f64> {
        let basis = monomial_basis(self.dim, self.degree());
        let mut out = vec![0.0; self.coeffs.len()];
        for (fk, poly) in self.coeffs.iter().zip(&basis) {
            for (o, c) in out.iter_mut().zip(poly) {
                *o += fk * c;
            }
        }
        out
    }
}

/// Evaluates `Σ f_k G_k^{(n)}(t)` given by dimension and coefficients.
pub fn series_eval(s: &GegenbauerSeries, t: f64) -> Result<f64> {
    s.eval(t)
}

/// Monomial coefficients of `G_0, ..., G_degree` in dimension `n`.
pub fn monomial_basis(n: usize, degree: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(degree + 1);
    basis.push(vec![1.0]);
    if degree >= 1 {
        basis.push(vec![0.0, 1.0]);
    }
    for k in 2..=degree {
        let (a, b) = recurrence(n, k);
        let mut p = vec![0.0; k + 1];
        for (i, c) in basis[k - 1].iter().enumerate() {
            p[i + 1] += a * c;
        }
        for (i, c) in basis[k - 2].iter().enumerate() {
            p[i] -= b * c;
        }
        basis.push(p);
    }
    basis
}

/// Horner evaluation of monomial coefficients (lowest degree first).
pub fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// Coefficients of the derivative of a monomial-form polynomial.
pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * c)
        .collect()
}
