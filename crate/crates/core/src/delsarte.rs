//! Linear-programming upper bounds on the size of spherical codes.
//!
//! For a code on `S^{n-1}` with minimal angle `φ`, any polynomial
//! `f = 1 + Σ_{k≥1} f_k G_k^{(n)}` with `f_k >= 0` and `f <= 0` on
//! `[-1, cos φ]` gives `A(n, φ) <= f(1)`. The LP minimizes `f(1)` over a
//! finite set of points of the interval; a cutting-plane loop adds the worst
//! violations back until the polynomial is nonpositive on the whole interval.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polybasis::{derivative, gegenbauer_values, horner, GegenbauerSeries};
use crate::simplex::LinearProgram;

/// Largest tolerated value of `f` on `[-1, cos φ]` for a verified certificate.
pub const VIOLATION_TOL: f64 = 1e-9;
/// Coefficients above this (negative) threshold are treated as zero.
pub const COEFF_TOL: f64 = -1e-12;
pub const MAX_ROUNDS: usize = 200;
/// Verified certificates keep being refined until `f <= TIGHT_TOL` holds on
/// the interval, so that the reported bound is close to the exact optimum.
pub const TIGHT_TOL: f64 = 1e-13;
/// Margins `μ` tried in turn: LP constraints are imposed as `f(t_i) <= -μ`
/// so that tableau roundoff cannot leave `f` above [`VIOLATION_TOL`] at the
/// cut points. The first margin that yields a verified polynomial wins.
pub const LP_MARGINS: [f64; 3] = [0.0, 1e-8, 1e-7];
const REFINE_STEPS: usize = 50;
const STALL_ROUNDS: usize = 3;

/// A polynomial certifying `A(dim, angle) <= bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpCertificate {
    pub series: GegenbauerSeries,
    pub angle: f64,
    pub bound: f64,
    pub verified: bool,
    pub max_violation: f64,
    pub rounds: usize,
}

/// Wire format of a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub dim: usize,
    pub angle_rad: f64,
    pub degree: usize,
    pub coeffs: Vec<f64>,
    pub bound: f64,
    pub verified: bool,
    pub max_violation: f64,
}

impl LpCertificate {
    pub fn dim(&self) -> usize {
        self.series.dim()
    }

    pub fn degree(&self) -> usize {
        self.series.degree()
    }

    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            dim: self.dim(),
            angle_rad: self.angle,
            degree: self.degree(),
            coeffs: self.series.coeffs().to_vec(),
            bound: self.bound,
            verified: self.verified,
            max_violation: self.max_violation,
        }
    }

    /// Rebuilds a certificate from its wire format. The `verified` flag is
    /// taken as given; call [`verify_certificate`] to re-check it.
    pub fn from_record(rec: &CertificateRecord) -> Result<Self> {
        if rec.coeffs.len() != rec.degree + 1 {
            return Err(Error::Parse(format!(
                "degree {} does not match {} coefficients",
                rec.degree,
                rec.coeffs.len()
            )));
        }
        Ok(Self {
            series: GegenbauerSeries::new(rec.dim, rec.coeffs.clone())?,
            angle: rec.angle_rad,
            bound: rec.bound,
            verified: rec.verified,
            max_violation: rec.max_violation,
            rounds: 0,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: CertificateRecord =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_record(&rec)
    }
}

/// Upper end of the constraint interval; `φ >= π` collapses it to `{-1}`.
fn interval_top(phi: f64) -> f64 {
    if phi >= PI {
        -1.0
    } else {
        phi.cos()
    }
}

/// Chebyshev–Lobatto points on `[lo, hi]`, endpoints included.
pub fn chebyshev_grid(lo: f64, hi: f64, size: usize) -> Vec<f64> {
    if hi <= lo || size < 2 {
        return vec![lo];
    }
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..size)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == size - 1 {
                hi
            } else {
                mid - half * (PI * i as f64 / (size - 1) as f64).cos()
            }
        })
        .collect()
}

/// Solves the Delsarte LP for `A(n, φ)` with a polynomial of the given degree.
pub fn delsarte_bound(
    n: usize,
    phi: f64,
    degree: usize,
    grid_size: usize,
) -> Result<LpCertificate> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {n}")));
    }
    if !(phi > 0.0 && phi <= PI) {
        return Err(Error::Domain(format!("angle {phi} outside (0, π]")));
    }
    if degree < 1 {
        return Err(Error::Domain("degree must be >= 1".into()));
    }
    if grid_size < degree + 2 {
        return Err(Error::Domain(format!(
            "grid size {grid_size} must be at least degree + 2 = {}",
            degree + 2
        )));
    }

    let top = interval_top(phi);
    let samples = (10 * grid_size).max(5000);
    let mut last = None;
    for margin in LP_MARGINS {
        let cert = cutting_plane(n, phi, degree, grid_size, top, samples, margin)?;
        if cert.verified {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Ok(last.expect("at least one margin is tried"))
}

fn cutting_plane(
    n: usize,
    phi: f64,
    degree: usize,
    grid_size: usize,
    top: f64,
    samples: usize,
    margin: f64,
) -> Result<LpCertificate> {
    let mut points = chebyshev_grid(-1.0, top, grid_size);
    let mut last: Option<LpCertificate> = None;
    let mut stalled = 0;
    for round in 1..=MAX_ROUNDS {
        let coeffs = solve_on_points(n, degree, &points, margin)?;
        let series = GegenbauerSeries::new(n, coeffs)?;
        let maxima = local_maxima(&series, top, samples);
        let max_violation = maxima.iter().map(|m| m.1).fold(f64::NEG_INFINITY, f64::max);
        let bound = series.eval_unchecked(1.0);
        let cert = LpCertificate {
            verified: max_violation <= VIOLATION_TOL,
            series,
            angle: phi,
            bound,
            max_violation,
            rounds: round,
        };
        if cert.max_violation <= TIGHT_TOL {
            return Ok(cert);
        }
        let before = points.len();
        for (t, v) in maxima {
            if v > TIGHT_TOL && !points.iter().any(|p| (p - t).abs() < 1e-15) {
                points.push(t);
            }
        }
        // Among verified certificates keep the one closest to feasibility;
        // stop once refinement has stalled at the roundoff floor.
        let improves = match &last {
            Some(best) if best.verified => cert.verified && cert.max_violation < best.max_violation,
            _ => true,
        };
        if improves {
            last = Some(cert);
            stalled = 0;
        } else {
            stalled += 1;
        }
        if points.len() == before || stalled == STALL_ROUNDS {
            break;
        }
    }
    Ok(last.expect("at least one round runs"))
}

/// Delsarte bound for the kissing number in dimension `n` (`φ = π/3`).
pub fn kissing_lp(n: usize, degree: usize) -> Result<LpCertificate> {
    delsarte_bound(n, PI / 3.0, degree, default_grid(degree))
}

/// Grid size used when the caller has no preference.
pub fn default_grid(degree: usize) -> usize {
    (40 * degree).max(200)
}

/// LP over the given points; returns `(1, f_1, ..., f_d)`.
///
/// The primal `min Σ f_k  s.t.  Σ f_k (-G_k(t_i)) >= 1 + μ` is solved through
/// its dual `max (1 + μ) Σ y_i  s.t.  Σ_i (-G_k(t_i)) y_i <= 1`, whose origin
/// is feasible; the `f_k` are the dual's shadow prices.
fn solve_on_points(n: usize, degree: usize, points: &[f64], margin: f64) -> Result<Vec<f64>> {
    let values: Vec<Vec<f64>> = points
        .iter()
        .map(|&t| gegenbauer_values(n, degree, t))
        .collect();
    let mut lp = LinearProgram::new(vec![1.0 + margin; points.len()]);
    // Reduced costs are `-f(t_i) - μ`; stop only once every cut holds tightly.
    lp.opt_tol = 1e-13;
    for k in 1..=degree {
        lp.add_constraint(values.iter().map(|g| -g[k]).collect(), 1.0);
    }
    let sol = lp.solve().map_err(|e| match e {
        Error::Unbounded => Error::Infeasible(format!(
            "no admissible polynomial of degree {degree} in dimension {n}"
        )),
        other => other,
    })?;
    let mut coeffs = Vec::with_capacity(degree + 1);
    coeffs.push(1.0);
    coeffs.extend(
        sol.duals
            .iter()
            .map(|&f| if f < COEFF_TOL { f } else { f.max(0.0) }),
    );
    Ok(coeffs)
}

/// Local maxima `(t, f(t))` of the series on `[-1, top]`, located on a
/// uniform sample of the monomial form and refined by bisection on the sign
/// of the derivative. Values are taken from the stable Gegenbauer form.
fn local_maxima(series: &GegenbauerSeries, top: f64, samples: usize) -> Vec<(f64, f64)> {
    if top <= -1.0 {
        return vec![(-1.0, series.eval_unchecked(-1.0))];
    }
    let mono = series.to_monomial();
    let dmono = derivative(&mono);
    let step = (top + 1.0) / (samples - 1) as f64;
    let ts: Vec<f64> = (0..samples)
        .map(|i| {
            if i == samples - 1 {
                top
            } else {
                -1.0 + step * i as f64
            }
        })
        .collect();
    let vals: Vec<f64> = ts.iter().map(|&t| horner(&mono, t)).collect();

    let mut out = Vec::new();
    for i in 0..samples {
        let left = if i > 0 {
            vals[i - 1]
        } else {
            f64::NEG_INFINITY
        };
        let right = if i + 1 < samples {
            vals[i + 1]
        } else {
            f64::NEG_INFINITY
        };
        if vals[i] < left || vals[i] < right {
            continue;
        }
        if i == 0 || i == samples - 1 {
            out.push((ts[i], series.eval_unchecked(ts[i])));
            continue;
        }
        let t = refine_max(&dmono, ts[i - 1], ts[i + 1]);
        let (ft, fs) = (series.eval_unchecked(t), series.eval_unchecked(ts[i]));
        out.push(if ft >= fs { (t, ft) } else { (ts[i], fs) });
    }
    out
}

/// Bisection for a sign change of `f'` from `+` to `-` inside `[lo, hi]`.
fn refine_max(dmono: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let dlo = horner(dmono, lo);
    let dhi = horner(dmono, hi);
    if !(dlo >= 0.0 && dhi <= 0.0) {
        return 0.5 * (lo + hi);
    }
    for _ in 0..REFINE_STEPS {
        let mid = 0.5 * (lo + hi);
        if horner(dmono, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Re-checks a certificate: returns `(ok, max f on [-1, cos φ])`.
pub fn verify_certificate(c: &LpCertificate, samples: usize) -> (bool, f64) {
    let samples = samples.max(1000);
    let top = interval_top(c.angle);
    let max = local_maxima(&c.series, top, samples)
        .into_iter()
        .map(|m| m.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let coeffs = c.series.coeffs();
    let nonneg = coeffs.iter().skip(1).all(|&f| f >= COEFF_TOL);
    let normalized = (coeffs[0] - 1.0).abs() <= 1e-12;
    (max <= VIOLATION_TOL && nonneg && normalized, max)
}
