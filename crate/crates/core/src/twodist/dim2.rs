//! Euclidean two-distance representation numbers.
//!
//! Edges get squared length 1 and non-edges squared length `c >= 1`. For a
//! fixed `c` the double-centered matrix `B(c) = -½ J D(c) J` is the Gram
//! matrix of the (unique up to isometry) realization, which exists iff
//! `B(c) ⪰ 0` and then lives in dimension `rank B(c)`. `B(c)` is affine in
//! `c` and equals `½ J` at `c = 1`, so the feasible set is an interval
//! `[1, c*]` with full rank inside and the minimal rank attained at `c*`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::graph::SimpleGraph;
use crate::error::{Error, Result};

pub const SWEEP_MAX: f64 = 10.0;
pub const SWEEP_STEP: f64 = 1e-3;
pub const BISECT_TOL: f64 = 1e-10;
/// Eigenvalues below this fraction of the largest count as zero.
pub const RANK_TOL: f64 = 1e-8;
pub const WITNESS_TOL: f64 = 1e-8;
const SAFETY_SAMPLES: usize = 20;
const SAFETY_MAX: f64 = 1e3;

#[derive(Debug, Clone, Serialize)]
pub struct Dim2Result {
    pub graph: SimpleGraph,
    pub dim2: usize,
    /// `c = (b/a)^2` with `a = 1`.
    pub ratio: f64,
    /// One point per vertex, `dim2` coordinates each.
    pub witness: Vec<Vec<f64>>,
}

impl Dim2Result {
    /// Largest relative deviation of the witness from the prescribed
    /// squared distances.
    pub fn witness_error(&self) -> f64 {
        let g = &self.graph;
        let mut worst: f64 = 0.0;
        for i in 0..g.n() {
            for j in i + 1..g.n() {
                let d2: f64 = self.witness[i]
                    .iter()
                    .zip(&self.witness[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                let target = if g.has_edge(i, j) { 1.0 } else { self.ratio };
                worst = worst.max((d2 - target).abs() / target);
            }
        }
        worst
    }
}

/// Every connected component is a clique.
pub fn is_clique_union(g: &SimpleGraph) -> bool {
    g.components().into_iter().all(|comp| {
        let mut rest = comp;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if g.row(v) | 1 << v != comp {
                return false;
            }
        }
        true
    })
}

fn gram(g: &SimpleGraph, c: f64) -> DMatrix<f64> {
    let n = g.n();
    let d = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else if g.has_edge(i, j) {
            1.0
        } else {
            c
        }
    });
    let row_means: Vec<f64> = (0..n).map(|i| d.row(i).sum() / n as f64).collect();
    let total = row_means.iter().sum::<f64>() / n as f64;
    DMatrix::from_fn(n, n, |i, j| {
        -0.5 * (d[(i, j)] - row_means[i] - row_means[j] + total)
    })
}

/// Orthonormal basis of the complement of the all-ones vector, as columns.
fn centered_basis(n: usize) -> DMatrix<f64> {
    // Helmert basis.
    DMatrix::from_fn(n, n - 1, |i, k| {
        let k1 = (k + 1) as f64;
        let scale = 1.0 / (k1 * (k1 + 1.0)).sqrt();
        if i <= k {
            scale
        } else if i == k + 1 {
            -k1 * scale
        } else {
            0.0
        }
    })
}

struct Pencil<'a> {
    g: &'a SimpleGraph,
    basis: DMatrix<f64>,
}

impl Pencil<'_> {
    /// Eigenvalues of `B(c)` on the complement of the all-ones vector.
    fn spectrum(&self, c: f64) -> Vec<f64> {
        let b = gram(self.g, c);
        let reduced = self.basis.transpose() * b * &self.basis;
        let mut ev: Vec<f64> = SymmetricEigen::new(reduced)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    fn is_psd(&self, c: f64) -> bool {
        let ev = self.spectrum(c);
        let scale = ev.last().copied().unwrap_or(1.0).abs().max(1.0);
        ev[0] >= -1e-12 * scale
    }
}

fn witness(g: &SimpleGraph, c: f64) -> (usize, Vec<Vec<f64>>) {
    let n = g.n();
    let eig = SymmetricEigen::new(gram(g, c));
    let top = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut keep: Vec<usize> = (0..n)
        .filter(|&k| eig.eigenvalues[k] > RANK_TOL * top)
        .collect();
    keep.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let pts = (0..n)
        .map(|i| {
            keep.iter()
                .map(|&k| eig.eigenvectors[(i, k)] * eig.eigenvalues[k].sqrt())
                .collect()
        })
        .collect();
    (keep.len(), pts)
}

/// Smallest dimension in which `g` is a two-distance set with edges short.
///
/// Complete and empty graphs are one-distance sets; they get the simplex
/// dimension `n - 1` with ratio 1.
pub fn dim2(g: &SimpleGraph) -> Result<Dim2Result> {
    let n = g.n();
    if !(2..=10).contains(&n) {
        return Err(Error::Domain(format!(
            "dim2 supports 2 <= n <= 10, got {n}"
        )));
    }
    let done = |ratio: f64| {
        let (dim, witness) = witness(g, ratio);
        Ok(Dim2Result {
            graph: g.clone(),
            dim2: dim,
            ratio,
            witness,
        })
    };
    if g.edge_count() == 0 || g.is_complete() {
        return done(1.0);
    }

    let pencil = Pencil {
        g,
        basis: centered_basis(n),
    };
    let steps = ((SWEEP_MAX - 1.0) / SWEEP_STEP).round() as usize;
    let mut prev = 1.0;
    for k in 1..=steps {
        let c = 1.0 + k as f64 * SWEEP_STEP;
        if !pencil.is_psd(c) {
            let (mut lo, mut hi) = (prev, c);
            while hi - lo > BISECT_TOL {
                let mid = 0.5 * (lo + hi);
                if pencil.is_psd(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return done(lo);
        }
        prev = c;
    }

    // The interval extends past the sweep; make sure it does not end
    // somewhere in [10, 1000], where a lower rank would be missed.
    for s in 1..=SAFETY_SAMPLES {
        let c = SWEEP_MAX * (SAFETY_MAX / SWEEP_MAX).powf(s as f64 / SAFETY_SAMPLES as f64);
        if !pencil.is_psd(c) {
            return Err(Error::RankDropBeyondSweep(c));
        }
    }
    done(SWEEP_MAX)
}
