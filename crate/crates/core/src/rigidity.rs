//! Local rigidity of contact graphs and a local optimizer for `ψ(X)`.
//!
//! A vertex `x` with contacts `N(x)` is movable when some tangent direction
//! `u` at `x` increases the angular distance to every contact to first
//! order, i.e. `⟨u, g_y⟩ > 0` for all `y ∈ N(x)` where `g_y` is the unit
//! tangent at `x` pointing away from `y`. This is decided by a small LP.
//! The contact graph is irreducible when no vertex is movable.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::configs::{angle, contact_graph, dot, min_angle, norm, SphericalConfig};
use crate::error::{Error, Result};
use crate::geom_bounds::tammes_angle_from_bound;
use crate::simplex::LinearProgram;

/// Minimal first-order rate required of an improving direction.
pub const RATE_EPS: f64 = 1e-8;
/// Contact tolerance used when none is given.
pub const CONTACT_TOL: f64 = 1e-9;
/// Tolerance on `|ψ - d_N|` accepted by [`tammes_check`].
pub const TAMMES_TOL: f64 = 1e-5;
pub const DEFAULT_ITERS: usize = 300;

#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub config: SphericalConfig,
    pub irreducible: bool,
    pub movable_vertex: Option<usize>,
    pub improving_direction: Option<Vec<f64>>,
    /// Smallest first-order rate `⟨u, g_y⟩` over the contacts of the movable vertex.
    pub min_rate: Option<f64>,
}

/// Unit tangent at `x` pointing away from `y`; `None` when `y = -x`.
pub fn away_direction(x: &[f64], y: &[f64]) -> Option<Vec<f64>> {
    let c = dot(x, y);
    let g: Vec<f64> = x.iter().zip(y).map(|(xi, yi)| c * xi - yi).collect();
    let r = norm(&g);
    (r > 1e-12).then(|| g.iter().map(|v| v / r).collect())
}

fn project_tangent(x: &[f64], u: &mut [f64]) {
    let c = dot(x, u);
    u.iter_mut().zip(x).for_each(|(ui, xi)| *ui -= c * xi);
}

/// Best first-order escape direction for a point whose contacts have the
/// given away-directions. Returns the unit direction and its minimal rate.
fn escape_direction(x: &[f64], gradients: &[Vec<f64>]) -> Result<Option<(Vec<f64>, f64)>> {
    let dim = x.len();
    // Variables: p (dim), q (dim), s; u = p - q with 0 <= p, q <= 1.
    let nvars = 2 * dim + 1;
    let mut obj = vec![0.0; nvars];
    obj[2 * dim] = 1.0;
    let mut lp = LinearProgram::new(obj);
    for g in gradients {
        let mut row = vec![0.0; nvars];
        for i in 0..dim {
            row[i] = -g[i];
            row[dim + i] = g[i];
        }
        row[2 * dim] = 1.0;
        lp.add_constraint(row, 0.0);
    }
    for i in 0..nvars {
        let mut row = vec![0.0; nvars];
        row[i] = 1.0;
        lp.add_constraint(row, 1.0);
    }
    let sol = lp.solve()?;
    if sol.objective <= 0.0 {
        return Ok(None);
    }
    let mut u: Vec<f64> = (0..dim).map(|i| sol.x[i] - sol.x[dim + i]).collect();
    project_tangent(x, &mut u);
    let r = norm(&u);
    if r < 1e-14 {
        return Ok(None);
    }
    u.iter_mut().for_each(|v| *v /= r);
    let rate = gradients
        .iter()
        .map(|g| dot(&u, g))
        .fold(f64::INFINITY, f64::min);
    Ok((rate >= RATE_EPS).then_some((u, rate)))
}

/// Decides whether the contact graph of `config` is irreducible.
///
/// Isolated vertices carry no contact edges and are skipped. A vertex with
/// an antipodal contact cannot move without shortening that contact and is
/// treated as immovable.
pub fn is_irreducible(config: &SphericalConfig, tol: f64) -> Result<RigidityReport> {
    let graph = contact_graph(config, tol)?;
    if graph.edges.is_empty() {
        return Err(Error::EmptyContactGraph);
    }
    for v in 0..config.len() {
        let x = &config.points[v];
        let neighbors = graph.neighbors(v);
        if neighbors.is_empty() {
            continue;
        }
        let gradients: Option<Vec<Vec<f64>>> = neighbors
            .iter()
            .map(|&y| away_direction(x, &config.points[y]))
            .collect();
        let Some(gradients) = gradients else { continue };
        if let Some((u, rate)) = escape_direction(x, &gradients)? {
            return Ok(RigidityReport {
                config: config.clone(),
                irreducible: false,
                movable_vertex: Some(v),
                improving_direction: Some(u),
                min_rate: Some(rate),
            });
        }
    }
    Ok(RigidityReport {
        config: config.clone(),
        irreducible: true,
        movable_vertex: None,
        improving_direction: None,
        min_rate: None,
    })
}

/// Moves `vertex` by `step` along the tangent `dir` (geodesically) and
/// returns the new point.
pub fn shifted_point(x: &[f64], dir: &[f64], step: f64) -> Vec<f64> {
    x.iter()
        .zip(dir)
        .map(|(a, b)| a * step.cos() + b * step.sin())
        .collect()
}

fn normalize(p: &mut [f64]) {
    let r = norm(p);
    p.iter_mut().for_each(|v| *v /= r);
}

fn psi_of(points: &[Vec<f64>]) -> f64 {
    min_angle(points).unwrap_or(std::f64::consts::PI)
}

/// Smooth soft-min of chord lengths, `-(1/β) log Σ exp(-β |x_i - x_j|)`,
/// and its gradient (projected to the tangent spaces).
fn soft_min(points: &[Vec<f64>], beta: f64) -> (f64, Vec<Vec<f64>>) {
    let n = points.len();
    let dim = points[0].len();
    let mut chords = Vec::with_capacity(n * (n - 1) / 2);
    let mut dmin = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let d = (2.0 - 2.0 * dot(&points[i], &points[j])).max(0.0).sqrt();
            dmin = dmin.min(d);
            chords.push((i, j, d));
        }
    }
    let mut z = 0.0;
    for &(_, _, d) in &chords {
        z += (-beta * (d - dmin)).exp();
    }
    let value = dmin - z.ln() / beta;
    let mut grad = vec![vec![0.0; dim]; n];
    for &(i, j, d) in &chords {
        if d < 1e-15 {
            continue;
        }
        let w = (-beta * (d - dmin)).exp() / z;
        for k in 0..dim {
            let g = w * (points[i][k] - points[j][k]) / d;
            grad[i][k] += g;
            grad[j][k] -= g;
        }
    }
    for (p, g) in points.iter().zip(grad.iter_mut()) {
        project_tangent(p, g);
    }
    (value, grad)
}

fn retract(points: &[Vec<f64>], dirs: &[Vec<f64>], step: f64) -> Vec<Vec<f64>> {
    points
        .iter()
        .zip(dirs)
        .map(|(p, d)| {
            let mut q: Vec<f64> = p.iter().zip(d).map(|(a, b)| a + step * b).collect();
            normalize(&mut q);
            q
        })
        .collect()
}

/// Ascent on the soft-min surrogate with β-continuation. Every accepted step
/// increases the surrogate and does not decrease `ψ`; accepted `ψ` values
/// are appended to `trace` when given.
fn surrogate_ascent(
    mut points: Vec<Vec<f64>>,
    iters: usize,
    mut trace: Option<&mut Vec<f64>>,
) -> Vec<Vec<f64>> {
    let mut psi = psi_of(&points);
    for e in 4..=14 {
        let beta = f64::from(1u32 << e);
        let mut step: f64 = 0.1;
        let (mut value, mut grad) = soft_min(&points, beta);
        for _ in 0..iters {
            let gnorm = grad.iter().map(|g| dot(g, g)).sum::<f64>().sqrt();
            if gnorm < 1e-14 {
                break;
            }
            let mut accepted = false;
            while step > 1e-12 {
                let trial = retract(&points, &grad, step / gnorm);
                let trial_psi = psi_of(&trial);
                let (tv, tg) = soft_min(&trial, beta);
                if tv > value && trial_psi >= psi {
                    points = trial;
                    psi = trial_psi;
                    value = tv;
                    grad = tg;
                    accepted = true;
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(psi);
                    }
                    step *= 1.5;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
    }
    points
}

/// Direct ascent on `ψ`: an LP picks tangent velocities maximizing the
/// smallest first-order rate over nearly active pairs, followed by a
/// backtracking line search on `ψ`.
fn polish(
    mut points: Vec<Vec<f64>>,
    steps: usize,
    mut trace: Option<&mut Vec<f64>>,
) -> Vec<Vec<f64>> {
    let n = points.len();
    if n < 2 {
        return points;
    }
    let dim = points[0].len();
    let mut psi = psi_of(&points);
    let mut step: f64 = 1e-2;
    for _ in 0..steps {
        let window = (10.0 * step).clamp(1e-10, 1e-2);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if angle(&points[i], &points[j]) <= psi + window {
                    pairs.push((i, j));
                }
            }
        }
        let Some(velocity) = ascent_velocity(&points, &pairs, dim) else {
            break;
        };
        let mut accepted = false;
        let mut t = (step * 4.0).min(0.1);
        while t > 1e-15 {
            let trial = retract(&points, &velocity, t);
            let trial_psi = psi_of(&trial);
            if trial_psi > psi {
                points = trial;
                psi = trial_psi;
                step = t;
                accepted = true;
                if let Some(tr) = trace.as_deref_mut() {
                    tr.push(psi);
                }
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    points
}

fn ascent_velocity(
    points: &[Vec<f64>],
    pairs: &[(usize, usize)],
    dim: usize,
) -> Option<Vec<Vec<f64>>> {
    let n = points.len();
    let nvars = 2 * n * dim + 1;
    let s = nvars - 1;
    let mut obj = vec![0.0; nvars];
    obj[s] = 1.0;
    let mut lp = LinearProgram::new(obj);
    for &(i, j) in pairs {
        let gi = away_direction(&points[i], &points[j])?;
        let gj = away_direction(&points[j], &points[i])?;
        let mut row = vec![0.0; nvars];
        for k in 0..dim {
            row[i * dim + k] -= gi[k];
            row[n * dim + i * dim + k] += gi[k];
            row[j * dim + k] -= gj[k];
            row[n * dim + j * dim + k] += gj[k];
        }
        row[s] = 1.0;
        lp.add_constraint(row, 0.0);
    }
    for v in 0..nvars {
        let mut row = vec![0.0; nvars];
        row[v] = 1.0;
        lp.add_constraint(row, 1.0);
    }
    let sol = lp.solve().ok()?;
    if sol.objective <= 1e-13 {
        return None;
    }
    Some(
        (0..n)
            .map(|i| {
                let mut v: Vec<f64> = (0..dim)
                    .map(|k| sol.x[i * dim + k] - sol.x[n * dim + i * dim + k])
                    .collect();
                project_tangent(&points[i], &mut v);
                v
            })
            .collect(),
    )
}

/// Rotates the configuration so the first point is the north pole
/// `(0, ..., 0, 1)` and the second lies on the meridian through `e_1`.
pub fn canonical_rotation(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    if points.is_empty() {
        return Vec::new();
    }
    let dim = points[0].len();
    let basis = (0..dim).map(|i| {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        e
    });
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(dim);
    for c in std::iter::once(points[0].clone())
        .chain(points.get(1).cloned())
        .chain(basis)
    {
        if frame.len() == dim {
            break;
        }
        let mut v = c;
        for f in &frame {
            let d = dot(&v, f);
            v.iter_mut().zip(f).for_each(|(a, b)| *a -= d * b);
        }
        let r = norm(&v);
        if r > 1e-9 {
            v.iter_mut().for_each(|a| *a /= r);
            frame.push(v);
        }
    }
    // frame[0] becomes the last axis (the pole), frame[1] the first.
    frame.rotate_left(1);
    points
        .iter()
        .map(|p| frame.iter().map(|a| dot(p, a)).collect())
        .collect()
}

fn lex_less(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    for (pa, pb) in a.iter().zip(b) {
        for (x, y) in pa.iter().zip(pb) {
            if x < y {
                return true;
            }
            if x > y {
                return false;
            }
        }
    }
    false
}

fn perturbed(init: &SphericalConfig, seed: u64, scale: f64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    init.points
        .iter()
        .map(|p| {
            let mut q: Vec<f64> = p
                .iter()
                .map(|x| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    x + scale * z
                })
                .collect();
            normalize(&mut q);
            q
        })
        .collect()
}

/// `n` points drawn uniformly on `S^{dim-1}` from the given seed.
pub fn random_config(n: usize, dim: usize, seed: u64) -> Result<SphericalConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n)
        .map(|_| (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    SphericalConfig::from_raw(dim, points, Some("random"))
}

/// One restart: perturb, ascend the surrogate, polish.
fn run_restart(init: &SphericalConfig, seed: u64, iters: usize) -> Vec<Vec<f64>> {
    let start = perturbed(init, seed, 0.3);
    let pts = surrogate_ascent(start, iters, None);
    polish(pts, 100, None)
}

/// Locally maximizes `ψ` starting from `init`; the best of `restarts`
/// perturbed runs (restart `r` seeded with `seed + r`) is returned in
/// canonical rotation. Never returns a configuration worse than `init`.
pub fn maximize_min_angle(
    init: &SphericalConfig,
    restarts: usize,
    seed: u64,
    iters: usize,
) -> Result<SphericalConfig> {
    if init.len() < 2 {
        return Err(Error::InvalidConfig(
            "optimizer needs at least 2 points".into(),
        ));
    }
    let restarts = restarts.max(1);
    let iters = iters.max(1);

    #[cfg(feature = "parallel")]
    let runs: Vec<Vec<Vec<f64>>> = {
        use rayon::prelude::*;
        (0..restarts as u64)
            .into_par_iter()
            .map(|r| run_restart(init, seed.wrapping_add(r), iters))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let runs: Vec<Vec<Vec<f64>>> = (0..restarts as u64)
        .map(|r| run_restart(init, seed.wrapping_add(r), iters))
        .collect();

    let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
    for pts in runs.into_iter().chain(std::iter::once(init.points.clone())) {
        let p = psi_of(&pts);
        let canon = canonical_rotation(&pts);
        best = match best {
            None => Some((p, canon)),
            Some((bp, bc)) => {
                if p > bp + 1e-9
                    || ((p - bp).abs() <= 1e-9 && lex_less(&canon, &bc) && p >= bp - 1e-12)
                {
                    Some((p, canon))
                } else {
                    Some((bp, bc))
                }
            }
        };
    }
    let (_, points) = best.expect("at least one candidate");
    SphericalConfig::from_raw(init.dim, points, init.label.as_deref())
}

/// Runs the optimizer from a random start and compares the best `ψ` with
/// the Tammes angle `d_N`.
pub fn tammes_check(n: usize, trials: usize, seed: u64) -> Result<(f64, bool)> {
    let target = tammes_angle_from_bound(n)?;
    let init = random_config(n, 3, seed)?;
    let best = maximize_min_angle(&init, trials, seed, DEFAULT_ITERS)?;
    let psi = psi_of(&best.points);
    Ok((psi, (psi - target).abs() <= TAMMES_TOL))
}
