//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use kissing_cli::{execute, Cli};
use kissing_core::configs::{angle, contact_graph, named, psi, verify_code, NAMED};
use kissing_core::delsarte::{default_grid, delsarte_bound, kissing_lp};
use kissing_core::geom_bounds::{
    fejes_toth_bound, harborth, tammes_angle_from_bound, trivial_contact_bound,
};
use kissing_core::polybasis::gegenbauer_eval;
use kissing_core::rigidity::{is_irreducible, shifted_point, tammes_check, CONTACT_TOL};
use kissing_core::twodist::{
    count_graphs, dim2, enumerate_graphs, is_clique_union, partitions, sigma, SimpleGraph,
    WITNESS_TOL,
};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(
        t < limit,
        format!("took {:.1} s, limit {} s", t.as_secs_f64(), limit.as_secs()),
    )
}

fn cli_lp(dim: &str, degree: &str) -> Result<(f64, bool), String> {
    let args = [
        "kissing",
        "bound",
        "lp",
        "--dim",
        dim,
        "--angle-deg",
        "60",
        "--degree",
        degree,
        "--format",
        "json",
    ];
    let cli = Cli::try_parse_from(args).map_err(|e| e.to_string())?;
    let run = execute(&cli).map_err(|e| e.to_string())?;
    let v: Value = serde_json::from_str(&run.stdout).map_err(|e| e.to_string())?;
    let bound = v["outputs"]["bound"].as_f64().ok_or("no bound in output")?;
    let verified = v["outputs"]["verified"]
        .as_bool()
        .ok_or("no verified flag")?;
    ensure(
        run.outcome.exit_code() == if verified { 0 } else { 2 },
        "exit code does not match verdict",
    )?;
    Ok((bound, verified))
}

fn c1() -> Check {
    let start = Instant::now();
    let (b, verified) = cli_lp("8", "6")?;
    ensure(verified, "certificate not verified")?;
    ensure((b - 240.0).abs() / 240.0 <= 1e-6, format!("bound {b}"))?;
    within(Duration::from_secs(10), start)?;
    Ok(format!("bound {b:.9}, verified"))
}

fn c2() -> Check {
    let start = Instant::now();
    let (b, verified) = cli_lp("4", "11")?;
    ensure(verified, "certificate not verified")?;
    ensure(
        (25.54..=25.62).contains(&b),
        format!("bound {b} outside [25.54, 25.62]"),
    )?;
    ensure(
        (b - 25.558).abs() <= 0.01,
        format!("bound {b} not within 0.01 of 25.558"),
    )?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("bound {b:.6}, verified"))
}

fn c3() -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    for d in [10, 11] {
        let c = kissing_lp(24, d).map_err(|e| e.to_string())?;
        ensure(c.verified, format!("degree {d} not verified"))?;
        ensure(
            (c.bound - 196_560.0).abs() / 196_560.0 <= 0.01,
            format!("degree {d}: bound {}", c.bound),
        )?;
        parts.push(format!("d={d}: {:.3}", c.bound));
    }
    within(Duration::from_secs(600), start)?;
    Ok(parts.join(", "))
}

fn c4() -> Check {
    for (name, size, phi) in [
        ("24cell", 24, PI / 3.0),
        ("600cell", 120, PI / 5.0),
        ("e8roots", 240, PI / 3.0),
    ] {
        let c = named(name).map_err(|e| e.to_string())?;
        ensure(c.len() == size, format!("{name}: {} points", c.len()))?;
        let p = psi(&c).map_err(|e| e.to_string())?;
        ensure((p - phi).abs() <= 1e-12, format!("{name}: psi {p}"))?;
        ensure(verify_code(&c, phi), format!("{name}: verify_code failed"))?;
    }
    let lp8 = kissing_lp(8, 6).map_err(|e| e.to_string())?;
    ensure(
        lp8.verified && (lp8.bound + 1e-6).floor() == 240.0,
        format!("k(8) upper bound {}", lp8.bound),
    )?;
    Ok("24cell, 600cell, e8roots certified; 240 <= k(8) <= 240".into())
}

fn c5() -> Check {
    let f = |phi: f64| fejes_toth_bound(phi).map_err(|e| e.to_string());
    let a = f(PI / 2.0)?;
    let b = f((1.0 / 5f64.sqrt()).acos())?;
    let c = f(PI / 3.0)?;
    ensure((a - 6.0).abs() <= 1e-9, format!("bound(π/2) = {a}"))?;
    ensure(
        (b - 12.0).abs() <= 1e-9,
        format!("bound(arccos(1/√5)) = {b}"),
    )?;
    ensure((13.39..=13.40).contains(&c), format!("bound(π/3) = {c}"))?;
    Ok(format!("{a:.12}, {b:.12}, {c:.6}"))
}

fn c6() -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    for n in [3, 4, 6, 12] {
        let (p, ok) = tammes_check(n, 20, 0).map_err(|e| e.to_string())?;
        let target = tammes_angle_from_bound(n).map_err(|e| e.to_string())?;
        ensure(
            ok && (p - target).abs() <= 1e-5,
            format!("N={n}: psi {p}, target {target}"),
        )?;
        parts.push(format!("N={n}: {:.2e}", (p - target).abs()));
    }
    within(Duration::from_secs(120), start)?;
    Ok(parts.join(", "))
}

fn c7() -> Check {
    let ico = named("icosahedron").map_err(|e| e.to_string())?;
    let r = is_irreducible(&ico, CONTACT_TOL).map_err(|e| e.to_string())?;
    ensure(r.irreducible, "icosahedron reported reducible")?;

    let cube = named("cube").map_err(|e| e.to_string())?;
    let r = is_irreducible(&cube, CONTACT_TOL).map_err(|e| e.to_string())?;
    ensure(!r.irreducible, "icosahedron irreducible; cube reported irreducible (no single-vertex first-order improving direction)")?;
    let v = r.movable_vertex.ok_or("no movable vertex")?;
    let u = r.improving_direction.ok_or("no direction")?;
    let moved = shifted_point(&cube.points[v], &u, 1e-4);
    let g = contact_graph(&cube, CONTACT_TOL).map_err(|e| e.to_string())?;
    for y in g.neighbors(v) {
        let before = angle(&cube.points[v], &cube.points[y]);
        let after = angle(&moved, &cube.points[y]);
        ensure(after > before, format!("step shortens contact {v}-{y}"))?;
    }
    Ok(format!("icosahedron irreducible; cube vertex {v} movable"))
}

/// Graph count by Burnside's lemma over all vertex permutations.
fn burnside(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0u64;
    let mut count = 0u64;
    loop {
        let mut seen = vec![false; pairs.len()];
        let mut orbits = 0;
        for s in 0..pairs.len() {
            if seen[s] {
                continue;
            }
            orbits += 1;
            let mut cur = s;
            while !seen[cur] {
                seen[cur] = true;
                let (a, b) = (perm[pairs[cur].0], perm[pairs[cur].1]);
                let key = (a.min(b), a.max(b));
                cur = pairs.iter().position(|&p| p == key).unwrap();
            }
        }
        total += 1 << orbits;
        count += 1;
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total / count
}

fn c8() -> Check {
    let e = |r: kissing_core::Result<u64>| r.map_err(|e| e.to_string());
    let g6 = e(count_graphs(6))?;
    let p6 = partitions(6).map_err(|e| e.to_string())?;
    let s6 = e(sigma(6))?;
    ensure(
        (g6, p6, s6) == (156, 11, 145),
        format!("Γ_6={g6} p(6)={p6} Σ_6={s6}"),
    )?;
    let g7 = e(count_graphs(7))?;
    let oracle = burnside(7);
    ensure(
        g7 == oracle && g7 == 1044,
        format!("Γ_7={g7}, oracle {oracle}"),
    )?;
    Ok(format!(
        "Γ_6={g6} p(6)={p6} Σ_6={s6} Γ_7={g7} (oracle {oracle})"
    ))
}

fn c9() -> Check {
    let start = Instant::now();
    let mut total = 0;
    for n in 2..=6 {
        for g in enumerate_graphs(n) {
            let r = dim2(&g).map_err(|e| e.to_string())?;
            let ok = if is_clique_union(&g) {
                r.dim2 == n - 1
            } else {
                r.dim2 < n - 1
            };
            ensure(
                ok,
                format!(
                    "counterexample on {} vertices: {}",
                    n,
                    g.to_text().replace('\n', "; ")
                ),
            )?;
            total += 1;
        }
    }
    within(Duration::from_secs(600), start)?;
    Ok(format!("{total} graphs"))
}

fn c10() -> Check {
    let r = dim2(&SimpleGraph::triangular(5)).map_err(|e| e.to_string())?;
    let err = r.witness_error();
    ensure(r.dim2 == 4, format!("dim2 = {}", r.dim2))?;
    ensure(err <= WITNESS_TOL, format!("witness error {err}"))?;
    Ok(format!(
        "dim2 4, c = {:.10}, witness error {err:.1e}",
        r.ratio
    ))
}

fn c11() -> Check {
    ensure(
        harborth(2) == 1 && harborth(3) == 3 && harborth(7) == 12,
        "small values",
    )?;
    let mut prev = 0;
    for n in 1..=10_000u64 {
        let h = harborth(n);
        ensure(h >= prev, format!("not monotone at {n}"))?;
        let t = trivial_contact_bound(n, 2).map_err(|e| e.to_string())?;
        ensure((h as f64) < t, format!("h({n}) = {h} >= {t}"))?;
        prev = h;
    }
    Ok("values, monotonicity and trivial bound up to 10^4".into())
}

fn c12() -> Check {
    let mut violations = Vec::new();
    // Schoenberg: Gegenbauer Gram matrices are positive semidefinite.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..100 {
        let n = [3, 4, 8][trial % 3];
        let r = 2 + trial % 9;
        let pts: Vec<Vec<f64>> = (0..r)
            .map(|_| {
                let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.into_iter().map(|x| x / s).collect()
            })
            .collect();
        for k in 1..=8 {
            let m = DMatrix::from_fn(r, r, |i, j| {
                let t: f64 = pts[i].iter().zip(&pts[j]).map(|(a, b)| a * b).sum();
                gegenbauer_eval(n, k, t.clamp(-1.0, 1.0)).unwrap()
            });
            let min = SymmetricEigen::new(m).eigenvalues.min();
            if min < -1e-8 {
                violations.push(format!("PSD n={n} r={r} k={k}: {min}"));
            }
        }
    }
    // LP monotonicity in degree and angle.
    for n in [3, 4] {
        let mut prev = f64::INFINITY;
        for d in 4..=11 {
            let c = kissing_lp(n, d).map_err(|e| e.to_string())?;
            if !c.verified || c.bound > prev + 1e-9 {
                violations.push(format!("degree n={n} d={d}: {}", c.bound));
            }
            prev = c.bound;
        }
        let mut prev = f64::INFINITY;
        for i in 0..10 {
            let phi = 1.0 + 0.1 * i as f64;
            let c = delsarte_bound(n, phi, 8, default_grid(8)).map_err(|e| e.to_string())?;
            if !c.verified || c.bound > prev + 1e-9 {
                violations.push(format!("angle n={n} φ={phi}: {}", c.bound));
            }
            prev = c.bound;
        }
    }
    // Soundness of verified certificates against every compatible witness.
    let mut pairs = 0;
    for name in NAMED {
        let w = named(name).map_err(|e| e.to_string())?;
        let p = psi(&w).map_err(|e| e.to_string())?;
        for phi in [p, 0.9 * p] {
            for d in [4, 8, 12] {
                let Ok(c) = delsarte_bound(w.dim, phi, d, default_grid(d)) else {
                    continue;
                };
                if c.verified {
                    pairs += 1;
                    if w.len() as f64 > c.bound + 1e-6 {
                        violations.push(format!("soundness {name} φ={phi} d={d}: {}", c.bound));
                    }
                }
            }
        }
    }
    ensure(violations.is_empty(), violations.join("; "))?;
    Ok(format!("0 violations ({pairs} certificate/witness pairs)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("LP bound for k(8) through the CLI", c1),
        ("LP bound for k(4) at degree 11", c2),
        ("LP bound for k(24) at degree >= 10", c3),
        ("witness certification of 24cell, 600cell, E8", c4),
        ("Fejes Toth bound values", c5),
        ("Tammes optimizer for N = 3, 4, 6, 12", c6),
        ("rigidity verdicts for icosahedron and cube", c7),
        ("graph and partition counts", c8),
        ("Einhorn-Schoenberg for n <= 6", c9),
        ("dim2 of T(5)", c10),
        ("Harborth contact counts", c11),
        ("property suites", c12),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {title}: {detail} ({secs:.2} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why} ({secs:.2} s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
