use std::fs;
use std::io::Read;
use std::path::Path;

use kissing_core::configs::{self, contact_graph, psi, verify_code, SphericalConfig};
use kissing_core::delsarte::{default_grid, delsarte_bound};
use kissing_core::geom_bounds::{fejes_toth_bound, tammes_angle_from_bound};
use kissing_core::rigidity::{is_irreducible, maximize_min_angle, random_config, TAMMES_TOL};
use kissing_core::twodist::{
    census, count_graphs, dim2, partitions, write_census_csv, SimpleGraph,
};
use kissing_core::{refdata, Error as CoreError};
use serde_json::{json, Value};

use crate::args::{
    BoundCmd, Command, ConfigCmd, LpArgs, Source, TablesCmd, TammesArgs, TwodistCmd,
};
use crate::{CliError, Outcome};

pub fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Bound(BoundCmd::Lp(a)) => bound_lp(a),
        Command::Bound(BoundCmd::Ft(a)) => {
            let phi = a.angle.radians();
            let bound = fejes_toth_bound(phi)?;
            Ok(Outcome::new(
                "bound ft",
                json!({ "angle_rad": phi }),
                json!({ "bound": bound }),
            )
            .text(format!("{bound:.6}\n")))
        }
        Command::Config(c) => config(c),
        Command::Tammes(a) => tammes(a),
        Command::Twodist(t) => twodist(t),
        Command::Tables(TablesCmd::Reference) => {
            let mut csv = Vec::new();
            refdata::write_csv(&mut csv).map_err(|e| CliError::io("stdout", e))?;
            Ok(Outcome::new(
                "tables reference",
                json!({}),
                json!({ "entries": refdata::entries() }),
            )
            .text(String::from_utf8_lossy(&csv).into_owned()))
        }
    }
}

fn bound_lp(a: &LpArgs) -> Result<Outcome, CliError> {
    let phi = a.angle.radians();
    let grid = a.grid.unwrap_or_else(|| default_grid(a.degree));
    let inputs = json!({ "dim": a.dim, "angle_rad": phi, "degree": a.degree, "grid": grid });
    let cert = match delsarte_bound(a.dim, phi, a.degree, grid) {
        Ok(c) => c,
        Err(CoreError::Infeasible(msg)) => {
            let out = Outcome::new(
                "bound lp",
                inputs,
                json!({ "verified": false, "infeasible": msg }),
            )
            .text(format!("infeasible: {msg}\n"));
            return Ok(out.exit(2));
        }
        Err(e) => return Err(e.into()),
    };
    let path = match &a.out {
        Some(p) => {
            fs::write(p, cert.to_json()).map_err(|e| CliError::io(p.display(), e))?;
            Some(p.display().to_string())
        }
        None => None,
    };
    let mut text = format!(
        "bound {:.6}\nverified {}\nmax_violation {:.3e}\n",
        cert.bound, cert.verified, cert.max_violation
    );
    text.push_str(&format!(
        "certificate {}\n",
        path.as_deref().unwrap_or("(not written)")
    ));
    let outputs = json!({
        "bound": cert.bound,
        "verified": cert.verified,
        "max_violation": cert.max_violation,
        "coeffs": cert.series.coeffs(),
        "certificate_path": path,
    });
    let exit = if cert.verified { 0 } else { 2 };
    Ok(Outcome::new("bound lp", inputs, outputs)
        .text(text)
        .exit(exit))
}

fn load(source: &Source) -> Result<(SphericalConfig, Value), CliError> {
    if let Some(name) = &source.name {
        return Ok((configs::named(name)?, json!({ "name": name })));
    }
    let text = match &source.file {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| CliError::io(p.display(), e))?
        }
        _ => read_stdin()?,
    };
    let origin = source
        .file
        .as_ref()
        .map_or("-".to_string(), |p| p.display().to_string());
    Ok((
        SphericalConfig::from_json(&text)?,
        json!({ "file": origin }),
    ))
}

fn read_stdin() -> Result<String, CliError> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| CliError::io("stdin", e))?;
    Ok(s)
}

fn label(c: &SphericalConfig) -> &str {
    c.label.as_deref().unwrap_or("config")
}

fn config(cmd: &ConfigCmd) -> Result<Outcome, CliError> {
    match cmd {
        ConfigCmd::Show(source) => {
            let (c, inputs) = load(source)?;
            let p = psi(&c)?;
            let mut text = format!(
                "{} |X|={} dim={} psi={:.6} deg\n",
                label(&c),
                c.len(),
                c.dim,
                p.to_degrees()
            );
            for pt in &c.points {
                let row: Vec<String> = pt.iter().map(|v| format!("{v:.12}")).collect();
                text.push_str(&row.join(" "));
                text.push('\n');
            }
            let outputs = json!({ "config": c, "size": c.len(), "psi_rad": p });
            Ok(Outcome::new("config show", inputs, outputs).text(text))
        }
        ConfigCmd::Verify { source, angle } => {
            let (c, mut inputs) = load(source)?;
            let phi = angle.radians();
            inputs["angle_rad"] = json!(phi);
            let ok = verify_code(&c, phi);
            let p = psi(&c)?;
            let outputs = json!({ "verified": ok, "size": c.len(), "psi_rad": p });
            let out = Outcome::new("config verify", inputs, outputs)
                .text(format!("{ok}, |X|={}\n", c.len()));
            Ok(if ok { out } else { out.exit(2) })
        }
        ConfigCmd::Rigidity { source, tol } => {
            let (c, mut inputs) = load(source)?;
            inputs["tol"] = json!(tol);
            let r = is_irreducible(&c, *tol)?;
            let text = match (&r.movable_vertex, &r.improving_direction) {
                (Some(v), Some(u)) => {
                    let dir: Vec<String> = u.iter().map(|x| format!("{x:.6}")).collect();
                    format!("reducible, vertex {v}, direction [{}]\n", dir.join(", "))
                }
                _ => "irreducible\n".to_string(),
            };
            let outputs = json!({
                "irreducible": r.irreducible,
                "movable_vertex": r.movable_vertex,
                "improving_direction": r.improving_direction,
                "min_rate": r.min_rate,
            });
            Ok(Outcome::new("config rigidity", inputs, outputs).text(text))
        }
        ConfigCmd::Contacts { source, tol } => {
            let (c, mut inputs) = load(source)?;
            inputs["tol"] = json!(tol);
            let g = contact_graph(&c, *tol)?;
            let degrees = g.degrees();
            let mut text = format!(
                "psi={:.6} deg edges={} degree min={} max={}\n",
                g.psi.to_degrees(),
                g.edges.len(),
                degrees.iter().min().unwrap_or(&0),
                degrees.iter().max().unwrap_or(&0)
            );
            for (u, v) in &g.edges {
                text.push_str(&format!("{u} {v}\n"));
            }
            let outputs = json!({ "psi_rad": g.psi, "edges": g.edges, "degrees": degrees });
            Ok(Outcome::new("config contacts", inputs, outputs).text(text))
        }
    }
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(f))
}

fn tammes(a: &TammesArgs) -> Result<Outcome, CliError> {
    if a.n < 2 {
        return Err(CoreError::Domain(format!("need at least 2 points, got {}", a.n)).into());
    }
    let inputs = json!({ "n": a.n, "restarts": a.restarts, "seed": a.seed, "iters": a.iters });
    let init = random_config(a.n, 3, a.seed)?;
    let best = with_jobs(a.jobs, || {
        maximize_min_angle(&init, a.restarts, a.seed, a.iters)
    })??;
    let p = psi(&best)?;
    let target = tammes_angle_from_bound(a.n).ok();
    let matched = target.map(|t| (p - t).abs() <= TAMMES_TOL);
    let mut text = format!("psi {:.6} deg ({p:.9} rad)", p.to_degrees());
    if let (Some(t), Some(m)) = (target, matched) {
        text.push_str(&format!(", d_N {:.6} deg, match={m}", t.to_degrees()));
    }
    text.push_str(&format!(", seed={}\n", a.seed));
    let outputs =
        json!({ "psi_rad": p, "target_rad": target, "match": matched, "points": best.points });
    let out = Outcome::new("tammes", inputs, outputs).text(text);
    Ok(if matched == Some(false) {
        out.exit(2)
    } else {
        out
    })
}

/// Up to ten decimals, trailing zeros trimmed.
fn short(x: f64) -> String {
    let s = format!("{x:.10}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn twodist(cmd: &TwodistCmd) -> Result<Outcome, CliError> {
    match cmd {
        TwodistCmd::Count { n } => {
            let gamma = count_graphs(*n)?;
            let p = partitions(*n)?;
            let sigma = gamma - p as u64;
            Ok(Outcome::new(
                "twodist count",
                json!({ "n": n }),
                json!({ "gamma": gamma, "p": p as u64, "sigma": sigma }),
            )
            .text(format!("Gamma={gamma} p={p} Sigma={sigma}\n")))
        }
        TwodistCmd::Dim2 { graph } => {
            let text = if graph == Path::new("-") {
                read_stdin()?
            } else {
                fs::read_to_string(graph).map_err(|e| CliError::io(graph.display(), e))?
            };
            let g = SimpleGraph::parse(&text)?;
            let r = dim2(&g)?;
            let mut out = format!("dim2={} c={}\n", r.dim2, short(r.ratio));
            for p in &r.witness {
                let row: Vec<String> = p.iter().map(|v| format!("{v:.10}")).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
            let outputs = json!({
                "dim2": r.dim2,
                "ratio_c": r.ratio,
                "witness": r.witness,
                "witness_error": r.witness_error(),
            });
            Ok(Outcome::new(
                "twodist dim2",
                json!({ "graph": graph.display().to_string() }),
                outputs,
            )
            .text(out))
        }
        TwodistCmd::Census { n, out, jobs } => {
            let rows = with_jobs(*jobs, || census(*n))??;
            let mut csv = Vec::new();
            write_census_csv(&rows, &mut csv).map_err(|e| CliError::io("buffer", e))?;
            let inputs = json!({ "n": n, "out": out.as_ref().map(|p| p.display().to_string()) });
            let text = match out {
                Some(p) => {
                    fs::write(p, &csv).map_err(|e| CliError::io(p.display(), e))?;
                    format!("wrote {} rows to {}\n", rows.len(), p.display())
                }
                None => String::from_utf8_lossy(&csv).into_owned(),
            };
            Ok(Outcome::new(
                "twodist census",
                inputs,
                json!({ "rows": rows, "count": rows.len() }),
            )
            .text(text))
        }
    }
}
