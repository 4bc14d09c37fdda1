//! Browser bindings: each export returns a JSON string for the page to draw.

use std::f64::consts::PI;

use kissing_core::configs::psi;
use kissing_core::delsarte::{default_grid, delsarte_bound};
use kissing_core::geom_bounds::{fejes_toth_bound, tammes_angle_from_bound};
use kissing_core::rigidity::{maximize_min_angle, random_config, DEFAULT_ITERS};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn js(e: kissing_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// LP bound on `A(dim, φ)` and samples of the certificate polynomial on `[-1, 1]`.
#[wasm_bindgen]
pub fn lp_bound(
    dim: usize,
    angle_deg: f64,
    degree: usize,
    samples: usize,
) -> Result<String, JsError> {
    let phi = angle_deg.to_radians();
    let cert = delsarte_bound(dim, phi, degree, default_grid(degree)).map_err(js)?;
    let samples = samples.clamp(2, 4000);
    let curve: Vec<[f64; 2]> = (0..samples)
        .map(|i| {
            let t = -1.0 + 2.0 * i as f64 / (samples - 1) as f64;
            [t, cert.series.eval(t).unwrap_or(f64::NAN)]
        })
        .collect();
    Ok(json!({
        "bound": cert.bound,
        "verified": cert.verified,
        "max_violation": cert.max_violation,
        "cos_angle": phi.cos(),
        "coeffs": cert.series.coeffs(),
        "curve": curve,
    })
    .to_string())
}

/// The Fejes Tóth bound on `(π/3, 2π/3)` in degrees, with the tight cases.
#[wasm_bindgen]
pub fn fejes_toth_curve(samples: usize) -> Result<String, JsError> {
    let samples = samples.clamp(2, 4000);
    let (lo, hi) = (PI / 3.0, 2.0 * PI / 3.0);
    let mut curve = Vec::with_capacity(samples);
    for i in 1..=samples {
        let phi = lo + (hi - lo) * i as f64 / (samples + 1) as f64;
        curve.push([phi.to_degrees(), fejes_toth_bound(phi).map_err(js)?]);
    }
    let tight: Vec<[f64; 2]> = [3, 4, 6, 12]
        .iter()
        .map(|&n| tammes_angle_from_bound(n).map(|a| [a.to_degrees(), n as f64]))
        .collect::<Result<_, _>>()
        .map_err(js)?;
    Ok(json!({ "curve": curve, "tight": tight }).to_string())
}

/// Best `N`-point configuration on the 2-sphere found from `restarts` runs.
#[wasm_bindgen]
pub fn tammes(n: usize, restarts: usize, seed: u32) -> Result<String, JsError> {
    if !(2..=60).contains(&n) {
        return Err(JsError::new("N must be between 2 and 60"));
    }
    let init = random_config(n, 3, seed.into()).map_err(js)?;
    let best =
        maximize_min_angle(&init, restarts.clamp(1, 50), seed.into(), DEFAULT_ITERS).map_err(js)?;
    let p = psi(&best).map_err(js)?;
    let target = tammes_angle_from_bound(n).ok().map(f64::to_degrees);
    Ok(
        json!({ "points": best.points, "psi_deg": p.to_degrees(), "target_deg": target })
            .to_string(),
    )
}
