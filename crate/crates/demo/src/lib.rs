//! WebAssembly bindings for the static page in `www/`. Every export returns
//! a JSON string; drawing happens on the JavaScript side.

use biext_core::degeneration::{
    beta1_samples, decade_schedule, exponential_schedule, fit_asymptotics, log_spaced,
    vanishing_order_slope, DegenerationPath, Sample, DEFAULT_FAY_OMEGA0,
};
use biext_core::heisenberg::{dehn_twist_central_charge, SeparatingCurve};
use biext_core::modular::SiegelPoint;
use biext_core::symplectic::Genus;
use biext_core::Result;
use num_complex::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn points(samples: &[Sample]) -> Value {
    samples
        .iter()
        .map(|s| json!([-s.log_abs_t, s.value]))
        .collect()
}

/// `β₁` or `β₂` (Fay path with off-diagonal `v`) against `x = log(1/t)`,
/// with the fitted coefficients.
pub fn beta_curve_json(form: &str, x_min: f64, x_max: f64, count: usize, v: f64) -> Result<String> {
    let log_t = exponential_schedule(&log_spaced(x_min, x_max, count)?);
    let samples = match form {
        "beta1" => beta1_samples(&log_t)?,
        "beta2" => {
            let omega0 = SiegelPoint::scalar(DEFAULT_FAY_OMEGA0)?;
            DegenerationPath::fay(omega0, vec![Complex64::new(v, 0.0)], log_t)?.beta2_samples()?
        }
        other => return Err(biext_core::Error::Domain(format!("unknown form {other:?}"))),
    };
    let fit = fit_asymptotics(&samples)?;
    Ok(json!({ "points": points(&samples), "fit": fit }).to_string())
}

/// Rows `[g, h, τ̂(σ_h), 4h(g-h)]` for `3 ≤ g ≤ g_max`.
pub fn central_charges_json(g_max: u32) -> Result<String> {
    let mut rows = Vec::new();
    for g in 3..=g_max {
        for h in 1..g {
            let tau = dehn_twist_central_charge(&SeparatingCurve::new(Genus::new(g)?, h)?)?.tau;
            rows.push(json!([g, h, tau.to_string(), 4 * h * (g - h)]));
        }
    }
    Ok(json!({ "rows": rows }).to_string())
}

/// `log|χ₁₀|` along `[[τ₁, t], [t, τ₂]]`, `t = 10^-k`, and its slope.
pub fn chi10_reducible_json(
    tau1_im: f64,
    tau2_im: f64,
    k_min: u32,
    k_max: u32,
    per_decade: u32,
) -> Result<String> {
    let path = DegenerationPath::reducible(
        Complex64::new(0.0, tau1_im),
        Complex64::new(0.0, tau2_im),
        decade_schedule(k_min, k_max, per_decade)?,
    )?;
    let samples = path.chi10_log_samples()?;
    let slope = vanishing_order_slope(&samples)?;
    let pts: Value = samples
        .iter()
        .map(|s| json!([s.log_abs_t, s.value]))
        .collect();
    Ok(json!({ "points": pts, "slope": slope }).to_string())
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn beta_curve(
    form: &str,
    x_min: f64,
    x_max: f64,
    count: usize,
    v: f64,
) -> std::result::Result<String, JsError> {
    js(beta_curve_json(form, x_min, x_max, count, v))
}

#[wasm_bindgen]
pub fn central_charges(g_max: u32) -> std::result::Result<String, JsError> {
    js(central_charges_json(g_max))
}

#[wasm_bindgen]
pub fn chi10_reducible(
    tau1_im: f64,
    tau2_im: f64,
    k_min: u32,
    k_max: u32,
    per_decade: u32,
) -> std::result::Result<String, JsError> {
    js(chi10_reducible_json(
        tau1_im, tau2_im, k_min, k_max, per_decade,
    ))
}
