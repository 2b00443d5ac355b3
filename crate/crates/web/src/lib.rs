//! Browser bindings for the static demo page in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<_, String>` so the
//! logic can be tested natively; the wrappers only convert errors.

use noisy_teleport::amplitude::{parse_amplitude, parse_state_list};
use noisy_teleport::plot::curves_svg;
use noisy_teleport::sweep::{Columns, SweepConfig};
use noisy_teleport::teleport::run_stages;
use noisy_teleport::verify::verify_all;
use noisy_teleport::{InputState, NoiseKind, TeleportConfig};
use wasm_bindgen::prelude::*;

fn kind(noise: &str) -> Result<NoiseKind, String> {
    noise.parse()
}

pub fn curves(noise: &str, states: &str, steps: usize) -> Result<String, String> {
    let states = parse_state_list(states, true).map_err(|e| e.to_string())?;
    let cols = Columns {
        numeric: true,
        analytic: false,
        linear: false,
    };
    let config =
        SweepConfig::new(kind(noise)?, states, 0.0, 1.0, steps, cols).map_err(|e| e.to_string())?;
    curves_svg(&config).map_err(|e| e.to_string())
}

pub fn trace(noise: &str, alpha: &str, beta: &str, p: f64) -> Result<String, String> {
    let err = |e: noisy_teleport::Error| e.to_string();
    let input = InputState::normalized(
        parse_amplitude(alpha).map_err(err)?,
        parse_amplitude(beta).map_err(err)?,
    )
    .map_err(err)?;
    let config = TeleportConfig::float(input, kind(noise)?, p).map_err(err)?;
    Ok(run_stages(&config).map_err(err)?.render())
}

pub fn report() -> Result<String, String> {
    verify_all().map(|r| r.to_text()).map_err(|e| e.to_string())
}

/// SVG fidelity curves on `[0, 1]` for comma-separated `alpha:beta` pairs.
/// Inputs are normalized rather than rejected.
#[wasm_bindgen(js_name = fidelityCurves)]
pub fn fidelity_curves(noise: &str, states: &str, steps: usize) -> Result<String, JsError> {
    curves(noise, states, steps).map_err(|e| JsError::new(&e))
}

/// Text dump of the ten intermediate density matrices.
#[wasm_bindgen(js_name = stageTrace)]
pub fn stage_trace(noise: &str, alpha: &str, beta: &str, p: f64) -> Result<String, JsError> {
    trace(noise, alpha, beta, p).map_err(|e| JsError::new(&e))
}

/// The exact verification report as text.
#[wasm_bindgen(js_name = verificationReport)]
pub fn verification_report() -> Result<String, JsError> {
    report().map_err(|e| JsError::new(&e))
}
