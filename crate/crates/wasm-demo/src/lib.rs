//! Three calls for the static page in `www/`: the Weil height of a number,
//! the projective threshold, and a census of points in `P^n`.

use wasm_bindgen::prelude::*;

use nkit_core::algebraic::AlgebraicNumber;
use nkit_core::experiment::{emit_report, run_finiteness_experiment, ExperimentConfig, ReportFormat};
use nkit_core::heights::weil_height;
use nkit_core::thresholds::threshold_proj;

const PREC: u32 = 128;

/// `input` is an integer, a rational string like `"3/4"`, or a full
/// `{"minpoly": [...], "root": {...}}` object.
pub fn height_json(input: &str) -> Result<String, String> {
    let v: serde_json::Value = serde_json::from_str(input).map_err(|e| e.to_string())?;
    let a: AlgebraicNumber = serde_json::from_value(v).map_err(|e| e.to_string())?;
    let h = weil_height(&a, PREC).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&h).map_err(|e| e.to_string())
}

pub fn threshold_json(n: u32, d: u32, c: f64) -> Result<String, String> {
    let r = threshold_proj(n, d, c, None, PREC).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&r).map_err(|e| e.to_string())
}

pub fn census_markdown(n: u32, degree: u32, cutoff: &str) -> Result<String, String> {
    let cap = cutoff.parse().map_err(|e: nkit_core::error::Error| e.to_string())?;
    let r = run_finiteness_experiment(&ExperimentConfig::rational_points(n, degree, cap)).map_err(|e| e.to_string())?;
    Ok(emit_report(&r, ReportFormat::Markdown))
}

#[wasm_bindgen]
pub fn height(input: &str) -> Result<String, JsError> {
    height_json(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn threshold(n: u32, d: u32, c: f64) -> Result<String, JsError> {
    threshold_json(n, d, c).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn census(n: u32, degree: u32, cutoff: &str) -> Result<String, JsError> {
    census_markdown(n, degree, cutoff).map_err(|e| JsError::new(&e))
}
