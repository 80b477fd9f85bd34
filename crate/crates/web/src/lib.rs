//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string. The plain functions do the work and
//! are what the tests call; the `#[wasm_bindgen]` wrappers only convert errors.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use killtens::geomlab::{run_battery, CheckOutcome, Space};
use killtens::repdim::{cpn_killing_dim, sphere_killing_dim, TensorSpaceSpec};
use killtens::series::{h_numerator, verify_poincare};

/// Largest `n` and `k` the table accepts, to keep the page responsive.
pub const TABLE_LIMIT: usize = 40;

#[derive(Serialize)]
struct Cell {
    n: usize,
    k: usize,
    dim: String,
}

/// Rows `n = 1..=max_n`, columns `k = 0..=max_k`, dimensions as strings.
pub fn table_json(space: &str, max_n: usize, max_k: usize) -> Result<String, String> {
    if max_n == 0 || max_n > TABLE_LIMIT || max_k > TABLE_LIMIT {
        return Err(format!(
            "n must be in 1..={TABLE_LIMIT} and k in 0..={TABLE_LIMIT}"
        ));
    }
    let f = match space {
        "cpn" => cpn_killing_dim,
        "sphere" => sphere_killing_dim,
        other => return Err(format!("unknown space {other:?}")),
    };
    let mut cells = Vec::new();
    for n in 1..=max_n {
        for k in 0..=max_k {
            let spec = TensorSpaceSpec::new(n, k).map_err(|e| e.to_string())?;
            cells.push(Cell {
                n,
                k,
                dim: f(spec).map_err(|e| e.to_string())?.to_string(),
            });
        }
    }
    serde_json::to_string(&cells).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SeriesOut {
    n: usize,
    numerator: String,
    denominator_exponent: usize,
    terms: usize,
    first_mismatch: Option<usize>,
    head: Vec<String>,
}

/// Numerator of the projective Poincaré series and a check of the
/// conjectured closed form against the first `terms` dimensions.
pub fn series_json(n: usize, terms: usize) -> Result<String, String> {
    if n == 0 || n > 12 || terms == 0 || terms > 400 {
        return Err("n must be in 1..=12 and terms in 1..=400".into());
    }
    let num = h_numerator(n).map_err(|e| e.to_string())?;
    let report = verify_poincare(n, terms).map_err(|e| e.to_string())?;
    serde_json::to_string(&SeriesOut {
        n,
        numerator: num.display_in("t"),
        denominator_exponent: 4 * n - 1,
        terms,
        first_mismatch: report.first_mismatch,
        head: report.coefficients.into_iter().take(8).collect(),
    })
    .map_err(|e| e.to_string())
}

/// The numeric identity battery on `S^n` or `CP_n`.
pub fn geometry_json(space: &str, n: usize, samples: usize, seed: u64) -> Result<String, String> {
    let space = match (space, n) {
        ("sphere", 2..=4) => Space::Sphere { m: n },
        ("cpn", 1..=2) => Space::Cpn { n },
        _ => return Err("supported: sphere with n in 2..=4, cpn with n in 1..=2".into()),
    };
    if samples == 0 || samples > 20 {
        return Err("samples must be in 1..=20".into());
    }
    let checks: Vec<CheckOutcome> =
        run_battery(space, samples, killtens::geomlab::DEFAULT_TOL, seed)
            .map_err(|e| e.to_string())?;
    serde_json::to_string(&checks).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn dimension_table(space: &str, max_n: usize, max_k: usize) -> Result<String, JsError> {
    table_json(space, max_n, max_k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn poincare_series(n: usize, terms: usize) -> Result<String, JsError> {
    series_json(n, terms).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn curvature_checks(
    space: &str,
    n: usize,
    samples: usize,
    seed: u32,
) -> Result<String, JsError> {
    geometry_json(space, n, samples, u64::from(seed)).map_err(|e| JsError::new(&e))
}
