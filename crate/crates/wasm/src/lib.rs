//! Browser bindings: every export takes plain strings and returns a JSON
//! string, so the page needs no generated type glue beyond wasm-bindgen.

use concordance::cabling::{finite_order_obstruction, KnotProfile, DEFAULT_ANGLE_BOUND};
use concordance::catalog::Catalog;
use concordance::legendrian::{genus_bounds, FrontDiagram};
use concordance::SeifertMatrix;
use serde_json::json;
use wasm_bindgen::prelude::*;

fn seifert(rows: &str) -> Result<SeifertMatrix, String> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(rows).map_err(|e| format!("matrix: {e}"))?;
    if rows.is_empty() {
        return Ok(SeifertMatrix::empty());
    }
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err("matrix must be square".into());
    }
    SeifertMatrix::from_rows(&rows).map_err(|e| e.to_string())
}

/// Catalog knots with their Seifert matrices, and catalog fronts as text.
pub fn catalog_json() -> String {
    let cat = Catalog::bundled();
    let knots: Vec<_> = cat
        .entries()
        .iter()
        .filter_map(|e| e.profile.as_ref().map(|k| (e, k)))
        .map(|(e, k)| {
            json!({
                "name": e.name,
                "seifert_matrix": k.seifert(),
            })
        })
        .collect();
    let fronts: Vec<_> = cat
        .entries()
        .iter()
        .flat_map(|e| e.fronts.iter())
        .map(|f| json!({ "name": f.name, "text": f.diagram.to_string() }))
        .collect();
    json!({ "knots": knots, "fronts": fronts }).to_string()
}

/// Signature step function of `V` (or of its `(p,1)`-cable when `p > 1`).
pub fn signature_function_json(rows: &str, p: u32) -> Result<String, String> {
    let v = seifert(rows)?;
    let mut k = KnotProfile::from_seifert("K", v);
    if p > 1 {
        k = k.cable(p);
    }
    let table = k.signature_function().expect("from a Seifert matrix").table();
    Ok(json!({ "knot": k.name, "alexander": k.alexander(), "table": table }).to_string())
}

/// Invariants of a front in the text format, plus slice-genus bounds.
pub fn front_invariants_json(text: &str) -> Result<String, String> {
    let d: FrontDiagram = text.parse().map_err(|e: concordance::Error| e.to_string())?;
    let inv = d.invariants().map_err(|e| e.to_string())?;
    let bounds = d.is_planar().then(|| genus_bounds(&inv));
    Ok(json!({ "invariants": inv, "bounds": bounds }).to_string())
}

/// First `ω` with `σ(ω) = 0 != σ(ω^p)`, if any.
pub fn cable_obstruction_json(rows: &str, p: u32) -> Result<String, String> {
    let k = KnotProfile::from_seifert("K", seifert(rows)?);
    let r = finite_order_obstruction(&k, p, DEFAULT_ANGLE_BOUND).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn catalog() -> String {
    catalog_json()
}

#[wasm_bindgen]
pub fn signature_function(rows: &str, p: u32) -> Result<String, JsValue> {
    signature_function_json(rows, p).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn front_invariants(text: &str) -> Result<String, JsValue> {
    front_invariants_json(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cable_obstruction(rows: &str, p: u32) -> Result<String, JsValue> {
    cable_obstruction_json(rows, p).map_err(|e| JsValue::from_str(&e))
}
