//! Browser bindings: JSON text in, JSON text out.
//!
//! The page keeps its own state (the current QP as JSON) and calls these
//! functions on it. Errors come back as strings, which wasm-bindgen turns
//! into thrown JS exceptions.

use std::sync::OnceLock;

use qpkit::io::parse_input;
use qpkit::mclass::{classify_with, representation_type_with, ClassDb, DEFAULT_CAP};
use qpkit::qp::qp_mutate;
use qpkit::singularity::singularity_invariant;
use qpkit::ClassError;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

// No disk cache in the browser: `temp_dir` is not available on wasm32.
fn db() -> &'static ClassDb {
    static DB: OnceLock<ClassDb> = OnceLock::new();
    DB.get_or_init(|| ClassDb::new(None, DEFAULT_CAP))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Normalizes any accepted input (quiver, QP, polygon-tree or floriated spec) to QP JSON.
#[wasm_bindgen]
pub fn load(input: &str) -> Result<String, String> {
    let qp = parse_input(input).map_err(err)?.to_qp().map_err(err)?;
    serde_json::to_string(&qp.to_raw()).map_err(err)
}

/// QP mutation at one vertex, reduced part only.
#[wasm_bindgen]
pub fn mutate(input: &str, vertex: &str) -> Result<String, String> {
    let qp = parse_input(input).map_err(err)?.to_qp().map_err(err)?;
    let next = qp_mutate(&qp, vertex).map_err(err)?;
    serde_json::to_string(&next.to_raw()).map_err(err)
}

/// Mutation type, representation type and, for polygon trees, the singularity invariant.
#[wasm_bindgen]
pub fn classify(input: &str) -> Result<String, String> {
    let parsed = parse_input(input).map_err(err)?;
    let q = parsed.to_quiver().map_err(err)?;
    let mut out = match classify_with(db(), &q, DEFAULT_CAP) {
        Ok(tag) => json!({ "status": "finite", "type": tag.to_string() }),
        Err(ClassError::InfiniteClass(w)) => json!({ "status": "infinite", "type": null, "witness": w }),
        Err(ClassError::Capped(c)) => json!({ "status": "capped", "type": null, "cap": c }),
        Err(e) => return Err(e.to_string()),
    };
    out["representation_type"] = match representation_type_with(db(), &q, DEFAULT_CAP) {
        Ok(v) => json!({ "verdict": v.verdict.to_string(), "reason": v.reason }),
        Err(_) => Value::Null,
    };
    out["singularity"] = match parsed.tree_spec() {
        Some(spec) => match singularity_invariant(&spec) {
            Ok(d) => serde_json::to_value(d).map_err(err)?,
            Err(e) => json!({ "error": e.to_string() }),
        },
        None => Value::Null,
    };
    Ok(out.to_string())
}

/// Graphviz text of the underlying quiver.
#[wasm_bindgen]
pub fn dot(input: &str) -> Result<String, String> {
    Ok(parse_input(input).map_err(err)?.to_quiver().map_err(err)?.to_dot())
}
