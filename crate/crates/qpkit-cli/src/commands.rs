//! Operations behind the subcommands and the session panel, as JSON in and out.

use qpkit::io::Input;
use qpkit::jacobian::jacobian_basis;
use qpkit::mclass::{classify_with, explore_class, representation_type_with, ClassDb, ClassStatus};
use qpkit::polygon::{decompose, is_cyclically_oriented, is_simple, simple_witness, Figure5Reading};
use qpkit::singularity::{replay_reduction, replay_theorem_chain, singularity_invariant, ReplayTrace};
use qpkit::{canonical_form, qp::qp_mutate_seq, ClassError, Qp, Quiver};
use serde_json::{json, Value};

use crate::CliError;

pub fn jacobian(input: &Input, max_degree: Option<usize>) -> Result<Value, CliError> {
    let qp = input.to_qp()?;
    let r = jacobian_basis(&qp, max_degree.unwrap_or_else(|| qp.default_degree()))?;
    Ok(r.to_json())
}

pub fn jacobian_table(input: &Input, max_degree: Option<usize>) -> Result<String, CliError> {
    let qp = input.to_qp()?;
    Ok(jacobian_basis(&qp, max_degree.unwrap_or_else(|| qp.default_degree()))?.table())
}

/// Orientation, decomposition and simple-ness of a quiver.
pub fn polygon_check(input: &Input) -> Result<Value, CliError> {
    let q = input.to_quiver()?;
    let mut out = json!({ "cyclically_oriented": is_cyclically_oriented(&q) });
    match decompose(&q) {
        Ok(dec) => {
            let spec = &dec.spec;
            out["polygon_tree"] = json!(true);
            out["spec"] = serde_json::to_value(spec)?;
            out["simple"] = json!(is_simple(spec));
            out["banned_chain"] = json!(simple_witness(spec, Figure5Reading::Chain));
        }
        Err(e) => {
            out["polygon_tree"] = json!(false);
            out["reason"] = json!(e.to_string());
        }
    }
    Ok(out)
}

/// `{status, type, representation_type, witness?}` for a quiver.
pub fn classify(q: &Quiver, db: &ClassDb, cap: usize) -> Result<Value, CliError> {
    let mut out = match classify_with(db, q, cap) {
        Ok(tag) => json!({ "status": "finite", "type": tag.to_string() }),
        Err(ClassError::InfiniteClass(w)) => json!({ "status": "infinite", "type": null, "witness": w }),
        Err(ClassError::Capped(c)) => json!({ "status": "capped", "type": null, "cap": c }),
        Err(e) => return Err(e.into()),
    };
    out["representation_type"] = match representation_type_with(db, q, cap) {
        Ok(v) => json!({ "verdict": v.verdict.to_string(), "reason": v.reason }),
        // only polygon-tree quivers get a verdict
        Err(ClassError::Polygon(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(out)
}

pub fn explore(q: &Quiver, cap: usize) -> Result<Value, CliError> {
    let r = explore_class(q, cap)?;
    let mut out = json!({ "status": r.status_name() });
    match r.status {
        ClassStatus::Finite { size, codes } => {
            out["size"] = json!(size);
            out["codes"] = json!(codes.iter().map(|c| qpkit::canon::code_hex(c)).collect::<Vec<_>>());
        }
        ClassStatus::Infinite { witness } => out["witness"] = json!(witness),
        ClassStatus::Capped { cap } => out["cap"] = json!(cap),
    }
    Ok(out)
}

pub fn singularity(input: &Input) -> Result<Value, CliError> {
    let spec = input.tree_spec().ok_or(CliError::NotPolygonTree)?;
    Ok(serde_json::to_value(singularity_invariant(&spec)?)?)
}

/// The reduction replay for floriated specs, the full chain otherwise.
pub fn replay(input: &Input) -> Result<ReplayTrace, CliError> {
    if let Input::Floriated(spec) = input {
        return Ok(replay_reduction(spec)?);
    }
    let spec = input.tree_spec().ok_or(CliError::NotPolygonTree)?;
    Ok(replay_theorem_chain(&spec)?)
}

pub fn nakayama(d: usize) -> Result<Value, CliError> {
    Ok(serde_json::to_value(qpkit::singularity::nakayama_model(d)?)?)
}

pub fn mutate(input: &Input, seq: &[String], fz_only: bool) -> Result<Value, CliError> {
    if fz_only {
        let q = input.to_quiver()?.mutate_seq(seq)?;
        return Ok(serde_json::to_value(q.to_raw())?);
    }
    let qp = qp_mutate_seq(&input.to_qp()?, seq)?;
    Ok(serde_json::to_value(qp.to_raw())?)
}

pub fn canonical(q: &Quiver) -> Result<String, CliError> {
    Ok(canonical_form(q)?.hex())
}

/// The invariant panel shown after each session step.
pub fn panel(qp: &Qp, db: &ClassDb, cap: usize) -> Result<Value, CliError> {
    let q = qp.underlying_quiver()?;
    let mut out = json!({});
    if let Ok(dec) = decompose(&q) {
        if is_simple(&dec.spec) {
            out["singularity"] = match singularity_invariant(&dec.spec) {
                Ok(d) => serde_json::to_value(d)?,
                Err(e) => json!({ "error": e.to_string() }),
            };
        }
    }
    if q.n() >= 2 {
        let c = classify(&q, db, cap)?;
        out["type"] = c["type"].clone();
        out["class_status"] = c["status"].clone();
        out["representation_type"] = c["representation_type"].clone();
    }
    Ok(out)
}
