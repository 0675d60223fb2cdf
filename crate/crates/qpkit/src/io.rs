//! The JSON shapes accepted by the command line, the HTTP service and the demo.
//!
//! * polygon-tree spec: `{"components": [4, 4], "gluings": [{"host": 0, "arrow": 0}]}`
//! * floriated spec: `{"m0": 4, "petals": [{"position": 1, "size": 3}]}`
//! * QP: `{"vertices": [...], "arrows": [{"name": "a", "src": "1", "tgt": "2"}], "potential": [...]}`
//! * quiver: the same without names and potential; weights in `"w"`.

use serde_json::Value;

use crate::error::InputError;
use crate::polygon::{build_floriated, build_polygon_tree, is_cyclically_oriented, primitive_qp, FloriatedSpec, PolygonTreeSpec};
use crate::qp::{Potential, Qp, RawQp};
use crate::quiver::{Quiver, RawQuiver};

#[derive(Clone, Debug)]
pub enum Input {
    Tree(PolygonTreeSpec),
    Floriated(FloriatedSpec),
    Qp(Qp),
    Quiver(Quiver),
}

pub fn parse_input(text: &str) -> Result<Input, InputError> {
    let v: Value = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    parse_value(v)
}

pub fn parse_value(v: Value) -> Result<Input, InputError> {
    let Some(obj) = v.as_object() else { return Err(InputError::Unrecognized) };
    let json = |e: serde_json::Error| InputError::Json(e.to_string());
    if obj.contains_key("components") {
        let spec: PolygonTreeSpec = serde_json::from_value(v).map_err(json)?;
        spec.validate()?;
        return Ok(Input::Tree(spec));
    }
    if obj.contains_key("m0") {
        let spec: FloriatedSpec = serde_json::from_value(v).map_err(json)?;
        spec.validate()?;
        return Ok(Input::Floriated(spec));
    }
    if !obj.contains_key("vertices") || !obj.contains_key("arrows") {
        return Err(InputError::Unrecognized);
    }
    let named = obj["arrows"].as_array().is_some_and(|a| a.iter().any(|x| x.get("name").is_some()));
    if obj.contains_key("potential") || named {
        let raw: RawQp = serde_json::from_value(v).map_err(json)?;
        return Ok(Input::Qp(Qp::from_raw(&raw)?));
    }
    let raw: RawQuiver = serde_json::from_value(v).map_err(json)?;
    Ok(Input::Quiver(Quiver::validate(&raw)?))
}

impl Input {
    /// A QP for any input. A bare quiver gets its primitive potential when it
    /// is cyclically oriented and the zero potential otherwise.
    pub fn to_qp(&self) -> Result<Qp, InputError> {
        Ok(match self {
            Input::Tree(s) => build_polygon_tree(s)?,
            Input::Floriated(s) => build_floriated(s)?,
            Input::Qp(qp) => qp.clone(),
            Input::Quiver(q) if is_cyclically_oriented(q) && q.max_weight() <= 1 => primitive_qp(q)?,
            Input::Quiver(q) => Qp::from_quiver(q, Potential::new())?,
        })
    }

    pub fn to_quiver(&self) -> Result<Quiver, InputError> {
        match self {
            Input::Quiver(q) => Ok(q.clone()),
            other => Ok(other.to_qp()?.underlying_quiver()?),
        }
    }

    /// The polygon-tree spec, either given directly or recovered from the quiver.
    pub fn tree_spec(&self) -> Option<PolygonTreeSpec> {
        match self {
            Input::Tree(s) => Some(s.clone()),
            Input::Floriated(s) => s.to_tree_spec().ok(),
            other => crate::polygon::decompose(&other.to_quiver().ok()?).ok().map(|d| d.spec),
        }
    }
}
