//! Command implementations and the HTTP session service behind the `qpkit` binary.

pub mod commands;
pub mod service;

use qpkit::{ClassError, InputError, JacobianError, PolygonError, QpError, QuiverError, SingularityError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error("input is not a polygon-tree quiver")]
    NotPolygonTree,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
