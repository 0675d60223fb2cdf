//! Computer algebra for quivers with potentials and polygon-tree algebras.
//!
//! The modules build on each other in this order: [`quiver`] and [`canon`]
//! for weighted quivers, [`qp`] for potentials and QP mutation, [`jacobian`]
//! for truncated Jacobian algebras, [`polygon`] for floriated and
//! polygon-tree quivers, [`mclass`] for mutation classes and representation
//! type, and [`singularity`] for the invariant `m - 3N + d_Q` together with
//! the replayed mutation/surgery chains that justify it.

pub mod canon;
pub mod error;
pub mod io;
pub mod jacobian;
pub mod mclass;
pub mod polygon;
pub mod qp;
pub mod quiver;
pub mod singularity;

pub use canon::{canonical_form, CanonicalQuiver};
pub use error::*;
pub use qp::{cyclic_derivative, premutate, qp_mutate, reduce, Potential, Qp, QpArrow};
pub use quiver::{Quiver, RawArrow, RawQuiver};
