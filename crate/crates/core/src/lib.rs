//! Dual flow polytopes of acyclic quivers.
//!
//! Start from a [`Quiver`], take its canonical weight, and ask the
//! [`stability`] module whether the pair is generic and tight. If it is, the
//! [`polytope`] module gives the vertices of the dual flow polytope and
//! certifies how neighborly it is, and [`sensing`] uses those vertices as a
//! measurement matrix for exact nonnegative sparse recovery.

pub mod cli;
pub mod error;
pub mod field;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod quiver;
pub mod report;
pub mod sensing;
pub mod stability;
pub mod weight;

pub use error::{Error, Result};
pub use quiver::{CycleBasis, Quiver};
pub use weight::{canonical_weight, incidence, Circulation, Weight};
