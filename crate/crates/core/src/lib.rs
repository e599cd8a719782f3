//! Exact computations for algebraic actions of monoids on `Z^n`: constructible
//! sublattices, finite levels of the profinite completion, partial
//! transformation groupoid arrows, and the rigidity invariants used to tell
//! two such groupoids apart.

pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub mod json;
pub mod lattice;
pub mod action;
pub mod groupoid;
pub mod invariants;
pub mod polyring;
pub mod orders;
pub mod schema;
pub mod compare;
pub mod analysis;
