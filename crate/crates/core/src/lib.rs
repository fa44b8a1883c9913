//! Linear codes built from quadratic forms over a finite-field tower.
//!
//! The crate computes every code invariant two ways: by exhaustive
//! enumeration over messages, points or subspaces, and by closed formulas in
//! the invariants `(r_Q, eps)` of the form. The two routes are kept apart so
//! one can check the other.

pub mod code;
pub mod cyclotomic;
pub mod descent;
pub mod error;
pub mod exec;
pub mod gf;
pub mod ghw;
pub mod linalg;
pub mod literal;
pub mod presets;
pub mod quadform;
pub mod subspace;

pub use error::{Error, Result};
pub use exec::Exec;
