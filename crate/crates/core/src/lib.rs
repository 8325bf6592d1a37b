//! Unit-equality superposition prover with checkable proofs, plus a
//! tactic layer for goal matching modulo equations and bounded backward
//! proof search.

pub mod calculus;
pub mod clause;
pub mod error;
pub mod frontend;
pub mod index;
pub mod ordering;
pub mod proof;
pub mod saturation;
pub mod tactic;
pub mod terms;

pub use error::{Error, Result};
