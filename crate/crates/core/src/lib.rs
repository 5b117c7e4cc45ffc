//! Exact normal forms for algebras with involution of small degree over ℚ.
//!
//! The crate turns small-degree algebras with involution into points of
//! explicit parameter varieties, decodes such points back into algebras, and
//! checks every step with exact arithmetic.

pub mod error;
pub mod field;
pub mod forms;
pub mod harness;
pub mod classify;
pub mod linalg;
pub mod quaternion;
pub mod rat;
pub mod tensor;

pub use error::{Error, Result};
pub use rat::{rat, Rat};
