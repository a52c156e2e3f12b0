//! Exact computations with graded noncommutative algebras: completion, bar
//! complexes, minimal A-infinity models and a two-generator classification.

pub mod error;
pub mod ainf;
pub mod barext;
pub mod classify;
pub mod linalg;
pub mod poly;
pub mod presentation;
pub mod rewrite;
pub mod scalar;
pub(crate) mod upoly;

pub use error::{Error, Result};
pub use poly::{NCPoly, Word};
pub use presentation::{parse_field_text, parse_presentation, Presentation};
pub use rewrite::{complete, ReductionSystem};
pub use scalar::{Field, Scalar};
