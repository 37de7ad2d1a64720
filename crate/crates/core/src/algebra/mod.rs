//! Lie algebras given by structure constants.

mod json;
mod lie;
mod salamon;
mod structure;

pub use json::{AlgebraJson, BracketJson};
pub use lie::{bracket_over, BracketSpec, JacobiReport, LieAlgebra};
pub use salamon::{format_salamon, parse_salamon};
pub use structure::{NilradicalCheck, StructureSubspaces};
