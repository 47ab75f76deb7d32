//! Exact linear algebra over Q and prime fields, bounded cochain complexes and their
//! cohomology, and integer Smith normal form.
//!
//! Nothing here uses floating point. Pivoting is deterministic (lowest column, then lowest
//! row), so bases and solutions are reproducible run to run.

mod complex;
mod matrix;
mod scalar;
mod snf;

pub use complex::{ChainComplex, CohomologyBasis};
pub use matrix::{axpy, is_zero_vector, scale, unit_vector, zero_vector, IntMatrix, Matrix, Rref, Vector};
pub use scalar::{Field, Scalar};
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("vector is not a cycle")]
    NotACycle,
    #[error("unsupported field: {0}")]
    BadField(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}
