//! Finite DG categories: explicit Hom complexes with named bases, sparse composition
//! constants, axiom validation, quiver path categories, opposites and tensor products.

mod category;
mod construct;
mod quiver;
mod validate;

pub use category::{point_category, CompKey, CompTable, DgCategory, HomSpace, Morphism, ObjId};
pub use construct::{opposite, swap_iso, tensor, tensor_label};
pub use quiver::{from_quiver, Arrow, PathTerm, Quiver, DEFAULT_PATH_BOUND};
pub use validate::{validate, ValidationReport, Violation};

use crate::exactlin::LinError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DgError {
    #[error("fields do not match")]
    FieldMismatch,
    #[error("duplicate object {0}")]
    DuplicateObject(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("malformed category: {0}")]
    Malformed(String),
    #[error("infinite-dimensional Hom({0},{1}): nonzero paths of length {2}")]
    InfiniteHom(String, String, usize),
    #[error("bad quiver: {0}")]
    BadQuiver(String),
    #[error(transparent)]
    Lin(#[from] LinError),
}
