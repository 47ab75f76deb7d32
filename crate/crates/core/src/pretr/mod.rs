//! The pretriangulated hull: one-sided twisted complexes over a finite DG category, their Hom
//! complexes, shifts, sums and cones, homotopy equivalence by contractibility of cones,
//! Gaussian elimination, and the Karoubi envelope of the homotopy category.

mod cone;
mod hom;
mod hull;
mod karoubi;
mod reduce;
mod search;
pub(crate) mod signs;
mod twisted;

pub use cone::{cone, cone_maps, is_contractible, is_ho_iso, verify_cone_axioms, ConeMaps};
pub use hom::{ho_hom, hom_complex, TwistedHom};
pub use hull::hull_subcategory;
pub use karoubi::{karoubi_hom, karoubi_inverse, KaroubiObject};
pub use reduce::reduce;
pub use search::{search_ho_iso, search_karoubi_iso, SearchConfig, SearchOutcome};
pub(crate) use twisted::same_base;
pub use twisted::{Term, TwistedComplex, TwistedMorphism};

use crate::dgcore::DgError;
use crate::exactlin::LinError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PretrError {
    #[error("malformed twisted complex: {0}")]
    Malformed(String),
    #[error("twist violates dq + q^2 = 0")]
    MaurerCartan,
    #[error("twisted complexes live over different base categories")]
    BaseMismatch,
    #[error("morphisms do not match in source, target or degree")]
    ShapeMismatch,
    #[error("morphism is not closed")]
    NotClosed,
    #[error("morphism does not have degree 0")]
    NotDegreeZero,
    #[error("witness failed: {0}")]
    WitnessFailed(String),
    #[error(transparent)]
    Dg(#[from] DgError),
    #[error(transparent)]
    Lin(#[from] LinError),
}
