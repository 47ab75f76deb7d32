//! The Grothendieck ring of pretriangulated categories as a finitely presented commutative
//! ring: generators from registered categories, additive relations from verified
//! semiorthogonal decompositions or cited facts, and product facts from verified tensor
//! identifications. Equality is decided in a degree-bounded integer lattice.

mod expr;
mod lattice;
mod ledger;

pub use expr::{ClassExpr, Monomial, UNIT};
pub use lattice::{EqOutcome, GroupInvariants, MeasureReport};
pub use ledger::{
    kunneth_holds, BetaReport, BlockClass, Generator, Ledger, ProductFact, ProductMode, Provenance, Relation,
    SodEvidence, TensorValue, DEFAULT_DEGREE_BOUND,
};

use crate::dgcore::DgError;
use crate::functors::FunctorError;
use crate::sodgen::SodError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator [{0}]")]
    UnknownGenerator(String),
    #[error("generator [{0}] already exists")]
    DuplicateGenerator(String),
    #[error("[{0}] is not geometric and the ledger is restricted to Γ")]
    NotGeometric(String),
    #[error("provenance does not verify: {0}")]
    Provenance(String),
    #[error("conflicting product fact: {0}")]
    Conflict(String),
    #[error("dataset incomplete: {0}")]
    Incomplete(String),
    #[error(transparent)]
    Sod(#[from] SodError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Dg(#[from] DgError),
}
