//! Certificate-driven generation and semiorthogonal decompositions.
//!
//! A [`GenerationCertificate`] is a build script of leaves, sums, cones and summands whose
//! replay witnesses membership of a target in a triangulated envelope. An [`SodClaim`] bundles
//! blocks with one generator triangle per ambient generator and cut.

mod generation;
mod sod;

pub use generation::{verify_generation, Built, GenerationCertificate, GenerationReport, Step};
pub use sod::{
    check_exceptional_collection, check_semiorthogonality, check_sod, ext_table, right_orthogonal_check, AuditTrail,
    CutWitness, Obligation, SodClaim,
};

use crate::pretr::PretrError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SodError {
    #[error("malformed: {0}")]
    Malformed(String),
    #[error("step {step} refers to step {reference}, which is not an earlier step")]
    DanglingStep { step: usize, reference: usize },
    #[error(transparent)]
    Pretr(#[from] PretrError),
}
