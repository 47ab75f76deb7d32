//! DG functors, representable modules, quasi-equivalence certificates, Serre duality checks
//! and duality of twisted complexes.

mod dual;
mod equiv;
mod extend;
mod functor;
mod module;
mod serre;

pub use dual::{dualize, dualize_over};
pub use equiv::{check_quasi_equiv, point_equivalence, EquivCertificate, EquivWitness};
pub use extend::{pretr_extend, PretrFunctor};
pub use functor::{validate_functor, DgFunctor, FunctorViolation};
pub use module::{evaluation_matrix, module_hom, restrict_module, yoneda, DgModule, ModuleHom};
pub use serre::{verify_serre, SerreData};


use crate::dgcore::DgError;
use crate::exactlin::LinError;
use crate::pretr::PretrError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error("malformed: {0}")]
    Malformed(String),
    #[error("categories do not match")]
    BaseMismatch,
    #[error(transparent)]
    Dg(#[from] DgError),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Pretr(#[from] PretrError),
}

/// Outcome of a verification: pass, or fail with the first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn fail(reason: impl Into<String>) -> Verdict {
        Verdict::Fail(reason.into())
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(r) => write!(f, "fail: {r}"),
        }
    }
}
