//! Stratification of the graded locus of a flag variety with distinguished nilpotent e.
//! Each stratum is mapped bijectively onto a constrained graded locus of smaller rank by
//! removing the ends of one Jordan block; the tree of reductions is verified pointwise
//! over small primes and its leaves assemble the count polynomial.

mod pave;
mod reduce;
mod stratum;
mod verify;

pub use pave::{
    pave_fixed_locus, sample_primes, Branch, CertNode, Mutation, NodeKind, PavingCertificate, PavingOptions,
    PavingOutcome, StratumEntry,
};
pub use reduce::{merge_c, reduce, MutationKind, ReductionStep};
pub use stratum::{meets, p_sequence, stratum_of, weight_profile, Step, StratumDescriptor, StratumKind};
pub use verify::{verify_reduction, AuditRow, VerificationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PavingError {
    #[error(transparent)]
    Flag(#[from] flag_engine::FlagError),
    #[error(transparent)]
    Nilpotent(#[from] nilpotent_core::NilpotentError),
    #[error(transparent)]
    Linalg(#[from] ff_linalg::LinalgError),
    #[error("flag is not graded")]
    NotGraded,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("claim fails: {0}")]
    ClaimViolation(String),
    #[error("invalid reduction: {0}")]
    InvalidReduction(String),
    #[error("Jordan type {parts:?} is not distinguished; its minimal Levi has GL factors {gl:?} and core {core:?}")]
    NotDistinguished { parts: Vec<usize>, gl: Vec<usize>, core: Vec<usize> },
}
