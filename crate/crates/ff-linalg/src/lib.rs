//! Exact linear algebra over prime fields F_q: row reduction, canonical
//! subspaces, orthogonal complements and enumeration of Grassmannians.

mod enumerate;
mod field;
mod form;
mod matrix;
mod subspace;

pub use enumerate::{enumerate_between, enumerate_subspaces, gaussian_binomial, matrix_of_rows, SubspaceIter};
pub use field::{is_prime, odd_primes, PrimeField};
pub use form::{perp, BilinearForm, Symmetry};
pub use matrix::{rref, Matrix};
pub use subspace::{nullspace, EchelonSubspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {dim} out of range for ambient dimension {ambient}")]
    DimensionOutOfRange { dim: usize, ambient: usize },
    #[error("entry {entry} is not reduced mod {q}")]
    EntryOutOfRange { entry: u32, q: u32 },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("Gram matrix is degenerate")]
    DegenerateForm,
    #[error("Gram matrix is neither symmetric nor alternating")]
    NotSymmetricOrAlternating,
    #[error("lower subspace is not contained in upper subspace")]
    NotNested,
}

/// Free-function form of [`EchelonSubspace::intersect`].
pub fn intersect(a: &EchelonSubspace, b: &EchelonSubspace) -> Result<EchelonSubspace, LinalgError> {
    a.intersect(b)
}

/// Free-function form of [`EchelonSubspace::image_under`].
pub fn image_under(x: &Matrix, s: &EchelonSubspace) -> Result<EchelonSubspace, LinalgError> {
    s.image_under(x)
}

/// Whether `b ⊆ a`.
pub fn contains(a: &EchelonSubspace, b: &EchelonSubspace) -> bool {
    a.contains(b)
}
