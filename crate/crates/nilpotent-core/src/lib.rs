//! Nilpotent elements of gl_m, sp_m and so_m given by Jordan type, realized by
//! explicit integer matrices in a basis of h-weight vectors.

mod jordan;
mod realization;

pub use jordan::{is_distinguished, minimal_levi, validate_jordan, Admissibility, FormKind, JordanDatum};
pub use realization::{build_realization, weight_dims, Block, Grading, NilpotentRealization};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NilpotentError {
    #[error("partition is empty")]
    EmptyPartition,
    #[error("partition has a zero part")]
    ZeroPart,
    #[error("parts {0:?} are not weakly decreasing")]
    NotDecreasing(Vec<usize>),
    #[error("inadmissible Jordan type: {0}")]
    Inadmissible(String),
    #[error("no block with label {0}")]
    UnknownBlock(usize),
    #[error("block {0} is paired with a twin block and cannot be trimmed alone")]
    PairedBlock(usize),
}
