//! F_q-points of varieties of partial flags V_0 ⊂ … compatible with a nilpotent e and an
//! ideal sequence c: e(V̄_p) ⊆ V̄_{c_p} for the completed flag. Brute-force and graded
//! (torus-fixed) enumeration, point counts, and interpolation of counts as polynomials in q.

mod component;
mod flag;
mod plan;
mod poincare;
mod search;
mod variety;

pub use component::{component_sign, reference_lagrangian, split_primes};
pub use flag::{completion, is_graded, satisfies, standard_weight_flag, FlagPoint};
pub use poincare::{
    degree_bound, fixed_degree_bound, interpolate, poincare, poincare_with, CountMode, Holdout, PoincarePolynomial,
};
pub use search::{
    count_fixed_points, count_points, enumerate_fixed_points, enumerate_points, Budget, Constraint, DEFAULT_BUDGET,
};
pub use variety::{ComponentPolicy, FlagVariety, VarietySpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlagError {
    #[error(transparent)]
    Nilpotent(#[from] nilpotent_core::NilpotentError),
    #[error(transparent)]
    Ideal(#[from] ideal_combinatorics::IdealError),
    #[error(transparent)]
    Linalg(#[from] ff_linalg::LinalgError),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("ideal sequence {0:?} is not self-dual")]
    NotSelfDual(Vec<usize>),
    #[error("component policy applies only to even orthogonal flags ending in a Lagrangian")]
    PolicyNotApplicable,
    #[error("F_{0} is not usable here: {1}")]
    UnusableField(u32, String),
    #[error("flag is not isotropic")]
    NotIsotropic,
    #[error("flag does not have the prescribed dimensions {0:?}")]
    ShapeMismatch(Vec<usize>),
    #[error("search budget of {cap} candidate flags exceeded")]
    BudgetExceeded { cap: u64 },
    #[error("interpolated coefficient {0} is not an integer")]
    NonIntegral(String),
    #[error("need {needed} sample primes, got {found}")]
    NotEnoughPrimes { needed: usize, found: usize },
}
