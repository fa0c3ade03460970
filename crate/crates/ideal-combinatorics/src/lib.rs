//! Root systems of the classical Lie algebras, standard parabolics given by flag
//! dimensions, and ideals of a parabolic described by sequences c with
//! x(V_p) ⊆ V_{c_p}.

mod elementary;
mod matrix_model;
mod oracle;
mod roots;
mod sequence;
mod shape;

pub use elementary::{elementary_ideal_sequence, ElementaryIdeal};
pub use matrix_model::{ideal_root_support, membership_test, StandardModel};
pub use oracle::ideal_closure_oracle;
pub use roots::{add, build_roots, inner, neg, Root, RootDatum};
pub use sequence::{all_valid_c, dual_c, is_self_dual, max_c, validate_c, IdealSequence};
pub use shape::FlagShape;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("sequence length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("c[{index}] = {value} exceeds its index")]
    Bound { index: usize, value: usize },
    #[error("c decreases at index {index}")]
    Decreasing { index: usize },
    #[error("invalid flag shape: {0}")]
    BadShape(String),
    #[error(
        "even orthogonal shape {0:?} ends at n-1; swap the last two simple roots so that it ends at n or below n-1"
    )]
    Unnormalized(Vec<usize>),
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i32>),
    #[error("root {0:?} is neither positive nor in the Levi")]
    NotInParabolic(Vec<i32>),
    #[error(transparent)]
    Linalg(#[from] ff_linalg::LinalgError),
}

/// Complex dimension of the variety of flags of this shape.
pub fn dim_flag_variety(shape: &FlagShape) -> usize {
    let roots = build_roots(shape.form, shape.m);
    let levi = roots.subsystem(&shape.stabilizer_levi_simple(&roots));
    roots.positive.iter().filter(|r| !levi.contains(*r)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nilpotent_core::FormKind;

    #[test]
    fn flag_variety_dimensions() {
        let dim = |form, m, d: &[usize]| dim_flag_variety(&FlagShape::new(form, m, d.to_vec()).unwrap());
        assert_eq!(dim(FormKind::Linear, 2, &[0, 1, 2]), 1);
        assert_eq!(dim(FormKind::Symplectic, 4, &[0, 1, 2]), 4);
        assert_eq!(dim(FormKind::Linear, 4, &[0, 2, 4]), 4);
        // Isotropic k-planes in a 6-dim quadric: k(6-k) - k(k+1)/2, per family when k = 3.
        assert_eq!(dim(FormKind::Symmetric, 6, &[0, 1]), 4);
        assert_eq!(dim(FormKind::Symmetric, 6, &[0, 2]), 5);
        assert_eq!(dim(FormKind::Symmetric, 6, &[0, 3]), 3);
    }
}
