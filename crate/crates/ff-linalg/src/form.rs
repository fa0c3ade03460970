use crate::subspace::nullspace;
use crate::{EchelonSubspace, LinalgError, Matrix, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Alternating,
}

/// A nondegenerate symmetric or alternating bilinear form ω(u, v) = uᵀ G v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
    field: PrimeField,
    symmetry: Symmetry,
}

impl BilinearForm {
    pub fn new(gram: Matrix, field: PrimeField) -> Result<Self, LinalgError> {
        let n = gram.rows();
        if gram.cols() != n {
            return Err(LinalgError::DimensionMismatch { expected: n, found: gram.cols() });
        }
        let t = gram.transpose();
        let symmetric = t == gram;
        let alternating = (0..n).all(|i| gram.get(i, i) == 0)
            && (0..n).all(|i| (0..n).all(|j| gram.get(i, j) == field.neg(gram.get(j, i))));
        let symmetry = if alternating {
            Symmetry::Alternating
        } else if symmetric {
            Symmetry::Symmetric
        } else {
            return Err(LinalgError::NotSymmetricOrAlternating);
        };
        if gram.rank(field) < n {
            return Err(LinalgError::DegenerateForm);
        }
        Ok(BilinearForm { gram, field, symmetry })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn pair(&self, u: &[u32], v: &[u32]) -> u32 {
        let gv = self.gram.apply(v, self.field);
        let q = self.field.q() as u64;
        (u.iter().zip(&gv).map(|(&a, &b)| a as u64 * b as u64 % q).sum::<u64>() % q) as u32
    }

    /// {v : ω(v, s) = 0}.
    pub fn perp(&self, s: &EchelonSubspace) -> Result<EchelonSubspace, LinalgError> {
        if s.ambient_dim() != self.dim() {
            return Err(LinalgError::DimensionMismatch { expected: self.dim(), found: s.ambient_dim() });
        }
        if s.dim() == 0 {
            return Ok(EchelonSubspace::full(self.dim(), self.field));
        }
        let m = s.basis().mul(&self.gram, self.field)?;
        Ok(nullspace(&m, self.field))
    }

    pub fn is_isotropic(&self, s: &EchelonSubspace) -> bool {
        let b = s.basis();
        let g = b.mul(&self.gram, self.field).and_then(|bg| bg.mul(&b.transpose(), self.field));
        matches!(g, Ok(m) if m.is_zero())
    }

    /// Whether the subspaces pair to zero.
    pub fn orthogonal(&self, a: &EchelonSubspace, b: &EchelonSubspace) -> bool {
        let g = a.basis().mul(&self.gram, self.field).and_then(|ag| ag.mul(&b.basis().transpose(), self.field));
        matches!(g, Ok(m) if m.is_zero())
    }

    /// For a symmetric form in even dimension 2n: whether it has a totally isotropic subspace of
    /// dimension n, i.e. whether (−1)^n det G is a square.
    pub fn is_split(&self) -> bool {
        let n = self.dim();
        match self.symmetry {
            Symmetry::Alternating => true,
            Symmetry::Symmetric if n % 2 == 1 => true,
            Symmetry::Symmetric => {
                let det = self.gram.determinant(self.field).expect("square");
                let sign = if (n / 2).is_multiple_of(2) { 1 } else { self.field.neg(1) };
                self.field.is_square(self.field.mul(sign, det))
            }
        }
    }
}

/// Orthogonal complement of `s` with respect to the form with Gram matrix `gram`.
pub fn perp(s: &EchelonSubspace, gram: &Matrix, field: PrimeField) -> Result<EchelonSubspace, LinalgError> {
    BilinearForm::new(gram.clone(), field)?.perp(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2(field: PrimeField) -> Matrix {
        // Antidiagonal symplectic Gram on F^4 pairing v1 with v4 and v2 with v3.
        Matrix::from_rows_i64(&[vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, -1, 0, 0], vec![-1, 0, 0, 0]], field)
            .unwrap()
    }

    #[test]
    fn perp_of_first_vector() {
        let f = PrimeField::new(3).unwrap();
        let l = EchelonSubspace::coordinate(4, &[0], f);
        let p = perp(&l, &k2(f), f).unwrap();
        assert_eq!(p, EchelonSubspace::coordinate(4, &[0, 1, 2], f));
    }

    #[test]
    fn perp_of_zero_is_everything() {
        let f = PrimeField::new(3).unwrap();
        let p = perp(&EchelonSubspace::zero(4, f), &k2(f), f).unwrap();
        assert_eq!(p.dim(), 4);
    }

    #[test]
    fn lagrangian_is_self_perp() {
        let f = PrimeField::new(3).unwrap();
        let form = BilinearForm::new(k2(f), f).unwrap();
        // span{v1 + v2, v3 - v4}: ω(v1+v2, v3-v4) = ω(v1,-v4) + ω(v2,v3) = -1 + 1 = 0.
        let w = EchelonSubspace::span_vectors(4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 2]], f).unwrap();
        assert!(form.is_isotropic(&w));
        assert_eq!(form.perp(&w).unwrap(), w);
    }

    #[test]
    fn degenerate_gram_rejected() {
        let f = PrimeField::new(5).unwrap();
        let g = Matrix::from_rows_i64(&[vec![1, 0], vec![0, 0]], f).unwrap();
        assert_eq!(BilinearForm::new(g, f), Err(LinalgError::DegenerateForm));
    }

    #[test]
    fn split_detection() {
        let f3 = PrimeField::new(3).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        // x² + y² is anisotropic over F_3 but split over F_5.
        let g3 = Matrix::identity(2);
        assert!(!BilinearForm::new(g3.clone(), f3).unwrap().is_split());
        assert!(BilinearForm::new(g3, f5).unwrap().is_split());
    }
}
