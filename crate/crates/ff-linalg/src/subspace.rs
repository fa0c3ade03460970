use crate::matrix::rref_raw;
use crate::{LinalgError, Matrix, PrimeField};

/// A subspace of F_q^n stored by its reduced echelon basis.
///
/// The basis is canonical, so derived equality and hashing are equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EchelonSubspace {
    field: PrimeField,
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl EchelonSubspace {
    pub fn zero(ambient_dim: usize, field: PrimeField) -> Self {
        EchelonSubspace { field, ambient_dim, basis: Matrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize, field: PrimeField) -> Self {
        EchelonSubspace { field, ambient_dim, basis: Matrix::identity(ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize], field: PrimeField) -> Self {
        let mut idx: Vec<usize> = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let mut basis = Matrix::zeros(idx.len(), ambient_dim);
        for (r, &c) in idx.iter().enumerate() {
            basis.set(r, c, 1);
        }
        EchelonSubspace { field, ambient_dim, basis, pivots: idx }
    }

    /// Row span of `m`.
    pub fn span(m: &Matrix, field: PrimeField) -> Self {
        let (data, pivots) = rref_raw(m.to_rows().concat(), m.rows(), m.cols(), field);
        let rank = pivots.len();
        let basis = Matrix::from_raw(rank, m.cols(), data[..rank * m.cols()].to_vec());
        EchelonSubspace { field, ambient_dim: m.cols(), basis, pivots }
    }

    pub fn span_vectors(ambient_dim: usize, vectors: &[Vec<u32>], field: PrimeField) -> Result<Self, LinalgError> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
        }
        let data: Vec<u32> = vectors.concat();
        let (data, pivots) = rref_raw(data, vectors.len(), ambient_dim, field);
        let rank = pivots.len();
        let basis = Matrix::from_raw(rank, ambient_dim, data[..rank * ambient_dim].to_vec());
        Ok(EchelonSubspace { field, ambient_dim, basis, pivots })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_same(&self, other: &EchelonSubspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(())
    }

    /// Residue of `v` after reduction against the echelon basis.
    pub fn reduce_vector(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if c == 0 {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(self.basis.row(r)) {
                if b != 0 {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        v.len() == self.ambient_dim && self.reduce_vector(v).iter().all(|&x| x == 0)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &EchelonSubspace) -> bool {
        if self.ambient_dim != other.ambient_dim || other.dim() > self.dim() {
            return false;
        }
        (0..other.dim()).all(|r| self.contains_vector(other.basis.row(r)))
    }

    pub fn sum(&self, other: &EchelonSubspace) -> Result<EchelonSubspace, LinalgError> {
        self.check_same(other)?;
        Ok(EchelonSubspace::span(&self.basis.vstack(&other.basis)?, self.field))
    }

    /// Adds a single vector to the span.
    pub fn with_vector(&self, v: &[u32]) -> Result<EchelonSubspace, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        let mut rows = self.basis.to_rows();
        rows.push(v.to_vec());
        EchelonSubspace::span_vectors(self.ambient_dim, &rows, self.field)
    }

    /// Vectors orthogonal to the subspace under the standard dot product.
    pub fn annihilator(&self) -> EchelonSubspace {
        nullspace(&self.basis, self.field)
    }

    pub fn intersect(&self, other: &EchelonSubspace) -> Result<EchelonSubspace, LinalgError> {
        self.check_same(other)?;
        if self.contains(other) {
            return Ok(other.clone());
        }
        if other.contains(self) {
            return Ok(self.clone());
        }
        let stacked = self.annihilator().basis.vstack(&other.annihilator().basis)?;
        Ok(nullspace(&stacked, self.field))
    }

    /// The subspace x(s) for a square matrix x acting on column vectors.
    pub fn image_under(&self, x: &Matrix) -> Result<EchelonSubspace, LinalgError> {
        if x.cols() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim, found: x.cols() });
        }
        let img = self.basis.mul(&x.transpose(), self.field)?;
        Ok(EchelonSubspace::span(&img, self.field))
    }

    /// The preimage {v : x v ∈ s}.
    pub fn preimage_under(&self, x: &Matrix) -> Result<EchelonSubspace, LinalgError> {
        if x.rows() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim, found: x.rows() });
        }
        let ann = self.annihilator();
        let m = ann.basis.mul(x, self.field)?;
        if m.rows() == 0 {
            return Ok(EchelonSubspace::full(x.cols(), self.field));
        }
        Ok(nullspace(&m, self.field))
    }

    /// Intersection with the coordinate subspace on `indices`, as a subspace of F_q^n.
    pub fn restrict_to_coordinates(&self, indices: &[usize]) -> EchelonSubspace {
        let coord = EchelonSubspace::coordinate(self.ambient_dim, indices, self.field);
        self.intersect(&coord).expect("same ambient")
    }

    /// Vectors of `self` completing a basis of `self` modulo `lower`.
    pub fn complement_basis(&self, lower: &EchelonSubspace) -> Result<Vec<Vec<u32>>, LinalgError> {
        self.check_same(lower)?;
        if !self.contains(lower) {
            return Err(LinalgError::NotNested);
        }
        let mut acc = lower.clone();
        let mut out = Vec::new();
        for r in 0..self.dim() {
            let v = self.basis.row(r);
            if !acc.contains_vector(v) {
                acc = acc.with_vector(v)?;
                out.push(v.to_vec());
            }
        }
        Ok(out)
    }
}

/// Right null space {v : m v = 0}.
pub fn nullspace(m: &Matrix, field: PrimeField) -> EchelonSubspace {
    let n = m.cols();
    let (data, pivots) = rref_raw(m.to_rows().concat(), m.rows(), n, field);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vecs = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(data[r * n + free]);
        }
        vecs.push(v);
    }
    EchelonSubspace::span_vectors(n, &vecs, field).expect("consistent lengths")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn intersect_coordinate_planes() {
        let a = EchelonSubspace::coordinate(3, &[0, 1], f(3));
        let b = EchelonSubspace::coordinate(3, &[1, 2], f(3));
        assert_eq!(a.intersect(&b).unwrap(), EchelonSubspace::coordinate(3, &[1], f(3)));
    }

    #[test]
    fn zero_map_image() {
        let s = EchelonSubspace::full(4, f(5));
        assert_eq!(s.image_under(&Matrix::zeros(4, 4)).unwrap().dim(), 0);
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let fld = f(7);
        let x = Matrix::from_rows_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]], fld).unwrap();
        let k = EchelonSubspace::zero(3, fld).preimage_under(&x).unwrap();
        assert_eq!(k, EchelonSubspace::coordinate(3, &[0], fld));
    }

    #[test]
    fn span_is_canonical() {
        let fld = f(5);
        let a = EchelonSubspace::span_vectors(3, &[vec![1, 2, 0], vec![0, 1, 1]], fld).unwrap();
        let b = EchelonSubspace::span_vectors(3, &[vec![1, 3, 1], vec![2, 4, 0]], fld).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = EchelonSubspace::zero(3, f(3));
        let b = EchelonSubspace::zero(4, f(3));
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn complement_of_line_in_plane() {
        let fld = f(3);
        let plane = EchelonSubspace::coordinate(3, &[0, 1], fld);
        let line = EchelonSubspace::span_vectors(3, &[vec![1, 1, 0]], fld).unwrap();
        let c = plane.complement_basis(&line).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(line.with_vector(&c[0]).unwrap(), plane);
    }
}
