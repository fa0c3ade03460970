use crate::{LinalgError, PrimeField};

/// Dense row-major matrix with entries in [0, q).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod q.
    pub fn from_rows_i64(rows: &[Vec<i64>], field: PrimeField) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    /// Builds a matrix from residues; every entry must already lie in [0, q).
    pub fn from_rows(rows: &[Vec<u32>], field: PrimeField) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            for &x in r {
                if x >= field.q() {
                    return Err(LinalgError::EntryOutOfRange { entry: x, q: field.q() });
                }
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, field: PrimeField) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let q = field.q() as u64;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = ((*o as u64 + a * b as u64) % q) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix, field: PrimeField) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| field.add(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: u32, field: PrimeField) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| field.mul(a, s)).collect() }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols, data })
    }

    /// Selects a subset of rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// x ↦ M x for a column vector x.
    pub fn apply(&self, x: &[u32], field: PrimeField) -> Vec<u32> {
        let q = field.q() as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(x).map(|(&a, &b)| a as u64 * b as u64 % q).sum();
                (s % q) as u32
            })
            .collect()
    }

    pub fn rank(&self, field: PrimeField) -> usize {
        rref(self, field).1
    }

    pub fn determinant(&self, field: PrimeField) -> Result<u32, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return Ok(0);
            };
            if piv != col {
                for c in 0..n {
                    a.swap(piv * n + c, col * n + c);
                }
                det = field.neg(det);
            }
            let p = a[col * n + col];
            det = field.mul(det, p);
            let pinv = field.inv(p).expect("nonzero pivot");
            for r in col + 1..n {
                let f = field.mul(a[r * n + col], pinv);
                if f == 0 {
                    continue;
                }
                for c in col..n {
                    let v = field.mul(f, a[col * n + c]);
                    a[r * n + c] = field.sub(a[r * n + c], v);
                }
            }
        }
        Ok(det)
    }
}

/// Reduced row-echelon form; the returned matrix keeps only the `rank` nonzero rows.
pub fn rref(m: &Matrix, field: PrimeField) -> (Matrix, usize) {
    let (data, pivots) = rref_raw(m.data.clone(), m.rows, m.cols, field);
    let rank = pivots.len();
    (Matrix::from_raw(rank, m.cols, data[..rank * m.cols].to_vec()), rank)
}

/// In-place elimination on a row-major buffer; returns the buffer and pivot columns.
pub(crate) fn rref_raw(mut a: Vec<u32>, rows: usize, cols: usize, field: PrimeField) -> (Vec<u32>, Vec<usize>) {
    let q = field.q() as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(a[r * cols + c]).expect("nonzero pivot") as u64;
        for j in c..cols {
            a[r * cols + j] = (a[r * cols + j] as u64 * inv % q) as u32;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c] as u64;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let v = a[r * cols + j] as u64;
                if v != 0 {
                    a[i * cols + j] = ((a[i * cols + j] as u64 + (q - f) * v) % q) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn duplicate_rows_over_f2() {
        let m = Matrix::from_rows(&[vec![1, 1], vec![1, 1]], f(2)).unwrap();
        let (r, rank) = rref(&m, f(2));
        assert_eq!(rank, 1);
        assert_eq!(r.to_rows(), vec![vec![1, 1]]);
    }

    #[test]
    fn identity_is_fixed() {
        let (r, rank) = rref(&Matrix::identity(3), f(5));
        assert_eq!(rank, 3);
        assert_eq!(r, Matrix::identity(3));
    }

    #[test]
    fn proportional_rows_over_f5() {
        // Hand elimination: scale the first row by 2^{-1} = 3, giving [1, 2];
        // the second row [1, 2] then cancels.
        let m = Matrix::from_rows(&[vec![2, 4], vec![1, 2]], f(5)).unwrap();
        let (r, rank) = rref(&m, f(5));
        assert_eq!(rank, 1);
        assert_eq!(r.to_rows(), vec![vec![1, 2]]);
    }

    #[test]
    fn rejects_unreduced_entries() {
        assert!(Matrix::from_rows(&[vec![5]], f(5)).is_err());
        let m = Matrix::from_rows_i64(&[vec![-1, 7]], f(5)).unwrap();
        assert_eq!(m.to_rows(), vec![vec![4, 2]]);
    }

    #[test]
    fn determinant_small() {
        let m = Matrix::from_rows_i64(&[vec![0, 1], vec![-1, 0]], f(7)).unwrap();
        assert_eq!(m.determinant(f(7)).unwrap(), 1);
        let s = Matrix::from_rows_i64(&[vec![1, 2], vec![2, 4]], f(7)).unwrap();
        assert_eq!(s.determinant(f(7)).unwrap(), 0);
    }

    #[test]
    fn product_shape_mismatch() {
        let a = Matrix::zeros(2, 3);
        assert!(a.mul(&a, f(3)).is_err());
    }
}
