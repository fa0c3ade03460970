use crate::{EchelonSubspace, LinalgError, Matrix, PrimeField};

/// Iterator over all `dim`-dimensional subspaces of F_q^n.
///
/// Order: pivot sets in lexicographic order, then free entries as an odometer
/// whose last position turns fastest.
#[derive(Clone, Debug)]
pub struct SubspaceIter {
    n: usize,
    k: usize,
    field: PrimeField,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    values: Vec<u32>,
    done: bool,
}

impl SubspaceIter {
    pub fn new(n: usize, k: usize, field: PrimeField) -> Result<Self, LinalgError> {
        if k > n {
            return Err(LinalgError::DimensionOutOfRange { dim: k, ambient: n });
        }
        let pivots: Vec<usize> = (0..k).collect();
        let free = free_positions(n, &pivots);
        let values = vec![0; free.len()];
        Ok(SubspaceIter { n, k, field, pivots, free, values, done: false })
    }

    fn current(&self) -> EchelonSubspace {
        let mut rows = vec![vec![0u32; self.n]; self.k];
        for (r, &p) in self.pivots.iter().enumerate() {
            rows[r][p] = 1;
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.values) {
            rows[r][c] = v;
        }
        EchelonSubspace::span_vectors(self.n, &rows, self.field).expect("well formed")
    }

    fn advance(&mut self) {
        let q = self.field.q();
        for v in self.values.iter_mut().rev() {
            *v += 1;
            if *v < q {
                return;
            }
            *v = 0;
        }
        if !next_combination(&mut self.pivots, self.n) {
            self.done = true;
            return;
        }
        self.free = free_positions(self.n, &self.pivots);
        self.values = vec![0; self.free.len()];
    }
}

impl Iterator for SubspaceIter {
    type Item = EchelonSubspace;

    fn next(&mut self) -> Option<EchelonSubspace> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                out.push((r, c));
            }
        }
    }
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All `dim`-dimensional subspaces of F_q^n accepted by `filter`.
pub fn enumerate_subspaces<F>(
    ambient_dim: usize,
    dim: usize,
    field: PrimeField,
    filter: F,
) -> Result<impl Iterator<Item = EchelonSubspace>, LinalgError>
where
    F: FnMut(&EchelonSubspace) -> bool,
{
    Ok(SubspaceIter::new(ambient_dim, dim, field)?.filter(filter))
}

/// All subspaces X with `lower ⊆ X ⊆ upper` and dim X = `dim`.
pub fn enumerate_between(
    lower: &EchelonSubspace,
    upper: &EchelonSubspace,
    dim: usize,
) -> Result<impl Iterator<Item = EchelonSubspace>, LinalgError> {
    let comp = upper.complement_basis(lower)?;
    if dim < lower.dim() || dim > upper.dim() {
        return Err(LinalgError::DimensionOutOfRange { dim, ambient: upper.dim() });
    }
    let field = lower.field();
    let n = lower.ambient_dim();
    let r = comp.len();
    let comp_rows: Vec<Vec<u64>> = comp.iter().map(|v| v.iter().map(|&x| x as u64).collect()).collect();
    let lower_rows = lower.basis().to_rows();
    let q = field.q() as u64;
    Ok(SubspaceIter::new(r, dim - lower.dim(), field)?.map(move |x| {
        let mut rows = lower_rows.clone();
        for i in 0..x.dim() {
            let coeffs = x.basis().row(i);
            let mut v = vec![0u64; n];
            for (a, crow) in coeffs.iter().zip(&comp_rows) {
                if *a == 0 {
                    continue;
                }
                for (vj, &cj) in v.iter_mut().zip(crow) {
                    *vj = (*vj + *a as u64 * cj) % q;
                }
            }
            rows.push(v.into_iter().map(|x| x as u32).collect());
        }
        EchelonSubspace::span_vectors(n, &rows, field).expect("consistent")
    }))
}

/// Gaussian binomial [n choose k]_q.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Matrix whose rows are the given vectors.
pub fn matrix_of_rows(rows: &[Vec<u32>], cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            m.set(r, c, x);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn lines_in_f2_cubed() {
        assert_eq!(enumerate_subspaces(3, 1, f(2), |_| true).unwrap().count(), 7);
    }

    #[test]
    fn lines_in_f3_squared() {
        assert_eq!(enumerate_subspaces(2, 1, f(3), |_| true).unwrap().count(), 4);
    }

    #[test]
    fn planes_in_f2_fourth() {
        // Independent count: ordered pairs of independent vectors (15·14) divided by
        // |GL_2(F_2)| = 6.
        let oracle = (15 * 14) / 6;
        assert_eq!(oracle, 35);
        let all: Vec<_> = enumerate_subspaces(4, 2, f(2), |_| true).unwrap().collect();
        assert_eq!(all.len(), oracle);
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), oracle);
    }

    #[test]
    fn out_of_range() {
        assert!(SubspaceIter::new(2, 3, f(3)).is_err());
    }

    #[test]
    fn between_counts() {
        let fld = f(3);
        let lower = EchelonSubspace::coordinate(4, &[0], fld);
        let upper = EchelonSubspace::coordinate(4, &[0, 1, 2], fld);
        let xs: Vec<_> = enumerate_between(&lower, &upper, 2).unwrap().collect();
        assert_eq!(xs.len(), 4);
        assert!(xs.iter().all(|x| x.contains(&lower) && upper.contains(x)));
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(5, 0, 5), 1);
    }
}
