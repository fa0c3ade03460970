use ff_linalg::{EchelonSubspace, Matrix, PrimeField};
use nilpotent_core::FormKind;
use std::collections::BTreeSet;

use crate::{build_roots, FlagShape, IdealError, Root};

/// The standard coordinates u_1..u_n, (u_0), u_{−n}..u_{−1} in which the torus is
/// diagonal and the standard flag is spanned by initial segments.
///
/// ω(u_i, u_{−i}) = 1, ω(u_{−i}, u_i) = ±1 and ω(u_0, u_0) = 1. In type A the
/// coordinates are u_1..u_m with no form.
#[derive(Clone, Debug)]
pub struct StandardModel {
    form: FormKind,
    m: usize,
    n: usize,
}

impl StandardModel {
    pub fn new(form: FormKind, m: usize) -> Self {
        let n = if form == FormKind::Linear { m } else { m / 2 };
        StandardModel { form, m, n }
    }

    /// Torus weight of coordinate `a` in ε-coordinates.
    pub fn weight(&self, a: usize) -> Root {
        let mut w = vec![0; self.n];
        if self.form == FormKind::Linear || a < self.n {
            w[a] = 1;
        } else if a >= self.m - self.n {
            w[self.m - 1 - a] = -1;
        }
        w
    }

    fn partner(&self, a: usize) -> usize {
        self.m - 1 - a
    }

    fn pairing(&self, a: usize) -> i64 {
        if self.form == FormKind::Symplectic && a >= self.n {
            -1
        } else {
            1
        }
    }

    pub fn gram(&self, field: PrimeField) -> Option<Matrix> {
        if self.form == FormKind::Linear {
            return None;
        }
        let mut g = Matrix::zeros(self.m, self.m);
        for a in 0..self.m {
            g.set(a, self.partner(a), field.reduce(self.pairing(a)));
        }
        Some(g)
    }

    /// A nonzero element of g_β acting on column vectors.
    pub fn root_vector(&self, beta: &[i32], field: PrimeField) -> Option<Matrix> {
        let weights: Vec<Root> = (0..self.m).map(|a| self.weight(a)).collect();
        for a in 0..self.m {
            for b in 0..self.m {
                let diff: Root = weights[b].iter().zip(&weights[a]).map(|(x, y)| x - y).collect();
                if diff != beta {
                    continue;
                }
                // E_{b,a} sends u_a to u_b.
                let mut x = Matrix::zeros(self.m, self.m);
                x.set(b, a, 1);
                if self.form != FormKind::Linear {
                    let (a_star, b_star) = (self.partner(a), self.partner(b));
                    if a_star == b {
                        return Some(x);
                    }
                    let s = -self.pairing(b) * self.pairing(a);
                    x.set(a_star, b_star, field.reduce(s));
                }
                return Some(x);
            }
        }
        None
    }

    /// Standard flag of the given shape, completed by orthogonal complements.
    pub fn standard_chain(&self, shape: &FlagShape, field: PrimeField) -> Vec<EchelonSubspace> {
        let span = |upto: usize| EchelonSubspace::coordinate(self.m, &(0..upto).collect::<Vec<_>>(), field);
        if self.form == FormKind::Linear {
            return shape.d.iter().map(|&dp| span(dp)).collect();
        }
        let k = shape.k();
        (0..2 * k).map(|p| if p < k { span(shape.d[p]) } else { span(self.m - shape.d[2 * k - 1 - p]) }).collect()
    }
}

/// Whether x maps every chain[p] into chain[c_p].
pub fn membership_test(x: &Matrix, chain: &[EchelonSubspace], c: &[usize]) -> Result<bool, IdealError> {
    if chain.len() != c.len() {
        return Err(IdealError::Length { expected: chain.len(), found: c.len() });
    }
    for (p, v) in chain.iter().enumerate() {
        if c[p] >= chain.len() {
            return Err(IdealError::Bound { index: p, value: c[p] });
        }
        let img = v.image_under(x).map_err(IdealError::Linalg)?;
        if !chain[c[p]].contains(&img) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Roots β with g_β ⊆ i_c for the standard flag of `shape`.
pub fn ideal_root_support(shape: &FlagShape, c: &[usize], field: PrimeField) -> Result<BTreeSet<Root>, IdealError> {
    shape.validate()?;
    crate::validate_c(c, shape.c_len())?;
    let model = StandardModel::new(shape.form, shape.m);
    let chain = model.standard_chain(shape, field);
    let roots = build_roots(shape.form, shape.m);
    let mut out = BTreeSet::new();
    for beta in &roots.roots {
        let x = model.root_vector(beta, field).expect("every root has a root vector");
        if membership_test(&x, &chain, c)? {
            out.insert(beta.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ff_linalg::BilinearForm;

    fn f() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn root_vectors_are_antiadjoint() {
        for (form, m) in [(FormKind::Symplectic, 6), (FormKind::Symmetric, 7), (FormKind::Symmetric, 6)] {
            let model = StandardModel::new(form, m);
            let g = model.gram(f()).unwrap();
            assert!(BilinearForm::new(g.clone(), f()).is_ok());
            for beta in &build_roots(form, m).roots {
                let x = model.root_vector(beta, f()).unwrap();
                let s = x.transpose().mul(&g, f()).unwrap().add(&g.mul(&x, f()).unwrap(), f()).unwrap();
                assert!(s.is_zero(), "{form:?} {beta:?}");
            }
        }
    }

    #[test]
    fn borel_support_is_positive_roots_plus_nothing() {
        let s = FlagShape::new(FormKind::Symplectic, 4, vec![0, 1, 2]).unwrap();
        let supp = ideal_root_support(&s, &[0, 1, 2, 3, 4, 5], f()).unwrap();
        assert_eq!(supp, build_roots(FormKind::Symplectic, 4).positive);
    }

    #[test]
    fn zero_map_is_in_every_ideal() {
        let s = FlagShape::new(FormKind::Symplectic, 4, vec![0, 1]).unwrap();
        let model = StandardModel::new(s.form, s.m);
        let chain = model.standard_chain(&s, f());
        assert!(membership_test(&Matrix::zeros(4, 4), &chain, &[0, 0, 0, 0]).unwrap());
        assert!(membership_test(&Matrix::zeros(4, 4), &chain, &[0, 0]).is_err());
    }
}
