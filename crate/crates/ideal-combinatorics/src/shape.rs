use nilpotent_core::FormKind;
use serde::{Deserialize, Serialize};

use crate::{IdealError, RootDatum};

/// Dimensions of a partial flag.
///
/// Type A: d = (0 = d_0 < … < d_k = m), a flag of V with k steps.
/// Form types: d = (0 = d_0 < … < d_{k−1} ≤ n), an isotropic flag; the
/// completion then has 2k terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagShape {
    pub form: FormKind,
    pub m: usize,
    pub d: Vec<usize>,
}

impl FlagShape {
    pub fn new(form: FormKind, m: usize, d: Vec<usize>) -> Result<Self, IdealError> {
        let s = FlagShape { form, m, d };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), IdealError> {
        let bad = |reason: &str| Err(IdealError::BadShape(format!("{reason}: d = {:?}", self.d)));
        if self.d.first() != Some(&0) {
            return bad("d must start at 0");
        }
        if self.d.windows(2).any(|w| w[0] >= w[1]) {
            return bad("d must be strictly increasing");
        }
        if self.form == FormKind::Symplectic && self.m % 2 == 1 {
            return bad("symplectic space of odd dimension");
        }
        let last = *self.d.last().expect("nonempty");
        match self.form {
            FormKind::Linear if self.d.len() < 2 || last != self.m => bad("type A flags must end at m"),
            FormKind::Symplectic | FormKind::Symmetric if last > self.m / 2 => bad("isotropic dimension exceeds m/2"),
            _ => Ok(()),
        }
    }

    /// Number of ε-coordinates: m in type A, ⌊m/2⌋ otherwise.
    pub fn n(&self) -> usize {
        if self.form == FormKind::Linear {
            self.m
        } else {
            self.m / 2
        }
    }

    pub fn k(&self) -> usize {
        if self.form == FormKind::Linear {
            self.d.len() - 1
        } else {
            self.d.len()
        }
    }

    /// Length of an ideal sequence for this shape.
    pub fn c_len(&self) -> usize {
        if self.form == FormKind::Linear {
            self.k() + 1
        } else {
            2 * self.k()
        }
    }

    /// d_0..d_k, appending d_k = n for the form types.
    pub fn d_ext(&self) -> Vec<usize> {
        let mut d = self.d.clone();
        if self.form != FormKind::Linear {
            d.push(self.n());
        }
        d
    }

    /// The block p with d_{p−1} < i ≤ d_p, for 1 ≤ i ≤ n.
    pub fn block_of(&self, i: usize) -> usize {
        let d = self.d_ext();
        (1..d.len()).find(|&p| d[p - 1] < i && i <= d[p]).expect("index within 1..=n")
    }

    pub fn is_even_orthogonal(&self) -> bool {
        self.form == FormKind::Symmetric && self.m.is_multiple_of(2)
    }

    /// Whether the last isotropic subspace is Lagrangian in even orthogonal type, where the
    /// isotropic flag variety has two connected components.
    pub fn is_two_component(&self) -> bool {
        self.is_even_orthogonal() && self.d.last() == Some(&self.n()) && self.n() >= 1
    }

    /// Even orthogonal shapes with d_{k−1} = n−1 must be rewritten before the ideal
    /// classification applies.
    pub fn is_normalized(&self) -> bool {
        !(self.is_even_orthogonal() && self.n() >= 1 && self.d.len() >= 2 && *self.d.last().unwrap() == self.n() - 1)
    }

    pub fn require_normalized(&self) -> Result<(), IdealError> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(IdealError::Unnormalized(self.d.clone()))
        }
    }

    /// Indices (0-based into `roots.simple`) of the simple roots α_i with i ∉ {d_1..d_{k−1}}.
    pub fn levi_simple(&self, roots: &RootDatum) -> Vec<usize> {
        let cut: Vec<usize> = self.d.iter().copied().filter(|&x| x > 0).collect();
        (0..roots.simple.len()).filter(|&i| !cut.contains(&(i + 1))).collect()
    }

    /// Simple roots of the Levi of the stabilizer of a flag of this shape. Differs from
    /// [`FlagShape::levi_simple`] only for unnormalized even orthogonal shapes, whose
    /// stabilizer also drops α_n.
    pub fn stabilizer_levi_simple(&self, roots: &RootDatum) -> Vec<usize> {
        let mut s = self.levi_simple(roots);
        if !self.is_normalized() {
            let last = roots.simple.len() - 1;
            s.retain(|&i| i != last);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_roots;

    #[test]
    fn shape_bounds() {
        assert!(FlagShape::new(FormKind::Linear, 4, vec![0, 2, 4]).is_ok());
        assert!(FlagShape::new(FormKind::Linear, 4, vec![0, 2]).is_err());
        assert!(FlagShape::new(FormKind::Symplectic, 4, vec![0, 1, 2]).is_ok());
        assert!(FlagShape::new(FormKind::Symplectic, 4, vec![0, 3]).is_err());
        assert!(FlagShape::new(FormKind::Symmetric, 5, vec![0, 2, 1]).is_err());
        assert!(FlagShape::new(FormKind::Symmetric, 5, vec![1]).is_err());
    }

    #[test]
    fn blocks_and_levi() {
        let s = FlagShape::new(FormKind::Symplectic, 6, vec![0, 1]).unwrap();
        assert_eq!(s.k(), 2);
        assert_eq!(s.c_len(), 4);
        assert_eq!((s.block_of(1), s.block_of(2), s.block_of(3)), (1, 2, 2));
        let r = build_roots(FormKind::Symplectic, 6);
        assert_eq!(s.levi_simple(&r), vec![1, 2]);
    }

    #[test]
    fn even_orthogonal_flags() {
        let s = FlagShape::new(FormKind::Symmetric, 6, vec![0, 2]).unwrap();
        assert!(!s.is_normalized());
        let r = build_roots(FormKind::Symmetric, 6);
        assert_eq!(s.levi_simple(&r), vec![0, 2]);
        assert_eq!(s.stabilizer_levi_simple(&r), vec![0]);
        let l = FlagShape::new(FormKind::Symmetric, 6, vec![0, 3]).unwrap();
        assert!(l.is_two_component() && l.is_normalized());
    }
}
