use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::NilpotentError;

/// The form preserved by the ambient classical group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormKind {
    /// No form: gl_m (type A).
    #[serde(rename = "A")]
    Linear,
    /// Alternating form: sp_m (type C).
    #[serde(rename = "C")]
    Symplectic,
    /// Symmetric form: so_m (type B for odd m, D for even m).
    #[serde(rename = "BD")]
    Symmetric,
}

impl FormKind {
    pub fn has_form(self) -> bool {
        self != FormKind::Linear
    }
}

/// A nilpotent orbit: a form kind and the Jordan block sizes, weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JordanDatum {
    pub form: FormKind,
    pub parts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Valid,
    Invalid(String),
}

impl Admissibility {
    pub fn is_valid(&self) -> bool {
        matches!(self, Admissibility::Valid)
    }
}

fn multiplicities(parts: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &p in parts {
        *m.entry(p).or_insert(0) += 1;
    }
    m
}

/// Checks that the partition is well formed and that each part size of the
/// constrained parity occurs an even number of times.
pub fn validate_jordan(form: FormKind, parts: &[usize]) -> Result<Admissibility, NilpotentError> {
    if parts.is_empty() {
        return Err(NilpotentError::EmptyPartition);
    }
    if parts.contains(&0) {
        return Err(NilpotentError::ZeroPart);
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(NilpotentError::NotDecreasing(parts.to_vec()));
    }
    let constrained_parity = match form {
        FormKind::Linear => return Ok(Admissibility::Valid),
        FormKind::Symplectic => 1,
        FormKind::Symmetric => 0,
    };
    for (size, mult) in multiplicities(parts) {
        if size % 2 == constrained_parity && mult % 2 == 1 {
            let kind = if constrained_parity == 1 { "odd" } else { "even" };
            return Ok(Admissibility::Invalid(format!(
                "{kind} part {size} occurs {mult} times, expected an even number"
            )));
        }
    }
    Ok(Admissibility::Valid)
}

impl JordanDatum {
    /// Validated constructor.
    pub fn new(form: FormKind, parts: Vec<usize>) -> Result<Self, NilpotentError> {
        match validate_jordan(form, &parts)? {
            Admissibility::Valid => Ok(JordanDatum { form, parts }),
            Admissibility::Invalid(reason) => Err(NilpotentError::Inadmissible(reason)),
        }
    }

    /// Re-runs validation, e.g. after deserialization.
    pub fn validated(self) -> Result<Self, NilpotentError> {
        JordanDatum::new(self.form, self.parts)
    }

    pub fn m(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_regular(&self) -> bool {
        self.parts.len() == 1
    }
}

/// Whether e lies in no proper Levi subalgebra.
pub fn is_distinguished(d: &JordanDatum) -> bool {
    let distinct = d.parts.windows(2).all(|w| w[0] != w[1]);
    match d.form {
        FormKind::Linear => d.parts.len() == 1,
        FormKind::Symplectic => distinct && d.parts.iter().all(|p| p % 2 == 0),
        FormKind::Symmetric => distinct && d.parts.iter().all(|p| p % 2 == 1),
    }
}

/// Splits off a minimal Levi subalgebra containing e as a distinguished element.
///
/// Each pair of equal parts of size k becomes one GL_k factor, recorded once in
/// the returned multiset; what remains is the core. In type A there is no pairing:
/// every block is its own GL factor and the core is empty.
pub fn minimal_levi(d: &JordanDatum) -> (Vec<usize>, JordanDatum) {
    if d.form == FormKind::Linear {
        return (d.parts.clone(), JordanDatum { form: d.form, parts: Vec::new() });
    }
    let mut gl = Vec::new();
    let mut core = Vec::new();
    for (size, mult) in multiplicities(&d.parts).into_iter().rev() {
        gl.extend(std::iter::repeat_n(size, mult / 2));
        if mult % 2 == 1 {
            core.push(size);
        }
    }
    (gl, JordanDatum { form: d.form, parts: core })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility_examples() {
        assert!(validate_jordan(FormKind::Symplectic, &[4, 2]).unwrap().is_valid());
        assert!(!validate_jordan(FormKind::Symplectic, &[3, 1]).unwrap().is_valid());
        assert!(validate_jordan(FormKind::Symmetric, &[3, 3, 1]).unwrap().is_valid());
        assert!(!validate_jordan(FormKind::Symmetric, &[2, 1]).unwrap().is_valid());
        assert!(validate_jordan(FormKind::Linear, &[2, 1]).unwrap().is_valid());
    }

    #[test]
    fn malformed_partitions() {
        assert_eq!(validate_jordan(FormKind::Linear, &[]), Err(NilpotentError::EmptyPartition));
        assert!(validate_jordan(FormKind::Linear, &[1, 2]).is_err());
        assert!(validate_jordan(FormKind::Linear, &[2, 0]).is_err());
    }

    #[test]
    fn distinguished_examples() {
        let d = |form, parts: &[usize]| JordanDatum::new(form, parts.to_vec()).unwrap();
        assert!(is_distinguished(&d(FormKind::Symplectic, &[4, 2])));
        assert!(is_distinguished(&d(FormKind::Symmetric, &[5, 3])));
        assert!(!is_distinguished(&d(FormKind::Symmetric, &[3, 3, 1])));
        assert!(!is_distinguished(&d(FormKind::Symplectic, &[2, 2])));
        assert!(is_distinguished(&d(FormKind::Linear, &[3])));
        assert!(!is_distinguished(&d(FormKind::Linear, &[2, 1])));
    }

    #[test]
    fn levi_examples() {
        let (gl, core) = minimal_levi(&JordanDatum::new(FormKind::Symplectic, vec![4, 2, 2]).unwrap());
        assert_eq!(gl, vec![2]);
        assert_eq!(core.parts, vec![4]);

        let d = JordanDatum::new(FormKind::Symplectic, vec![4, 2]).unwrap();
        let (gl, core) = minimal_levi(&d);
        assert!(gl.is_empty());
        assert_eq!(core, d);

        let (gl, core) = minimal_levi(&JordanDatum::new(FormKind::Symmetric, vec![3, 3]).unwrap());
        assert_eq!(gl, vec![3]);
        assert!(core.parts.is_empty());
    }

    #[test]
    fn serde_tags() {
        let d = JordanDatum::new(FormKind::Symmetric, vec![3, 1]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"form":"BD","parts":[3,1]}"#);
        let back: JordanDatum = serde_json::from_str(r#"{"form":"C","parts":[2]}"#).unwrap();
        assert_eq!(back.form, FormKind::Symplectic);
    }
}
