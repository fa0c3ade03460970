use nilpotent_core::FormKind;
use serde::Serialize;

use crate::roots::combo;
use crate::{build_roots, FlagShape, IdealError, IdealSequence, Root};

/// The smallest ideal of the parabolic containing a root space, as a flag sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ElementaryIdeal {
    /// The ideal equals i_c.
    Single { c: IdealSequence },
    /// The ideal is not of the form i_c by itself; its sum with the ideal of `partner`
    /// is i_c.
    Pair { partner: Root, c: IdealSequence },
}

impl ElementaryIdeal {
    pub fn c(&self) -> &IdealSequence {
        match self {
            ElementaryIdeal::Single { c } | ElementaryIdeal::Pair { c, .. } => c,
        }
    }
}

/// Shape of a root in ε-coordinates, with 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RootForm {
    /// ±(ε_i − ε_j), i < j; the flag says which sign.
    Diff(usize, usize, bool),
    /// ±(ε_i + ε_j), i ≤ j (i = j is 2ε_i).
    Sum(usize, usize, bool),
    /// ±ε_i.
    Short(usize, bool),
}

fn classify(alpha: &[i32]) -> Option<RootForm> {
    let nz: Vec<(usize, i32)> = alpha.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i + 1, c)).collect();
    match nz.as_slice() {
        [(i, c)] if c.abs() == 2 => Some(RootForm::Sum(*i, *i, *c > 0)),
        [(i, c)] if c.abs() == 1 => Some(RootForm::Short(*i, *c > 0)),
        [(i, a), (j, b)] if a.abs() == 1 && b.abs() == 1 => {
            if a == b {
                Some(RootForm::Sum(*i, *j, *a > 0))
            } else {
                Some(RootForm::Diff(*i, *j, *a > 0))
            }
        }
        _ => None,
    }
}

/// Three-step sequence: 0 below `a`, `x` on [a, b), `y` from b on.
fn steps(len: usize, a: usize, x: usize, b: usize, y: usize) -> IdealSequence {
    (0..len)
        .map(|q| {
            if q < a {
                0
            } else if q < b {
                x
            } else {
                y
            }
        })
        .collect()
}

/// Flag sequence of the smallest ideal of the standard parabolic containing g_α.
///
/// α must be a positive root or a root of the Levi. In the even orthogonal case some
/// situations return [`ElementaryIdeal::Pair`]: α = ε_i − ε_n when d_{k−2} = n − 1, and
/// α = ±(ε_{n−1} ∓ ε_n) in a Levi factor next to the non-simple D_2 = A_1 × A_1 corner
/// (a last block {n−1, n}, or a block {n−1, n} ending in a Lagrangian), where the other
/// A_1 commutes with l_i.
pub fn elementary_ideal_sequence(alpha: &[i32], shape: &FlagShape) -> Result<ElementaryIdeal, IdealError> {
    shape.validate()?;
    shape.require_normalized()?;
    let roots = build_roots(shape.form, shape.m);
    if alpha.len() != roots.n || !roots.is_root(alpha) {
        return Err(IdealError::NotARoot(alpha.to_vec()));
    }
    let levi = roots.subsystem(&shape.levi_simple(&roots));
    let in_levi = levi.contains(alpha);
    if !in_levi && !roots.positive.contains(alpha) {
        return Err(IdealError::NotInParabolic(alpha.to_vec()));
    }
    let form = classify(alpha).ok_or_else(|| IdealError::NotARoot(alpha.to_vec()))?;
    let (k, n, len) = (shape.k(), shape.n(), shape.c_len());
    let p = |i: usize| shape.block_of(i);
    let single = |c| Ok(ElementaryIdeal::Single { c });

    if in_levi {
        let first = match form {
            RootForm::Diff(i, _, _) | RootForm::Sum(i, _, _) | RootForm::Short(i, _) => i,
        };
        let pb = p(first);
        if shape.form == FormKind::Linear {
            return single(steps(len, pb, pb, len, 0));
        }
        let c = steps(len, pb, pb, 2 * k - pb, 2 * k - pb);
        let d = &shape.d;
        let rank_two_last = pb == k && n - d[k - 1] == 2;
        let rank_one_before_lagrangian = pb + 1 == k && d[k - 1] == n && k >= 2 && d[k - 2] + 2 == n;
        if shape.is_even_orthogonal() && (rank_two_last || rank_one_before_lagrangian) {
            let partner = match form {
                RootForm::Diff(..) => combo(n, &[(n - 2, 1), (n - 1, 1)]),
                _ => combo(n, &[(n - 2, 1), (n - 1, -1)]),
            };
            return Ok(ElementaryIdeal::Pair { partner, c });
        }
        return single(c);
    }

    match (shape.form, form) {
        (FormKind::Linear, RootForm::Diff(i, j, true)) => single(steps(len, p(j), p(i), len, 0)),
        (_, RootForm::Diff(i, j, true)) => {
            let c = steps(len, p(j), p(i), 2 * k - p(i), 2 * k - p(j));
            let exceptional = shape.is_even_orthogonal() && k >= 2 && shape.d[k - 2] + 1 == n && j == n;
            if exceptional {
                Ok(ElementaryIdeal::Pair { partner: combo(n, &[(i - 1, 1), (n - 1, 1)]), c })
            } else {
                single(c)
            }
        }
        (_, RootForm::Sum(i, j, true)) => single(steps(len, 2 * k - p(j), p(i), 2 * k - p(i), p(j))),
        (FormKind::Symmetric, RootForm::Short(i, true)) => single(steps(len, k, p(i), 2 * k - p(i), k)),
        _ => Err(IdealError::NotInParabolic(alpha.to_vec())),
    }
}
