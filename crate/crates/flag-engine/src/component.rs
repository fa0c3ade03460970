use ff_linalg::{odd_primes, EchelonSubspace, PrimeField};
use nilpotent_core::NilpotentRealization;

use crate::FlagError;

/// A Lagrangian subspace W_ref defined uniformly in q where possible: the span of the
/// positive-weight vectors plus a Lagrangian of the weight-zero space.
///
/// Weight-zero vectors v_a, v_b with ω(v_a, v_a) = −ω(v_b, v_b) contribute v_a + v_b;
/// leftover pairs with equal values contribute v_a + x v_b with x² = −1. When that fails
/// (no such x, or a non-diagonal weight-zero form), the first isotropic subspace of the
/// weight-zero space in enumeration order is used. Returns `None` when the form is odd
/// dimensional or has no Lagrangian over F_q.
pub fn reference_lagrangian(
    realization: &NilpotentRealization,
    field: PrimeField,
) -> Result<Option<EchelonSubspace>, FlagError> {
    let m = realization.m();
    let Some(gram) = realization.gram() else {
        return Ok(None);
    };
    if m % 2 == 1 {
        return Ok(None);
    }
    let mut vectors: Vec<Vec<u32>> = Vec::new();
    let unit = |a: usize| {
        let mut v = vec![0u32; m];
        v[a] = 1;
        v
    };
    for a in 0..m {
        if realization.weight_of(a) > 0 {
            vectors.push(unit(a));
        }
    }
    let zero = realization.coords_of_weight(0);
    let diagonal = zero.iter().all(|&a| zero.iter().all(|&b| a == b || gram[a][b] == 0));
    let positive = vectors.len();
    if diagonal {
        let mut left: Vec<usize> = zero.clone();
        while let Some(a) = left.first().copied() {
            left.remove(0);
            let ga = gram[a][a];
            let pick = left.iter().position(|&b| gram[b][b] == -ga).or(if left.is_empty() { None } else { Some(0) });
            let Some(i) = pick else {
                break;
            };
            let b = left.remove(i);
            let x = if gram[b][b] == -ga {
                1
            } else {
                match (1..field.q()).find(|&x| field.mul(x, x) == field.neg(1)) {
                    Some(x) => x,
                    None => break,
                }
            };
            let mut v = unit(a);
            v[b] = x;
            vectors.push(v);
        }
    }
    if vectors.len() < m / 2 {
        vectors.truncate(positive);
        let form = realization.form_mod(field).expect("has a form")?;
        let sub = ff_linalg::SubspaceIter::new(zero.len(), zero.len() / 2, field)?
            .map(|s| {
                let rows: Vec<Vec<u32>> = s
                    .basis()
                    .to_rows()
                    .into_iter()
                    .map(|row| {
                        let mut v = vec![0u32; m];
                        for (i, &a) in zero.iter().enumerate() {
                            v[a] = row[i];
                        }
                        v
                    })
                    .collect();
                EchelonSubspace::span_vectors(m, &rows, field).expect("consistent")
            })
            .find(|s| form.is_isotropic(s));
        match sub {
            Some(s) => vectors.extend(s.basis().to_rows()),
            None => return Ok(None),
        }
    }
    Ok(Some(EchelonSubspace::span_vectors(m, &vectors, field)?))
}

/// True for the component of W_ref: dim(W ∩ W_ref) ≡ m/2 (mod 2).
pub fn component_sign(realization: &NilpotentRealization, w: &EchelonSubspace) -> Result<bool, FlagError> {
    let field = w.field();
    let reference = reference_lagrangian(realization, field)?
        .ok_or_else(|| FlagError::UnusableField(field.q(), "the form has no Lagrangian subspace".into()))?;
    Ok(sign_against(&reference, w, realization.m() / 2))
}

pub(crate) fn sign_against(reference: &EchelonSubspace, w: &EchelonSubspace, n: usize) -> bool {
    let d = reference.intersect(w).expect("same space").dim();
    d % 2 == n % 2
}

/// Odd primes over which the form of the realization is split, in increasing order.
/// With a form only q ≡ 1 (mod 4) qualify: the Gram entries are ±1, so every block of e
/// then has a square pairing scalar and the F_q-form of (form, e) does not depend on signs.
/// At q ≡ 3 (mod 4) a realization can be a twisted form, e.g. the [2, 2] left in Sp_4
/// after trimming [4, 2] has 3 graded e-stable Lagrangians at q ≡ 1 and 1 at q ≡ 3.
pub fn split_primes(realization: &NilpotentRealization) -> impl Iterator<Item = u64> + '_ {
    let form = realization.form().has_form();
    odd_primes().filter(move |&q| !form || q % 4 == 1).filter(move |&q| {
        let field = PrimeField::new(q).expect("prime");
        match realization.form_mod(field) {
            None => true,
            Some(Ok(form)) => form.is_split(),
            Some(Err(_)) => false,
        }
    })
}
