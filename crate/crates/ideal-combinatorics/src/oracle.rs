use std::collections::BTreeSet;

use crate::roots::{add, inner};
use crate::{build_roots, FlagShape, IdealError, Root};

/// Root support of the smallest ideal containing g_α, by brute force.
///
/// For α outside the Levi this is the closure of {α} under adding roots of the
/// parabolic while staying in Φ. For α in a simple Levi factor l_i it is the roots of
/// l_i together with the positive roots outside the subsystem spanned by I_i and the
/// simple roots orthogonal to I_i.
pub fn ideal_closure_oracle(alpha: &[i32], shape: &FlagShape) -> Result<BTreeSet<Root>, IdealError> {
    shape.validate()?;
    let roots = build_roots(shape.form, shape.m);
    if !roots.is_root(alpha) {
        return Err(IdealError::NotARoot(alpha.to_vec()));
    }
    let levi_simple = shape.levi_simple(&roots);
    let levi = roots.subsystem(&levi_simple);
    if levi.contains(alpha) {
        for comp in roots.components(&levi_simple) {
            let sub = roots.subsystem(&comp);
            if !sub.contains(alpha) {
                continue;
            }
            let perp: Vec<usize> = (0..roots.simple.len())
                .filter(|&b| comp.iter().all(|&g| inner(&roots.simple[b], &roots.simple[g]) == 0))
                .collect();
            let big: Vec<usize> = comp.iter().chain(&perp).copied().collect();
            let excluded = roots.subsystem(&big);
            let mut out = sub;
            out.extend(roots.positive.iter().filter(|r| !excluded.contains(*r)).cloned());
            return Ok(out);
        }
        unreachable!("a Levi root lies in some simple factor");
    }
    if !roots.positive.contains(alpha) {
        return Err(IdealError::NotInParabolic(alpha.to_vec()));
    }
    let parabolic: Vec<Root> = roots.positive.iter().chain(levi.iter()).cloned().collect();
    let mut set: BTreeSet<Root> = BTreeSet::from([alpha.to_vec()]);
    let mut frontier = vec![alpha.to_vec()];
    while let Some(b) = frontier.pop() {
        for g in &parabolic {
            let s = add(&b, g);
            if roots.is_root(&s) && set.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nilpotent_core::FormKind;

    #[test]
    fn borel_examples() {
        let a = FlagShape::new(FormKind::Linear, 3, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(ideal_closure_oracle(&[1, 0, -1], &a).unwrap(), BTreeSet::from([vec![1, 0, -1]]));
        assert_eq!(ideal_closure_oracle(&[0, 1, -1], &a).unwrap(), BTreeSet::from([vec![0, 1, -1], vec![1, 0, -1]]));
        let c = FlagShape::new(FormKind::Symplectic, 4, vec![0, 1, 2]).unwrap();
        assert_eq!(ideal_closure_oracle(&[0, 2], &c).unwrap(), BTreeSet::from([vec![0, 2], vec![1, 1], vec![2, 0]]));
    }
}
