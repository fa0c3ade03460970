use ff_linalg::PrimeField;
use ideal_combinatorics::{all_valid_c, dual_c, ideal_root_support, is_self_dual, max_c, validate_c, FlagShape};
use nilpotent_core::FormKind;
use proptest::prelude::*;

#[test]
fn dual_is_an_involution_on_valid_sequences() {
    for k in 1..=4 {
        for c in all_valid_c(2 * k) {
            let d = dual_c(&c, k).unwrap();
            validate_c(&d, 2 * k).unwrap();
            assert_eq!(dual_c(&d, k).unwrap(), c, "k={k} c={c:?}");
        }
    }
}

#[test]
fn max_preserves_self_duality() {
    for k in 1..=3 {
        let self_dual: Vec<_> = all_valid_c(2 * k).into_iter().filter(|c| is_self_dual(c)).collect();
        assert!(!self_dual.is_empty());
        for a in &self_dual {
            for b in &self_dual {
                let m = max_c(a, b).unwrap();
                assert!(is_self_dual(&m), "{a:?} {b:?} -> {m:?}");
            }
        }
    }
}

#[test]
fn sum_of_ideals_is_ideal_of_max() {
    let f = PrimeField::new(5).unwrap();
    for (form, m, d) in [
        (FormKind::Symplectic, 4, vec![0, 1]),
        (FormKind::Symplectic, 6, vec![0, 1, 3]),
        (FormKind::Symmetric, 7, vec![0, 2]),
        (FormKind::Linear, 4, vec![0, 1, 3, 4]),
    ] {
        let shape = FlagShape::new(form, m, d).unwrap();
        let seqs: Vec<_> =
            all_valid_c(shape.c_len()).into_iter().filter(|c| form == FormKind::Linear || is_self_dual(c)).collect();
        for a in &seqs {
            for b in &seqs {
                let mut union = ideal_root_support(&shape, a, f).unwrap();
                union.extend(ideal_root_support(&shape, b, f).unwrap());
                let joint = ideal_root_support(&shape, &max_c(a, b).unwrap(), f).unwrap();
                assert_eq!(union, joint, "{:?} {a:?} {b:?}", shape.d);
            }
        }
    }
}

fn valid_sequence(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_len).prop_flat_map(move |len| {
        prop::collection::vec(0usize..=max_len, len).prop_map(|raw| {
            let mut c = Vec::with_capacity(raw.len());
            for (p, r) in raw.into_iter().enumerate() {
                let lo = if p == 0 { 0 } else { c[p - 1] };
                c.push(if p == 0 { 0 } else { lo + r % (p - lo + 1) });
            }
            c
        })
    })
}

proptest! {
    #[test]
    fn dual_output_is_valid(c in valid_sequence(12).prop_filter("even length", |c| c.len() % 2 == 0)) {
        let k = c.len() / 2;
        let d = dual_c(&c, k).unwrap();
        prop_assert!(validate_c(&d, 2 * k).is_ok());
        prop_assert_eq!(dual_c(&d, k).unwrap(), c);
    }

    #[test]
    fn max_is_valid_and_idempotent(a in valid_sequence(8), b in valid_sequence(8)) {
        let len = a.len().min(b.len());
        let (a, b) = (&a[..len], &b[..len]);
        let m = max_c(a, b).unwrap();
        prop_assert!(validate_c(&m, len).is_ok());
        prop_assert_eq!(max_c(&m, &m).unwrap(), m.clone());
        prop_assert_eq!(max_c(b, a).unwrap(), m);
    }
}
