use ff_linalg::{enumerate_subspaces, gaussian_binomial, rref, BilinearForm, EchelonSubspace, Matrix, PrimeField};
use proptest::prelude::*;

fn field(q: u64) -> PrimeField {
    PrimeField::new(q).unwrap()
}

fn matrix_strategy(max_rows: usize, cols: usize) -> impl Strategy<Value = (u64, Vec<Vec<i64>>)> {
    prop_oneof![Just(2u64), Just(3u64), Just(5u64), Just(7u64)].prop_flat_map(move |q| {
        (Just(q), prop::collection::vec(prop::collection::vec(0..q as i64, cols), 0..=max_rows))
    })
}

fn subspace_of(rows: &[Vec<i64>], cols: usize, f: PrimeField) -> EchelonSubspace {
    let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| f.reduce(x)).collect()).collect();
    EchelonSubspace::span_vectors(cols, &rows, f).unwrap()
}

#[test]
fn enumeration_matches_gaussian_binomials() {
    for q in [2u64, 3, 5] {
        for n in 0..=5 {
            for d in 0..=n {
                let count = enumerate_subspaces(n, d, field(q), |_| true).unwrap().count() as u128;
                assert_eq!(count, gaussian_binomial(n, d, q), "n={n} d={d} q={q}");
            }
        }
    }
}

#[test]
fn filter_restricts_stream() {
    let f = field(3);
    let e1 = vec![1, 0, 0];
    let n = enumerate_subspaces(3, 2, f, |s| s.contains_vector(&e1)).unwrap().count();
    // Planes through a fixed line correspond to lines in the 2-dim quotient.
    assert_eq!(n, 4);
}

/// Symplectic Gram on F^6 pairing coordinate i with 5 - i.
fn symplectic6(f: PrimeField) -> Matrix {
    let mut rows = vec![vec![0i64; 6]; 6];
    for i in 0..3 {
        rows[i][5 - i] = 1;
        rows[5 - i][i] = -1;
    }
    Matrix::from_rows_i64(&rows, f).unwrap()
}

fn symmetric5(f: PrimeField) -> Matrix {
    let mut rows = vec![vec![0i64; 5]; 5];
    for i in 0..5 {
        rows[i][4 - i] = if i == 2 { -1 } else { 1 };
    }
    Matrix::from_rows_i64(&rows, f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rref_is_idempotent((q, rows) in matrix_strategy(5, 4)) {
        let f = field(q);
        let m = if rows.is_empty() { Matrix::zeros(0, 4) } else { Matrix::from_rows_i64(&rows, f).unwrap() };
        let (r1, rank1) = rref(&m, f);
        let (r2, rank2) = rref(&r1, f);
        prop_assert_eq!(rank1, rank2);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(rank1, m.rank(f));
    }

    #[test]
    fn canonical_equality_agrees_with_containment(
        (q, a) in matrix_strategy(3, 4),
        b in prop::collection::vec(prop::collection::vec(0i64..7, 4), 0..=3),
        mix in prop::collection::vec(0i64..7, 9),
    ) {
        let f = field(q);
        let sa = subspace_of(&a, 4, f);
        // Half the time build b as a re-mixing of a's rows so equal pairs occur often.
        let sb = if mix[0] % 2 == 0 && !a.is_empty() {
            let mixed: Vec<Vec<i64>> = (0..a.len())
                .map(|i| (0..4).map(|c| (0..a.len()).map(|j| mix[(i * 3 + j) % 9] * a[j][c]).sum()).collect())
                .collect();
            subspace_of(&mixed, 4, f)
        } else {
            subspace_of(&b, 4, f)
        };
        let mutual = sa.contains(&sb) && sb.contains(&sa);
        prop_assert_eq!(sa == sb, mutual);
    }

    #[test]
    fn intersection_is_largest_common_subspace((q, a) in matrix_strategy(3, 4), b in prop::collection::vec(prop::collection::vec(0i64..7, 4), 0..=3)) {
        let f = field(q);
        let sa = subspace_of(&a, 4, f);
        let sb = subspace_of(&b, 4, f);
        let i = sa.intersect(&sb).unwrap();
        prop_assert!(sa.contains(&i) && sb.contains(&i));
        let s = sa.sum(&sb).unwrap();
        prop_assert_eq!(i.dim() + s.dim(), sa.dim() + sb.dim());
    }

    #[test]
    fn perp_reverses_inclusion_and_is_involutive(
        q in prop_oneof![Just(3u64), Just(5u64), Just(7u64)],
        a in prop::collection::vec(prop::collection::vec(0i64..7, 6), 0..=3),
        extra in prop::collection::vec(0i64..7, 6),
        symplectic in any::<bool>(),
    ) {
        let f = field(q);
        let (gram, n) = if symplectic { (symplectic6(f), 6) } else { (symmetric5(f), 5) };
        let form = BilinearForm::new(gram, f).unwrap();
        let trim = |v: &Vec<i64>| v[..n].to_vec();
        let small: Vec<Vec<i64>> = a.iter().map(trim).collect();
        let mut big_rows = small.clone();
        big_rows.push(trim(&extra));
        let sa = subspace_of(&small, n, f);
        let sb = subspace_of(&big_rows, n, f);
        let pa = form.perp(&sa).unwrap();
        let pb = form.perp(&sb).unwrap();
        prop_assert!(pa.contains(&pb));
        prop_assert_eq!(pa.dim(), n - sa.dim());
        prop_assert_eq!(form.perp(&pa).unwrap(), sa);
    }
}
