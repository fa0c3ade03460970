use std::collections::BTreeSet;

use ff_linalg::{EchelonSubspace, Matrix, PrimeField};
use ideal_combinatorics::{
    build_roots, dual_c, elementary_ideal_sequence, ideal_closure_oracle, ideal_root_support, is_self_dual,
    ElementaryIdeal, FlagShape, Root, StandardModel,
};
use nilpotent_core::FormKind;

fn field() -> PrimeField {
    PrimeField::new(11).unwrap()
}

/// Every flag shape of the given type and ambient dimension.
fn shapes(form: FormKind, m: usize) -> Vec<FlagShape> {
    let (top, cut_max) = if form == FormKind::Linear { (m, m - 1) } else { (m / 2, m / 2) };
    let mut out = Vec::new();
    for mask in 0u32..(1 << cut_max) {
        let mut d = vec![0];
        d.extend((1..=cut_max).filter(|i| mask & (1 << (i - 1)) != 0));
        if form == FormKind::Linear {
            d.push(top);
        }
        out.push(FlagShape::new(form, m, d).unwrap());
    }
    out
}

fn cases() -> Vec<(FormKind, usize)> {
    vec![
        (FormKind::Linear, 2),
        (FormKind::Linear, 3),
        (FormKind::Linear, 4),
        (FormKind::Symplectic, 2),
        (FormKind::Symplectic, 4),
        (FormKind::Symplectic, 6),
        (FormKind::Symmetric, 3),
        (FormKind::Symmetric, 5),
        (FormKind::Symmetric, 7),
        (FormKind::Symmetric, 4),
        (FormKind::Symmetric, 6),
    ]
}

fn parabolic_roots(shape: &FlagShape) -> Vec<Root> {
    let roots = build_roots(shape.form, shape.m);
    let levi = roots.subsystem(&shape.levi_simple(&roots));
    roots.positive.union(&levi).cloned().collect()
}

#[test]
fn sequence_support_matches_closure_oracle() {
    let mut checked = 0;
    let mut pairs = 0;
    for (form, m) in cases() {
        for shape in shapes(form, m).into_iter().filter(|s| s.is_normalized()) {
            for alpha in parabolic_roots(&shape) {
                let e = elementary_ideal_sequence(&alpha, &shape).unwrap();
                let support = ideal_root_support(&shape, e.c(), field()).unwrap();
                let oracle = ideal_closure_oracle(&alpha, &shape).unwrap();
                match &e {
                    ElementaryIdeal::Single { .. } => {
                        assert_eq!(support, oracle, "{form:?} m={m} d={:?} alpha={alpha:?}", shape.d)
                    }
                    ElementaryIdeal::Pair { partner, .. } => {
                        pairs += 1;
                        let joint: BTreeSet<Root> =
                            oracle.union(&ideal_closure_oracle(partner, &shape).unwrap()).cloned().collect();
                        assert_eq!(support, joint, "{form:?} m={m} d={:?} alpha={alpha:?}", shape.d);
                        assert_ne!(support, oracle);
                    }
                }
                if form != FormKind::Linear {
                    assert!(is_self_dual(e.c()), "{:?} {alpha:?} -> {:?}", shape.d, e.c());
                    assert_eq!(&dual_c(e.c(), shape.k()).unwrap(), e.c());
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 300, "{checked}");
    assert!(pairs > 0);
}

/// Span of the torus and the root vectors of the parabolic, as m×m matrices.
fn parabolic_basis(shape: &FlagShape, model: &StandardModel) -> Vec<Matrix> {
    let f = field();
    let m = shape.m;
    let mut basis: Vec<Matrix> = parabolic_roots(shape).iter().map(|r| model.root_vector(r, f).unwrap()).collect();
    for a in 0..m {
        let mut h = Matrix::zeros(m, m);
        h.set(a, a, 1);
        if shape.form == FormKind::Linear {
            if a + 1 == m {
                continue;
            }
            h.set(a + 1, a + 1, f.neg(1));
        } else {
            if a >= m / 2 {
                continue;
            }
            h.set(m - 1 - a, m - 1 - a, f.neg(1));
        }
        basis.push(h);
    }
    basis
}

fn flatten(x: &Matrix) -> Vec<u32> {
    x.to_rows().concat()
}

/// Root support of the span closure of g_α under brackets with the parabolic.
fn bracket_closure_support(alpha: &[i32], shape: &FlagShape) -> BTreeSet<Root> {
    let f = field();
    let m = shape.m;
    let model = StandardModel::new(shape.form, m);
    let p = parabolic_basis(shape, &model);
    let x = model.root_vector(alpha, f).unwrap();
    let mut span = EchelonSubspace::span_vectors(m * m, &[flatten(&x)], f).unwrap();
    let mut gens = vec![x];
    while let Some(y) = gens.pop() {
        for z in &p {
            let br = z.mul(&y, f).unwrap().add(&y.mul(z, f).unwrap().scale(f.neg(1), f), f).unwrap();
            let v = flatten(&br);
            if !span.contains_vector(&v) {
                span = span.with_vector(&v).unwrap();
                gens.push(br);
            }
        }
    }
    build_roots(shape.form, m)
        .roots
        .iter()
        .filter(|r| span.contains_vector(&flatten(&model.root_vector(r, f).unwrap())))
        .cloned()
        .collect()
}

#[test]
fn closure_oracle_matches_matrix_brackets() {
    for (form, m) in cases().into_iter().filter(|&(_, m)| m <= 6) {
        for shape in shapes(form, m) {
            for alpha in parabolic_roots(&shape) {
                let expected = bracket_closure_support(&alpha, &shape);
                assert_eq!(
                    ideal_closure_oracle(&alpha, &shape).unwrap(),
                    expected,
                    "{form:?} m={m} d={:?} alpha={alpha:?}",
                    shape.d
                );
            }
        }
    }
}
