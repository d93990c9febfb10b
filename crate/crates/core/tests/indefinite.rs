use krein_core::exact::{ratio, FieldKind, GaussianRational, Matrix};
use krein_core::indefinite::{
    gram, h_adjoint, h_orthogonal_complement, indefinite_product, is_h_unitary, is_nondegenerate, signature,
    IndefiniteSpace, SubspaceBasis,
};
use proptest::prelude::*;

fn scalar(complex: bool) -> impl Strategy<Value = GaussianRational> {
    let part = (-4i64..=4, 1i64..=3).prop_map(|(a, b)| ratio(a, b));
    (part.clone(), part).prop_map(move |(re, im)| {
        if complex {
            GaussianRational::new(re, im)
        } else {
            GaussianRational::real(re)
        }
    })
}

fn field(complex: bool) -> FieldKind {
    if complex {
        FieldKind::Complex
    } else {
        FieldKind::Real
    }
}

fn matrix(n: usize, m: usize, complex: bool) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(scalar(complex), n * m)
        .prop_map(move |e| Matrix::from_rows(e.chunks(m).map(<[_]>::to_vec).collect(), field(complex)).unwrap())
}

/// Unit upper triangular, hence invertible.
fn unit_triangular(n: usize, complex: bool) -> impl Strategy<Value = Matrix> {
    matrix(n, n, complex).prop_map(move |mut m| {
        for i in 0..n {
            for j in 0..=i {
                m.set(i, j, if i == j { GaussianRational::one() } else { GaussianRational::zero() });
            }
        }
        m
    })
}

/// `P* D P` with `D = diag(±1)` and `P` unit triangular.
fn hermitian_form(n: usize, complex: bool) -> impl Strategy<Value = Matrix> {
    (unit_triangular(n, complex), prop::collection::vec(any::<bool>(), n)).prop_map(move |(p, signs)| {
        let d: Vec<_> = signs.iter().map(|&s| GaussianRational::from_int(if s { 1 } else { -1 })).collect();
        let d = Matrix::diagonal(&d, field(complex));
        &(&p.conj_transpose() * &d) * &p
    })
}

fn setup() -> impl Strategy<Value = (Matrix, Matrix, Matrix, Matrix)> {
    (1usize..=5, any::<bool>()).prop_flat_map(|(n, c)| {
        (hermitian_form(n, c), matrix(n, n, c), matrix(n, n, c), unit_triangular(n, c).prop_flat_map(move |u| {
            unit_triangular(n, c).prop_map(move |l| &l.transpose() * &u)
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn adjoint_is_an_involutive_antihomomorphism((h, a, b, _) in setup()) {
        let space = IndefiniteSpace::new(h).unwrap();
        let adj = |m: &Matrix| h_adjoint(m, &space).unwrap();
        prop_assert_eq!(&adj(&adj(&a)), &a);
        prop_assert_eq!(adj(&(&a * &b)), &adj(&b) * &adj(&a));
        prop_assert_eq!(adj(&(&a + &b)), &adj(&a) + &adj(&b));
    }

    #[test]
    fn adjoint_moves_across_the_product((h, a, b, _) in setup()) {
        let space = IndefiniteSpace::new(h).unwrap();
        let adj = h_adjoint(&a, &space).unwrap();
        let x = b.column(0);
        let y = b.column(b.cols() - 1);
        let lhs = indefinite_product(&a.mul_vec(&x), &y, &space).unwrap();
        let rhs = indefinite_product(&x, &adj.mul_vec(&y), &space).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn signature_is_congruence_invariant((h, _, _, t) in setup()) {
        let sig = signature(&h).unwrap();
        prop_assert_eq!(sig.0 + sig.1, h.rows());
        let congruent = &(&t.conj_transpose() * &h) * &t;
        prop_assert_eq!(signature(&congruent).unwrap(), sig);
    }

    #[test]
    fn nondegenerate_subspace_and_complement_fill_the_space(
        (h, a, _, _) in setup(),
        cols in 1usize..=4,
    ) {
        let n = h.rows();
        let space = IndefiniteSpace::new(h).unwrap();
        let v = SubspaceBasis::span(&a.columns()[..cols.min(n)], n);
        let w = h_orthogonal_complement(&v, &space);
        prop_assert_eq!(v.dim() + w.dim(), n);
        if v.dim() > 0 && is_nondegenerate(&v, &space) {
            prop_assert!(is_nondegenerate(&w, &space));
            prop_assert_eq!(v.sum(&w).dim(), n);
            let mixed = &(&v.to_matrix().conj_transpose() * space.h()) * &w.to_matrix();
            prop_assert!(mixed.is_zero());
            prop_assert!(!gram(&v, &space).is_zero() || v.dim() == 0);
        }
    }

    #[test]
    fn unitary_means_adjoint_inverts((h, _, _, t) in setup()) {
        let space = IndefiniteSpace::new(h).unwrap();
        prop_assert!(is_h_unitary(&Matrix::identity(space.dim(), space.field()), &space));
        let u = h_adjoint(&t, &space).unwrap();
        prop_assert!(is_h_unitary(&t, &space) == (&u * &t).is_identity());
    }
}

#[test]
fn swap_form_signature() {
    let h = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
    assert_eq!(signature(&h).unwrap(), (1, 1));
    let h = Matrix::from_ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
    assert_eq!(signature(&h).unwrap(), (2, 1));
    assert!(signature(&Matrix::from_ints(&[&[1, 1], &[1, 1]])).is_err());
}

#[test]
fn degenerate_line() {
    let space = IndefiniteSpace::new(Matrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
    let e1 = SubspaceBasis::standard(&[0], 2);
    assert!(!is_nondegenerate(&e1, &space));
    assert_eq!(h_orthogonal_complement(&e1, &space), e1);
}
