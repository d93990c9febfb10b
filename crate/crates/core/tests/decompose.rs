use krein_core::decompose::{
    certify_family, certify_scalar_commutant, commutant_basis, search_decomposition,
    selfadjoint_commutant_basis, verify_certificate, verify_verdict, Certificate, DecompositionStatus,
    DEFAULT_BUDGET, DEFAULT_SEED,
};
use krein_core::exact::{ratio, FieldKind, GaussianRational, Matrix};
use krein_core::indefinite::{h_adjoint, is_h_normal, MatrixPair, SubspaceBasis};
use krein_core::witnesses::{
    witness_complex_a_lower, witness_complex_a_upper, witness_complex_b, witness_real_c_even,
    witness_real_c_odd, witness_real_d, witness_real_e, Family, WitnessPair, WitnessSpec,
};

fn g(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn all_witnesses(kmax: usize) -> Vec<WitnessPair> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for k in 1..=kmax {
            if family.admits(k) {
                out.push(WitnessSpec::default_for(family, k).build().unwrap());
            }
        }
    }
    out
}

/// Direct sums used as known-decomposable inputs, with n <= 12.
pub fn glued_pairs() -> Vec<(String, MatrixPair)> {
    let q = |a: i64| ratio(a, 1);
    let b101 = witness_complex_b(1, &g(0), &g(1)).unwrap().pair;
    let b123 = witness_complex_b(1, &g(2), &g(3)).unwrap().pair;
    let b112 = witness_complex_b(1, &g(1), &g(2)).unwrap().pair;
    let b201 = witness_complex_b(2, &g(0), &g(1)).unwrap().pair;
    let al10 = witness_complex_a_lower(1, &g(0)).unwrap().pair;
    let al11 = witness_complex_a_lower(1, &g(1)).unwrap().pair;
    let al2i = witness_complex_a_lower(2, &GaussianRational::i()).unwrap().pair;
    let al20 = witness_complex_a_lower(2, &g(0)).unwrap().pair;
    let al21 = witness_complex_a_lower(2, &g(1)).unwrap().pair;
    let au10 = witness_complex_a_upper(1, &g(0), None).unwrap().pair;
    let au20 = witness_complex_a_upper(2, &g(0), None).unwrap().pair;
    let ce201 = witness_real_c_even(2, &q(0), &q(1)).unwrap().pair;
    let ce211 = witness_real_c_even(2, &q(1), &q(1)).unwrap().pair;
    let co101 = witness_real_c_odd(1, &q(0), &q(1)).unwrap().pair;
    let d2 = witness_real_d(2, &q(5), &q(0), &q(1)).unwrap().pair;
    let e2 = witness_real_e(2, &q(0), &q(1), &q(1), &q(1)).unwrap().pair;
    vec![
        ("b(1,0,1)+b(1,2,3)".into(), b101.direct_sum(&b123)),
        ("a-lower(1,0)+a-lower(1,1)".into(), al10.direct_sum(&al11)),
        ("a-lower(2,i)+b(1,0,1)".into(), al2i.direct_sum(&b101)),
        ("a-upper(1,0)+a-lower(1,0)".into(), au10.direct_sum(&al10)),
        ("c-even(2,0,1)+c-odd(1,0,1)".into(), ce201.direct_sum(&co101)),
        ("d(2,5,0,1)+e(2,0,1,1,1)".into(), d2.direct_sum(&e2)),
        ("c-even(2,0,1)+c-even(2,1,1)".into(), ce201.direct_sum(&ce211)),
        ("a-upper(1,0)+b(1,1,2)".into(), au10.direct_sum(&b112)),
        ("b(2,0,1)+a-lower(2,0)".into(), b201.direct_sum(&al20)),
        ("b(1,0,1)+b(1,2,3)+b(1,1,2)".into(), b101.direct_sum(&b123).direct_sum(&b112)),
        ("a-upper(2,0)+a-lower(2,1)".into(), au20.direct_sum(&al21)),
    ]
}

#[test]
fn commutant_examples() {
    let scalar = MatrixPair::new(Matrix::from_ints(&[&[2, 0], &[0, 2]]), Matrix::identity(2, FieldKind::Real)).unwrap();
    assert_eq!(commutant_basis(&scalar).len(), 4);
    let diag = MatrixPair::new(Matrix::from_ints(&[&[1, 0], &[0, 2]]), Matrix::identity(2, FieldKind::Real)).unwrap();
    assert_eq!(commutant_basis(&diag).len(), 2);

    let w = witness_complex_a_lower(2, &g(0)).unwrap();
    let basis = commutant_basis(&w.pair);
    let span = |m: &Matrix| SubspaceBasis::span(&basis.iter().map(|b| b.entries().to_vec()).collect::<Vec<_>>(), 16)
        .contains(m.entries());
    assert!(span(&Matrix::identity(4, FieldKind::Complex)));
    assert!(span(w.pair.n_op()));
}

#[test]
fn selfadjoint_commutant_contains_identity_and_block_projections() {
    for w in all_witnesses(3) {
        let basis = selfadjoint_commutant_basis(&w.pair);
        let n = w.pair.dim();
        let vs: Vec<_> = basis.iter().map(|b| b.entries().to_vec()).collect();
        assert!(SubspaceBasis::span(&vs, n * n).contains(Matrix::identity(n, FieldKind::Complex).entries()));
        for x in &basis {
            assert_eq!(&h_adjoint(x, w.pair.space()).unwrap(), x);
        }
    }
    let (_, glued) = &glued_pairs()[0];
    let basis = selfadjoint_commutant_basis(glued);
    let vs: Vec<_> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let mut p = Matrix::zeros(4, 4, FieldKind::Complex);
    p.set(0, 0, g(1));
    p.set(1, 1, g(1));
    assert!(SubspaceBasis::span(&vs, 16).contains(p.entries()));
}

#[test]
fn scalar_commutant_certificates() {
    let one = MatrixPair::new(Matrix::from_ints(&[&[4]]), Matrix::from_ints(&[&[1]])).unwrap();
    let cert = certify_scalar_commutant(&one).unwrap();
    assert!(verify_certificate(&one, &cert));
    let diag = MatrixPair::new(Matrix::from_ints(&[&[1, 0], &[0, 2]]), Matrix::identity(2, FieldKind::Real)).unwrap();
    assert!(certify_scalar_commutant(&diag).is_none());
    let forged = Certificate::ScalarSelfadjointCommutant { field: FieldKind::Real, commutant_dim: 1 };
    assert!(!verify_certificate(&diag, &forged));
}

#[test]
fn every_family_certifies_up_to_six() {
    for w in all_witnesses(6) {
        let cert = certify_family(&w).unwrap_or_else(|e| panic!("{} k={}: {e}", w.spec.family, w.spec.k));
        assert_eq!(cert.kind(), w.certificate_recipe);
        assert!(verify_certificate(&w.pair, &cert));
        match (&cert, w.spec.family) {
            (Certificate::S0TwoDim { dim, .. }, _) => assert_eq!(*dim, 2),
            (Certificate::ProjectionScalar { solution_dim, .. }, _) => assert_eq!(*solution_dim, 1),
            (Certificate::JordanChainUnique { eigenspace_dim, .. }, _) => assert_eq!(*eigenspace_dim, 1),
            _ => {}
        }
    }
}

#[test]
fn certificate_examples() {
    // Hermitian P commuting with the 2x2 cyclic block is scalar.
    let w = witness_complex_a_upper(2, &g(0), None).unwrap();
    match certify_family(&w).unwrap() {
        Certificate::ProjectionScalar { unknowns, system_rank, solution_dim, .. } => {
            assert_eq!((unknowns, system_rank, solution_dim), (4, 3, 1));
        }
        other => panic!("{other:?}"),
    }
    let w = witness_complex_a_lower(3, &g(1)).unwrap();
    match certify_family(&w).unwrap() {
        Certificate::JordanChainUnique { chain_eigenvalue, eigenspace_dim, .. } => {
            assert!(chain_eigenvalue.is_one());
            assert_eq!(eigenspace_dim, 1);
        }
        other => panic!("{other:?}"),
    }
    let w = witness_real_d(2, &ratio(5, 1), &ratio(0, 1), &ratio(1, 1)).unwrap();
    match certify_family(&w).unwrap() {
        Certificate::NeutralEigenspan { neutral_gram, neutral_basis, .. } => {
            assert!(neutral_gram.is_zero());
            assert_eq!(neutral_basis.len(), 2);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    for w in all_witnesses(2) {
        let cert = certify_family(&w).unwrap();
        let tampered = match cert.clone() {
            Certificate::JordanChainUnique { k, lambda, n1, chain, chain_eigenvalue, eigenspace_dim } => {
                Certificate::JordanChainUnique { k, lambda, n1, chain, chain_eigenvalue, eigenspace_dim: eigenspace_dim + 1 }
            }
            Certificate::ProjectionScalar { k, n1, unknowns, system_rank, solution_dim } => {
                Certificate::ProjectionScalar { k, n1, unknowns, system_rank, solution_dim: solution_dim + 1 }
            }
            Certificate::NeutralEigenspan {
                chain_eigenvalue, chain_eigenspace_dim, neutral_eigenvalue, neutral_basis, neutral_gram, semisimple, spectrum,
            } => Certificate::NeutralEigenspan {
                chain_eigenvalue,
                chain_eigenspace_dim: chain_eigenspace_dim + 1,
                neutral_eigenvalue,
                neutral_basis,
                neutral_gram,
                semisimple,
                spectrum,
            },
            Certificate::S0TwoDim { alpha, beta, p, q, dim } => Certificate::S0TwoDim { alpha, beta, p, q, dim: dim + 1 },
            Certificate::ScalarSelfadjointCommutant { field, commutant_dim } => {
                Certificate::ScalarSelfadjointCommutant { field, commutant_dim: commutant_dim + 1 }
            }
        };
        assert!(!verify_certificate(&w.pair, &tampered), "{} accepted tampering", w.spec.family);
    }
}

#[test]
fn certificates_do_not_transfer_to_glued_pairs() {
    let w = witness_complex_b(1, &g(0), &g(1)).unwrap();
    let cert = certify_family(&w).unwrap();
    let glued = w.pair.direct_sum(&witness_complex_b(1, &g(2), &g(3)).unwrap().pair);
    assert!(!verify_certificate(&glued, &cert));
}

#[test]
fn glued_pairs_decompose() {
    for (name, pair) in glued_pairs() {
        assert!(is_h_normal(&pair), "{name}");
        let verdict = search_decomposition(&pair, DEFAULT_BUDGET, DEFAULT_SEED);
        assert_eq!(verdict.status, DecompositionStatus::Decomposable, "{name}");
        assert!(verify_verdict(&pair, &verdict), "{name}");
    }
}

#[test]
fn glued_b_pair_splits_at_first_two_coordinates() {
    let (_, pair) = &glued_pairs()[0];
    let verdict = search_decomposition(pair, DEFAULT_BUDGET, DEFAULT_SEED);
    assert_eq!(verdict.witness_subspace.unwrap(), SubspaceBasis::standard(&[0, 1], 4).vectors());
}

#[test]
fn witnesses_never_decompose() {
    for w in all_witnesses(6) {
        let verdict = search_decomposition(&w.pair, DEFAULT_BUDGET, DEFAULT_SEED);
        assert_ne!(verdict.status, DecompositionStatus::Decomposable, "{} k={}", w.spec.family, w.spec.k);
        assert!(verify_verdict(&w.pair, &verdict));
        if let Ok(cert) = certify_family(&w) {
            assert!(verify_certificate(&w.pair, &cert));
        }
    }
}

#[test]
fn search_is_reproducible() {
    for (_, pair) in glued_pairs().into_iter().take(4) {
        assert_eq!(search_decomposition(&pair, 50, 7), search_decomposition(&pair, 50, 7));
    }
}
