//! Indecomposability certificates and their independent verifier.

use serde::{Deserialize, Serialize};

use super::commutant::{hermitian_commuting_system, selfadjoint_commutant_basis};
use super::DecomposeError;
use crate::classify::compute_s0_real;
use crate::exact::{
    char_poly, exact_roots, fraction_free, FieldKind, GaussianRational, Matrix, Polynomial, Rational, Vector,
};
use crate::indefinite::{gram, is_h_normal, MatrixPair, SubspaceBasis};
use crate::witnesses::{Family, WitnessPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    ScalarSelfadjointCommutant,
    JordanChainUnique,
    ProjectionScalar,
    NeutralEigenspan,
    S0TwoDim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "evidence")]
pub enum Certificate {
    /// The selfadjoint commutant is spanned by `I`.
    ScalarSelfadjointCommutant { field: FieldKind, commutant_dim: usize },
    /// `N = [[λI, N1], [0, λI]]` with `N1 N1*^{-1}` a single Jordan block.
    JordanChainUnique {
        k: usize,
        lambda: GaussianRational,
        n1: Matrix,
        chain: Matrix,
        chain_eigenvalue: GaussianRational,
        eigenspace_dim: usize,
    },
    /// Hermitian `P` commuting with the cyclic block `N1` is scalar.
    ProjectionScalar { k: usize, n1: Matrix, unknowns: usize, system_rank: usize, solution_dim: usize },
    /// One eigenvalue has a single eigenline, the other a neutral,
    /// semisimple eigenspace (real and imaginary parts in the real case).
    NeutralEigenspan {
        chain_eigenvalue: GaussianRational,
        chain_eigenspace_dim: usize,
        neutral_eigenvalue: GaussianRational,
        neutral_basis: Vec<Vector>,
        neutral_gram: Matrix,
        semisimple: bool,
        spectrum: Vec<GaussianRational>,
    },
    /// `dim S0 = 2`.
    S0TwoDim { alpha: GaussianRational, beta: GaussianRational, p: usize, q: usize, dim: usize },
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::ScalarSelfadjointCommutant { .. } => CertificateKind::ScalarSelfadjointCommutant,
            Certificate::JordanChainUnique { .. } => CertificateKind::JordanChainUnique,
            Certificate::ProjectionScalar { .. } => CertificateKind::ProjectionScalar,
            Certificate::NeutralEigenspan { .. } => CertificateKind::NeutralEigenspan,
            Certificate::S0TwoDim { .. } => CertificateKind::S0TwoDim,
        }
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        match self {
            Certificate::ScalarSelfadjointCommutant { commutant_dim, .. } => {
                format!("selfadjoint commutant dimension {commutant_dim}")
            }
            Certificate::JordanChainUnique { chain_eigenvalue, eigenspace_dim, .. } => {
                format!("N1 N1*^-1 has eigenvalue {chain_eigenvalue} with eigenspace dimension {eigenspace_dim}")
            }
            Certificate::ProjectionScalar { solution_dim, unknowns, system_rank, .. } => {
                format!("Hermitian commutant of N1: {unknowns} unknowns, rank {system_rank}, solutions {solution_dim}")
            }
            Certificate::NeutralEigenspan { chain_eigenvalue, neutral_eigenvalue, neutral_basis, .. } => format!(
                "eigenline for {chain_eigenvalue}; neutral span of dimension {} for {neutral_eigenvalue}",
                neutral_basis.len()
            ),
            Certificate::S0TwoDim { p, q, dim, .. } => format!("dim S0 = {dim} (p = {p}, q = {q})"),
        }
    }
}

fn complexified(m: &Matrix) -> Matrix {
    m.clone().with_field(FieldKind::Complex).expect("real into complex")
}

fn same_entries(a: &Matrix, b: &Matrix) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && a.entries() == b.entries()
}

fn swap_form_entries(k: usize) -> Matrix {
    let id = Matrix::identity(k, FieldKind::Real);
    let mut h = Matrix::zeros(2 * k, 2 * k, FieldKind::Real);
    h.set_block(0, k, &id);
    h.set_block(k, 0, &id);
    h
}

fn eigenspace(n: &Matrix, mu: &GaussianRational) -> Vec<Vector> {
    fraction_free::kernel_basis(&complexified(n).shift(mu))
}

/// Dimension of `{P Hermitian : P A = A P}` as `(unknowns, rank, solutions)`.
fn hermitian_commutant_counts(a: &Matrix) -> (usize, usize, Vec<Vec<Rational>>) {
    let (params, sys) = hermitian_commuting_system(&complexified(a), FieldKind::Complex);
    let rank = sys.rank();
    (params.count(), rank, sys.nullspace())
}

pub fn certify_scalar_commutant(pair: &MatrixPair) -> Option<Certificate> {
    let dim = selfadjoint_commutant_basis(pair).len();
    (dim == 1).then_some(Certificate::ScalarSelfadjointCommutant { field: pair.field(), commutant_dim: 1 })
}

fn jordan_chain_certificate(pair: &MatrixPair, k: usize) -> Result<Certificate, DecomposeError> {
    let n = pair.n_op();
    let lambda = n.get(0, 0).clone();
    let n1 = complexified(&n.submatrix(0, k, k, k));
    let n1_star_inv = fraction_free::inverse(&n1.conj_transpose())
        .map_err(|_| DecomposeError::CertificateCheckFailed("N1 is singular".into()))?;
    let chain = &n1 * &n1_star_inv;
    let e = chain.get(0, 0).clone();
    let eigenspace_dim = fraction_free::kernel_basis(&chain.shift(&e)).len();
    Ok(Certificate::JordanChainUnique { k, lambda, n1, chain, chain_eigenvalue: e, eigenspace_dim })
}

fn projection_certificate(pair: &MatrixPair, k: usize) -> Certificate {
    let n1 = complexified(&pair.n_op().submatrix(k, 3 * k, k, k));
    let (unknowns, system_rank, sol) = hermitian_commutant_counts(&n1);
    Certificate::ProjectionScalar { k, n1, unknowns, system_rank, solution_dim: sol.len() }
}

/// Real or Gaussian basis of the span used by the neutrality argument:
/// the eigenspace of a real `ν`, or the real parts of the eigenvectors of
/// a nonreal `ν` when the pair is real.
fn neutral_span(pair: &MatrixPair, nu: &GaussianRational) -> Vec<Vector> {
    let vs = eigenspace(pair.n_op(), nu);
    if pair.field() == FieldKind::Real && !nu.is_real() {
        let mut parts = Vec::new();
        for z in &vs {
            parts.push(z.iter().map(|x| GaussianRational::real(x.re.clone())).collect());
            parts.push(z.iter().map(|x| GaussianRational::real(x.im.clone())).collect());
        }
        SubspaceBasis::span(&parts, pair.dim()).vectors().to_vec()
    } else {
        SubspaceBasis::span(&vs, pair.dim()).vectors().to_vec()
    }
}

fn distinct_spectrum(pair: &MatrixPair) -> Option<Vec<(GaussianRational, usize)>> {
    let p = char_poly(pair.n_op());
    let roots = exact_roots(&p).ok()?;
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    (total == pair.dim()).then_some(roots)
}

fn neutral_certificate(
    pair: &MatrixPair,
    chain: &GaussianRational,
    neutral: &GaussianRational,
) -> Result<Certificate, DecomposeError> {
    let spectrum = distinct_spectrum(pair)
        .ok_or_else(|| DecomposeError::CertificateCheckFailed("spectrum is not exact".into()))?;
    let alg = spectrum.iter().find(|(z, _)| z == neutral).map(|(_, m)| *m).unwrap_or(0);
    let geo = eigenspace(pair.n_op(), neutral).len();
    let basis = neutral_span(pair, neutral);
    let sub = SubspaceBasis::new(basis.clone(), pair.dim())
        .map_err(|e| DecomposeError::CertificateCheckFailed(e.to_string()))?;
    Ok(Certificate::NeutralEigenspan {
        chain_eigenvalue: chain.clone(),
        chain_eigenspace_dim: eigenspace(pair.n_op(), chain).len(),
        neutral_eigenvalue: neutral.clone(),
        neutral_gram: gram(&sub, pair.space()),
        neutral_basis: basis,
        semisimple: geo == alg && alg > 0,
        spectrum: spectrum.into_iter().map(|(z, _)| z).collect(),
    })
}

fn s0_certificate(pair: &MatrixPair, alpha: &Rational, beta: &Rational) -> Certificate {
    let s0 = compute_s0_real(pair, alpha, beta);
    Certificate::S0TwoDim {
        alpha: GaussianRational::real(alpha.clone()),
        beta: GaussianRational::real(beta.clone()),
        p: s0.s0_prime_dim,
        q: s0.s0_doubleprime_dim,
        dim: s0.dim(),
    }
}

/// Builds the family's certificate and refuses to return it unless the
/// independent verifier accepts it.
pub fn certify_family(w: &WitnessPair) -> Result<Certificate, DecomposeError> {
    let pair = &w.pair;
    let k = w.spec.k;
    let p = &w.spec.eigen_params;
    let re = |i: usize| p[i].re.clone();
    let cert = match w.spec.family {
        Family::ComplexALower => jordan_chain_certificate(pair, k)?,
        Family::ComplexAUpper => projection_certificate(pair, k),
        Family::ComplexB => neutral_certificate(pair, &p[0], &p[1])?,
        Family::RealD => neutral_certificate(pair, &GaussianRational::new(re(1), re(2)), &p[0])?,
        Family::RealE => neutral_certificate(
            pair,
            &GaussianRational::new(re(0), re(1)),
            &GaussianRational::new(re(2), re(3)),
        )?,
        Family::RealCEven | Family::RealCOdd => s0_certificate(pair, &re(0), &re(1)),
    };
    if cert.kind() != w.certificate_recipe {
        return Err(DecomposeError::CertificateCheckFailed("recipe mismatch".into()));
    }
    if !verify_certificate(pair, &cert) {
        return Err(DecomposeError::CertificateCheckFailed(format!(
            "{} k={k}: {}",
            w.spec.family,
            cert.summary()
        )));
    }
    Ok(cert)
}

/// Re-derives every claim in the certificate from the pair alone.
pub fn verify_certificate(pair: &MatrixPair, cert: &Certificate) -> bool {
    if !is_h_normal(pair) {
        return false;
    }
    match cert {
        Certificate::ScalarSelfadjointCommutant { field, commutant_dim } => {
            *field == pair.field() && *commutant_dim == 1 && selfadjoint_commutant_basis(pair).len() == 1
        }
        Certificate::JordanChainUnique { k, lambda, n1, chain, chain_eigenvalue, eigenspace_dim } => {
            verify_jordan_chain(pair, *k, lambda, n1, chain, chain_eigenvalue, *eigenspace_dim)
        }
        Certificate::ProjectionScalar { k, n1, unknowns, system_rank, solution_dim } => {
            verify_projection(pair, *k, n1, *unknowns, *system_rank, *solution_dim)
        }
        Certificate::NeutralEigenspan {
            chain_eigenvalue,
            chain_eigenspace_dim,
            neutral_eigenvalue,
            neutral_basis,
            neutral_gram,
            semisimple,
            spectrum,
        } => verify_neutral(
            pair,
            chain_eigenvalue,
            *chain_eigenspace_dim,
            neutral_eigenvalue,
            neutral_basis,
            neutral_gram,
            *semisimple,
            spectrum,
        ),
        Certificate::S0TwoDim { alpha, beta, p, q, dim } => verify_s0(pair, alpha, beta, *p, *q, *dim),
    }
}

fn verify_jordan_chain(
    pair: &MatrixPair,
    k: usize,
    lambda: &GaussianRational,
    n1: &Matrix,
    chain: &Matrix,
    e: &GaussianRational,
    eigenspace_dim: usize,
) -> bool {
    if k == 0 || pair.dim() != 2 * k || n1.rows() != k || n1.cols() != k {
        return false;
    }
    let mut expected = Matrix::identity(2 * k, FieldKind::Complex).scale(lambda);
    expected.set_block(0, k, n1);
    if !same_entries(pair.n_op(), &expected) || !same_entries(pair.h(), &swap_form_entries(k)) {
        return false;
    }
    let Ok(inv) = fraction_free::inverse(&n1.conj_transpose()) else {
        return false;
    };
    let recomputed = n1 * &inv;
    let unit = e.is_one() || (-e).is_one();
    unit && recomputed == *chain
        && same_entries(chain, &Matrix::jordan_block(k, e, FieldKind::Complex))
        && eigenspace_dim == 1
        && fraction_free::kernel_basis(&chain.shift(e)).len() == 1
}

fn verify_projection(pair: &MatrixPair, k: usize, n1: &Matrix, unknowns: usize, rank: usize, solutions: usize) -> bool {
    if k == 0 || pair.dim() != 4 * k {
        return false;
    }
    let n = pair.n_op();
    let lambda = n.get(0, 0).clone();
    let n1_actual = complexified(&n.submatrix(k, 3 * k, k, k));
    let n2 = complexified(&n.submatrix(2 * k, 3 * k, k, k));
    if n1_actual != *n1 {
        return false;
    }
    let id = Matrix::identity(k, FieldKind::Real);
    let mut expected = Matrix::identity(4 * k, FieldKind::Complex).scale(&lambda);
    expected.set_block(0, k, &id);
    expected.set_block(k, 3 * k, n1);
    expected.set_block(2 * k, 3 * k, &n2);
    let mut h = Matrix::zeros(4 * k, 4 * k, FieldKind::Real);
    h.set_block(0, 3 * k, &id);
    h.set_block(k, k, &id);
    h.set_block(2 * k, 2 * k, &id);
    h.set_block(3 * k, 0, &id);
    if !same_entries(n, &expected) || !same_entries(pair.h(), &h) {
        return false;
    }
    let completes = (&(&n1.conj_transpose() * n1) + &(&n2.conj_transpose() * &n2)).is_identity();
    let (u, r, sol) = hermitian_commutant_counts(n1);
    // The one solution must be a multiple of I.
    let scalar = sol.len() == 1 && {
        let theta = &sol[0];
        let (params, _) = hermitian_commuting_system(n1, FieldKind::Complex);
        let p = params.assemble(theta);
        let d = p.get(0, 0).clone();
        p == Matrix::identity(k, FieldKind::Complex).scale(&d)
    };
    completes && scalar && u == unknowns && r == rank && sol.len() == solutions && solutions == 1
}

#[allow(clippy::too_many_arguments)]
fn verify_neutral(
    pair: &MatrixPair,
    chain: &GaussianRational,
    chain_dim: usize,
    nu: &GaussianRational,
    basis: &[Vector],
    claimed_gram: &Matrix,
    semisimple: bool,
    spectrum: &[GaussianRational],
) -> bool {
    let Some(actual) = distinct_spectrum(pair) else {
        return false;
    };
    let actual_set: Vec<GaussianRational> = actual.iter().map(|(z, _)| z.clone()).collect();
    if actual_set != spectrum {
        return false;
    }
    // Two eigenvalues (complex), or their conjugate closure (real).
    let mut expected: Vec<GaussianRational> = vec![chain.clone(), nu.clone()];
    if pair.field() == FieldKind::Real {
        for z in [chain, nu] {
            if !z.is_real() {
                expected.push(z.conj());
            }
        }
    }
    expected.sort_by(|a, b| a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)));
    expected.dedup();
    if expected != actual_set || chain == nu {
        return false;
    }
    if chain_dim != 1 || eigenspace(pair.n_op(), chain).len() != 1 {
        return false;
    }
    let alg = actual.iter().find(|(z, _)| z == nu).map(|(_, m)| *m).unwrap_or(0);
    let geo = eigenspace(pair.n_op(), nu).len();
    if !semisimple || geo != alg {
        return false;
    }
    let recomputed = neutral_span(pair, nu);
    let Ok(claimed) = SubspaceBasis::new(basis.to_vec(), pair.dim()) else {
        return false;
    };
    let Ok(fresh) = SubspaceBasis::new(recomputed, pair.dim()) else {
        return false;
    };
    if claimed.canonical().0 != fresh.canonical().0 {
        return false;
    }
    let g = gram(&claimed, pair.space());
    g == *claimed_gram && g.is_zero()
}

fn verify_s0(pair: &MatrixPair, alpha: &GaussianRational, beta: &GaussianRational, p: usize, q: usize, dim: usize) -> bool {
    if pair.field() != FieldKind::Real || !alpha.is_real() || !beta.is_real() || beta.re <= Rational::from_integer(0.into()) {
        return false;
    }
    let n = pair.dim();
    let two = GaussianRational::from_int(2);
    let quad = Polynomial::new(vec![&(alpha * alpha) + &(beta * beta), -&(alpha * &two), GaussianRational::one()]);
    if n % 2 == 1 || char_poly(pair.n_op()) != quad.pow(n / 2) {
        return false;
    }
    let s0 = compute_s0_real(pair, &alpha.re, &beta.re);
    s0.s0_prime_dim == p && s0.s0_doubleprime_dim == q && s0.dim() == dim && dim == 2
}
