//! Indecomposability certificates and a sound search for decompositions.

mod certificates;
mod commutant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{char_poly, exact_roots, fraction_free, FieldKind, GaussianRational, Matrix, Polynomial, Vector};
use crate::indefinite::{
    h_orthogonal_complement, is_invariant, is_nondegenerate, MatrixPair, SubspaceBasis,
};

pub use certificates::{certify_family, certify_scalar_commutant, verify_certificate, Certificate, CertificateKind};
pub use commutant::{commutant_basis, selfadjoint_commutant_basis};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("certificate check failed: {0}")]
    CertificateCheckFailed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecompositionStatus {
    Indecomposable,
    Decomposable,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionVerdict {
    pub status: DecompositionStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// Basis vectors (reduced row echelon form) of the invariant subspace.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_subspace: Option<Vec<Vector>>,
    /// Commutant samples examined before the verdict.
    pub samples: usize,
}

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_BUDGET: usize = 200;

/// Proper, nondegenerate and invariant under `N` and `N^[*]`.
pub fn is_reducing_subspace(pair: &MatrixPair, sub: &SubspaceBasis, adj: &Matrix) -> bool {
    sub.dim() > 0
        && sub.dim() < pair.dim()
        && is_nondegenerate(sub, pair.space())
        && is_invariant(sub, pair.n_op())
        && is_invariant(sub, adj)
}

/// Picks the smaller of `V` and its complement, ties broken by the
/// lexicographically smaller pivot list, and returns it in RREF.
fn canonical_witness(pair: &MatrixPair, v: &SubspaceBasis) -> (SubspaceBasis, Vec<usize>) {
    let w = h_orthogonal_complement(v, pair.space());
    let (a, pa) = v.canonical();
    let (b, pb) = w.canonical();
    match a.dim().cmp(&b.dim()) {
        std::cmp::Ordering::Less => (a, pa),
        std::cmp::Ordering::Greater => (b, pb),
        std::cmp::Ordering::Equal if pa <= pb => (a, pa),
        std::cmp::Ordering::Equal => (b, pb),
    }
}

fn root_subspace(x: &Matrix, r: &GaussianRational, m: usize) -> Vec<Vector> {
    let shifted = x.clone().with_field(FieldKind::Complex).expect("widening").shift(r);
    fraction_free::kernel_basis(&shifted.pow(m as u32))
}

/// Tries the root subspaces of one selfadjoint commutant element.
fn split_by(pair: &MatrixPair, x: &Matrix, adj: &Matrix) -> Option<SubspaceBasis> {
    let n = pair.dim();
    let p = char_poly(x);
    let lead = p.coeff(n - 1);
    let mu = &-&lead * &GaussianRational::from_ratio(1, n as i64);
    if p == Polynomial::linear(&mu).pow(n) {
        return None;
    }
    let roots = exact_roots(&p).ok()?;
    for (r, m) in &roots {
        let vectors = if r.is_real() {
            root_subspace(x, r, *m)
        } else {
            // A nonreal eigenvalue of a selfadjoint element pairs with its
            // conjugate; the combined root space has a real kernel basis.
            let rc = r.conj();
            if r.im < rc.im {
                continue;
            }
            let Some((_, mc)) = roots.iter().find(|(z, _)| *z == rc) else { continue };
            let q = &Polynomial::linear(r).pow(*m) * &Polynomial::linear(&rc).pow(*mc);
            fraction_free::kernel_basis(&q.eval_matrix(x))
        };
        if pair.field() == FieldKind::Real && vectors.iter().flatten().any(|z| !z.is_real()) {
            continue;
        }
        let sub = SubspaceBasis::span(&vectors, n);
        if is_reducing_subspace(pair, &sub, adj) {
            return Some(sub);
        }
    }
    None
}

/// Seeded random search over the selfadjoint commutant. `Decomposable`
/// verdicts carry an exactly verified witness; `Indecomposable` only comes
/// from a scalar commutant certificate.
pub fn search_decomposition(pair: &MatrixPair, budget: usize, seed: u64) -> DecompositionVerdict {
    let basis = selfadjoint_commutant_basis(pair);
    if basis.len() == 1 {
        return DecompositionVerdict {
            status: DecompositionStatus::Indecomposable,
            certificate: Some(Certificate::ScalarSelfadjointCommutant { field: pair.field(), commutant_dim: 1 }),
            witness_subspace: None,
            samples: 0,
        };
    }
    let adj = pair.adjoint();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = pair.dim();
    for sample in 1..=budget {
        let mut x = Matrix::zeros(n, n, pair.field());
        for b in &basis {
            let c: i64 = rng.random_range(-3..=3);
            if c != 0 {
                x = &x + &b.scale(&GaussianRational::from_int(c));
            }
        }
        if let Some(sub) = split_by(pair, &x, &adj) {
            let (w, _) = canonical_witness(pair, &sub);
            debug_assert!(is_reducing_subspace(pair, &w, &adj));
            return DecompositionVerdict {
                status: DecompositionStatus::Decomposable,
                certificate: None,
                witness_subspace: Some(w.vectors().to_vec()),
                samples: sample,
            };
        }
    }
    DecompositionVerdict { status: DecompositionStatus::Unknown, certificate: None, witness_subspace: None, samples: budget }
}

/// Checks a verdict against the pair: witnesses must reduce, certificates
/// must verify, `Unknown` is always consistent.
pub fn verify_verdict(pair: &MatrixPair, verdict: &DecompositionVerdict) -> bool {
    match verdict.status {
        DecompositionStatus::Indecomposable => {
            verdict.certificate.as_ref().is_some_and(|c| verify_certificate(pair, c))
        }
        DecompositionStatus::Decomposable => verdict.witness_subspace.as_ref().is_some_and(|vs| {
            SubspaceBasis::new(vs.clone(), pair.dim())
                .map(|sub| is_reducing_subspace(pair, &sub, &pair.adjoint()))
                .unwrap_or(false)
        }),
        DecompositionStatus::Unknown => true,
    }
}
