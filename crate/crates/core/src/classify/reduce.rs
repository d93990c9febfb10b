//! Joint eigenvector spaces `S0` and the block reductions built on them.
//!
//! Given a neutral `S0` with basis `S`, a dual basis `W` with `S* H W = I`
//! and `W* H W = 0` is constructed, and `Q` spans the `H`-orthogonal
//! complement of both. In the basis `T = [S | Q | W]` the form becomes
//! `[[0, 0, I], [0, H1, 0], [I, 0, 0]]`.

use serde::{Deserialize, Serialize};

use crate::exact::{
    char_poly, fraction_free, FieldKind, GaussianRational, Matrix, Polynomial, Rational, Vector,
};
use crate::indefinite::{is_neutral, MatrixPair, SubspaceBasis};
use crate::witnesses::rotation_block;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("S0 is not neutral")]
    S0NotNeutral,
    #[error("S0 is trivial")]
    S0Trivial,
    #[error("N has an eigenvalue other than {0}")]
    NotSingleEigenvalue(GaussianRational),
    #[error("spectrum is not exactly {alpha} ± {beta}i")]
    WrongSpectrum { alpha: Rational, beta: Rational },
    #[error("beta must be positive")]
    NonpositiveBeta,
    #[error("pair is not real")]
    NotReal,
    #[error("real and imaginary parts of the joint eigenvectors are dependent")]
    DependentRealParts,
    #[error("reduced form check failed: {0}")]
    CheckFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointEigenstructure {
    pub s0_basis: SubspaceBasis,
    pub s0_prime_dim: usize,
    pub s0_doubleprime_dim: usize,
    pub is_neutral_s0: bool,
}

impl JointEigenstructure {
    pub fn dim(&self) -> usize {
        self.s0_basis.dim()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalReduction {
    pub transform: Matrix,
    pub reduced_n: Matrix,
    pub reduced_h: Matrix,
    /// `(dim S0, dim S, dim S1)`.
    pub block_dims: (usize, usize, usize),
}

impl CanonicalReduction {
    /// `(T R_N T^{-1}, T^{-*} R_H T^{-1})`, which should equal the input pair.
    pub fn round_trip(&self) -> (Matrix, Matrix) {
        let t_inv = fraction_free::inverse(&self.transform).expect("transform is nonsingular");
        let n = &(&self.transform * &self.reduced_n) * &t_inv;
        let h = &(&t_inv.conj_transpose() * &self.reduced_h) * &t_inv;
        (n, h)
    }

    /// The middle block `H1`.
    pub fn h1(&self) -> Matrix {
        let (s, m, _) = self.block_dims;
        self.reduced_h.submatrix(s, s, m, m)
    }
}

fn complexified(m: &Matrix) -> Matrix {
    m.clone().with_field(FieldKind::Complex).expect("real into complex")
}

/// Divides by the first nonzero entry.
fn normalize(v: Vector) -> Vector {
    match v.iter().find(|x| !x.is_zero()).cloned() {
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
        None => v,
    }
}

/// `ker(N - a I) ∩ ker(N^[*] - b I)`, normalized.
fn joint_kernel(n: &Matrix, adj: &Matrix, a: &GaussianRational, b: &GaussianRational) -> Vec<Vector> {
    let stacked = complexified(n).shift(a).vstack(&complexified(adj).shift(b));
    fraction_free::kernel_basis(&stacked).into_iter().map(normalize).collect()
}

pub fn compute_s0_complex(pair: &MatrixPair, lambda: &GaussianRational) -> JointEigenstructure {
    let vectors = joint_kernel(pair.n_op(), &pair.adjoint(), lambda, &lambda.conj());
    let dim = vectors.len();
    let s0_basis = SubspaceBasis::new(vectors, pair.dim()).expect("kernel basis is independent");
    let is_neutral_s0 = is_neutral(&s0_basis, pair.space());
    JointEigenstructure { s0_basis, s0_prime_dim: dim, s0_doubleprime_dim: 0, is_neutral_s0 }
}

/// Real span of `Re z, Im z` over `z` in `S0'` (joint `λ, conj λ`) then `S0''`
/// (joint `λ, λ`), `λ = α + iβ`. The basis keeps the order
/// `x_1, y_1, x_2, y_2, ...` when those vectors are independent.
pub fn compute_s0_real(pair: &MatrixPair, alpha: &Rational, beta: &Rational) -> JointEigenstructure {
    let lambda = GaussianRational::new(alpha.clone(), beta.clone());
    let adj = pair.adjoint();
    let prime = joint_kernel(pair.n_op(), &adj, &lambda, &lambda.conj());
    let doubleprime = joint_kernel(pair.n_op(), &adj, &lambda, &lambda);
    let mut parts: Vec<Vector> = Vec::new();
    for z in prime.iter().chain(&doubleprime) {
        parts.push(z.iter().map(|x| GaussianRational::real(x.re.clone())).collect());
        parts.push(z.iter().map(|x| GaussianRational::real(x.im.clone())).collect());
    }
    let n = pair.dim();
    let s0_basis = SubspaceBasis::new(parts.clone(), n).unwrap_or_else(|_| SubspaceBasis::span(&parts, n));
    let is_neutral_s0 = is_neutral(&s0_basis, pair.space());
    JointEigenstructure {
        s0_basis,
        s0_prime_dim: prime.len(),
        s0_doubleprime_dim: doubleprime.len(),
        is_neutral_s0,
    }
}

/// Builds `T = [S | Q | W]` from a neutral basis `S` and checks the form.
fn dual_frame(pair: &MatrixPair, s: &SubspaceBasis) -> Result<(Matrix, (usize, usize, usize)), ReduceError> {
    let n = pair.dim();
    let h = pair.h();
    let field = pair.field();
    let sm = s.to_matrix().with_field(field).map_err(|e| ReduceError::CheckFailed(e.to_string()))?;
    let d = sm.cols();
    let sh = &sm.conj_transpose() * h;
    let w = fraction_free::solve(&sh, &Matrix::identity(d, field))
        .map_err(|e| ReduceError::CheckFailed(e.to_string()))?
        .ok_or_else(|| ReduceError::CheckFailed("no dual basis".into()))?;
    // W' = W - S (W* H W) / 2 makes the dual block neutral.
    let g = &(&w.conj_transpose() * h) * &w;
    let w = &w - &(&sm * &g).scale(&GaussianRational::from_ratio(1, 2));
    let constraints = sh.vstack(&(&w.conj_transpose() * h));
    let q = fraction_free::kernel_basis(&constraints);
    let m = q.len();
    let qm = Matrix::from_columns(&q, n, field);
    let t = sm.hstack(&qm).hstack(&w);
    if t.cols() != n || fraction_free::rank(&t) != n {
        return Err(ReduceError::CheckFailed("transform is singular".into()));
    }
    Ok((t, (d, m, d)))
}

/// `[[0, 0, I], [0, H1, 0], [I, 0, 0]]` with `H1` nonsingular Hermitian.
fn check_h_shape(rh: &Matrix, (s, m, _): (usize, usize, usize)) -> Result<(), ReduceError> {
    let n = rh.rows();
    for i in 0..n {
        for j in 0..n {
            let x = rh.get(i, j);
            let corner = (i < s && j >= s + m && j - s - m == i) || (i >= s + m && j < s && i - s - m == j);
            let middle = (s..s + m).contains(&i) && (s..s + m).contains(&j);
            if middle {
                continue;
            }
            let ok = if corner { x.is_one() } else { x.is_zero() };
            if !ok {
                return Err(ReduceError::CheckFailed(format!("reduced H entry ({i}, {j}) = {x}")));
            }
        }
    }
    Ok(())
}

/// Zero below the three diagonal blocks, plus the two corner blocks.
fn check_n_shape(
    rn: &Matrix,
    (s, m, _): (usize, usize, usize),
    top: &Matrix,
    bottom: &Matrix,
) -> Result<(), ReduceError> {
    let n = rn.rows();
    let block = |i: usize| if i < s { 0 } else if i < s + m { 1 } else { 2 };
    for i in 0..n {
        for j in 0..n {
            if block(i) > block(j) && !rn.get(i, j).is_zero() {
                return Err(ReduceError::CheckFailed(format!("reduced N entry ({i}, {j}) below the blocks")));
            }
        }
    }
    if rn.submatrix(0, 0, s, s) != *top {
        return Err(ReduceError::CheckFailed("S0 corner block".into()));
    }
    if rn.submatrix(s + m, s + m, s, s) != *bottom {
        return Err(ReduceError::CheckFailed("S1 corner block".into()));
    }
    Ok(())
}

fn finish(pair: &MatrixPair, t: Matrix, dims: (usize, usize, usize), top: &Matrix, bottom: &Matrix) -> Result<CanonicalReduction, ReduceError> {
    let t_inv = fraction_free::inverse(&t).map_err(|e| ReduceError::CheckFailed(e.to_string()))?;
    let reduced_n = &(&t_inv * pair.n_op()) * &t;
    let reduced_h = &(&t.conj_transpose() * pair.h()) * &t;
    check_h_shape(&reduced_h, dims)?;
    check_n_shape(&reduced_n, dims, top, bottom)?;
    Ok(CanonicalReduction { transform: t, reduced_n, reduced_h, block_dims: dims })
}

/// Single-eigenvalue reduction with corners `λ I`.
pub fn reduce_pred1(pair: &MatrixPair, lambda: &GaussianRational) -> Result<CanonicalReduction, ReduceError> {
    let n = pair.dim();
    if char_poly(pair.n_op()) != Polynomial::linear(lambda).pow(n) {
        return Err(ReduceError::NotSingleEigenvalue(lambda.clone()));
    }
    let s0 = compute_s0_complex(pair, lambda);
    if s0.dim() == 0 {
        return Err(ReduceError::S0Trivial);
    }
    if !s0.is_neutral_s0 {
        return Err(ReduceError::S0NotNeutral);
    }
    let (t, dims) = dual_frame(pair, &s0.s0_basis)?;
    let corner = Matrix::identity(dims.0, pair.field()).scale(lambda);
    finish(pair, t, dims, &corner, &corner)
}

/// Real reduction for the spectrum `α ± iβ`: the `S0` corner is a sum of `A`
/// blocks; the `S1` corner has `A` for the `p` blocks from `S0'` and `A^T`
/// for the `q` blocks from `S0''`.
pub fn reduce_augdec(pair: &MatrixPair, alpha: &Rational, beta: &Rational) -> Result<CanonicalReduction, ReduceError> {
    if pair.field() != FieldKind::Real {
        return Err(ReduceError::NotReal);
    }
    if *beta <= Rational::from_integer(0.into()) {
        return Err(ReduceError::NonpositiveBeta);
    }
    let n = pair.dim();
    let g = |q: &Rational| GaussianRational::real(q.clone());
    // (t - α)^2 + β^2
    let quad = Polynomial::new(vec![&(&g(alpha) * &g(alpha)) + &(&g(beta) * &g(beta)), -&(&g(alpha) * &GaussianRational::from_int(2)), GaussianRational::one()]);
    if n % 2 == 1 || char_poly(pair.n_op()) != quad.pow(n / 2) {
        return Err(ReduceError::WrongSpectrum { alpha: alpha.clone(), beta: beta.clone() });
    }
    let s0 = compute_s0_real(pair, alpha, beta);
    if s0.dim() == 0 {
        return Err(ReduceError::S0Trivial);
    }
    if s0.dim() != 2 * (s0.s0_prime_dim + s0.s0_doubleprime_dim) {
        return Err(ReduceError::DependentRealParts);
    }
    if !s0.is_neutral_s0 {
        return Err(ReduceError::S0NotNeutral);
    }
    let (t, dims) = dual_frame(pair, &s0.s0_basis)?;
    let a = rotation_block(alpha, beta);
    let at = a.transpose();
    let p = s0.s0_prime_dim;
    let blocks = p + s0.s0_doubleprime_dim;
    let top = Matrix::block_diag(&vec![&a; blocks]);
    let bottom_blocks: Vec<&Matrix> = (0..blocks).map(|j| if j < p { &a } else { &at }).collect();
    let bottom = Matrix::block_diag(&bottom_blocks);
    finish(pair, t, dims, &top, &bottom)
}
