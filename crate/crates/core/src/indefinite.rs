//! Indefinite scalar products `[x, y] = y* H x` and the operators they induce.
//!
//! The product is linear in `x` and conjugate-linear in `y`. `H` must be
//! Hermitian and nonsingular; its inverse is computed once per space.

use std::fmt;

use crate::exact::{
    fraction_free, FieldKind, GaussianRational, Matrix, Vector,
};
use crate::exact::CoreError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IndefiniteError {
    #[error("H is not Hermitian at entry ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error("H is singular")]
    Singular,
    #[error("N is {n}x{n} but H is {h}x{h}")]
    DimensionMismatch { n: usize, h: usize },
    #[error("subspace basis vectors are linearly dependent")]
    LinearlyDependent,
    #[error("vector of length {found} in ambient dimension {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// Inertia `(v_minus, v_plus)` of a nonsingular Hermitian matrix by exact
/// congruence reduction.
pub fn signature(h: &Matrix) -> Result<(usize, usize), IndefiniteError> {
    if !h.is_square() {
        return Err(CoreError::NotSquare { rows: h.rows(), cols: h.cols() }.into());
    }
    if let Some((row, col)) = h.first_non_hermitian_entry() {
        return Err(IndefiniteError::NotHermitian { row, col });
    }
    let mut a = h.to_rows();
    let (mut neg, mut pos) = (0, 0);
    while !a.is_empty() {
        let m = a.len();
        if let Some(p) = (0..m).find(|&i| !a[i][i].is_zero()) {
            let d = a[p][p].clone();
            if d.re > num_traits::Zero::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            let d_inv = d.inv().expect("nonzero");
            let keep: Vec<usize> = (0..m).filter(|&i| i != p).collect();
            a = keep
                .iter()
                .map(|&i| {
                    let f = &a[i][p] * &d_inv;
                    keep.iter().map(|&j| &a[i][j] - &(&f * &a[p][j])).collect()
                })
                .collect();
            continue;
        }
        // Zero diagonal: pivot on a 2x2 block [[0, b], [conj b, 0]], inertia (1, 1).
        let Some((p, q)) = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            return Err(IndefiniteError::Singular);
        };
        neg += 1;
        pos += 1;
        let b = a[p][q].clone();
        // [[0, b], [bbar, 0]]^{-1} = [[0, 1/bbar], [1/b, 0]]
        let inv_b = b.inv().expect("nonzero");
        let inv_bbar = inv_b.conj();
        let keep: Vec<usize> = (0..m).filter(|&i| i != p && i != q).collect();
        a = keep
            .iter()
            .map(|&i| {
                // row i of A21 times B^{-1}
                let u_p = &a[i][q] * &inv_b;
                let u_q = &a[i][p] * &inv_bbar;
                keep.iter()
                    .map(|&j| &(&a[i][j] - &(&u_p * &a[p][j])) - &(&u_q * &a[q][j]))
                    .collect()
            })
            .collect();
    }
    Ok((neg, pos))
}

/// `C^n` (or `R^n`) with the product defined by a Hermitian nonsingular `H`.
#[derive(Clone, PartialEq, Eq)]
pub struct IndefiniteSpace {
    h: Matrix,
    h_inv: Matrix,
    signature: (usize, usize),
}

impl IndefiniteSpace {
    pub fn new(h: Matrix) -> Result<Self, IndefiniteError> {
        let signature = signature(&h)?;
        let h_inv = fraction_free::inverse(&h).map_err(|_| IndefiniteError::Singular)?;
        Ok(Self { h, h_inv, signature })
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    pub fn h_inv(&self) -> &Matrix {
        &self.h_inv
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// `min(v_minus, v_plus)`.
    pub fn rank_v(&self) -> usize {
        self.signature.0.min(self.signature.1)
    }

    pub fn field(&self) -> FieldKind {
        self.h.field()
    }

    pub fn direct_sum(&self, other: &IndefiniteSpace) -> IndefiniteSpace {
        let (a, b) = (self.signature, other.signature);
        IndefiniteSpace {
            h: Matrix::block_diag(&[&self.h, &other.h]),
            h_inv: Matrix::block_diag(&[&self.h_inv, &other.h_inv]),
            signature: (a.0 + b.0, a.1 + b.1),
        }
    }
}

impl fmt::Debug for IndefiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndefiniteSpace")
            .field("h", &self.h)
            .field("signature", &self.signature)
            .finish()
    }
}

/// `A^[*] = H^{-1} A* H`.
pub fn h_adjoint(a: &Matrix, space: &IndefiniteSpace) -> Result<Matrix, IndefiniteError> {
    if a.rows() != space.dim() || a.cols() != space.dim() {
        return Err(IndefiniteError::DimensionMismatch { n: a.rows(), h: space.dim() });
    }
    Ok(&(space.h_inv() * &a.conj_transpose()) * space.h())
}

/// `U U^[*] = I`.
pub fn is_h_unitary(u: &Matrix, space: &IndefiniteSpace) -> bool {
    match h_adjoint(u, space) {
        Ok(adj) => (u * &adj).is_identity(),
        Err(_) => false,
    }
}

/// `[x, y] = y* H x`.
pub fn indefinite_product(
    x: &[GaussianRational],
    y: &[GaussianRational],
    space: &IndefiniteSpace,
) -> Result<GaussianRational, IndefiniteError> {
    let n = space.dim();
    for v in [x, y] {
        if v.len() != n {
            return Err(IndefiniteError::VectorLength { expected: n, found: v.len() });
        }
    }
    let hx = space.h().mul_vec(x);
    Ok(hx
        .iter()
        .zip(y)
        .fold(GaussianRational::zero(), |acc, (a, b)| &acc + &(a * &b.conj())))
}

/// An operator `N` acting on an indefinite space.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixPair {
    n_op: Matrix,
    space: IndefiniteSpace,
}

impl MatrixPair {
    pub fn new(n_op: Matrix, h: Matrix) -> Result<Self, IndefiniteError> {
        let space = IndefiniteSpace::new(h)?;
        Self::with_space(n_op, space)
    }

    pub fn with_space(n_op: Matrix, space: IndefiniteSpace) -> Result<Self, IndefiniteError> {
        if !n_op.is_square() {
            return Err(CoreError::NotSquare { rows: n_op.rows(), cols: n_op.cols() }.into());
        }
        if n_op.rows() != space.dim() {
            return Err(IndefiniteError::DimensionMismatch { n: n_op.rows(), h: space.dim() });
        }
        Ok(Self { n_op, space })
    }

    pub fn n_op(&self) -> &Matrix {
        &self.n_op
    }

    pub fn h(&self) -> &Matrix {
        self.space.h()
    }

    pub fn space(&self) -> &IndefiniteSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.n_op.rows()
    }

    /// Real only when both matrices are tagged real.
    pub fn field(&self) -> FieldKind {
        self.n_op.field().join(self.space.field())
    }

    pub fn adjoint(&self) -> Matrix {
        h_adjoint(&self.n_op, &self.space).expect("dimensions checked on construction")
    }

    pub fn direct_sum(&self, other: &MatrixPair) -> MatrixPair {
        MatrixPair {
            n_op: Matrix::block_diag(&[&self.n_op, &other.n_op]),
            space: self.space.direct_sum(&other.space),
        }
    }

    /// `T^{-1} N T` on the space with `T* H T`.
    pub fn transform(&self, t: &Matrix) -> Result<MatrixPair, IndefiniteError> {
        let t_inv = fraction_free::inverse(t)?;
        let n = &(&t_inv * &self.n_op) * t;
        let h = &(&t.conj_transpose() * self.space.h()) * t;
        MatrixPair::new(n, h)
    }
}

impl fmt::Debug for MatrixPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixPair")
            .field("n", &self.n_op)
            .field("h", self.space.h())
            .finish()
    }
}

/// `N N^[*] = N^[*] N`, exactly.
pub fn is_h_normal(pair: &MatrixPair) -> bool {
    let adj = pair.adjoint();
    &pair.n_op * &adj == &adj * &pair.n_op
}

/// Linearly independent column vectors spanning a subspace.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    vectors: Vec<Vector>,
    ambient_dim: usize,
}

impl SubspaceBasis {
    pub fn new(vectors: Vec<Vector>, ambient_dim: usize) -> Result<Self, IndefiniteError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(IndefiniteError::VectorLength { expected: ambient_dim, found: v.len() });
        }
        if !vectors.is_empty() {
            let m = Matrix::from_columns(&vectors, ambient_dim, FieldKind::Complex);
            if fraction_free::rank(&m) != vectors.len() {
                return Err(IndefiniteError::LinearlyDependent);
            }
        }
        Ok(Self { vectors, ambient_dim })
    }

    /// Span of arbitrary vectors; dependent ones are dropped.
    pub fn span(vectors: &[Vector], ambient_dim: usize) -> Self {
        let (rows, _) = fraction_free::echelon_basis(vectors, ambient_dim);
        Self { vectors: rows, ambient_dim }
    }

    pub fn standard(indices: &[usize], ambient_dim: usize) -> Self {
        let vectors = indices
            .iter()
            .map(|&i| {
                let mut v = vec![GaussianRational::zero(); ambient_dim];
                v[i] = GaussianRational::one();
                v
            })
            .collect();
        Self::new(vectors, ambient_dim).expect("distinct standard vectors")
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Self::standard(&(0..ambient_dim).collect::<Vec<_>>(), ambient_dim)
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_real(&self) -> bool {
        self.vectors.iter().flatten().all(GaussianRational::is_real)
    }

    /// Basis vectors as columns.
    pub fn to_matrix(&self) -> Matrix {
        let field = if self.is_real() { FieldKind::Real } else { FieldKind::Complex };
        Matrix::from_columns(&self.vectors, self.ambient_dim, field)
    }

    /// Canonical reduced row echelon basis of the same span, with pivots.
    pub fn canonical(&self) -> (SubspaceBasis, Vec<usize>) {
        let (rows, pivots) = fraction_free::echelon_basis(&self.vectors, self.ambient_dim);
        (Self { vectors: rows, ambient_dim: self.ambient_dim }, pivots)
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        let mut all = self.vectors.clone();
        all.push(v.to_vec());
        let m = Matrix::from_columns(&all, self.ambient_dim, FieldKind::Complex);
        fraction_free::rank(&m) == self.dim()
    }

    /// Sum `V + W`, not necessarily direct.
    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        Self::span(&all, self.ambient_dim)
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubspaceBasis")
            .field("ambient_dim", &self.ambient_dim)
            .field("vectors", &self.vectors)
            .finish()
    }
}

/// `G = V* H V`, so `G[i][j] = [v_j, v_i]`.
pub fn gram(sub: &SubspaceBasis, space: &IndefiniteSpace) -> Matrix {
    let v = sub.to_matrix();
    &(&v.conj_transpose() * space.h()) * &v
}

pub fn is_neutral(sub: &SubspaceBasis, space: &IndefiniteSpace) -> bool {
    sub.dim() == 0 || gram(sub, space).is_zero()
}

pub fn is_nondegenerate(sub: &SubspaceBasis, space: &IndefiniteSpace) -> bool {
    sub.dim() == 0 || fraction_free::rank(&gram(sub, space)) == sub.dim()
}

/// `{x : [x, y] = 0 for all y in sub}` = kernel of `V* H`.
pub fn h_orthogonal_complement(sub: &SubspaceBasis, space: &IndefiniteSpace) -> SubspaceBasis {
    let n = space.dim();
    if sub.dim() == 0 {
        return SubspaceBasis::whole(n);
    }
    let a = &sub.to_matrix().conj_transpose() * space.h();
    let kernel = fraction_free::kernel_basis(&a);
    SubspaceBasis::new(kernel, n).expect("kernel basis is independent")
}

/// `A V ⊆ V`.
pub fn is_invariant(sub: &SubspaceBasis, a: &Matrix) -> bool {
    if sub.dim() == 0 {
        return true;
    }
    let v = sub.to_matrix();
    let av = a * &v;
    fraction_free::rank(&v.hstack(&av)) == sub.dim()
}
