//! Commutants as null spaces of sparse linear systems.

use crate::exact::{FieldKind, GaussianRational, Matrix, Rational, SparseSystem};
use crate::indefinite::MatrixPair;

/// `{X : XN = NX, XN^[*] = N^[*]X}` over the pair's field.
pub fn commutant_basis(pair: &MatrixPair) -> Vec<Matrix> {
    let n = pair.dim();
    let field = pair.field();
    let adj = pair.adjoint();
    let mut sys = SparseSystem::<GaussianRational>::new(n * n);
    let var = |i: usize, j: usize| i * n + j;
    for a in [pair.n_op(), &adj] {
        // (XA - AX)_{ij} = sum_l X_il A_lj - sum_l A_il X_lj
        for i in 0..n {
            for j in 0..n {
                let mut terms = Vec::new();
                for l in 0..n {
                    let alj = a.get(l, j);
                    if !alj.is_zero() {
                        terms.push((var(i, l), alj.clone()));
                    }
                    let ail = a.get(i, l);
                    if !ail.is_zero() {
                        terms.push((var(l, j), -ail));
                    }
                }
                sys.push_equation(terms);
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let rows = v.chunks(n).map(<[GaussianRational]>::to_vec).collect();
            Matrix::from_rows(rows, field).expect("square")
        })
        .collect()
}

/// Real coordinates of a Hermitian (complex) or symmetric (real) matrix:
/// one per diagonal entry, two (real and imaginary part) per complex
/// off-diagonal pair, one per real off-diagonal pair.
pub(crate) struct HermitianParams {
    n: usize,
    field: FieldKind,
    /// `entry[i][j]` lists `(param, coefficient)` with `Y_ij = sum c θ`.
    entry: Vec<Vec<Vec<(usize, GaussianRational)>>>,
    count: usize,
}

impl HermitianParams {
    pub(crate) fn new(n: usize, field: FieldKind) -> Self {
        let mut entry = vec![vec![Vec::new(); n]; n];
        let mut count = 0;
        let one = GaussianRational::one();
        let i_unit = GaussianRational::i();
        for i in 0..n {
            entry[i][i].push((count, one.clone()));
            count += 1;
            for j in i + 1..n {
                entry[i][j].push((count, one.clone()));
                entry[j][i].push((count, one.clone()));
                count += 1;
                if field == FieldKind::Complex {
                    entry[i][j].push((count, i_unit.clone()));
                    entry[j][i].push((count, -&i_unit));
                    count += 1;
                }
            }
        }
        Self { n, field, entry, count }
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }

    pub(crate) fn assemble(&self, theta: &[Rational]) -> Matrix {
        let mut y = Matrix::zeros(self.n, self.n, self.field);
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.entry[i][j]
                    .iter()
                    .fold(GaussianRational::zero(), |acc, (p, c)| &acc + &(c * &GaussianRational::real(theta[*p].clone())));
                y.set(i, j, v);
            }
        }
        y
    }

    /// Adds the real and imaginary parts of `sum_(a,b,c) c * Y_ab = 0`.
    pub(crate) fn push_complex_equation(
        &self,
        sys: &mut SparseSystem<Rational>,
        terms: &[(usize, usize, GaussianRational)],
    ) {
        let mut re = Vec::new();
        let mut im = Vec::new();
        for (a, b, c) in terms {
            for (p, coef) in &self.entry[*a][*b] {
                let prod = c * coef;
                re.push((*p, prod.re.clone()));
                im.push((*p, prod.im));
            }
        }
        sys.push_equation(re);
        if self.field == FieldKind::Complex {
            sys.push_equation(im);
        }
    }
}

/// Solutions of `P A = A P` with `P` Hermitian (real symmetric for real
/// `field`), over the real numbers. Returns the parameter system.
pub(crate) fn hermitian_commuting_system(a: &Matrix, field: FieldKind) -> (HermitianParams, SparseSystem<Rational>) {
    hermitian_intertwining_system(a, a, field)
}

/// `Y L - R Y = 0` for Hermitian `Y`.
pub(crate) fn hermitian_intertwining_system(
    left: &Matrix,
    right: &Matrix,
    field: FieldKind,
) -> (HermitianParams, SparseSystem<Rational>) {
    let n = left.rows();
    let params = HermitianParams::new(n, field);
    let mut sys = SparseSystem::<Rational>::new(params.count());
    for i in 0..n {
        for j in 0..n {
            let mut terms = Vec::new();
            for l in 0..n {
                let lj = left.get(l, j);
                if !lj.is_zero() {
                    terms.push((i, l, lj.clone()));
                }
                let il = right.get(i, l);
                if !il.is_zero() {
                    terms.push((l, j, -il));
                }
            }
            params.push_complex_equation(&mut sys, &terms);
        }
    }
    (params, sys)
}

/// Real basis of `{X in commutant : X^[*] = X}`.
///
/// `X = H^{-1} Y` with `Y` Hermitian is exactly the `H`-selfadjoint
/// matrices; `XN = NX` becomes `Y N - (H N H^{-1}) Y = 0`. Commuting with
/// `N^[*]` then follows by taking adjoints.
pub fn selfadjoint_commutant_basis(pair: &MatrixPair) -> Vec<Matrix> {
    let field = pair.field();
    let h = pair.h();
    let h_inv = pair.space().h_inv();
    let m = &(h * pair.n_op()) * h_inv;
    let (params, sys) = hermitian_intertwining_system(pair.n_op(), &m, field);
    sys.nullspace()
        .into_iter()
        .map(|theta| {
            let x = h_inv * &params.assemble(&theta);
            x.with_field(field).expect("real data stays real")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(n: &[&[i64]], h: &[&[i64]]) -> MatrixPair {
        MatrixPair::new(Matrix::from_ints(n), Matrix::from_ints(h)).unwrap()
    }

    #[test]
    fn scalar_operator_commutes_with_everything() {
        let p = pair(&[&[3, 0], &[0, 3]], &[&[1, 0], &[0, 1]]);
        assert_eq!(commutant_basis(&p).len(), 4);
        let c = MatrixPair::new(
            Matrix::from_ints(&[&[3, 0], &[0, 3]]).with_field(FieldKind::Complex).unwrap(),
            Matrix::identity(2, FieldKind::Complex),
        )
        .unwrap();
        assert_eq!(selfadjoint_commutant_basis(&c).len(), 4);
        assert_eq!(selfadjoint_commutant_basis(&p).len(), 3);
    }

    #[test]
    fn diagonal_operator() {
        let p = pair(&[&[1, 0], &[0, 2]], &[&[1, 0], &[0, 1]]);
        assert_eq!(commutant_basis(&p).len(), 2);
        assert_eq!(selfadjoint_commutant_basis(&p).len(), 2);
    }

    #[test]
    fn selfadjoint_elements_are_selfadjoint_and_commute() {
        let p = pair(&[&[0, 1], &[0, 0]], &[&[0, 1], &[1, 0]]);
        for x in selfadjoint_commutant_basis(&p) {
            assert_eq!(crate::indefinite::h_adjoint(&x, p.space()).unwrap(), x);
            assert_eq!(&x * p.n_op(), p.n_op() * &x);
        }
    }
}
