//! Fraction-free Gauss–Jordan elimination over the Gaussian integers.
//!
//! Each row of a Gaussian-rational matrix is scaled by the lcm of its
//! denominators, then eliminated with the Bareiss update
//! `a_ij <- (p * a_ij - a_ik * a_kj) / p_prev`, where the division is exact.
//! After elimination every pivot entry equals the same value `d` (the last
//! pivot), so the reduced row echelon form is the result divided by `d`.

use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{FieldKind, Matrix, Vector};
use super::scalar::{GaussianRational, Rational};
use super::CoreError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GaussianInteger {
    re: BigInt,
    im: BigInt,
}

impl GaussianInteger {
    fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn one() -> Self {
        Self { re: BigInt::one(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn to_rational(&self) -> GaussianRational {
        GaussianRational::new(
            Rational::from_integer(self.re.clone()),
            Rational::from_integer(self.im.clone()),
        )
    }

    /// Exact quotient; panics if `rhs` does not divide `self`.
    fn exact_div(&self, rhs: &GaussianInteger) -> GaussianInteger {
        if rhs.im.is_zero() {
            let (qr, rr) = self.re.div_rem(&rhs.re);
            let (qi, ri) = self.im.div_rem(&rhs.re);
            assert!(rr.is_zero() && ri.is_zero(), "inexact fraction-free division");
            return GaussianInteger { re: qr, im: qi };
        }
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let num_re = &self.re * &rhs.re + &self.im * &rhs.im;
        let num_im = &self.im * &rhs.re - &self.re * &rhs.im;
        let (qr, rr) = num_re.div_rem(&norm);
        let (qi, ri) = num_im.div_rem(&norm);
        assert!(rr.is_zero() && ri.is_zero(), "inexact fraction-free division");
        GaussianInteger { re: qr, im: qi }
    }
}

impl Mul<&GaussianInteger> for &GaussianInteger {
    type Output = GaussianInteger;
    fn mul(self, rhs: &GaussianInteger) -> GaussianInteger {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianInteger { re: &self.re * &rhs.re, im: BigInt::zero() };
        }
        GaussianInteger {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Sub<&GaussianInteger> for &GaussianInteger {
    type Output = GaussianInteger;
    fn sub(self, rhs: &GaussianInteger) -> GaussianInteger {
        GaussianInteger { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

fn scale_row_to_integers(row: &[GaussianRational]) -> Vec<GaussianInteger> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
    row.iter()
        .map(|x| {
            let scaled_re = &x.re * Rational::from_integer(lcm.clone());
            let scaled_im = &x.im * Rational::from_integer(lcm.clone());
            GaussianInteger { re: scaled_re.to_integer(), im: scaled_im.to_integer() }
        })
        .collect()
}

/// Result of a fraction-free Gauss–Jordan pass.
pub(crate) struct Elimination {
    rows: Vec<Vec<GaussianInteger>>,
    /// Pivot column of each of the first `pivots.len()` rows.
    pivots: Vec<usize>,
    /// Common value of every pivot entry.
    scale: GaussianInteger,
    swaps: usize,
}

impl Elimination {
    /// Eliminates, choosing pivots only among the first `pivot_cols` columns.
    fn run(mut rows: Vec<Vec<GaussianInteger>>, pivot_cols: usize) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut prev = GaussianInteger::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        for col in 0..pivot_cols {
            let r = pivots.len();
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            if p != r {
                rows.swap(p, r);
                swaps += 1;
            }
            let pivot_row = rows[r].clone();
            let piv = pivot_row[col].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                let factor = row[col].clone();
                for j in 0..ncols {
                    let lhs = &piv * &row[j];
                    let updated = if factor.is_zero() || pivot_row[j].is_zero() {
                        lhs
                    } else {
                        &lhs - &(&factor * &pivot_row[j])
                    };
                    row[j] = updated.exact_div(&prev);
                }
            }
            prev = piv;
            pivots.push(col);
        }
        Elimination { rows, pivots, scale: prev, swaps }
    }

    fn of_matrix(m: &Matrix) -> Self {
        let rows = (0..m.rows()).map(|i| scale_row_to_integers(m.row(i))).collect();
        Self::run(rows, m.cols())
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn entry(&self, i: usize, j: usize) -> GaussianRational {
        &self.rows[i][j].to_rational() / &self.scale.to_rational()
    }
}

pub fn rank(m: &Matrix) -> usize {
    Elimination::of_matrix(m).rank()
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &Matrix) -> Result<GaussianRational, CoreError> {
    if !m.is_square() {
        return Err(CoreError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(GaussianRational::one());
    }
    // Row scaling multiplies the determinant by the product of the scales.
    let mut scale = GaussianRational::one();
    let rows: Vec<Vec<GaussianInteger>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
            scale = &scale * &GaussianRational::real(Rational::from_integer(lcm));
            scale_row_to_integers(row)
        })
        .collect();
    let elim = Elimination::run(rows, n);
    if elim.rank() < n {
        return Ok(GaussianRational::zero());
    }
    let mut det = &elim.scale.to_rational() / &scale;
    if elim.swaps % 2 == 1 {
        det = -det;
    }
    Ok(det)
}

pub fn inverse(m: &Matrix) -> Result<Matrix, CoreError> {
    if !m.is_square() {
        return Err(CoreError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let rows: Vec<Vec<GaussianInteger>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
            let mut scaled = scale_row_to_integers(row);
            scaled.extend((0..n).map(|j| {
                if j == i {
                    GaussianInteger { re: lcm.clone(), im: BigInt::zero() }
                } else {
                    GaussianInteger::zero()
                }
            }));
            scaled
        })
        .collect();
    let elim = Elimination::run(rows, n);
    if elim.rank() < n {
        return Err(CoreError::SingularMatrix);
    }
    let mut inv = Matrix::zeros(n, n, m.field());
    for i in 0..n {
        // pivot of row i is column i when full rank
        for j in 0..n {
            inv.set(i, j, elim.entry(i, n + j));
        }
    }
    Ok(inv)
}

/// Basis of the null space, one vector per free column, with that column's
/// coordinate equal to one (the standard reduced-echelon basis).
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let elim = Elimination::of_matrix(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &elim.pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![GaussianRational::zero(); n];
            v[f] = GaussianRational::one();
            for (i, &p) in elim.pivots.iter().enumerate() {
                v[p] = -elim.entry(i, f);
            }
            v
        })
        .collect()
}

/// Particular solution of `A X = B` with free variables set to zero, or
/// `None` if the system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>, CoreError> {
    if a.rows() != b.rows() {
        return Err(CoreError::DimensionMismatch {
            op: "solve",
            left: (a.rows(), a.cols()),
            right: (b.rows(), b.cols()),
        });
    }
    let aug = a.hstack(b);
    let rows = (0..aug.rows()).map(|i| scale_row_to_integers(aug.row(i))).collect();
    let elim = Elimination::run(rows, a.cols());
    for i in elim.rank()..aug.rows() {
        if elim.rows[i][a.cols()..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
    }
    let mut x = Matrix::zeros(a.cols(), b.cols(), a.field().join(b.field()));
    for (i, &p) in elim.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, elim.entry(i, a.cols() + j));
        }
    }
    Ok(Some(x))
}

/// Reduced row echelon basis of the span of `vectors` (as rows), together
/// with the pivot columns. The result depends only on the span.
pub fn echelon_basis(vectors: &[Vector], dim: usize) -> (Vec<Vector>, Vec<usize>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let rows: Vec<Vec<GaussianRational>> = vectors.to_vec();
    let m = Matrix::from_rows(rows, FieldKind::Complex).expect("vectors of equal length");
    debug_assert_eq!(m.cols(), dim);
    let elim = Elimination::of_matrix(&m);
    let basis = (0..elim.rank())
        .map(|i| (0..dim).map(|j| elim.entry(i, j)).collect())
        .collect();
    (basis, elim.pivots.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::ratio;

    #[test]
    fn inverse_of_diagonal() {
        let d = Matrix::from_ratios(&[&[(2, 1), (0, 1)], &[(0, 1), (1, 3)]]);
        let expected = Matrix::from_ratios(&[&[(1, 2), (0, 1)], &[(0, 1), (3, 1)]]);
        assert_eq!(inverse(&d).unwrap(), expected);
    }

    #[test]
    fn inverse_of_identity() {
        for k in 1..5 {
            let i = Matrix::identity(k, FieldKind::Real);
            assert_eq!(inverse(&i).unwrap(), i);
        }
    }

    #[test]
    fn inverse_needs_row_swap() {
        let a = Matrix::from_ints(&[&[0, 0, -1], &[-1, 1, 0], &[-1, 0, 0]]);
        let inv = inverse(&a).unwrap();
        assert!((&a * &inv).is_identity());
        assert!((&inv * &a).is_identity());
    }

    #[test]
    fn singular_is_reported() {
        let a = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(&a), Err(CoreError::SingularMatrix));
        assert!(determinant(&a).unwrap().is_zero());
    }

    #[test]
    fn complex_inverse() {
        let rows = vec![
            vec!["1+i".parse().unwrap(), "2".parse().unwrap()],
            vec!["i".parse().unwrap(), "1/2-i".parse().unwrap()],
        ];
        let a = Matrix::from_rows(rows, FieldKind::Complex).unwrap();
        let inv = inverse(&a).unwrap();
        assert!((&a * &inv).is_identity());
    }

    #[test]
    fn determinant_with_sign() {
        let a = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&a).unwrap(), GaussianRational::from_int(-1));
        let b = Matrix::from_ratios(&[&[(1, 2), (1, 1)], &[(-1, 1), (0, 1)]]);
        assert_eq!(determinant(&b).unwrap(), GaussianRational::from_int(1));
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&Matrix::identity(3, FieldKind::Real)).is_empty());
        assert_eq!(kernel_basis(&Matrix::zeros(2, 2, FieldKind::Real)).len(), 2);
        let j2 = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let k = kernel_basis(&j2);
        assert_eq!(k, vec![vec![GaussianRational::one(), GaussianRational::zero()]]);
    }

    #[test]
    fn solve_particular() {
        let a = Matrix::from_ints(&[&[1, 1, 0], &[0, 0, 1]]);
        let b = Matrix::from_ints(&[&[3], &[4]]);
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(&a * &x, b);
        assert_eq!(x.get(1, 0), &GaussianRational::zero());
        let inconsistent = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        let rhs = Matrix::from_ints(&[&[1], &[2]]);
        assert!(solve(&inconsistent, &rhs).unwrap().is_none());
    }

    #[test]
    fn echelon_is_canonical() {
        let v1 = vec![GaussianRational::from_int(2), GaussianRational::from_int(4)];
        let v2 = vec![GaussianRational::real(ratio(1, 3)), GaussianRational::real(ratio(2, 3))];
        let (b1, p1) = echelon_basis(&[v1], 2);
        let (b2, p2) = echelon_basis(&[v2], 2);
        assert_eq!(b1, b2);
        assert_eq!(p1, vec![0]);
        assert_eq!(p2, vec![0]);
    }
}
