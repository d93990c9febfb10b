//! Characteristic polynomials `det(tI - A)`.

use super::matrix::Matrix;
use super::poly::Polynomial;
use super::scalar::GaussianRational;

/// Exact similarity reduction to upper Hessenberg form.
fn hessenberg(a: &Matrix) -> Vec<Vec<GaussianRational>> {
    let n = a.rows();
    let mut h = a.to_rows();
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&r| !h[r][c].is_zero()) else {
            continue;
        };
        if p != c + 1 {
            h.swap(p, c + 1);
            for row in h.iter_mut() {
                row.swap(p, c + 1);
            }
        }
        let pivot_inv = h[c + 1][c].inv().expect("nonzero pivot");
        for i in c + 2..n {
            if h[i][c].is_zero() {
                continue;
            }
            let m = &h[i][c] * &pivot_inv;
            // row_i -= m row_{c+1}
            for j in 0..n {
                let d = &m * &h[c + 1][j];
                h[i][j] -= &d;
            }
            // col_{c+1} += m col_i
            for row in h.iter_mut() {
                let d = &m * &row[i];
                row[c + 1] += &d;
            }
        }
    }
    h
}

/// Characteristic polynomial via Hessenberg reduction; monic of degree `n`.
pub fn char_poly(a: &Matrix) -> Polynomial {
    assert!(a.is_square(), "char_poly of non-square matrix");
    let n = a.rows();
    let h = hessenberg(a);
    let mut p: Vec<Polynomial> = Vec::with_capacity(n + 1);
    p.push(Polynomial::one());
    for m in 0..n {
        let mut next = &Polynomial::linear(&h[m][m]) * &p[m];
        let mut sub = GaussianRational::one();
        for i in (0..m).rev() {
            sub = &sub * &h[i + 1][i];
            if sub.is_zero() {
                break;
            }
            let coef = &sub * &h[i][m];
            if !coef.is_zero() {
                next = &next - &p[i].scale(&coef);
            }
        }
        p.push(next);
    }
    p.pop().expect("nonempty")
}

/// Faddeev–LeVerrier recurrence. Slower; kept as an independent check.
pub fn char_poly_faddeev_leverrier(a: &Matrix) -> Polynomial {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![GaussianRational::zero(); n + 1];
    coeffs[n] = GaussianRational::one();
    let mut m = Matrix::zeros(n, n, a.field());
    for k in 1..=n {
        m = (a * &m).shift(&-&coeffs[n - k + 1]);
        let am = a * &m;
        let ck = &-&am.trace() * &GaussianRational::from_ratio(1, k as i64);
        coeffs[n - k] = ck;
    }
    Polynomial::new(coeffs)
}
