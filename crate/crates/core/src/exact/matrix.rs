//! Dense row-major matrices over the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::scalar::{GaussianRational, Rational};
use super::CoreError;

/// Field a matrix is declared over. Real matrices never hold a nonreal entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Real,
    Complex,
}

impl FieldKind {
    /// Smallest field containing both.
    pub fn join(self, other: FieldKind) -> FieldKind {
        if self == FieldKind::Real && other == FieldKind::Real {
            FieldKind::Real
        } else {
            FieldKind::Complex
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Real => write!(f, "real"),
            FieldKind::Complex => write!(f, "complex"),
        }
    }
}

/// Column vector.
pub type Vector = Vec<GaussianRational>;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
    field: FieldKind,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    field: FieldKind,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<GaussianRational>>,
}

impl From<Matrix> for MatrixRepr {
    fn from(m: Matrix) -> Self {
        MatrixRepr { field: m.field, rows: m.rows, cols: m.cols, entries: m.to_rows() }
    }
}

impl TryFrom<MatrixRepr> for Matrix {
    type Error = CoreError;
    fn try_from(repr: MatrixRepr) -> Result<Self, CoreError> {
        if repr.entries.len() != repr.rows {
            return Err(CoreError::DimensionMismatch {
                op: "deserialize",
                left: (repr.rows, repr.cols),
                right: (repr.entries.len(), repr.cols),
            });
        }
        if repr.rows == 0 {
            return Ok(Matrix::zeros(0, repr.cols, repr.field));
        }
        Matrix::from_rows(repr.entries, repr.field)
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldKind) -> Self {
        Self { rows, cols, entries: vec![GaussianRational::zero(); rows * cols], field }
    }

    pub fn identity(n: usize, field: FieldKind) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = GaussianRational::one();
        }
        m
    }

    /// `D_r`: ones on the trailing (anti-)diagonal.
    pub fn trailing_identity(n: usize, field: FieldKind) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.entries[i * n + (n - 1 - i)] = GaussianRational::one();
        }
        m
    }

    /// `diag(d) + superdiagonal ones`.
    pub fn jordan_block(n: usize, eigenvalue: &GaussianRational, field: FieldKind) -> Self {
        let mut m = Self::diagonal(&vec![eigenvalue.clone(); n], field);
        for i in 0..n.saturating_sub(1) {
            m.entries[i * n + i + 1] = GaussianRational::one();
        }
        m
    }

    /// Panics if `field` is real and some entry is not.
    pub fn diagonal(diag: &[GaussianRational], field: FieldKind) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n, field);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>, field: FieldKind) -> Result<Self, CoreError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(CoreError::RaggedRows { row: i, expected: c, found: row.len() });
            }
            for (j, x) in row.into_iter().enumerate() {
                if field == FieldKind::Real && !x.is_real() {
                    return Err(CoreError::FieldMismatch { row: i, col: j });
                }
                entries.push(x);
            }
        }
        Ok(Self { rows: r, cols: c, entries, field })
    }

    /// Convenience constructor from rationals given as `(num, den)` pairs.
    pub fn from_ratios(rows: &[&[(i64, i64)]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&(p, q)| GaussianRational::from_ratio(p, q)).collect())
            .collect();
        Self::from_rows(data, FieldKind::Real).expect("rectangular input")
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&p| GaussianRational::from_int(p)).collect())
            .collect();
        Self::from_rows(data, FieldKind::Real).expect("rectangular input")
    }

    /// Builds a matrix with the given columns.
    pub fn from_columns(columns: &[Vector], rows: usize, field: FieldKind) -> Self {
        let mut m = Self::zeros(rows, columns.len(), field);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.cols + j]
    }

    /// Panics if a nonreal value is written into a real matrix.
    pub fn set(&mut self, i: usize, j: usize, value: GaussianRational) {
        assert!(
            self.field == FieldKind::Complex || value.is_real(),
            "nonreal entry written into real matrix at ({i}, {j})"
        );
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// True if every entry has zero imaginary part, whatever the tag says.
    pub fn has_real_entries(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_real)
    }

    /// Re-tags the matrix. Fails when asked to call nonreal data real.
    pub fn with_field(mut self, field: FieldKind) -> Result<Self, CoreError> {
        if field == FieldKind::Real {
            if let Some(pos) = self.entries.iter().position(|x| !x.is_real()) {
                return Err(CoreError::FieldMismatch { row: pos / self.cols, col: pos % self.cols });
            }
        }
        self.field = field;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// `A*`, the conjugate transpose.
    pub fn conj_transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        t
    }

    pub fn is_hermitian(&self) -> bool {
        self.first_non_hermitian_entry().is_none()
    }

    /// First `(i, j)` with `a_ij != conj(a_ji)`, scanning the upper triangle.
    pub fn first_non_hermitian_entry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.get(i, j) != self.get(j, i).conj() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, CoreError> {
        if self.cols != other.rows {
            return Err(CoreError::DimensionMismatch {
                op: "mat_mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols, self.field.join(other.field));
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * other.cols + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        op: &'static str,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Result<Matrix, CoreError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoreError::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: self.field.join(other.field),
        })
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix, CoreError> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix, CoreError> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    pub fn scale(&self, s: &GaussianRational) -> Matrix {
        let field = if s.is_real() { self.field } else { FieldKind::Complex };
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
            field,
        }
    }

    /// `A - s I`.
    pub fn shift(&self, s: &GaussianRational) -> Matrix {
        assert!(self.is_square(), "shift of non-square matrix");
        let mut out = self.clone();
        if !s.is_real() {
            out.field = FieldKind::Complex;
        }
        for i in 0..self.rows {
            let v = self.get(i, i) - s;
            out.entries[i * self.cols + i] = v;
        }
        out
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vector {
        assert_eq!(v.len(), self.cols, "mul_vec dimension");
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut result = Matrix::identity(self.rows, self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn trace(&self) -> GaussianRational {
        let mut t = GaussianRational::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols, self.field);
        for i in 0..rows {
            for j in 0..cols {
                m.entries[i * cols + j] = self.get(row0 + i, col0 + j).clone();
            }
        }
        m
    }

    /// Writes `block` with its top-left corner at `(row0, col0)`.
    pub fn set_block(&mut self, row0: usize, col0: usize, block: &Matrix) {
        if block.field == FieldKind::Complex && !block.has_real_entries() {
            assert_eq!(self.field, FieldKind::Complex, "complex block into real matrix");
        }
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(row0 + i) * self.cols + col0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let field = blocks.iter().fold(FieldKind::Real, |f, b| f.join(b.field));
        let mut m = Matrix::zeros(rows, cols, field);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    /// Assembles a matrix from a grid of equally-sized `b x b` blocks;
    /// `None` entries are zero blocks.
    pub fn from_block_grid(grid: &[Vec<Option<Matrix>>], b: usize, field: FieldKind) -> Matrix {
        let nb = grid.len();
        let mut m = Matrix::zeros(nb * b, nb * b, field);
        for (bi, row) in grid.iter().enumerate() {
            assert_eq!(row.len(), nb, "square block grid");
            for (bj, block) in row.iter().enumerate() {
                if let Some(block) = block {
                    m.set_block(bi * b, bj * b, block);
                }
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols, self.field.join(other.field));
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols, self.field.join(other.field));
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    /// Entrywise real parts, tagged real.
    pub fn real_part(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| GaussianRational::real(x.re.clone())).collect(),
            field: FieldKind::Real,
        }
    }

    pub fn map_real(&self, f: impl Fn(&Rational) -> Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|x| GaussianRational::new(f(&x.re), f(&x.im)))
                .collect(),
            field: self.field,
        }
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product dimensions")
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum dimensions")
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix difference dimensions")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-GaussianRational::one())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix<{}> {}x{} [", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral_for_product() {
        let x = Matrix::from_ratios(&[&[(1, 2), (3, 1)], &[(-1, 3), (5, 7)]]);
        let i2 = Matrix::identity(2, FieldKind::Real);
        assert_eq!(&i2 * &x, x);
        assert_eq!(&x * &i2, x);
    }

    #[test]
    fn trailing_identity_squares_to_identity() {
        let d2 = Matrix::trailing_identity(2, FieldKind::Real);
        assert_eq!(d2, Matrix::from_ints(&[&[0, 1], &[1, 0]]));
        assert!((&d2 * &d2).is_identity());
    }

    #[test]
    fn even_seed_product() {
        // [[1/2,1],[-1,0]] * [[0,1],[-1,1/2]] = [[-1,1],[0,-1]]
        let a = Matrix::from_ratios(&[&[(1, 2), (1, 1)], &[(-1, 1), (0, 1)]]);
        let b = Matrix::from_ratios(&[&[(0, 1), (1, 1)], &[(-1, 1), (1, 2)]]);
        assert_eq!(&a * &b, Matrix::from_ints(&[&[-1, 1], &[0, -1]]));
    }

    #[test]
    fn product_dimension_mismatch() {
        let a = Matrix::zeros(2, 3, FieldKind::Real);
        assert!(matches!(a.checked_mul(&a), Err(CoreError::DimensionMismatch { .. })));
    }

    #[test]
    fn conj_transpose_conjugates() {
        let mut a = Matrix::zeros(2, 2, FieldKind::Complex);
        a.set(0, 0, GaussianRational::i());
        let mut expected = Matrix::zeros(2, 2, FieldKind::Complex);
        expected.set(0, 0, -GaussianRational::i());
        assert_eq!(a.conj_transpose(), expected);
        let s = Matrix::from_ints(&[&[1, 2], &[2, 5]]);
        assert_eq!(s.conj_transpose(), s);
    }

    #[test]
    fn real_field_gate() {
        let rows = vec![vec![GaussianRational::i()]];
        assert!(matches!(
            Matrix::from_rows(rows.clone(), FieldKind::Real),
            Err(CoreError::FieldMismatch { row: 0, col: 0 })
        ));
        let m = Matrix::from_rows(rows, FieldKind::Complex).unwrap();
        assert!(m.with_field(FieldKind::Real).is_err());
    }

    #[test]
    fn serde_roundtrip() {
        let a = Matrix::from_ratios(&[&[(1, 2), (3, 1)], &[(-1, 3), (5, 7)]]);
        let text = serde_json::to_string(&a).unwrap();
        let back: Matrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
