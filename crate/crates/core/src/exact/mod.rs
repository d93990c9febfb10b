//! Exact arithmetic: scalars, dense matrices, elimination, polynomials.

pub mod charpoly;
pub mod fraction_free;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod sparse;

pub use charpoly::{char_poly, char_poly_faddeev_leverrier};
pub use fraction_free::{determinant, echelon_basis, inverse, kernel_basis, rank, solve};
pub use matrix::{FieldKind, Matrix, Vector};
pub use poly::Polynomial;
pub use roots::{exact_roots, poly_roots, Root, RootValue, RootsConfig};
pub use scalar::{int, parse_rational, ratio, rational_sqrt, GaussianRational, ParseScalarError, Rational};
pub use sparse::{Field, SparseSystem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("entry ({row}, {col}) is not real in a real matrix")]
    FieldMismatch { row: usize, col: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("root finder did not converge for a factor of degree {degree}")]
    RootsNonconvergence { degree: usize },
}
