//! Exact tools for normal matrices in indefinite inner product spaces:
//! witness constructions, spectral classification, canonical reductions and
//! certified (in)decomposability.

pub mod classify;
pub mod decompose;
pub mod exact;
pub mod indefinite;
pub mod io;
pub mod witnesses;

pub use exact::{CoreError, FieldKind, GaussianRational, Matrix, Rational};
pub use indefinite::{IndefiniteSpace, MatrixPair, SubspaceBasis};
