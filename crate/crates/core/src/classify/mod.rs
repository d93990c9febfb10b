//! Spectral classification into theorem cases and the size windows that go
//! with them.

mod reduce;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{char_poly, poly_roots, CoreError, FieldKind, Root, RootsConfig};
use crate::indefinite::{is_h_normal, MatrixPair};

pub use reduce::{
    compute_s0_complex, compute_s0_real, reduce_augdec, reduce_pred1, CanonicalReduction,
    JointEigenstructure, ReduceError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    ComplexA,
    ComplexB,
    RealA,
    RealB,
    RealC,
    RealD,
    RealE,
    OutOfTheoremScope,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("case {case} with k = {k}: possible only if k is even")]
    OddKForDE { case: CaseLabel, k: usize },
    #[error("rank k must be positive")]
    ZeroK,
    #[error("no size window for {0}")]
    NoWindow(CaseLabel),
    #[error("pair is not H-normal")]
    NotHNormal,
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// `(f1, f2)` with `f1 <= n <= f2` for an indecomposable pair of rank `k`.
pub fn bound_window(case: CaseLabel, k: usize) -> Result<(usize, usize), ClassifyError> {
    if k == 0 {
        return Err(ClassifyError::ZeroK);
    }
    match case {
        CaseLabel::ComplexA | CaseLabel::RealA => Ok((2 * k, 4 * k)),
        CaseLabel::ComplexB | CaseLabel::RealB => Ok((2 * k, 2 * k)),
        CaseLabel::RealD | CaseLabel::RealE if k % 2 == 1 => Err(ClassifyError::OddKForDE { case, k }),
        CaseLabel::RealD | CaseLabel::RealE => Ok((2 * k, 2 * k)),
        CaseLabel::RealC if k == 1 => Ok((2, 2)),
        CaseLabel::RealC => Ok((2 * k, 10 * (k / 2) - 2)),
        CaseLabel::OutOfTheoremScope => Err(ClassifyError::NoWindow(case)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub field: FieldKind,
    pub n: usize,
    pub k: usize,
    pub signature: (usize, usize),
    pub eigenvalues: Vec<Root>,
    /// All eigenvalues were found exactly.
    pub exact: bool,
    pub case_label: CaseLabel,
    pub bound_window: Option<(usize, usize)>,
    pub bound_ok: bool,
    pub notes: Vec<String>,
}

pub fn classify(pair: &MatrixPair) -> Result<ClassificationReport, ClassifyError> {
    classify_with(pair, &RootsConfig::default())
}

pub fn classify_with(pair: &MatrixPair, config: &RootsConfig) -> Result<ClassificationReport, ClassifyError> {
    if !is_h_normal(pair) {
        return Err(ClassifyError::NotHNormal);
    }
    let n = pair.dim();
    let field = pair.field();
    let signature = pair.space().signature();
    let k = pair.space().rank_v();
    let eigenvalues = poly_roots(&char_poly(pair.n_op()), config)?;
    let exact = eigenvalues.iter().all(|r| r.value.as_exact().is_some());
    let mut notes = Vec::new();
    if !exact {
        notes.push(format!("spectrum partly approximate (grouping tolerance {:e})", config.tolerance));
    }

    let case_label = if k == 0 {
        notes.push("H is definite (k = 0); the theorems need k > 0".to_string());
        CaseLabel::OutOfTheoremScope
    } else {
        match field {
            FieldKind::Complex => match eigenvalues.len() {
                1 => CaseLabel::ComplexA,
                2 => CaseLabel::ComplexB,
                _ => CaseLabel::OutOfTheoremScope,
            },
            FieldKind::Real => {
                let tol = config.tolerance;
                let real = eigenvalues.iter().filter(|r| r.value.is_real(tol)).count();
                let pairs = eigenvalues
                    .iter()
                    .filter(|r| r.value.to_complex64().im > tol)
                    .count();
                match (real, pairs) {
                    (1, 0) => CaseLabel::RealA,
                    (2, 0) => CaseLabel::RealB,
                    (0, 1) => CaseLabel::RealC,
                    (1, 1) => CaseLabel::RealD,
                    (0, 2) => CaseLabel::RealE,
                    _ => CaseLabel::OutOfTheoremScope,
                }
            }
        }
    };
    if case_label == CaseLabel::OutOfTheoremScope && k > 0 {
        notes.push(
            "eigenvalue pattern matches no theorem case; an indecomposable pair always matches one, so this pair is decomposable"
                .to_string(),
        );
    }

    let (bound_window, bound_ok) = match bound_window(case_label, k) {
        Ok(w) => (Some(w), w.0 <= n && n <= w.1),
        Err(ClassifyError::NoWindow(_)) | Err(ClassifyError::ZeroK) => (None, false),
        Err(e) => {
            notes.push(e.to_string());
            (None, false)
        }
    };
    if let (Some((f1, f2)), false) = (bound_window, bound_ok) {
        notes.push(format!("n = {n} lies outside [{f1}, {f2}]; the pair is decomposable"));
    }

    Ok(ClassificationReport { field, n, k, signature, eigenvalues, exact, case_label, bound_window, bound_ok, notes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(bound_window(CaseLabel::ComplexA, 3).unwrap(), (6, 12));
        assert_eq!(bound_window(CaseLabel::RealC, 1).unwrap(), (2, 2));
        assert_eq!(bound_window(CaseLabel::RealC, 2).unwrap(), (4, 8));
        assert_eq!(bound_window(CaseLabel::RealC, 5).unwrap(), (10, 18));
        assert_eq!(bound_window(CaseLabel::RealD, 2).unwrap(), (4, 4));
        assert!(matches!(bound_window(CaseLabel::RealE, 3), Err(ClassifyError::OddKForDE { .. })));
    }
}
