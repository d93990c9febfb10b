//! Sparse exact row reduction for large structured systems.
//!
//! The commutant equations `XN - NX = 0` have `n^2` unknowns but only a
//! handful of nonzeros per row, so they are reduced row by row with sorted
//! sparse rows instead of the dense fraction-free engine.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use super::scalar::{GaussianRational, Rational};

/// Minimal exact field interface used by [`SparseSystem`].
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics on zero divisor.
    fn div(&self, rhs: &Self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

type SparseRow<F> = Vec<(usize, F)>;

/// Homogeneous linear system `A x = 0` stored as sparse rows.
#[derive(Debug, Clone)]
pub struct SparseSystem<F: Field> {
    ncols: usize,
    rows: Vec<SparseRow<F>>,
}

impl<F: Field> SparseSystem<F> {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds one equation; repeated columns are summed, zeros dropped.
    pub fn push_equation(&mut self, terms: impl IntoIterator<Item = (usize, F)>) {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (col, value) in terms {
            assert!(col < self.ncols, "column {col} out of range");
            if value.is_zero() {
                continue;
            }
            let entry = acc.entry(col).or_insert_with(F::zero);
            *entry = entry.add(&value);
        }
        let row: SparseRow<F> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    /// Reduced row echelon form: `(pivot column, normalized row)` pairs in
    /// increasing pivot order.
    fn reduce(&self) -> Vec<(usize, SparseRow<F>)> {
        let mut pivots: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
        for row in &self.rows {
            let mut work: BTreeMap<usize, F> = row.iter().cloned().collect();
            let mut cursor = 0;
            loop {
                let Some((&col, value)) = work.range(cursor..).next() else {
                    break;
                };
                let value = value.clone();
                match pivots.get(&col) {
                    Some(prow) => {
                        for (c, v) in prow {
                            let delta = value.mul(v);
                            let entry = work.entry(*c).or_insert_with(F::zero);
                            *entry = entry.sub(&delta);
                            if entry.is_zero() {
                                work.remove(c);
                            }
                        }
                        cursor = col + 1;
                    }
                    None => {
                        let normalized: SparseRow<F> =
                            work.iter().map(|(&c, v)| (c, v.div(&value))).collect();
                        pivots.insert(col, normalized);
                        break;
                    }
                }
            }
        }
        // Back substitution, highest pivot first.
        let cols: Vec<usize> = pivots.keys().rev().copied().collect();
        for &pc in &cols {
            let row = pivots.get(&pc).expect("pivot").clone();
            let mut work: BTreeMap<usize, F> = row.into_iter().collect();
            let later: Vec<usize> = work.keys().copied().filter(|&c| c > pc && pivots.contains_key(&c)).collect();
            for c in later {
                let Some(factor) = work.get(&c).cloned() else { continue };
                for (cc, v) in &pivots[&c] {
                    let delta = factor.mul(v);
                    let entry = work.entry(*cc).or_insert_with(F::zero);
                    *entry = entry.sub(&delta);
                    if entry.is_zero() {
                        work.remove(cc);
                    }
                }
            }
            pivots.insert(pc, work.into_iter().collect());
        }
        pivots.into_iter().collect()
    }

    pub fn rank(&self) -> usize {
        self.reduce().len()
    }

    /// Null space basis, one vector per free column (that coordinate one).
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let reduced = self.reduce();
        let mut is_pivot = vec![false; self.ncols];
        for (pc, _) in &reduced {
            is_pivot[*pc] = true;
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| !is_pivot[c]).collect();
        let mut slot = vec![usize::MAX; self.ncols];
        for (idx, &f) in free.iter().enumerate() {
            slot[f] = idx;
        }
        let mut basis: Vec<Vec<F>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.ncols];
                v[f] = F::one();
                v
            })
            .collect();
        for (pc, row) in &reduced {
            for (c, value) in row {
                if *c != *pc {
                    basis[slot[*c]][*pc] = F::zero().sub(value);
                }
            }
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    #[test]
    fn nullspace_of_small_system() {
        // x0 + x1 = 0, x2 = 0 over 3 unknowns
        let mut sys = SparseSystem::<Rational>::new(3);
        sys.push_equation([(0, int(1)), (1, int(1))]);
        sys.push_equation([(2, int(1))]);
        let ns = sys.nullspace();
        assert_eq!(ns, vec![vec![int(-1), int(1), int(0)]]);
        assert_eq!(sys.rank(), 2);
    }

    #[test]
    fn dependent_rows_collapse() {
        let mut sys = SparseSystem::<Rational>::new(2);
        sys.push_equation([(0, int(1)), (1, int(2))]);
        sys.push_equation([(0, int(2)), (1, int(4))]);
        sys.push_equation([(1, int(0))]);
        assert_eq!(sys.rank(), 1);
        assert_eq!(sys.nullspace().len(), 1);
    }

    #[test]
    fn back_substitution_reaches_rref() {
        // x0 + x1 + x2 = 0, x1 - x2 = 0 -> x0 = -2 x2, x1 = x2
        let mut sys = SparseSystem::<Rational>::new(3);
        sys.push_equation([(0, int(1)), (1, int(1)), (2, int(1))]);
        sys.push_equation([(1, int(1)), (2, int(-1))]);
        assert_eq!(sys.nullspace(), vec![vec![int(-2), int(1), int(1)]]);
    }
}
