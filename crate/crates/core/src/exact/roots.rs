//! Roots of exact polynomials.
//!
//! Each squarefree factor is solved numerically (Aberth iteration). Every
//! numeric root is then offered as a Gaussian-rational candidate, and only
//! candidates that annihilate the factor exactly are reported as exact.
//! The rest stay approximate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, One};
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::scalar::{GaussianRational, Rational};
use super::CoreError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootsConfig {
    /// Approximate roots closer than this are merged.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for RootsConfig {
    fn default() -> Self {
        Self { tolerance: 1e-9, max_iterations: 2000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum RootValue {
    Exact(GaussianRational),
    Approx { re: f64, im: f64 },
}

impl RootValue {
    pub fn as_exact(&self) -> Option<&GaussianRational> {
        match self {
            RootValue::Exact(z) => Some(z),
            RootValue::Approx { .. } => None,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        match self {
            RootValue::Exact(z) => z.to_complex64(),
            RootValue::Approx { re, im } => Complex64::new(*re, *im),
        }
    }

    /// Real for exact roots means `im == 0`; approximate roots use `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        match self {
            RootValue::Exact(z) => z.is_real(),
            RootValue::Approx { im, .. } => im.abs() <= tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: RootValue,
    pub multiplicity: usize,
}

/// All roots with algebraic multiplicities summing to the degree. Exact
/// roots come first, sorted by real then imaginary part.
pub fn poly_roots(p: &Polynomial, config: &RootsConfig) -> Result<Vec<Root>, CoreError> {
    let mut exact: Vec<Root> = Vec::new();
    let mut approx: Vec<(Complex64, usize)> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let numeric = aberth(&factor, config)?;
        for z in numeric {
            match reconstruct(&factor, z) {
                Some(x) if !exact.iter().any(|r| r.value.as_exact() == Some(&x)) => {
                    exact.push(Root { value: RootValue::Exact(x), multiplicity: mult });
                }
                Some(_) => {}
                None => approx.push((z, mult)),
            }
        }
    }
    exact.sort_by(|a, b| {
        let (x, y) = (a.value.as_exact().unwrap(), b.value.as_exact().unwrap());
        x.re.cmp(&y.re).then_with(|| x.im.cmp(&y.im))
    });
    let mut merged: Vec<(Complex64, usize)> = Vec::new();
    for (z, m) in approx {
        match merged.iter_mut().find(|(w, _)| (*w - z).norm() <= config.tolerance) {
            Some(entry) => entry.1 += m,
            None => merged.push((z, m)),
        }
    }
    merged.sort_by(|(a, _), (b, _)| {
        a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
    });
    exact.extend(merged.into_iter().map(|(z, m)| Root {
        value: RootValue::Approx { re: z.re, im: z.im },
        multiplicity: m,
    }));
    Ok(exact)
}

/// Distinct exact roots only, ignoring any approximate ones.
pub fn exact_roots(p: &Polynomial) -> Result<Vec<(GaussianRational, usize)>, CoreError> {
    Ok(poly_roots(p, &RootsConfig::default())?
        .into_iter()
        .filter_map(|r| r.value.as_exact().cloned().map(|z| (z, r.multiplicity)))
        .collect())
}

/// Clearing denominators gives leading coefficient `L` over `Z[i]`; for a
/// root `x` in `Q(i)` the number `L x` is a Gaussian integer.
fn reconstruct(f: &Polynomial, z: Complex64) -> Option<GaussianRational> {
    let d = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    let lead = f.leading()?* &GaussianRational::real(Rational::from_integer(d));
    let w = lead.to_complex64() * z;
    let round = |v: f64| BigInt::from_f64(v.round()).map(Rational::from_integer);
    let y = GaussianRational::new(round(w.re)?, round(w.im)?);
    let x = &y / &lead;
    f.eval(&x).is_zero().then_some(x)
}

fn aberth(f: &Polynomial, config: &RootsConfig) -> Result<Vec<Complex64>, CoreError> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let monic = f.monic();
    if deg == 1 {
        return Ok(vec![(-&monic.coeff(0)).to_complex64()]);
    }
    let c: Vec<Complex64> = monic.coeffs().iter().map(GaussianRational::to_complex64).collect();
    let dc: Vec<Complex64> = (1..c.len()).map(|k| c[k] * k as f64).collect();
    let eval = |coeffs: &[Complex64], x: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a);
    let radius = 1.0 + c[..deg].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / deg as f64))
        .collect();
    let mut converged = false;
    for _ in 0..config.max_iterations {
        let mut max_step: f64 = 0.0;
        for k in 0..deg {
            let pz = eval(&c, z[k]);
            let dpz = eval(&dc, z[k]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / dpz;
            let repulsion: Complex64 = (0..deg).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            } else {
                z[k] += Complex64::new(1e-3, 1e-3);
                max_step = f64::INFINITY;
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        // Accept if the residuals are already tiny.
        let worst = z.iter().map(|x| eval(&c, *x).norm()).fold(0.0, f64::max);
        if !(worst < 1e-8) {
            return Err(CoreError::RootsNonconvergence { degree: deg });
        }
    }
    for x in z.iter_mut() {
        for _ in 0..3 {
            let d = eval(&dc, *x);
            if d.norm() == 0.0 {
                break;
            }
            let next = *x - eval(&c, *x) / d;
            if next.is_finite() {
                *x = next;
            }
        }
    }
    Ok(z)
}
