//! Explicit H-normal pairs attaining the size bounds, one constructor per
//! family, plus the inductive `N1` used by the lower complex family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::CaseLabel;
use crate::decompose::CertificateKind;
use crate::exact::{
    fraction_free, rational_sqrt, FieldKind, GaussianRational, Matrix, Rational,
};
use crate::indefinite::{is_h_normal, IndefiniteError, MatrixPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    ComplexALower,
    ComplexAUpper,
    ComplexB,
    RealCEven,
    RealCOdd,
    RealD,
    RealE,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::ComplexALower,
        Family::ComplexAUpper,
        Family::ComplexB,
        Family::RealCEven,
        Family::RealCOdd,
        Family::RealD,
        Family::RealE,
    ];

    /// Short name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::ComplexALower => "a-lower",
            Family::ComplexAUpper => "a-upper",
            Family::ComplexB => "b",
            Family::RealCEven => "c-even",
            Family::RealCOdd => "c-odd",
            Family::RealD => "d",
            Family::RealE => "e",
        }
    }

    pub fn field(self) -> FieldKind {
        match self {
            Family::ComplexALower | Family::ComplexAUpper | Family::ComplexB => FieldKind::Complex,
            _ => FieldKind::Real,
        }
    }

    /// Whether a witness exists for this `k`.
    pub fn admits(self, k: usize) -> bool {
        match self {
            _ if k == 0 => false,
            Family::RealCEven | Family::RealD | Family::RealE => k.is_multiple_of(2),
            Family::RealCOdd => k % 2 == 1,
            _ => true,
        }
    }

    pub fn expected_case(self) -> CaseLabel {
        match self {
            Family::ComplexALower | Family::ComplexAUpper => CaseLabel::ComplexA,
            Family::ComplexB => CaseLabel::ComplexB,
            Family::RealCEven | Family::RealCOdd => CaseLabel::RealC,
            Family::RealD => CaseLabel::RealD,
            Family::RealE => CaseLabel::RealE,
        }
    }

    pub fn expected_n(self, k: usize) -> usize {
        match self {
            Family::ComplexAUpper => 4 * k,
            _ => 2 * k,
        }
    }

    pub fn expected_signature(self, k: usize) -> (usize, usize) {
        match self {
            Family::ComplexAUpper => (k, 3 * k),
            _ => (k, k),
        }
    }

    pub fn certificate_kind(self) -> CertificateKind {
        match self {
            Family::ComplexALower => CertificateKind::JordanChainUnique,
            Family::ComplexAUpper => CertificateKind::ProjectionScalar,
            Family::ComplexB | Family::RealD | Family::RealE => CertificateKind::NeutralEigenspan,
            Family::RealCEven | Family::RealCOdd => CertificateKind::S0TwoDim,
        }
    }

    /// Names of the eigenvalue parameters, in order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::ComplexALower | Family::ComplexAUpper => &["lambda"],
            Family::ComplexB => &["l1", "l2"],
            Family::RealCEven | Family::RealCOdd => &["alpha", "beta"],
            Family::RealD => &["lambda", "alpha", "beta"],
            Family::RealE => &["a1", "b1", "a2", "b2"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Family {
    type Err = WitnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.cli_name() == s || format!("{f:?}") == s)
            .ok_or_else(|| WitnessError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("k must be positive")]
    ZeroK,
    #[error("family {family} with k = {k}: possible only if k is even")]
    OddK { family: Family, k: usize },
    #[error("family {family} with k = {k}: requires odd k")]
    EvenK { family: Family, k: usize },
    #[error("beta must be positive, got {0}")]
    NonpositiveBeta(Rational),
    #[error("eigenvalues must differ, both are {0}")]
    EqualEigenvalues(GaussianRational),
    #[error("eigenvalue pairs (a1, b1) and (a2, b2) coincide")]
    CoincidingEigenpairs,
    #[error("invalid r parameters: {0}")]
    InvalidR(String),
    #[error("family {family} takes {expected} eigenvalue parameters, got {found}")]
    WrongParamCount { family: Family, expected: usize, found: usize },
    #[error("parameter {name} must be real for family {family}, got {value}")]
    NonRealParam { family: Family, name: &'static str, value: GaussianRational },
    #[error("constructed pair failed its own check: {0}")]
    Internal(String),
}

impl From<IndefiniteError> for WitnessError {
    fn from(e: IndefiniteError) -> Self {
        WitnessError::Internal(e.to_string())
    }
}

/// Family plus parameters selecting one witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub family: Family,
    pub k: usize,
    pub eigen_params: Vec<GaussianRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rationals")]
    pub r_params: Option<Vec<Rational>>,
}

mod opt_rationals {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let raw: Option<Vec<String>> = Option::deserialize(d)?;
        raw.map(|v| {
            v.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        })
        .transpose()
    }
}

impl WitnessSpec {
    pub fn new(family: Family, k: usize, eigen_params: Vec<GaussianRational>) -> Self {
        Self { family, k, eigen_params, r_params: None }
    }

    /// The spec with the default parameters used by the CLI and audit.
    pub fn default_for(family: Family, k: usize) -> Self {
        let g = GaussianRational::from_int;
        let params = match family {
            Family::ComplexALower | Family::ComplexAUpper => vec![g(0)],
            Family::ComplexB => vec![g(0), g(1)],
            Family::RealCEven | Family::RealCOdd => vec![g(0), g(1)],
            Family::RealD => vec![g(0), g(0), g(1)],
            Family::RealE => vec![g(0), g(1), g(1), g(1)],
        };
        Self::new(family, k, params)
    }

    fn real_params(&self) -> Result<Vec<Rational>, WitnessError> {
        let names = self.family.param_names();
        if self.eigen_params.len() != names.len() {
            return Err(WitnessError::WrongParamCount {
                family: self.family,
                expected: names.len(),
                found: self.eigen_params.len(),
            });
        }
        self.eigen_params
            .iter()
            .zip(names)
            .map(|(v, name)| {
                if v.is_real() {
                    Ok(v.re.clone())
                } else {
                    Err(WitnessError::NonRealParam { family: self.family, name, value: v.clone() })
                }
            })
            .collect()
    }

    pub fn build(&self) -> Result<WitnessPair, WitnessError> {
        let names = self.family.param_names();
        if self.eigen_params.len() != names.len() {
            return Err(WitnessError::WrongParamCount {
                family: self.family,
                expected: names.len(),
                found: self.eigen_params.len(),
            });
        }
        let p = &self.eigen_params;
        match self.family {
            Family::ComplexALower => witness_complex_a_lower(self.k, &p[0]),
            Family::ComplexAUpper => witness_complex_a_upper(self.k, &p[0], self.r_params.as_deref()),
            Family::ComplexB => witness_complex_b(self.k, &p[0], &p[1]),
            Family::RealCEven => {
                let r = self.real_params()?;
                witness_real_c_even(self.k, &r[0], &r[1])
            }
            Family::RealCOdd => {
                let r = self.real_params()?;
                witness_real_c_odd(self.k, &r[0], &r[1])
            }
            Family::RealD => {
                let r = self.real_params()?;
                witness_real_d(self.k, &r[0], &r[1], &r[2])
            }
            Family::RealE => {
                let r = self.real_params()?;
                witness_real_e(self.k, &r[0], &r[1], &r[2], &r[3])
            }
        }
    }
}

/// A constructed witness together with what it is expected to exhibit.
#[derive(Debug, Clone)]
pub struct WitnessPair {
    pub pair: MatrixPair,
    pub spec: WitnessSpec,
    pub expected_case: CaseLabel,
    pub expected_n: usize,
    pub expected_signature: (usize, usize),
    pub certificate_recipe: CertificateKind,
    /// Distinct eigenvalues with algebraic multiplicities.
    pub expected_spectrum: Vec<(GaussianRational, usize)>,
}

fn finish(
    spec: WitnessSpec,
    n: Matrix,
    h: Matrix,
    spectrum: Vec<(GaussianRational, usize)>,
) -> Result<WitnessPair, WitnessError> {
    let pair = MatrixPair::new(n, h)?;
    let family = spec.family;
    let k = spec.k;
    if !is_h_normal(&pair) {
        return Err(WitnessError::Internal(format!("{family} k={k} is not H-normal")));
    }
    Ok(WitnessPair {
        pair,
        expected_case: family.expected_case(),
        expected_n: family.expected_n(k),
        expected_signature: family.expected_signature(k),
        certificate_recipe: family.certificate_kind(),
        expected_spectrum: spectrum,
        spec,
    })
}

/// Upper bidiagonal `m x m` matrix, diagonal `+1` for odd `m`, `-1` for even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaChain {
    pub size: usize,
    pub sign: i8,
    pub matrix: Matrix,
}

pub fn build_lambda_chain(m: usize) -> LambdaChain {
    assert!(m >= 1, "chain size must be positive");
    let sign: i8 = if m % 2 == 1 { 1 } else { -1 };
    let matrix = Matrix::jordan_block(m, &GaussianRational::from_int(sign as i64), FieldKind::Real);
    LambdaChain { size: m, sign, matrix }
}

/// `(N, Lambda)` satisfies `N = Lambda N*`.
fn satisfies_chain_identity(n: &Matrix, lambda: &Matrix) -> bool {
    *n == lambda * &n.conj_transpose()
}

/// Grows `M` (size `m`) to size `m + 2` by bordering:
///
/// ```text
/// [ 0  A  B ]
/// [ C  M  0 ]
/// [ D  0  0 ]
/// ```
fn border(m_prev: &Matrix) -> Matrix {
    let m = m_prev.rows();
    let lam_prev = build_lambda_chain(m).matrix;
    // Odd sizes carry the +1 chain and need the opposite sign to even ones.
    let s = if m % 2 == 1 { -GaussianRational::one() } else { GaussianRational::one() };
    let mut a = vec![GaussianRational::zero(); m];
    for j in 1..m {
        a[j] = &s * m_prev.get(j - 1, 0);
    }
    let b = &s * m_prev.get(m - 1, 0);
    let d = if m % 2 == 1 { b.conj() } else { -b.conj() };
    // C = Lambda_m A* + e_m B*
    let a_col = Matrix::from_columns(&[a.iter().map(GaussianRational::conj).collect()], m, FieldKind::Real);
    let mut c = &lam_prev * &a_col;
    let last = c.get(m - 1, 0) + &b.conj();
    c.set(m - 1, 0, last);

    let size = m + 2;
    let mut out = Matrix::zeros(size, size, FieldKind::Real);
    for (j, x) in a.iter().enumerate() {
        out.set(0, j + 1, x.clone());
    }
    out.set(0, size - 1, b);
    for i in 0..m {
        out.set(i + 1, 0, c.get(i, 0).clone());
    }
    out.set_block(1, 1, m_prev);
    out.set(size - 1, 0, d);
    out
}

/// Nonsingular real `m x m` matrix with `N = Lambda_m N*`, zero below the
/// trailing diagonal and `±1` on it. Every step is checked.
pub fn build_n1(m: usize) -> Matrix {
    assert!(m >= 1, "size must be positive");
    let mut n = if m % 2 == 1 {
        Matrix::from_ints(&[&[1]])
    } else {
        Matrix::from_ratios(&[&[(1, 2), (1, 1)], &[(-1, 1), (0, 1)]])
    };
    loop {
        let lam = build_lambda_chain(n.rows()).matrix;
        assert!(satisfies_chain_identity(&n, &lam), "chain identity failed at size {}", n.rows());
        if n.rows() == m {
            return n;
        }
        n = border(&n);
    }
}

fn scalar(n: usize, s: &GaussianRational, field: FieldKind) -> Matrix {
    Matrix::identity(n, field).scale(s)
}

/// `[[0, I_k], [I_k, 0]]`.
fn swap_form(k: usize) -> Matrix {
    let id = Matrix::identity(k, FieldKind::Real);
    let mut h = Matrix::zeros(2 * k, 2 * k, FieldKind::Real);
    h.set_block(0, k, &id);
    h.set_block(k, 0, &id);
    h
}

fn check_k(family: Family, k: usize) -> Result<(), WitnessError> {
    if k == 0 {
        return Err(WitnessError::ZeroK);
    }
    if family.admits(k) {
        return Ok(());
    }
    if family == Family::RealCOdd {
        Err(WitnessError::EvenK { family, k })
    } else {
        Err(WitnessError::OddK { family, k })
    }
}

/// `N = [[λI, N1], [0, λI]]`, `H = [[0, I], [I, 0]]` with `N1 = build_n1(k)`.
pub fn witness_complex_a_lower(k: usize, lambda: &GaussianRational) -> Result<WitnessPair, WitnessError> {
    check_k(Family::ComplexALower, k)?;
    let field = FieldKind::Complex;
    let mut n = scalar(2 * k, lambda, field);
    n.set_block(0, k, &build_n1(k));
    let h = swap_form(k).with_field(field).expect("real into complex");
    let spec = WitnessSpec::new(Family::ComplexALower, k, vec![lambda.clone()]);
    finish(spec, n, h, vec![(lambda.clone(), 2 * k)])
}

/// `r_i = 2t/(1+t^2)` with `t = i + 1`.
pub fn default_r(k: usize) -> Vec<Rational> {
    (1..=k)
        .map(|i| {
            let t = Rational::from_integer(((i + 1) as i64).into());
            &t * Rational::from_integer(2.into()) / (&t * &t + Rational::from_integer(1.into()))
        })
        .collect()
}

/// Checks distinctness, range and rational complements; returns `sqrt(1 - r_i^2)`.
pub fn validate_r(r: &[Rational], k: usize) -> Result<Vec<Rational>, WitnessError> {
    if r.len() != k {
        return Err(WitnessError::InvalidR(format!("expected {k} values, got {}", r.len())));
    }
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let mut comps = Vec::with_capacity(k);
    for (i, ri) in r.iter().enumerate() {
        if *ri <= zero || *ri >= one {
            return Err(WitnessError::InvalidR(format!("r_{} = {ri} is outside (0, 1)", i + 1)));
        }
        if r[..i].contains(ri) {
            return Err(WitnessError::InvalidR(format!("r_{} = {ri} repeats an earlier value", i + 1)));
        }
        let c = rational_sqrt(&(&one - ri * ri))
            .ok_or_else(|| WitnessError::InvalidR(format!("sqrt(1 - r_{}^2) is irrational for r = {ri}", i + 1)))?;
        comps.push(c);
    }
    Ok(comps)
}

/// Weighted cyclic `N1` plus `N2` diagonal with `N1* N1 + N2* N2 = I`.
pub fn upper_blocks(r: &[Rational]) -> Result<(Matrix, Matrix), WitnessError> {
    let k = r.len();
    let comps = validate_r(r, k)?;
    let mut n1 = Matrix::zeros(k, k, FieldKind::Real);
    for i in 0..k {
        n1.set(i, (i + 1) % k, GaussianRational::real(r[i].clone()));
    }
    // Column j of N1 carries r_{j-1 mod k}; N2 completes each column norm to one.
    let diag: Vec<GaussianRational> =
        (0..k).map(|j| GaussianRational::real(comps[(j + k - 1) % k].clone())).collect();
    let n2 = Matrix::diagonal(&diag, FieldKind::Real);
    Ok((n1, n2))
}

/// The `4k x 4k` pair with signature `(k, 3k)`.
pub fn witness_complex_a_upper(
    k: usize,
    lambda: &GaussianRational,
    r: Option<&[Rational]>,
) -> Result<WitnessPair, WitnessError> {
    check_k(Family::ComplexAUpper, k)?;
    let r: Vec<Rational> = r.map(<[Rational]>::to_vec).unwrap_or_else(|| default_r(k));
    let (n1, n2) = upper_blocks(&r)?;
    let field = FieldKind::Complex;
    let id = Matrix::identity(k, FieldKind::Real);
    let mut n = scalar(4 * k, lambda, field);
    n.set_block(0, k, &id);
    n.set_block(k, 3 * k, &n1);
    n.set_block(2 * k, 3 * k, &n2);
    let mut h = Matrix::zeros(4 * k, 4 * k, field);
    h.set_block(0, 3 * k, &id);
    h.set_block(k, k, &id);
    h.set_block(2 * k, 2 * k, &id);
    h.set_block(3 * k, 0, &id);
    let mut spec = WitnessSpec::new(Family::ComplexAUpper, k, vec![lambda.clone()]);
    spec.r_params = Some(r);
    finish(spec, n, h, vec![(lambda.clone(), 4 * k)])
}

/// `N = J_k(l1) ⊕ l2 I_k`, `H = [[0, I], [I, 0]]`.
pub fn witness_complex_b(
    k: usize,
    l1: &GaussianRational,
    l2: &GaussianRational,
) -> Result<WitnessPair, WitnessError> {
    check_k(Family::ComplexB, k)?;
    if l1 == l2 {
        return Err(WitnessError::EqualEigenvalues(l1.clone()));
    }
    let field = FieldKind::Complex;
    let n = Matrix::block_diag(&[&Matrix::jordan_block(k, l1, field), &scalar(k, l2, field)]);
    let h = swap_form(k).with_field(field).expect("real into complex");
    let spec = WitnessSpec::new(Family::ComplexB, k, vec![l1.clone(), l2.clone()]);
    let mut spectrum = vec![(l1.clone(), k), (l2.clone(), k)];
    sort_spectrum(&mut spectrum);
    finish(spec, n, h, spectrum)
}

/// `[[α, β], [-β, α]]`.
pub fn rotation_block(alpha: &Rational, beta: &Rational) -> Matrix {
    let g = |q: &Rational| GaussianRational::real(q.clone());
    Matrix::from_rows(
        vec![vec![g(alpha), g(beta)], vec![g(&-beta), g(alpha)]],
        FieldKind::Real,
    )
    .expect("2x2")
}

fn check_beta(beta: &Rational) -> Result<(), WitnessError> {
    if *beta <= Rational::from_integer(0.into()) {
        return Err(WitnessError::NonpositiveBeta(beta.clone()));
    }
    Ok(())
}

/// Block Jordan chain of `blocks` copies of `a` with `I_2` on the block superdiagonal.
pub fn block_chain(a: &Matrix, blocks: usize) -> Matrix {
    let mut n = Matrix::zeros(2 * blocks, 2 * blocks, FieldKind::Real);
    let id = Matrix::identity(2, FieldKind::Real);
    for j in 0..blocks {
        n.set_block(2 * j, 2 * j, a);
        if j + 1 < blocks {
            n.set_block(2 * j, 2 * j + 2, &id);
        }
    }
    n
}

/// Block antidiagonal of `I_2` blocks.
fn block_antidiagonal(blocks: usize) -> Matrix {
    let mut h = Matrix::zeros(2 * blocks, 2 * blocks, FieldKind::Real);
    let id = Matrix::identity(2, FieldKind::Real);
    for j in 0..blocks {
        h.set_block(2 * j, 2 * (blocks - 1 - j), &id);
    }
    h
}

/// `α ± iβ`, each with multiplicity `m`, lower imaginary part first.
fn conjugate_pair(alpha: &Rational, beta: &Rational, m: usize) -> Vec<(GaussianRational, usize)> {
    vec![
        (GaussianRational::new(alpha.clone(), -beta.clone()), m),
        (GaussianRational::new(alpha.clone(), beta.clone()), m),
    ]
}

fn sort_spectrum(s: &mut [(GaussianRational, usize)]) {
    s.sort_by(|(a, _), (b, _)| a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)));
}

fn real_params(values: &[&Rational]) -> Vec<GaussianRational> {
    values.iter().map(|q| GaussianRational::real((*q).clone())).collect()
}

/// `k` blocks `A` chained by `I_2`, `H` block antidiagonal; `k` even.
pub fn witness_real_c_even(k: usize, alpha: &Rational, beta: &Rational) -> Result<WitnessPair, WitnessError> {
    check_k(Family::RealCEven, k)?;
    check_beta(beta)?;
    let a = rotation_block(alpha, beta);
    let n = block_chain(&a, k);
    let h = block_antidiagonal(k);
    let spec = WitnessSpec::new(Family::RealCEven, k, real_params(&[alpha, beta]));
    finish(spec, n, h, conjugate_pair(alpha, beta, k))
}

/// `k` odd. Blocks `1..=(k+1)/2` carry `A`, the rest `A^T`; every block
/// superdiagonal holds `X = [[1,1],[1,1]]`. `H` is block antidiagonal with
/// `D_2` in the centre block. For `k = 1` this is `N = A`, `H = D_2`.
pub fn witness_real_c_odd(k: usize, alpha: &Rational, beta: &Rational) -> Result<WitnessPair, WitnessError> {
    check_k(Family::RealCOdd, k)?;
    check_beta(beta)?;
    let a = rotation_block(alpha, beta);
    let at = a.transpose();
    let x = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
    let centre = (k - 1) / 2;
    let mut n = Matrix::zeros(2 * k, 2 * k, FieldKind::Real);
    for j in 0..k {
        n.set_block(2 * j, 2 * j, if j <= centre { &a } else { &at });
        if j + 1 < k {
            n.set_block(2 * j, 2 * j + 2, &x);
        }
    }
    let mut h = block_antidiagonal(k);
    h.set_block(2 * centre, 2 * centre, &Matrix::trailing_identity(2, FieldKind::Real));
    let spec = WitnessSpec::new(Family::RealCOdd, k, real_params(&[alpha, beta]));
    finish(spec, n, h, conjugate_pair(alpha, beta, k))
}

/// `N = N1 ⊕ λ I_k` with `N1` a chain of `k/2` blocks `A`; `k` even.
pub fn witness_real_d(
    k: usize,
    lambda: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<WitnessPair, WitnessError> {
    check_k(Family::RealD, k)?;
    check_beta(beta)?;
    let n1 = block_chain(&rotation_block(alpha, beta), k / 2);
    let l = GaussianRational::real(lambda.clone());
    let n = Matrix::block_diag(&[&n1, &scalar(k, &l, FieldKind::Real)]);
    let spec = WitnessSpec::new(Family::RealD, k, real_params(&[lambda, alpha, beta]));
    let mut spectrum = conjugate_pair(alpha, beta, k / 2);
    spectrum.push((l, k));
    sort_spectrum(&mut spectrum);
    finish(spec, n, swap_form(k), spectrum)
}

/// `N = N1 ⊕ N2`: an `A1` chain and a block diagonal of `A2`, `k/2` blocks each.
pub fn witness_real_e(
    k: usize,
    a1: &Rational,
    b1: &Rational,
    a2: &Rational,
    b2: &Rational,
) -> Result<WitnessPair, WitnessError> {
    check_k(Family::RealE, k)?;
    check_beta(b1)?;
    check_beta(b2)?;
    if a1 == a2 && b1 == b2 {
        return Err(WitnessError::CoincidingEigenpairs);
    }
    let n1 = block_chain(&rotation_block(a1, b1), k / 2);
    let a2m = rotation_block(a2, b2);
    let n2 = Matrix::block_diag(&vec![&a2m; k / 2]);
    let n = Matrix::block_diag(&[&n1, &n2]);
    let spec = WitnessSpec::new(Family::RealE, k, real_params(&[a1, b1, a2, b2]));
    let mut spectrum = conjugate_pair(a1, b1, k / 2);
    spectrum.extend(conjugate_pair(a2, b2, k / 2));
    sort_spectrum(&mut spectrum);
    finish(spec, n, swap_form(k), spectrum)
}

/// Nonsingularity of `build_n1(m)` plus its structural shape.
pub fn n1_has_trailing_shape(n: &Matrix) -> bool {
    let m = n.rows();
    for i in 0..m {
        for j in 0..m {
            let x = n.get(i, j);
            if i + j > m - 1 && !x.is_zero() {
                return false;
            }
            if i + j == m - 1 && !(x.is_one() || (-x).is_one()) {
                return false;
            }
        }
    }
    !fraction_free::determinant(n).map(|d| d.is_zero()).unwrap_or(true)
}
