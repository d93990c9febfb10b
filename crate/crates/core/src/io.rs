//! JSON interchange for matrix pairs.
//!
//! ```json
//! {"schema_version": "1", "field": "real", "n": 2,
//!  "N": [["0", "1"], ["-1", "0"]], "H": [["0", "1"], ["1", "0"]],
//!  "metadata": {"family": "c-odd"}}
//! ```
//!
//! Scalars are strings in the canonical exact format (`3/4`, `1/2-i`).

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::exact::{CoreError, FieldKind, GaussianRational, Matrix};
use crate::indefinite::{IndefiniteError, MatrixPair};
use crate::exact::parse_rational;
use crate::witnesses::{Family, WitnessPair, WitnessSpec};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDocument {
    pub schema_version: String,
    pub field: FieldKind,
    pub n: usize,
    #[serde(rename = "N")]
    pub n_op: Vec<Vec<String>>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Map<String, Value>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("H is not Hermitian: H[{row}][{col}] != conj(H[{col}][{row}])")]
    NotHermitian { row: usize, col: usize },
    #[error("H is singular")]
    SingularH,
    #[error("{0}")]
    Invalid(String),
}

impl From<IndefiniteError> for IoError {
    fn from(e: IndefiniteError) -> Self {
        match e {
            IndefiniteError::NotHermitian { row, col } => IoError::NotHermitian { row, col },
            IndefiniteError::Singular => IoError::SingularH,
            other => IoError::Invalid(other.to_string()),
        }
    }
}

fn to_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn parse_matrix(name: &str, rows: &[Vec<String>], n: usize, field: FieldKind) -> Result<Matrix, IoError> {
    if rows.len() != n {
        return Err(IoError::Schema(format!("{name} has {} rows, expected {n}", rows.len())));
    }
    let mut parsed = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(IoError::Schema(format!("{name} row {i} has {} entries, expected {n}", row.len())));
        }
        let entries = row
            .iter()
            .enumerate()
            .map(|(j, s)| {
                s.parse::<GaussianRational>()
                    .map_err(|_| IoError::Schema(format!("{name}[{i}][{j}] = {s:?} is not an exact scalar")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        parsed.push(entries);
    }
    Matrix::from_rows(parsed, field).map_err(|e| match e {
        CoreError::FieldMismatch { row, col } => {
            IoError::Schema(format!("{name}[{row}][{col}] is not real but field is real"))
        }
        other => IoError::Schema(other.to_string()),
    })
}

impl PairDocument {
    pub fn from_pair(pair: &MatrixPair, metadata: Option<Map<String, Value>>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            field: pair.field(),
            n: pair.dim(),
            n_op: to_strings(pair.n_op()),
            h: to_strings(pair.h()),
            metadata,
        }
    }

    /// Pair plus family parameters and expectations in the metadata.
    pub fn from_witness(w: &WitnessPair) -> Self {
        let spec = &w.spec;
        let mut meta = Map::new();
        meta.insert("family".into(), json!(spec.family.cli_name()));
        meta.insert("k".into(), json!(spec.k));
        let params: Map<String, Value> = spec
            .family
            .param_names()
            .iter()
            .zip(&spec.eigen_params)
            .map(|(name, v)| (name.to_string(), json!(v.to_string())))
            .collect();
        meta.insert("params".into(), Value::Object(params));
        if let Some(r) = &spec.r_params {
            meta.insert("r".into(), json!(r.iter().map(ToString::to_string).collect::<Vec<_>>()));
        }
        meta.insert("expected_case".into(), json!(w.expected_case));
        meta.insert("expected_n".into(), json!(w.expected_n));
        meta.insert("expected_signature".into(), json!([w.expected_signature.0, w.expected_signature.1]));
        meta.insert("certificate".into(), json!(w.certificate_recipe));
        Self::from_pair(&w.pair, Some(meta))
    }

    pub fn to_pair(&self) -> Result<MatrixPair, IoError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(IoError::Schema(format!("unsupported schema_version {:?}", self.schema_version)));
        }
        let n = parse_matrix("N", &self.n_op, self.n, self.field)?;
        let h = parse_matrix("H", &self.h, self.n, self.field)?;
        Ok(MatrixPair::new(n, h)?)
    }

    /// The witness spec recorded by [`PairDocument::from_witness`], if any.
    pub fn witness_spec(&self) -> Option<Result<WitnessSpec, IoError>> {
        let meta = self.metadata.as_ref()?;
        let family = meta.get("family")?.as_str()?;
        Some(spec_from_metadata(family, meta))
    }

    /// Rebuilds the recorded witness but keeps this document's matrices, so
    /// certificates get checked against what was actually stored.
    pub fn as_witness(&self, pair: &MatrixPair) -> Option<Result<WitnessPair, IoError>> {
        let spec = match self.witness_spec()? {
            Ok(spec) => spec,
            Err(e) => return Some(Err(e)),
        };
        Some(
            spec.build()
                .map(|mut w| {
                    w.pair = pair.clone();
                    w
                })
                .map_err(|e| IoError::Invalid(e.to_string())),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn spec_from_metadata(family: &str, meta: &Map<String, Value>) -> Result<WitnessSpec, IoError> {
    let bad = |what: &str| IoError::Schema(format!("metadata: {what}"));
    let family: Family = family.parse().map_err(|e: crate::witnesses::WitnessError| bad(&e.to_string()))?;
    let k = meta.get("k").and_then(Value::as_u64).ok_or_else(|| bad("missing k"))? as usize;
    let params = meta.get("params").and_then(Value::as_object).ok_or_else(|| bad("missing params"))?;
    let eigen_params = family
        .param_names()
        .iter()
        .map(|name| {
            params
                .get(*name)
                .and_then(Value::as_str)
                .and_then(|s| s.parse::<GaussianRational>().ok())
                .ok_or_else(|| bad(&format!("param {name} missing or not an exact scalar")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut spec = WitnessSpec::new(family, k, eigen_params);
    if let Some(r) = meta.get("r") {
        let r = r
            .as_array()
            .ok_or_else(|| bad("r must be a list"))?
            .iter()
            .map(|v| v.as_str().and_then(|s| parse_rational(s).ok()).ok_or_else(|| bad("r entry is not rational")))
            .collect::<Result<Vec<_>, _>>()?;
        spec.r_params = Some(r);
    }
    Ok(spec)
}

pub fn parse_document(bytes: &[u8]) -> Result<PairDocument, IoError> {
    serde_json::from_slice(bytes).map_err(|e| IoError::Schema(e.to_string()))
}

pub fn parse_pair(bytes: &[u8]) -> Result<MatrixPair, IoError> {
    parse_document(bytes)?.to_pair()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(h: &[&[&str]]) -> String {
        let h: Vec<Vec<String>> = h.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        json!({"schema_version": "1", "field": "complex", "n": 2,
               "N": [["0", "1"], ["0", "0"]], "H": h})
        .to_string()
    }

    #[test]
    fn rejects_non_hermitian_h() {
        let err = parse_pair(doc(&[&["0", "1"], &["2", "0"]]).as_bytes()).unwrap_err();
        assert!(matches!(err, IoError::NotHermitian { .. }), "{err}");
    }

    #[test]
    fn rejects_singular_h() {
        let err = parse_pair(doc(&[&["0", "0"], &["0", "0"]]).as_bytes()).unwrap_err();
        assert_eq!(err, IoError::SingularH);
    }

    #[test]
    fn accepts_complex_hermitian() {
        let pair = parse_pair(doc(&[&["1", "i"], &["-i", "-1"]]).as_bytes()).unwrap();
        assert_eq!(pair.space().signature(), (1, 1));
    }

    #[test]
    fn witness_spec_recovered_from_metadata() {
        let w = WitnessSpec::default_for(Family::ComplexAUpper, 2).build().unwrap();
        let doc = PairDocument::from_witness(&w);
        let spec = doc.witness_spec().unwrap().unwrap();
        assert_eq!(spec.family, Family::ComplexAUpper);
        assert_eq!(spec.r_params, w.spec.r_params);
        assert!(PairDocument::from_pair(&w.pair, None).witness_spec().is_none());
    }

    #[test]
    fn real_field_rejects_complex_entries() {
        let text = json!({"schema_version": "1", "field": "real", "n": 1, "N": [["i"]], "H": [["1"]]}).to_string();
        assert!(matches!(parse_pair(text.as_bytes()), Err(IoError::Schema(_))));
    }
}
