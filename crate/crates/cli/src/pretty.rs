//! Plain-text rendering with block separators.

use krein_core::exact::Matrix;
use krein_core::io::PairDocument;
use krein_core::witnesses::Family;

/// Right-aligned entries; `cuts` are the indices where a new block starts.
pub fn matrix(m: &Matrix, cuts: &[usize]) -> String {
    let cells: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    let mut rule = String::new();
    for j in 0..m.cols() {
        if cuts.contains(&j) && j > 0 {
            rule.push_str("-+");
        }
        rule.push_str(&"-".repeat(width + 1));
    }
    for (i, row) in cells.iter().enumerate() {
        if cuts.contains(&i) && i > 0 {
            out.push_str("  ");
            out.push_str(&rule);
            out.push('\n');
        }
        out.push_str("  ");
        for (j, cell) in row.iter().enumerate() {
            if cuts.contains(&j) && j > 0 {
                out.push_str(" |");
            }
            out.push_str(&format!(" {cell:>width$}"));
        }
        out.push('\n');
    }
    out
}

/// Block boundaries for generated witnesses: `k x k` blocks for complex
/// families, `2 x 2` for real ones.
pub fn witness_cuts(doc: &PairDocument) -> Vec<usize> {
    let Some(Ok(spec)) = doc.witness_spec() else { return Vec::new() };
    let step = match spec.family {
        Family::ComplexALower | Family::ComplexAUpper | Family::ComplexB => spec.k,
        _ => 2,
    };
    if step <= 1 {
        return Vec::new();
    }
    (step..doc.n).step_by(step).collect()
}

pub fn document(doc: &PairDocument) -> String {
    let mut out = String::new();
    if let Some(meta) = &doc.metadata {
        for (key, value) in meta {
            out.push_str(&format!("{key}: {value}\n"));
        }
    }
    out.push_str(&format!("field: {:?}, n = {}\n", doc.field, doc.n).to_lowercase());
    if let Ok(pair) = doc.to_pair() {
        let cuts = witness_cuts(doc);
        out.push_str("N =\n");
        out.push_str(&matrix(pair.n_op(), &cuts));
        out.push_str("H =\n");
        out.push_str(&matrix(pair.h(), &cuts));
    }
    out
}
