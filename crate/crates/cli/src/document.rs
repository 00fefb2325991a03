//! JSON tensor documents.
//!
//! ```json
//! {"n": 3, "kind": "doubleform",
//!  "terms": [{"row": [1, 2], "col": [1, 2], "value": "5/1"}]}
//! {"n": 2, "kind": "basis", "matrix": [["1/1", "0/1"], ["0/1", "1/1"]]}
//! ```
//!
//! Indices are 1-based and strictly increasing; values are exact rationals
//! written `"a/b"` (a bare integer is accepted on input). Serialization is
//! canonical: terms in basis order, no zero terms, every value as `"a/b"`,
//! bilinear forms and bases as dense matrices.

use std::collections::BTreeMap;
use std::fmt;

use biform_core::scalar::{format_scalar, parse_scalar};
use biform_core::{DoubleForm, Matrix, MultiIndex, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Doubleform,
    Bilinear,
    Curvature,
    Basis,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Doubleform => "doubleform",
            Kind::Bilinear => "bilinear",
            Kind::Curvature => "curvature",
            Kind::Basis => "basis",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tensor {
    Form(DoubleForm),
    Basis(Matrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorDocument {
    pub kind: Kind,
    pub tensor: Tensor,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl fmt::Display) -> DocumentError {
    DocumentError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    row: Vec<usize>,
    col: Vec<usize>,
    value: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    n: usize,
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<RawTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<String>>>,
}

fn value(field: &str, text: &str) -> Result<Scalar, DocumentError> {
    parse_scalar(text).map_err(|e| field_error(field, e))
}

fn max_dim() -> usize {
    biform_core::MAX_DIM
}

impl TensorDocument {
    pub fn form(kind: Kind, form: DoubleForm) -> Self {
        TensorDocument {
            kind,
            tensor: Tensor::Form(form),
        }
    }

    pub fn basis(matrix: Matrix) -> Self {
        TensorDocument {
            kind: Kind::Basis,
            tensor: Tensor::Basis(matrix),
        }
    }

    pub fn n(&self) -> usize {
        match &self.tensor {
            Tensor::Form(f) => f.n(),
            Tensor::Basis(m) => m.rows(),
        }
    }

    pub fn as_form(&self) -> Option<&DoubleForm> {
        match &self.tensor {
            Tensor::Form(f) => Some(f),
            Tensor::Basis(_) => None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let n = raw.n;
        if n == 0 || n > max_dim() {
            return Err(field_error("n", format!("dimension {n} outside 1..={}", max_dim())));
        }
        match (raw.kind, raw.terms, raw.matrix) {
            (_, Some(_), Some(_)) => Err(field_error("matrix", "give either \"terms\" or \"matrix\", not both")),
            (Kind::Basis, None, Some(rows)) => Ok(TensorDocument::basis(parse_matrix(n, &rows)?)),
            (Kind::Basis, _, None) => Err(field_error("matrix", "a basis document needs a \"matrix\"")),
            (Kind::Bilinear, None, Some(rows)) => {
                let m = parse_matrix(n, &rows)?;
                let form = DoubleForm::bilinear(&m.to_rows()).map_err(|e| field_error("matrix", e))?;
                Ok(TensorDocument::form(Kind::Bilinear, form))
            }
            (kind, Some(terms), None) => {
                let form = parse_terms(n, &terms)?;
                let required = match kind {
                    Kind::Bilinear => Some((1, 1)),
                    Kind::Curvature => Some((2, 2)),
                    _ => None,
                };
                if let Some((p, q)) = required {
                    if let Some(k) = terms.iter().position(|t| t.row.len() != p || t.col.len() != q) {
                        return Err(field_error(
                            format!("terms[{k}]"),
                            format!("a {kind} document only holds ({p},{q}) terms"),
                        ));
                    }
                }
                Ok(TensorDocument::form(kind, form))
            }
            (kind, None, _) => Err(field_error("terms", format!("a {kind} document needs \"terms\""))),
        }
    }

    fn raw(&self) -> RawDocument {
        let n = self.n();
        match &self.tensor {
            Tensor::Basis(m) => RawDocument {
                n,
                kind: self.kind,
                terms: None,
                matrix: Some(render_matrix(&m.to_rows())),
            },
            Tensor::Form(f) if self.kind == Kind::Bilinear && f.is_homogeneous_of(1, 1) => RawDocument {
                n,
                kind: self.kind,
                terms: None,
                matrix: Some(render_matrix(&f.to_matrix())),
            },
            Tensor::Form(f) => RawDocument {
                n,
                kind: self.kind,
                terms: Some(
                    f.terms()
                        .map(|(r, c, v)| RawTerm {
                            row: r.to_vec(),
                            col: c.to_vec(),
                            value: format_scalar(v),
                        })
                        .collect(),
                ),
                matrix: None,
            },
        }
    }

    /// The canonical document as a JSON value, for embedding in reports.
    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self.raw()).expect("documents always serialize")
    }

    pub fn serialize(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.raw()).expect("documents always serialize");
        text.push('\n');
        text
    }
}

fn render_matrix(rows: &[Vec<Scalar>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(format_scalar).collect()).collect()
}

fn parse_matrix(n: usize, rows: &[Vec<String>]) -> Result<Matrix, DocumentError> {
    if rows.len() != n {
        return Err(field_error("matrix", format!("expected {n} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(field_error(
                format!("matrix[{i}]"),
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, t)| value(&format!("matrix[{i}][{j}]"), t))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    Ok(Matrix::from_rows(out).expect("validated shape"))
}

fn parse_terms(n: usize, terms: &[RawTerm]) -> Result<DoubleForm, DocumentError> {
    let mut seen: BTreeMap<(MultiIndex, MultiIndex), usize> = BTreeMap::new();
    let mut out = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        let row = MultiIndex::new(&t.row, n).map_err(|e| field_error(format!("terms[{k}].row"), e))?;
        let col = MultiIndex::new(&t.col, n).map_err(|e| field_error(format!("terms[{k}].col"), e))?;
        let v = value(&format!("terms[{k}].value"), &t.value)?;
        if let Some(first) = seen.insert((row, col), k) {
            return Err(field_error(
                format!("terms[{k}]"),
                format!("duplicate key (row {row}, col {col}), first given at terms[{first}]"),
            ));
        }
        out.push((row, col, v));
    }
    Ok(DoubleForm::from_terms(n, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use biform_core::scalar::int;

    #[test]
    fn minimal_metric_document() {
        let text = r#"{"n": 2, "kind": "doubleform", "terms": [
            {"row": [1], "col": [1], "value": "1"},
            {"row": [2], "col": [2], "value": "1/1"}]}"#;
        let doc = TensorDocument::parse(text).unwrap();
        assert_eq!(doc.as_form().unwrap(), &DoubleForm::metric(2));
        let again = TensorDocument::parse(&doc.serialize()).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.serialize(), doc.serialize());
    }

    #[test]
    fn rejects_bad_input() {
        let zero_den = r#"{"n": 2, "kind": "doubleform", "terms": [{"row": [1], "col": [1], "value": "1/0"}]}"#;
        let err = TensorDocument::parse(zero_den).unwrap_err();
        assert_eq!(err.to_string(), "terms[0].value: zero denominator");

        let range = r#"{"n": 2, "kind": "doubleform", "terms": [{"row": [3], "col": [1], "value": "1"}]}"#;
        assert!(TensorDocument::parse(range).unwrap_err().to_string().starts_with("terms[0].row"));

        let order = r#"{"n": 3, "kind": "doubleform", "terms": [{"row": [2, 1], "col": [1], "value": "1"}]}"#;
        assert!(TensorDocument::parse(order).is_err());

        let dup = r#"{"n": 2, "kind": "doubleform", "terms": [
            {"row": [1], "col": [1], "value": "1"}, {"row": [1], "col": [1], "value": "2"}]}"#;
        assert!(TensorDocument::parse(dup).unwrap_err().to_string().contains("duplicate"));

        let unknown = r#"{"n": 2, "kind": "doubleform", "terms": [], "extra": 1}"#;
        assert!(matches!(TensorDocument::parse(unknown), Err(DocumentError::Syntax { .. })));

        let syntax = "{\n  \"n\": 2,\n  \"kind\": \"basis\",\n  oops\n}";
        match TensorDocument::parse(syntax).unwrap_err() {
            DocumentError::Syntax { line, .. } => assert_eq!(line, 4),
            e => panic!("unexpected {e}"),
        }

        let wrong = r#"{"n": 2, "kind": "curvature", "terms": [{"row": [1], "col": [1], "value": "1"}]}"#;
        assert!(TensorDocument::parse(wrong).is_err());
    }

    #[test]
    fn bases_and_bilinears_are_dense() {
        let text = r#"{"n": 2, "kind": "basis", "matrix": [["0", "1"], ["-1", "0"]]}"#;
        let doc = TensorDocument::parse(text).unwrap();
        assert!(doc.serialize().contains("\"-1/1\""));
        assert_eq!(TensorDocument::parse(&doc.serialize()).unwrap(), doc);

        let h = DoubleForm::diagonal(&[int(1), int(0), int(3)]);
        let doc = TensorDocument::form(Kind::Bilinear, h.clone());
        let back = TensorDocument::parse(&doc.serialize()).unwrap();
        assert_eq!(back.as_form().unwrap(), &h);
        let as_terms = r#"{"n": 2, "kind": "bilinear", "terms": [{"row": [1], "col": [2], "value": "2/3"}]}"#;
        assert!(TensorDocument::parse(as_terms).is_ok());
    }
}
