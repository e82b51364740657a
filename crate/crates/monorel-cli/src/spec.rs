//! The relation spec file format: a small JSON document describing how to
//! build a [`LinearRelation`].
//!
//! Four kinds are accepted, tagged by the `kind` field:
//!
//! ```json
//! {"n": 2, "kind": "matrix", "payload": [[0, -1], [1, 0]]}
//! {"kind": "graph", "payload": [[1, 0, 0, 1], [0, 1, 1, 0]]}
//! {"kind": "operator_on_subspace", "domain": [[1, 0]], "matrix": [[0, 0], [0, 0]]}
//! {"kind": "gallery", "name": "volterra", "n": 100}
//! ```
//!
//! A `graph` row lists a basis vector of the graph as `[u₁ … uₙ, v₁ … vₙ]`;
//! `operator_on_subspace` maximalizes `matrix` restricted to the span of the
//! `domain` rows. The optional `tol` field sets the rank cutoff used while
//! building. Numbers survive a serialize/parse round trip bit-exactly:
//! floats are printed with enough significant digits (up to 17) to pin down
//! the exact double.

use monorel::gallery::{derivative_relation, shift_skew, volterra};
use monorel::{LinearRelation, Subspace};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Gallery names accepted by the `gallery` kind and the `example` command.
pub const GALLERY_NAMES: &[&str] = &["volterra", "derivative", "shift_skew"];

/// A parsed relation spec document.
///
/// The `kind` field selects the variant; `n` is optional wherever it can be
/// inferred from the payload and is validated for consistency when present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelationSpec {
    /// A single-valued operator given by its full matrix, row by row.
    Matrix {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        payload: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tol: Option<f64>,
    },
    /// A relation given by spanning vectors of its graph, each of length 2n.
    Graph {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        payload: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tol: Option<f64>,
    },
    /// A monotone matrix maximalized on the span of the given domain rows.
    OperatorOnSubspace {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        domain: Vec<Vec<f64>>,
        matrix: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tol: Option<f64>,
    },
    /// A named operator from the gallery at grid size `n`.
    Gallery {
        name: String,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tol: Option<f64>,
    },
}

impl RelationSpec {
    /// The ambient dimension, inferred from the payload when the `n` field
    /// is absent.
    ///
    /// # Errors
    ///
    /// [`CliError::Validation`] when the document passed [`Self::validate`]
    /// would also fail; call [`Self::validate`] first for full checking.
    pub fn ambient_dim(&self) -> Result<usize> {
        match self {
            Self::Matrix { n, payload, .. } => {
                infer_dim(*n, payload.len(), "matrix rows")
            }
            Self::Graph { n, payload, .. } => {
                let from_rows = payload.first().map(|r| r.len() / 2);
                match (n, from_rows) {
                    (Some(k), _) => Ok(*k),
                    (None, Some(k)) => Ok(k),
                    (None, None) => Err(CliError::Validation(
                        "graph spec with empty payload needs an explicit n".into(),
                    )),
                }
            }
            Self::OperatorOnSubspace { n, matrix, .. } => {
                infer_dim(*n, matrix.len(), "matrix rows")
            }
            Self::Gallery { n, .. } => Ok(*n),
        }
    }

    /// The per-spec rank tolerance, if the document carries one.
    pub fn tol(&self) -> Option<f64> {
        match self {
            Self::Matrix { tol, .. }
            | Self::Graph { tol, .. }
            | Self::OperatorOnSubspace { tol, .. }
            | Self::Gallery { tol, .. } => *tol,
        }
    }

    /// Checks internal consistency: payload shapes against `n` and each
    /// other, gallery names against the known list, tolerances positive.
    ///
    /// # Errors
    ///
    /// [`CliError::Validation`] describing the first inconsistency found.
    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.tol() {
            check_tol(t)?;
        }
        match self {
            Self::Matrix { n, payload, .. } => {
                let dim = infer_dim(*n, payload.len(), "matrix rows")?;
                for (i, row) in payload.iter().enumerate() {
                    if row.len() != dim {
                        return Err(CliError::Validation(format!(
                            "matrix row {i} has {} entries, expected {dim}",
                            row.len()
                        )));
                    }
                }
                Ok(())
            }
            Self::Graph { payload, .. } => {
                let dim = self.ambient_dim()?;
                for (i, row) in payload.iter().enumerate() {
                    if row.len() % 2 != 0 {
                        return Err(CliError::Validation(format!(
                            "graph row {i} has odd length {}; rows list [u₁…uₙ, v₁…vₙ]",
                            row.len()
                        )));
                    }
                    if row.len() != 2 * dim {
                        return Err(CliError::Validation(format!(
                            "graph row {i} has length {}, expected 2n = {}",
                            row.len(),
                            2 * dim
                        )));
                    }
                }
                Ok(())
            }
            Self::OperatorOnSubspace { domain, matrix, .. } => {
                let dim = self.ambient_dim()?;
                for (i, row) in matrix.iter().enumerate() {
                    if row.len() != dim {
                        return Err(CliError::Validation(format!(
                            "matrix row {i} has {} entries, expected {dim}",
                            row.len()
                        )));
                    }
                }
                for (i, row) in domain.iter().enumerate() {
                    if row.len() != dim {
                        return Err(CliError::Validation(format!(
                            "domain vector {i} has {} entries, expected {dim}",
                            row.len()
                        )));
                    }
                }
                Ok(())
            }
            Self::Gallery { name, n, .. } => {
                if !GALLERY_NAMES.contains(&name.as_str()) {
                    return Err(CliError::Validation(format!(
                        "unknown gallery name {name:?}; known: {}",
                        GALLERY_NAMES.join(", ")
                    )));
                }
                if *n == 0 {
                    return Err(CliError::Validation(
                        "gallery size n must be positive".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Builds the relation the document describes, using `rank_tol` as the
    /// rank cutoff for payload-built kinds. Gallery operators have exact
    /// structured graphs and use the library default cutoff.
    ///
    /// # Errors
    ///
    /// [`CliError::Validation`] as in [`Self::validate`], or
    /// [`CliError::Lib`] when the library rejects the data (for example a
    /// non-monotone `operator_on_subspace` matrix).
    pub fn build(&self, rank_tol: f64) -> Result<LinearRelation> {
        self.validate()?;
        check_tol(rank_tol)?;
        match self {
            Self::Matrix { payload, .. } => {
                let m = rows_to_matrix(payload);
                Ok(LinearRelation::from_matrix_with_tol(&m, rank_tol)?)
            }
            Self::Graph { payload, .. } => {
                let n = self.ambient_dim()?;
                let vectors: Vec<DVector<f64>> = payload
                    .iter()
                    .map(|row| DVector::from_column_slice(row))
                    .collect();
                Ok(LinearRelation::from_graph_with_tol(n, &vectors, rank_tol)?)
            }
            Self::OperatorOnSubspace { domain, matrix, .. } => {
                let n = self.ambient_dim()?;
                let vectors: Vec<DVector<f64>> = domain
                    .iter()
                    .map(|row| DVector::from_column_slice(row))
                    .collect();
                let d = Subspace::span_with_tol(n, &vectors, rank_tol)?;
                let m = rows_to_matrix(matrix);
                Ok(LinearRelation::make_maximal_with_tol(&d, &m, rank_tol)?)
            }
            Self::Gallery { name, n, .. } => match name.as_str() {
                "volterra" => Ok(volterra(*n)?),
                "derivative" => Ok(derivative_relation(*n)?),
                "shift_skew" => Ok(shift_skew(*n)?),
                other => Err(CliError::Validation(format!(
                    "unknown gallery name {other:?}"
                ))),
            },
        }
    }
}

/// Parses and validates a spec document.
///
/// # Errors
///
/// [`CliError::Parse`] with line/column for malformed JSON,
/// [`CliError::Validation`] for well-formed documents with inconsistent
/// contents.
pub fn parse_spec(text: &str) -> Result<RelationSpec> {
    let spec: RelationSpec = serde_json::from_str(text)?;
    spec.validate()?;
    Ok(spec)
}

/// Serializes a spec as pretty-printed UTF-8 JSON with a trailing newline.
///
/// Floats are written with enough digits for a bit-exact round trip, so
/// `parse_spec(&serialize_spec(s))` reproduces `s` exactly.
pub fn serialize_spec(spec: &RelationSpec) -> String {
    let mut text =
        serde_json::to_string_pretty(spec).expect("specs contain only finite JSON-safe values");
    text.push('\n');
    text
}

/// A graph-kind spec capturing an existing relation exactly: the payload
/// rows are the columns of its orthonormal graph basis.
pub fn spec_from_relation(a: &LinearRelation, rank_tol: f64) -> RelationSpec {
    let basis = a.graph().basis();
    let payload = (0..basis.ncols())
        .map(|j| basis.column(j).iter().copied().collect())
        .collect();
    RelationSpec::Graph {
        n: Some(a.n()),
        payload,
        tol: Some(rank_tol),
    }
}

fn infer_dim(n: Option<usize>, rows: usize, what: &str) -> Result<usize> {
    match n {
        Some(k) if rows == 0 || k == rows => {
            if k == 0 {
                return Err(CliError::Validation(
                    "ambient dimension n must be positive".into(),
                ));
            }
            Ok(k)
        }
        Some(k) => Err(CliError::Validation(format!(
            "n = {k} disagrees with {rows} {what}"
        ))),
        None if rows > 0 => Ok(rows),
        None => Err(CliError::Validation(format!(
            "empty {what} and no explicit n"
        ))),
    }
}

fn check_tol(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(CliError::Validation(format!(
            "tolerance must be a positive finite number, got {t}"
        )));
    }
    Ok(())
}

fn rows_to_matrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let n = rows.len();
    DMatrix::from_row_iterator(n, rows[0].len(), rows.iter().flatten().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use monorel::tol;

    #[test]
    fn matrix_document_builds_the_rotation_relation() {
        let spec = parse_spec(r#"{"n":2,"kind":"matrix","payload":[[0,-1],[1,0]]}"#).unwrap();
        let a = spec.build(tol::RANK_REL).unwrap();
        let j = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let direct = LinearRelation::from_matrix(&j).unwrap();
        assert!(a.graph().equals(direct.graph(), 1e-12).unwrap());
    }

    #[test]
    fn gallery_document_builds_the_shift_operator() {
        let spec = parse_spec(r#"{"kind":"gallery","name":"shift_skew","n":8}"#).unwrap();
        let a = spec.build(tol::RANK_REL).unwrap();
        let direct = shift_skew(8).unwrap();
        assert!(a.graph().equals(direct.graph(), 1e-12).unwrap());
    }

    #[test]
    fn operator_on_subspace_document_matches_make_maximal() {
        let text = r#"{"kind":"operator_on_subspace","domain":[[1,0]],"matrix":[[0,0],[0,0]]}"#;
        let a = parse_spec(text).unwrap().build(tol::RANK_REL).unwrap();
        let d = Subspace::span(2, &[DVector::from_column_slice(&[1.0, 0.0])]).unwrap();
        let direct = LinearRelation::make_maximal(&d, &DMatrix::zeros(2, 2)).unwrap();
        assert!(a.graph().equals(direct.graph(), 1e-12).unwrap());
    }

    #[test]
    fn odd_graph_rows_are_a_validation_error() {
        let err = parse_spec(r#"{"kind":"graph","payload":[[1,0,0]]}"#).unwrap_err();
        assert!(matches!(err, CliError::Validation(_)), "{err}");
        assert!(err.to_string().contains("odd length"), "{err}");
    }

    #[test]
    fn dimension_disagreement_is_a_validation_error() {
        let err = parse_spec(r#"{"n":3,"kind":"matrix","payload":[[0,-1],[1,0]]}"#).unwrap_err();
        assert!(matches!(err, CliError::Validation(_)), "{err}");
    }

    #[test]
    fn ragged_matrix_rows_are_a_validation_error() {
        let err = parse_spec(r#"{"kind":"matrix","payload":[[0,-1],[1]]}"#).unwrap_err();
        assert!(matches!(err, CliError::Validation(_)), "{err}");
    }

    #[test]
    fn unknown_gallery_name_is_a_validation_error() {
        let err = parse_spec(r#"{"kind":"gallery","name":"hilbert","n":4}"#).unwrap_err();
        assert!(matches!(err, CliError::Validation(_)), "{err}");
        assert!(err.to_string().contains("hilbert"), "{err}");
    }

    #[test]
    fn malformed_json_reports_the_position() {
        let err = parse_spec("{\"kind\": \"matrix\",\n  \"payload\": [[0, -1]").unwrap_err();
        assert!(matches!(err, CliError::Parse(_)), "{err}");
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn awkward_floats_round_trip_bit_exactly() {
        let spec = RelationSpec::Matrix {
            n: Some(2),
            payload: vec![vec![0.1, -0.0], vec![1e-308, 2.0_f64.powi(-52)]],
            tol: Some(1e-10),
        };
        let text = serialize_spec(&spec);
        let back = parse_spec(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(serialize_spec(&back), text);
    }

    #[test]
    fn graph_spec_with_explicit_n_and_empty_payload_is_the_zero_relation() {
        let spec = parse_spec(r#"{"kind":"graph","n":2,"payload":[]}"#).unwrap();
        let a = spec.build(tol::RANK_REL).unwrap();
        assert_eq!(a.graph_dim(), 0);
    }

    #[test]
    fn relation_snapshot_rebuilds_the_same_graph() {
        let a = volterra(6).unwrap();
        let spec = spec_from_relation(&a, tol::RANK_REL);
        let b = parse_spec(&serialize_spec(&spec))
            .unwrap()
            .build(tol::RANK_REL)
            .unwrap();
        assert!(a.graph().equals(b.graph(), 1e-12).unwrap());
    }
}
