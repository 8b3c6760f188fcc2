//! Instance, matrix and matrix-pair files.
//!
//! All files are UTF-8 JSON. Complex entries are `[re, im]` pairs and
//! matrices are arrays of rows.

use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::elemop::KTupleOperator;
use crate::linalg::ComplexMatrix;

pub type RawMatrix = Vec<Vec<[f64; 2]>>;

/// `{"n", "k", "a": [..], "b": [..], "label"?, "seed"?}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub k: usize,
    pub a: Vec<RawMatrix>,
    pub b: Vec<RawMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// `{"n", "matrix", "label"?}` for single-matrix commands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub matrix: RawMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// `{"n", "A", "B", "label"?}` for the derivation `x -> Ax - xB`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: RawMatrix,
    #[serde(rename = "B")]
    pub b: RawMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A parsed operator with its optional label and seed.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub op: KTupleOperator,
    pub label: Option<String>,
    pub seed: Option<u64>,
}

pub fn encode_matrix(m: &ComplexMatrix) -> RawMatrix {
    m.rows().into_iter().map(|row| row.into_iter().map(|z| [z.re, z.im]).collect()).collect()
}

/// Validates shape and finiteness against the declared `n`; `field` names the
/// matrix in diagnostics (`a[1]`, `matrix`, ...).
pub fn decode_matrix(raw: &RawMatrix, n: usize, field: &str) -> Result<ComplexMatrix, String> {
    if raw.len() != n {
        return Err(format!("{field}: expected {n} rows, found {}", raw.len()));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(format!("{field}[{i}]: expected {n} entries, found {}", row.len()));
        }
        let mut out = Vec::with_capacity(n);
        for (j, [re, im]) in row.iter().enumerate() {
            if !(re.is_finite() && im.is_finite()) {
                return Err(format!("{field}[{i}][{j}]: non-finite entry"));
            }
            out.push(Complex64::new(*re, *im));
        }
        rows.push(out);
    }
    ComplexMatrix::from_rows(rows).map_err(|e| format!("{field}: {e}"))
}

impl InstanceFile {
    pub fn from_operator(op: &KTupleOperator, label: Option<String>, seed: Option<u64>) -> Self {
        Self {
            n: op.n(),
            k: op.k(),
            a: op.left().iter().map(encode_matrix).collect(),
            b: op.right().iter().map(encode_matrix).collect(),
            label,
            seed,
        }
    }

    pub fn decode(&self) -> Result<Instance, String> {
        if self.n == 0 {
            return Err("n: must be positive".into());
        }
        if self.k == 0 {
            return Err("k: must be positive".into());
        }
        for (name, list) in [("a", &self.a), ("b", &self.b)] {
            if list.len() != self.k {
                return Err(format!("{name}: expected k = {} matrices, found {}", self.k, list.len()));
            }
        }
        let decode_all = |name: &str, list: &[RawMatrix]| -> Result<Vec<ComplexMatrix>, String> {
            list.iter().enumerate().map(|(i, m)| decode_matrix(m, self.n, &format!("{name}[{i}]"))).collect()
        };
        let a = decode_all("a", &self.a)?;
        let b = decode_all("b", &self.b)?;
        let op = KTupleOperator::new(a, b).map_err(|e| e.to_string())?;
        Ok(Instance { op, label: self.label.clone(), seed: self.seed })
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Input(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
    })
}

fn field_error(path: &Path, msg: String) -> CliError {
    CliError::Input(format!("{}: {msg}", path.display()))
}

pub fn parse_instance(path: &Path) -> Result<Instance, CliError> {
    let file: InstanceFile = read_json(path)?;
    file.decode().map_err(|m| field_error(path, m))
}

pub fn parse_matrix(path: &Path) -> Result<(ComplexMatrix, Option<String>), CliError> {
    let file: MatrixFile = read_json(path)?;
    let m = decode_matrix(&file.matrix, file.n, "matrix").map_err(|m| field_error(path, m))?;
    Ok((m, file.label))
}

pub fn parse_pair(path: &Path) -> Result<(ComplexMatrix, ComplexMatrix, Option<String>), CliError> {
    let file: PairFile = read_json(path)?;
    let a = decode_matrix(&file.a, file.n, "A").map_err(|m| field_error(path, m))?;
    let b = decode_matrix(&file.b, file.n, "B").map_err(|m| field_error(path, m))?;
    Ok((a, b, file.label))
}

pub fn instance_to_json(op: &KTupleOperator, label: Option<String>, seed: Option<u64>) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_operator(op, label, seed)).expect("finite operator serializes")
}
