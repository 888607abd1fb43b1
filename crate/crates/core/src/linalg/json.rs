use serde::{Deserialize, Serialize};

use super::{LinalgError, SymMatrix};
use crate::scalar::ParamSet;

/// Wire form: `{"rows", "cols", "params", "entries"}` with entries in the scalar grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub params: Vec<String>,
    pub entries: Vec<String>,
}

impl From<&SymMatrix> for MatrixJson {
    fn from(m: &SymMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            params: m.params().names().to_vec(),
            entries: m.entries().iter().map(|e| e.to_string()).collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for SymMatrix {
    type Error = LinalgError;

    fn try_from(j: &MatrixJson) -> Result<Self, LinalgError> {
        let p = ParamSet::new(j.params.iter().cloned())?;
        let e: Vec<&str> = j.entries.iter().map(String::as_str).collect();
        SymMatrix::parse(j.rows, j.cols, &p, &e)
    }
}

impl SymMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MatrixJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<SymMatrix, LinalgError> {
        let j: MatrixJson = serde_json::from_str(s).map_err(|e| LinalgError::Format(e.to_string()))?;
        SymMatrix::try_from(&j)
    }
}
