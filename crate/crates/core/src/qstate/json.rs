use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// On-disk state format: `{"n_qubits": k, "matrix": [[[re, im], ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub n_qubits: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl From<&ComplexMatrix> for StateJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            n_qubits: m.n_qubits(),
            matrix: (0..m.dim())
                .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl From<&DensityMatrix> for StateJson {
    fn from(rho: &DensityMatrix) -> Self {
        Self::from(rho.matrix())
    }
}

impl StateJson {
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let dim = self.matrix.len();
        if !(1..=4).contains(&self.n_qubits) || dim != 1 << self.n_qubits {
            return Err(Error::Json(format!(
                "n_qubits = {} does not match {dim} rows",
                self.n_qubits
            )));
        }
        let rows: Vec<Vec<Complex64>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.to_matrix()?)
    }
}

impl DensityMatrix {
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: StateJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        parsed.to_density()
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string(&StateJson::from(self)).expect("state serializes")
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        StateJson::from(self).serialize(serializer)
    }
}
