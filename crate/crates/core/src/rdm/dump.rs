use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Serializable matrix snapshot with `[re, im]` entries in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixDump {
    pub fn new(name: impl Into<String>, matrix: &CMatrix, labels: Vec<String>) -> Result<Self> {
        let dim = matrix.dim();
        if labels.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: labels.len(),
            });
        }
        let entries = (0..dim)
            .map(|i| matrix.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Ok(MatrixDump {
            name: name.into(),
            dim,
            labels,
            entries,
        })
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let data = self
            .entries
            .iter()
            .flatten()
            .map(|&[re, im]| num_complex::Complex64::new(re, im))
            .collect();
        CMatrix::from_vec(self.dim, data)
            .ok_or_else(|| Error::invalid(format!("dump '{}' has malformed entries", self.name)))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// `row,col,row_label,col_label,re,im` per nonzero entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,row_label,col_label,re,im\n");
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &[re, im]) in row.iter().enumerate() {
                if re != 0.0 || im != 0.0 {
                    let _ = writeln!(
                        out,
                        "{i},{j},\"{}\",\"{}\",{re:e},{im:e}",
                        self.labels[i], self.labels[j]
                    );
                }
            }
        }
        out
    }
}
