use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Readout error of one qubit: `p01 = P(read 1 | prepared 0)`,
/// `p10 = P(read 0 | prepared 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ReadoutError {
    pub p01: f64,
    pub p10: f64,
}

impl ReadoutError {
    pub fn symmetric(p: f64) -> Self {
        ReadoutError { p01: p, p10: p }
    }

    /// Column-stochastic confusion matrix `A[measured][prepared]`.
    pub fn confusion(&self) -> [[f64; 2]; 2] {
        [[1.0 - self.p01, self.p10], [self.p01, 1.0 - self.p10]]
    }

    pub fn is_trivial(&self) -> bool {
        self.p01 == 0.0 && self.p10 == 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Readout {
    Uniform(f64),
    PerQubit(Vec<[f64; 2]>),
}

impl Default for Readout {
    fn default() -> Self {
        Readout::Uniform(0.0)
    }
}

/// Readout confusion plus depolarizing gate error.
///
/// On disk: `{"readout": 0.05 | [[p01, p10], ...], "depol1": .., "depol2": .., "seed": ..}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseModel {
    #[serde(default)]
    pub readout: Readout,
    /// Depolarizing probability after every single-qubit gate.
    #[serde(default)]
    pub depol1: f64,
    /// Two-qubit depolarizing probability after every CNOT.
    #[serde(default)]
    pub depol2: f64,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        NoiseModel::default()
    }

    pub fn symmetric_readout(p: f64) -> Self {
        NoiseModel {
            readout: Readout::Uniform(p),
            ..Default::default()
        }
    }

    pub fn with_depolarizing(mut self, depol1: f64, depol2: f64) -> Self {
        self.depol1 = depol1;
        self.depol2 = depol2;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let in_unit = |v: f64| v.is_finite() && (0.0..=1.0).contains(&v);
        match &self.readout {
            Readout::Uniform(p) if !in_unit(*p) => {
                return Err(Error::invalid(format!("readout error {p} not in [0, 1]")))
            }
            Readout::PerQubit(v) => {
                if let Some(bad) = v.iter().flatten().find(|p| !in_unit(**p)) {
                    return Err(Error::invalid(format!("readout error {bad} not in [0, 1]")));
                }
            }
            _ => {}
        }
        for (name, v) in [("depol1", self.depol1), ("depol2", self.depol2)] {
            if !in_unit(v) {
                return Err(Error::invalid(format!("{name} = {v} not in [0, 1]")));
            }
        }
        Ok(())
    }

    /// Per-qubit readout count, if the model pins one.
    pub fn fixed_qubit_count(&self) -> Option<usize> {
        match &self.readout {
            Readout::PerQubit(v) => Some(v.len()),
            Readout::Uniform(_) => None,
        }
    }

    pub fn check_qubits(&self, n: usize) -> Result<()> {
        match self.fixed_qubit_count() {
            Some(m) if m != n => Err(Error::DimensionMismatch {
                expected: n,
                found: m,
            }),
            _ => Ok(()),
        }
    }

    pub fn readout_for(&self, q: usize) -> ReadoutError {
        match &self.readout {
            Readout::Uniform(p) => ReadoutError::symmetric(*p),
            Readout::PerQubit(v) => v.get(q).map_or(ReadoutError::default(), |e| ReadoutError {
                p01: e[0],
                p10: e[1],
            }),
        }
    }

    pub fn has_gate_noise(&self) -> bool {
        self.depol1 > 0.0 || self.depol2 > 0.0
    }

    pub fn has_readout_noise(&self, n: usize) -> bool {
        (0..n).any(|q| !self.readout_for(q).is_trivial())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: NoiseModel = serde_json::from_str(s)?;
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scalar_and_per_qubit_readout() {
        let m = NoiseModel::from_json(r#"{"readout": 0.05, "depol2": 0.01, "seed": 3}"#).unwrap();
        assert_eq!(m.readout_for(7), ReadoutError::symmetric(0.05));
        assert_eq!(m.seed, Some(3));
        let m = NoiseModel::from_json(r#"{"readout": [[0.02, 0.08], [0.0, 0.1]]}"#).unwrap();
        assert_eq!(
            m.readout_for(0),
            ReadoutError {
                p01: 0.02,
                p10: 0.08
            }
        );
        assert_eq!(m.fixed_qubit_count(), Some(2));
        assert!(m.check_qubits(3).is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(NoiseModel::from_json(r#"{"readout": 1.5}"#).is_err());
        assert!(NoiseModel::from_json(r#"{"depol1": -0.1}"#).is_err());
        assert!(NoiseModel::from_json(r#"{"readot": 0.1}"#).is_err());
        assert!(NoiseModel::from_json("not json").is_err());
    }

    #[test]
    fn confusion_columns_sum_to_one() {
        let a = ReadoutError {
            p01: 0.02,
            p10: 0.08,
        }
        .confusion();
        for col in 0..2 {
            assert!((a[0][col] + a[1][col] - 1.0).abs() < 1e-12);
        }
    }
}
