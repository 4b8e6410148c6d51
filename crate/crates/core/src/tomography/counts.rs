use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::label::MeasurementSetting;
use crate::error::{Error, Result};

/// Outcome histogram of one measurement setting. Bitstrings list qubit 0
/// first (most significant).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub setting: MeasurementSetting,
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl CountTable {
    pub fn new(
        setting: MeasurementSetting,
        shots: u64,
        counts: BTreeMap<String, u64>,
        seed: Option<u64>,
    ) -> Result<Self> {
        let t = CountTable {
            setting,
            shots,
            counts,
            seed,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::invalid("count table with zero shots"));
        }
        let total: u64 = self.counts.values().sum();
        if total != self.shots {
            return Err(Error::invalid(format!(
                "counts sum to {total}, shots = {}",
                self.shots
            )));
        }
        let n = self.setting.len();
        for k in self.counts.keys() {
            if k.len() != n || !k.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::invalid(format!("bad outcome {k:?} for {n} qubits")));
            }
        }
        Ok(())
    }

    pub fn qubit_count(&self) -> usize {
        self.setting.len()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: CountTable = serde_json::from_str(s)?;
        t.validate()?;
        Ok(t)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Real-valued outcome weights, as produced by readout mitigation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub setting: MeasurementSetting,
    pub shots: u64,
    pub weights: BTreeMap<String, f64>,
}

/// Anything that yields weighted measurement outcomes for one setting.
pub trait OutcomeTable {
    fn setting(&self) -> &MeasurementSetting;
    fn total_weight(&self) -> f64;
    fn for_each_outcome(&self, f: &mut dyn FnMut(&str, f64));
}

impl OutcomeTable for CountTable {
    fn setting(&self) -> &MeasurementSetting {
        &self.setting
    }

    fn total_weight(&self) -> f64 {
        self.shots as f64
    }

    fn for_each_outcome(&self, f: &mut dyn FnMut(&str, f64)) {
        for (k, &v) in &self.counts {
            f(k, v as f64);
        }
    }
}

impl OutcomeTable for FrequencyTable {
    fn setting(&self) -> &MeasurementSetting {
        &self.setting
    }

    fn total_weight(&self) -> f64 {
        self.weights.values().sum()
    }

    fn for_each_outcome(&self, f: &mut dyn FnMut(&str, f64)) {
        for (k, &v) in &self.weights {
            f(k, v);
        }
    }
}

/// Outcome key of a basis index, qubit 0 first.
pub fn index_to_bits(index: usize, n: usize) -> String {
    (0..n)
        .map(|q| {
            if (index >> (n - 1 - q)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

pub fn bits_to_index(bits: &str) -> usize {
    bits.bytes()
        .fold(0, |acc, b| (acc << 1) | usize::from(b == b'1'))
}
