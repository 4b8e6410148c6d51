use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pauli::Pauli;

/// Which two-qubit Pauli correlators are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PauliMode {
    /// Only XX, YY, ZZ, XZ, ZX per pair; Y-odd contributions are taken as zero.
    RealOnly,
    /// All nine correlators per pair.
    Full,
}

pub const REAL_PAIR_LABELS: [(Pauli, Pauli); 5] = [
    (Pauli::X, Pauli::X),
    (Pauli::Y, Pauli::Y),
    (Pauli::Z, Pauli::Z),
    (Pauli::X, Pauli::Z),
    (Pauli::Z, Pauli::X),
];

pub const FULL_PAIR_LABELS: [(Pauli, Pauli); 9] = [
    (Pauli::X, Pauli::X),
    (Pauli::X, Pauli::Y),
    (Pauli::X, Pauli::Z),
    (Pauli::Y, Pauli::X),
    (Pauli::Y, Pauli::Y),
    (Pauli::Y, Pauli::Z),
    (Pauli::Z, Pauli::X),
    (Pauli::Z, Pauli::Y),
    (Pauli::Z, Pauli::Z),
];

impl PauliMode {
    /// Full tomography up to five qubits, real-only beyond.
    pub fn auto(n: usize) -> Self {
        if n > 5 {
            PauliMode::RealOnly
        } else {
            PauliMode::Full
        }
    }

    pub fn pair_labels(self) -> &'static [(Pauli, Pauli)] {
        match self {
            PauliMode::RealOnly => &REAL_PAIR_LABELS,
            PauliMode::Full => &FULL_PAIR_LABELS,
        }
    }

    /// Whether a two-qubit correlator is stored in this mode.
    pub fn keeps(self, a: Pauli, b: Pauli) -> bool {
        match self {
            PauliMode::Full => true,
            PauliMode::RealOnly => REAL_PAIR_LABELS.contains(&(a, b)),
        }
    }
}

impl FromStr for PauliMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real-only" | "real" => Ok(PauliMode::RealOnly),
            "full" => Ok(PauliMode::Full),
            _ => Err(Error::invalid(format!("unknown Pauli mode {s:?}"))),
        }
    }
}

/// A one- or two-qubit Pauli operator, identity factors omitted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliLabel {
    terms: Vec<(usize, Pauli)>,
}

impl PauliLabel {
    pub fn new(mut terms: Vec<(usize, Pauli)>) -> Result<Self> {
        terms.retain(|(_, p)| *p != Pauli::I);
        terms.sort();
        if terms.is_empty() || terms.len() > 2 {
            return Err(Error::invalid(format!(
                "a Pauli label needs one or two non-identity factors, got {}",
                terms.len()
            )));
        }
        if terms.len() == 2 && terms[0].0 == terms[1].0 {
            return Err(Error::invalid(format!(
                "repeated qubit {} in label",
                terms[0].0
            )));
        }
        Ok(PauliLabel { terms })
    }

    pub fn single(q: usize, p: Pauli) -> Result<Self> {
        Self::new(vec![(q, p)])
    }

    pub fn pair(p: usize, a: Pauli, q: usize, b: Pauli) -> Result<Self> {
        Self::new(vec![(p, a), (q, b)])
    }

    pub fn terms(&self) -> &[(usize, Pauli)] {
        &self.terms
    }

    pub fn max_qubit(&self) -> usize {
        self.terms.iter().map(|t| t.0).max().unwrap_or(0)
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(q, p)| format!("{p}{q}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Per-qubit measurement basis, written as a string such as `"XZZ"`
/// (qubit 0 first).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasurementSetting(Vec<Pauli>);

impl MeasurementSetting {
    pub fn new(bases: Vec<Pauli>) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::invalid("empty measurement setting"));
        }
        if bases.contains(&Pauli::I) {
            return Err(Error::invalid("measurement bases must be X, Y or Z"));
        }
        Ok(MeasurementSetting(bases))
    }

    pub fn uniform(n: usize, basis: Pauli) -> Result<Self> {
        Self::new(vec![basis; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn basis(&self, q: usize) -> Pauli {
        self.0[q]
    }

    pub fn bases(&self) -> &[Pauli] {
        &self.0
    }

    /// Whether `label` can be estimated from outcomes of this setting.
    pub fn exposes(&self, label: &PauliLabel) -> bool {
        label
            .terms()
            .iter()
            .all(|&(q, p)| q < self.0.len() && self.0[q] == p)
    }
}

impl fmt::Display for MeasurementSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|p| write!(f, "{p}"))
    }
}

impl FromStr for MeasurementSetting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bases = s
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| Error::invalid(format!("bad basis {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(bases)
    }
}

impl Serialize for MeasurementSetting {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MeasurementSetting {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_validation() {
        assert!(PauliLabel::new(vec![]).is_err());
        assert!(PauliLabel::new(vec![(0, Pauli::I)]).is_err());
        assert!(PauliLabel::pair(1, Pauli::X, 1, Pauli::Z).is_err());
        assert!(PauliLabel::new(vec![(0, Pauli::X), (1, Pauli::X), (2, Pauli::X)]).is_err());
        let l = PauliLabel::pair(2, Pauli::Z, 0, Pauli::X).unwrap();
        assert_eq!(l.to_string(), "X0 Z2");
    }

    #[test]
    fn setting_exposure() {
        let s: MeasurementSetting = "XZZ".parse().unwrap();
        assert!(s.exposes(&PauliLabel::pair(0, Pauli::X, 2, Pauli::Z).unwrap()));
        assert!(!s.exposes(&PauliLabel::pair(0, Pauli::Z, 2, Pauli::Z).unwrap()));
        assert!("XIZ".parse::<MeasurementSetting>().is_err());
    }
}
