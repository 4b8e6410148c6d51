use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The gate set used by every preparation and calibration circuit.
///
/// Qubit indices are zero-based; qubit 0 is the most significant bit of a
/// basis-state index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    /// Rotation about the Bloch-sphere y axis, `[[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`.
    RotY {
        target: usize,
        angle: f64,
    },
    Hadamard {
        target: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    PauliX {
        target: usize,
    },
}

impl Gate {
    pub fn target(&self) -> usize {
        match *self {
            Gate::RotY { target, .. }
            | Gate::Hadamard { target }
            | Gate::Cnot { target, .. }
            | Gate::PauliX { target } => target,
        }
    }

    pub fn control(&self) -> Option<usize> {
        match *self {
            Gate::Cnot { control, .. } => Some(control),
            _ => None,
        }
    }

    /// Qubits touched by the gate, control first.
    pub fn qubits(&self) -> Vec<usize> {
        match self.control() {
            Some(c) => vec![c, self.target()],
            None => vec![self.target()],
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::RotY { target, angle } => Gate::RotY {
                target,
                angle: -angle,
            },
            g => g,
        }
    }

    /// True for gates that map Pauli operators to Pauli operators.
    pub fn is_clifford(&self) -> bool {
        match *self {
            Gate::RotY { angle, .. } => {
                let quarter = angle / std::f64::consts::FRAC_PI_2;
                (quarter - quarter.round()).abs() < 1e-12
            }
            _ => true,
        }
    }

    pub fn validate(&self, qubit_count: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= qubit_count {
                return Err(Error::invalid(format!(
                    "gate {self} addresses qubit {q} in a {qubit_count}-qubit circuit"
                )));
            }
        }
        if let Gate::Cnot { control, target } = *self {
            if control == target {
                return Err(Error::invalid(format!(
                    "CNOT control equals target ({target})"
                )));
            }
        }
        if let Gate::RotY { angle, .. } = *self {
            if !angle.is_finite() {
                return Err(Error::invalid("rotation angle is not finite"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::RotY { target, angle } => write!(f, "ry({angle}) q{target}"),
            Gate::Hadamard { target } => write!(f, "h q{target}"),
            Gate::Cnot { control, target } => write!(f, "cx q{control}, q{target}"),
            Gate::PauliX { target } => write!(f, "x q{target}"),
        }
    }
}
