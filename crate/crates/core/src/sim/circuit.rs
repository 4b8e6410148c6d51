use serde::{Deserialize, Serialize};

use super::gate::Gate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    qubit_count: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubit_count: usize) -> Result<Self> {
        if qubit_count == 0 {
            return Err(Error::invalid("a circuit needs at least one qubit"));
        }
        Ok(Circuit {
            qubit_count,
            gates: Vec::new(),
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    /// Gates in application order.
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.qubit_count)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn ry(&mut self, target: usize, angle: f64) -> Result<&mut Self> {
        self.push(Gate::RotY { target, angle })
    }

    pub fn h(&mut self, target: usize) -> Result<&mut Self> {
        self.push(Gate::Hadamard { target })
    }

    pub fn cx(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.push(Gate::Cnot { control, target })
    }

    pub fn x(&mut self, target: usize) -> Result<&mut Self> {
        self.push(Gate::PauliX { target })
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            qubit_count: self.qubit_count,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn is_clifford(&self) -> bool {
        self.gates.iter().all(Gate::is_clifford)
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.control().is_some()).count()
    }
}

/// Rotation angles of the three-qubit scanning preparation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrepAngles {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
}

impl PrepAngles {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Self {
        PrepAngles {
            theta1,
            theta2,
            theta3,
        }
    }
}

/// Three-qubit scanning preparation.
///
/// Applied in order: `Ry(θ1)` on qubit 0, CNOT 0→2, `Ry(θ2)` on qubit 0,
/// CNOT 0→1, `Ry(θ3)` on qubit 2, CNOT 2→1. Every resulting state lives in
/// the even-parity span of `|000>, |011>, |101>, |110>`.
pub fn build_min3_prep(angles: PrepAngles) -> Result<Circuit> {
    for a in [angles.theta1, angles.theta2, angles.theta3] {
        if !a.is_finite() {
            return Err(Error::invalid("preparation angle is not finite"));
        }
    }
    let mut c = Circuit::new(3)?;
    c.ry(0, angles.theta1)?
        .cx(0, 2)?
        .ry(0, angles.theta2)?
        .cx(0, 1)?
        .ry(2, angles.theta3)?
        .cx(2, 1)?;
    Ok(c)
}

/// Hadamard on qubit 0 followed by the nearest-neighbour CNOT chain.
pub fn build_ghz(n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::invalid("GHZ preparation needs n >= 1"));
    }
    let mut c = Circuit::new(n)?;
    c.h(0)?;
    for k in 0..n - 1 {
        c.cx(k, k + 1)?;
    }
    Ok(c)
}

/// Prepares `|0...0>` (all_ones = false) or `|1...1>` for readout calibration.
pub fn build_calibration(n: usize, all_ones: bool) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    if all_ones {
        for q in 0..n {
            c.x(q)?;
        }
    }
    Ok(c)
}
