//! Heisenberg-picture propagation of Pauli operators through Clifford
//! circuits under depolarizing noise. Each depolarizing channel multiplies a
//! Pauli that overlaps its qubits by `1 - p`, so expectations of noisy GHZ
//! preparations are exact at any register size.

use std::f64::consts::FRAC_PI_2;

use super::model::NoiseModel;
use crate::error::{Error, Result};
use crate::pauli::Pauli;
use crate::sim::{Circuit, Gate, MarginalSet};

#[derive(Debug, Clone, PartialEq)]
struct PauliString {
    letters: Vec<Pauli>,
    sign: f64,
}

impl PauliString {
    fn touches(&self, qubits: &[usize]) -> bool {
        qubits.iter().any(|&q| self.letters[q] != Pauli::I)
    }

    /// `P -> U† P U`
    fn conjugate(&mut self, gate: &Gate) -> Result<()> {
        use Pauli::*;
        match *gate {
            Gate::Hadamard { target } => {
                let (l, s) = match self.letters[target] {
                    X => (Z, 1.0),
                    Z => (X, 1.0),
                    Y => (Y, -1.0),
                    I => (I, 1.0),
                };
                self.letters[target] = l;
                self.sign *= s;
            }
            Gate::PauliX { target } => {
                if matches!(self.letters[target], Y | Z) {
                    self.sign = -self.sign;
                }
            }
            Gate::RotY { target, angle } => {
                let quarter = angle / FRAC_PI_2;
                if (quarter - quarter.round()).abs() > 1e-12 {
                    return Err(Error::Capacity(format!(
                        "rotation angle {angle} is not Clifford; Pauli propagation unavailable"
                    )));
                }
                let (l, s) = match ((quarter.round() as i64).rem_euclid(4), self.letters[target]) {
                    (0, p) | (_, p @ (I | Y)) => (p, 1.0),
                    (1, X) => (Z, 1.0),
                    (1, Z) => (X, -1.0),
                    (2, p) => (p, -1.0),
                    (3, X) => (Z, -1.0),
                    (3, Z) => (X, 1.0),
                    _ => unreachable!(),
                };
                self.letters[target] = l;
                self.sign *= s;
            }
            Gate::Cnot { control, target } => {
                let (c, t) = (self.letters[control], self.letters[target]);
                let (nc, nt, s) = match (c, t) {
                    (I, I) => (I, I, 1.0),
                    (I, X) => (I, X, 1.0),
                    (I, Y) => (Z, Y, 1.0),
                    (I, Z) => (Z, Z, 1.0),
                    (X, I) => (X, X, 1.0),
                    (X, X) => (X, I, 1.0),
                    (X, Y) => (Y, Z, 1.0),
                    (X, Z) => (Y, Y, -1.0),
                    (Y, I) => (Y, X, 1.0),
                    (Y, X) => (Y, I, 1.0),
                    (Y, Y) => (X, Z, -1.0),
                    (Y, Z) => (X, Y, 1.0),
                    (Z, I) => (Z, I, 1.0),
                    (Z, X) => (Z, X, 1.0),
                    (Z, Y) => (I, Y, 1.0),
                    (Z, Z) => (I, Z, 1.0),
                };
                self.letters[control] = nc;
                self.letters[target] = nt;
                self.sign *= s;
            }
        }
        Ok(())
    }
}

/// `Tr(rho P)` for the noisy output of `circuit` started in `|0...0>`, where
/// `P` is the product of `factors`.
pub fn propagate_expectation(
    circuit: &Circuit,
    model: &NoiseModel,
    factors: &[(usize, Pauli)],
) -> Result<f64> {
    let n = circuit.qubit_count();
    let mut p = PauliString {
        letters: vec![Pauli::I; n],
        sign: 1.0,
    };
    for &(q, l) in factors {
        if q >= n {
            return Err(Error::invalid(format!(
                "qubit {q} outside {n}-qubit circuit"
            )));
        }
        p.letters[q] = l;
    }
    let mut damping = 1.0;
    for gate in circuit.gates().iter().rev() {
        let rate = if gate.control().is_some() {
            model.depol2
        } else {
            model.depol1
        };
        if rate > 0.0 && p.touches(&gate.qubits()) {
            damping *= 1.0 - rate;
        }
        p.conjugate(gate)?;
    }
    if p.letters.iter().any(|l| matches!(l, Pauli::X | Pauli::Y)) {
        Ok(0.0)
    } else {
        Ok(p.sign * damping)
    }
}

/// One- and two-qubit marginals of a noisy Clifford circuit.
pub fn noisy_clifford_marginals(circuit: &Circuit, model: &NoiseModel) -> Result<MarginalSet> {
    if !circuit.is_clifford() {
        return Err(Error::Capacity("circuit is not Clifford".into()));
    }
    let n = circuit.qubit_count();
    let single =
        |q: usize, a: Pauli| propagate_expectation(circuit, model, &[(q, a)]).expect("clifford");
    let pair = |p: usize, q: usize, a: Pauli, b: Pauli| {
        propagate_expectation(circuit, model, &[(p, a), (q, b)]).expect("clifford")
    };
    Ok(MarginalSet::from_pauli_expectations(n, single, pair))
}
