use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use super::gate::Gate;
use super::kernels;
use super::marginal::PairMarginal;
use crate::error::{Error, Result};
use crate::pauli::Mat2;

/// Largest register the dense backend simulates by default.
pub const DEFAULT_DENSE_LIMIT: usize = 20;

const NORM_TOLERANCE: f64 = 1e-12;

/// Statevector of `n` qubits. Basis index bit `n - 1 - q` holds qubit `q`,
/// so qubit 0 is the most significant (leftmost) bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    qubit_count: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// `|0...0>`
    pub fn zero(qubit_count: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << qubit_count];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        PureState {
            qubit_count,
            amplitudes,
        }
    }

    pub fn from_amplitudes(qubit_count: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1 << qubit_count {
            return Err(Error::DimensionMismatch {
                expected: 1 << qubit_count,
                found: amplitudes.len(),
            });
        }
        let state = PureState {
            qubit_count,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::invalid(format!(
                "state norm^2 is {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    /// Normalizes the given amplitudes before wrapping them.
    pub fn normalized(qubit_count: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::invalid("cannot normalize a zero vector"));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(qubit_count, amplitudes)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub(crate) fn mask(&self, qubit: usize) -> usize {
        1 << (self.qubit_count - 1 - qubit)
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.qubit_count)?;
        match *gate {
            Gate::RotY { target, angle } => self.apply_unitary(target, &kernels::ry_matrix(angle)),
            Gate::Hadamard { target } => self.apply_unitary(target, &kernels::hadamard_matrix()),
            Gate::PauliX { target } => self.apply_unitary(target, &kernels::x_matrix()),
            Gate::Cnot { control, target } => {
                let (c, t) = (self.mask(control), self.mask(target));
                kernels::apply_cnot(&mut self.amplitudes, c, t);
            }
        }
        Ok(())
    }

    /// Applies an arbitrary single-qubit matrix (used for measurement basis changes).
    pub(crate) fn apply_unitary(&mut self, qubit: usize, u: &Mat2) {
        let mask = self.mask(qubit);
        kernels::apply_single(&mut self.amplitudes, mask, u);
    }

    /// Two-qubit reduced density matrix, basis `|b_p b_q>` with `p` the high bit.
    pub fn pair_marginal(&self, p: usize, q: usize) -> Result<PairMarginal> {
        if p == q || p >= self.qubit_count || q >= self.qubit_count {
            return Err(Error::invalid(format!("invalid qubit pair ({p}, {q})")));
        }
        let (mp, mq) = (self.mask(p), self.mask(q));
        let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
        for i in 0..self.amplitudes.len() {
            if i & (mp | mq) != 0 {
                continue;
            }
            let v = [i, i | mq, i | mp, i | mp | mq].map(|k| self.amplitudes[k]);
            for r in 0..4 {
                for c in 0..4 {
                    rho[r][c] += v[r] * v[c].conj();
                }
            }
        }
        Ok(PairMarginal::new_unchecked((p, q), rho))
    }

    /// Single-qubit reduced density matrix.
    pub fn single_marginal(&self, q: usize) -> Mat2 {
        let m = self.mask(q);
        let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..self.amplitudes.len() {
            if i & m != 0 {
                continue;
            }
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | m]);
            rho[0][0] += a0 * a0.conj();
            rho[0][1] += a0 * a1.conj();
            rho[1][0] += a1 * a0.conj();
            rho[1][1] += a1 * a1.conj();
        }
        rho
    }
}

/// Dense statevector simulator.
#[derive(Debug, Clone, Copy)]
pub struct Simulator {
    pub dense_limit: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Simulator {
            dense_limit: DEFAULT_DENSE_LIMIT,
        }
    }
}

impl Simulator {
    pub fn run(&self, circuit: &Circuit) -> Result<PureState> {
        self.check_capacity(circuit.qubit_count())?;
        self.run_from(circuit, PureState::zero(circuit.qubit_count()))
    }

    pub fn check_capacity(&self, n: usize) -> Result<()> {
        if n > self.dense_limit {
            return Err(Error::Capacity(format!(
                "{n} qubits exceeds the dense limit of {}; use the analytic GHZ marginal backend",
                self.dense_limit
            )));
        }
        Ok(())
    }

    /// Applies `circuit` to an existing state.
    pub fn run_from(&self, circuit: &Circuit, mut state: PureState) -> Result<PureState> {
        let n = circuit.qubit_count();
        self.check_capacity(n)?;
        if state.qubit_count() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: state.qubit_count(),
            });
        }
        for gate in circuit.gates() {
            state.apply_gate(gate)?;
        }
        Ok(state)
    }
}

/// Simulates `circuit` from `|0...0>` with the default dense limit.
pub fn simulate(circuit: &Circuit) -> Result<PureState> {
    Simulator::default().run(circuit)
}
