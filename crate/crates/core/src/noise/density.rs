use std::collections::BTreeMap;

use num_complex::Complex64;

use super::model::NoiseModel;
use crate::error::{Error, Result};
use crate::pauli::{Mat2, Pauli};
use crate::sim::{kernels, Circuit, Gate, MarginalSet, PairMarginal, PureState};
use crate::tomography::{MeasurableState, MeasurementSetting};

/// Largest register evolved as a full density matrix.
pub const DENSITY_LIMIT: usize = 10;

/// Dense `2^n x 2^n` density matrix stored as a `2n`-qubit vector with the
/// row index in the high bits, so the statevector kernels apply directly.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    qubit_count: usize,
    data: Vec<Complex64>,
}

fn conj2(u: &Mat2) -> Mat2 {
    [
        [u[0][0].conj(), u[0][1].conj()],
        [u[1][0].conj(), u[1][1].conj()],
    ]
}

impl DensityMatrix {
    pub fn zero(n: usize) -> Result<Self> {
        Self::from_pure(&PureState::zero(n))
    }

    pub fn from_pure(state: &PureState) -> Result<Self> {
        let n = state.qubit_count();
        if n > DENSITY_LIMIT {
            return Err(Error::Capacity(format!(
                "{n} qubits exceeds the density-matrix limit of {DENSITY_LIMIT}"
            )));
        }
        let a = state.amplitudes();
        let dim = a.len();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                data[(r << n) | c] = a[r] * a[c].conj();
            }
        }
        Ok(DensityMatrix {
            qubit_count: n,
            data,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row << self.qubit_count) | col]
    }

    fn row_mask(&self, q: usize) -> usize {
        1 << (2 * self.qubit_count - 1 - q)
    }

    fn col_mask(&self, q: usize) -> usize {
        1 << (self.qubit_count - 1 - q)
    }

    pub fn trace(&self) -> f64 {
        let dim = 1 << self.qubit_count;
        (0..dim).map(|i| self.entry(i, i).re).sum()
    }

    /// `rho -> U rho U†` on one qubit.
    pub(crate) fn apply_unitary(&mut self, q: usize, u: &Mat2) {
        let (rm, cm) = (self.row_mask(q), self.col_mask(q));
        kernels::apply_single(&mut self.data, rm, u);
        kernels::apply_single(&mut self.data, cm, &conj2(u));
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.qubit_count)?;
        match *gate {
            Gate::RotY { target, angle } => self.apply_unitary(target, &kernels::ry_matrix(angle)),
            Gate::Hadamard { target } => self.apply_unitary(target, &kernels::hadamard_matrix()),
            Gate::PauliX { target } => self.apply_unitary(target, &Pauli::X.matrix()),
            Gate::Cnot { control, target } => {
                let (rc, rt) = (self.row_mask(control), self.row_mask(target));
                let (cc, ct) = (self.col_mask(control), self.col_mask(target));
                kernels::apply_cnot(&mut self.data, rc, rt);
                kernels::apply_cnot(&mut self.data, cc, ct);
            }
        }
        Ok(())
    }

    /// `rho -> (1 - p) rho + p (I/d (x) Tr_S rho)` over the qubit set `S`.
    pub fn depolarize(&mut self, qubits: &[usize], p: f64) {
        if p == 0.0 {
            return;
        }
        let k = qubits.len();
        let d = 1usize << k;
        let row_masks: Vec<usize> = qubits.iter().map(|&q| self.row_mask(q)).collect();
        let col_masks: Vec<usize> = qubits.iter().map(|&q| self.col_mask(q)).collect();
        let offset = |masks: &[usize], a: usize| {
            (0..k)
                .filter(|&j| (a >> (k - 1 - j)) & 1 == 1)
                .fold(0, |acc, j| acc | masks[j])
        };
        let rows: Vec<usize> = (0..d).map(|a| offset(&row_masks, a)).collect();
        let cols: Vec<usize> = (0..d).map(|a| offset(&col_masks, a)).collect();
        let all: usize = row_masks.iter().chain(&col_masks).fold(0, |a, m| a | m);
        for base in 0..self.data.len() {
            if base & all != 0 {
                continue;
            }
            let trace: Complex64 = (0..d).map(|a| self.data[base | rows[a] | cols[a]]).sum();
            for a in 0..d {
                for b in 0..d {
                    let idx = base | rows[a] | cols[b];
                    let mixed = if a == b {
                        trace / d as f64
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    self.data[idx] = self.data[idx] * (1.0 - p) + mixed * p;
                }
            }
        }
    }

    /// Runs `circuit` from `|0...0>` with depolarizing noise after every gate.
    pub fn evolve(circuit: &Circuit, model: &NoiseModel) -> Result<Self> {
        let mut rho = Self::zero(circuit.qubit_count())?;
        for gate in circuit.gates() {
            rho.apply_gate(gate)?;
            match gate.control() {
                Some(_) => rho.depolarize(&gate.qubits(), model.depol2),
                None => rho.depolarize(&gate.qubits(), model.depol1),
            }
        }
        Ok(rho)
    }

    pub fn single_marginal(&self, q: usize) -> Mat2 {
        let n = self.qubit_count;
        let m = self.col_mask(q);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for base in 0..1usize << n {
            if base & m != 0 {
                continue;
            }
            for a in 0..2 {
                for b in 0..2 {
                    out[a][b] += self.entry(base | (a * m), base | (b * m));
                }
            }
        }
        out
    }

    pub fn pair_marginal(&self, p: usize, q: usize) -> PairMarginal {
        let n = self.qubit_count;
        let (mp, mq) = (self.col_mask(p), self.col_mask(q));
        let sub = |a: usize| ((a >> 1) & 1) * mp | (a & 1) * mq;
        let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
        for base in 0..1usize << n {
            if base & (mp | mq) != 0 {
                continue;
            }
            for a in 0..4 {
                for b in 0..4 {
                    out[a][b] += self.entry(base | sub(a), base | sub(b));
                }
            }
        }
        PairMarginal::new_unchecked((p, q), out)
    }

    pub fn marginals(&self) -> MarginalSet {
        let n = self.qubit_count;
        let singles = (0..n).map(|q| self.single_marginal(q)).collect();
        let mut pairs = BTreeMap::new();
        for p in 0..n {
            for q in p + 1..n {
                pairs.insert((p, q), self.pair_marginal(p, q));
            }
        }
        MarginalSet::from_parts(n, singles, pairs)
    }
}

impl MeasurableState for DensityMatrix {
    fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    fn basis_probabilities(&self, setting: &MeasurementSetting) -> Result<Vec<f64>> {
        if setting.len() != self.qubit_count {
            return Err(Error::DimensionMismatch {
                expected: self.qubit_count,
                found: setting.len(),
            });
        }
        let mut rotated = self.clone();
        for (q, &b) in setting.bases().iter().enumerate() {
            if b != Pauli::Z {
                rotated.apply_unitary(q, &kernels::basis_change(b));
            }
        }
        let dim = 1usize << self.qubit_count;
        Ok((0..dim).map(|i| rotated.entry(i, i).re.max(0.0)).collect())
    }
}
