//! Readout and depolarizing gate noise.

mod clifford;
mod density;
mod model;
mod readout;

pub use clifford::{noisy_clifford_marginals, propagate_expectation};
pub use density::{DensityMatrix, DENSITY_LIMIT};
pub use model::{NoiseModel, Readout, ReadoutError};
pub use readout::{apply_readout_noise, readout_distorted};

use crate::error::{Error, Result};
use crate::sim::{Circuit, MarginalSet};

/// Marginals of `circuit` under the model's depolarizing gate noise.
///
/// Registers up to [`DENSITY_LIMIT`] qubits are evolved as density matrices;
/// larger Clifford circuits (the GHZ family) use exact Pauli propagation.
pub fn apply_gate_noise(circuit: &Circuit, model: &NoiseModel) -> Result<MarginalSet> {
    model.validate()?;
    let n = circuit.qubit_count();
    if n <= DENSITY_LIMIT {
        Ok(DensityMatrix::evolve(circuit, model)?.marginals())
    } else if circuit.is_clifford() {
        noisy_clifford_marginals(circuit, model)
    } else {
        Err(Error::Capacity(format!(
            "noisy simulation of a {n}-qubit non-Clifford circuit is unsupported"
        )))
    }
}
