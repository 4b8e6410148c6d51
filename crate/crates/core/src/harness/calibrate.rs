use crate::error::{Error, Result};
use crate::mitigation::{calibrate_tensored, MitigationFilter, NoisySampler};
use crate::noise::NoiseModel;

/// Register size calibrated when neither the model nor the caller fixes one.
pub const DEFAULT_CALIBRATION_QUBITS: usize = 3;

/// Fits a tensored filter against the readout of `model`.
pub fn run_calibration(
    model: &NoiseModel,
    qubits: Option<usize>,
    shots: u64,
    seed: u64,
) -> Result<MitigationFilter> {
    model.validate()?;
    let n = match (qubits, model.fixed_qubit_count()) {
        (Some(q), Some(m)) if q != m => {
            return Err(Error::invalid(format!(
                "--qubits {q} disagrees with {m} readout entries"
            )))
        }
        (Some(q), _) | (None, Some(q)) => q,
        (None, None) => DEFAULT_CALIBRATION_QUBITS,
    };
    calibrate_tensored(&NoisySampler::new(n, model.clone())?, shots, seed)
}
