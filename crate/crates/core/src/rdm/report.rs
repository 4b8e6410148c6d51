use serde::{Deserialize, Serialize};

use super::g_tilde::assemble_g_tilde;
use super::two_particle::assemble_two_particle_rdm;
use crate::error::Result;
use crate::tomography::ExpectationSet;

/// Eigenvalues must exceed one by more than this to count toward dispersion.
pub const ABOVE_ONE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub n: usize,
    pub lambda_g: f64,
    pub lambda_d: f64,
    pub g_spectrum: Vec<f64>,
    pub sum_above_one: f64,
    pub count_above_one: usize,
}

impl SignatureReport {
    pub fn from_spectrum(n: usize, g_spectrum: Vec<f64>, lambda_d: f64) -> Self {
        let above: Vec<f64> = g_spectrum
            .iter()
            .copied()
            .filter(|&l| l > 1.0 + ABOVE_ONE_TOL)
            .collect();
        SignatureReport {
            n,
            lambda_g: g_spectrum.first().copied().unwrap_or(0.0),
            lambda_d,
            sum_above_one: above.iter().sum(),
            count_above_one: above.len(),
            g_spectrum,
        }
    }
}

pub fn signature_report(exp: &ExpectationSet) -> Result<SignatureReport> {
    let g = assemble_g_tilde(exp)?;
    let spectrum = g.spectrum()?.values;
    let lambda_d = assemble_two_particle_rdm(exp)?.lambda_d()?;
    Ok(SignatureReport::from_spectrum(
        exp.qubit_count(),
        spectrum,
        lambda_d,
    ))
}
