use serde::{Deserialize, Serialize};

use super::contract::expect_single;
use crate::error::Result;
use crate::pauli::{hermitian2_eigenvalues, ket_bra, Mat2};
use crate::tomography::ExpectationSet;

/// One-fermion reduced density matrix of a site: `D[a][b] = <a†_a a_b>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneRdm {
    pub qubit: usize,
    pub matrix: Mat2,
}

impl OneRdm {
    /// Natural-orbital occupations of the site, largest first.
    pub fn occupations(&self) -> [f64; 2] {
        hermitian2_eigenvalues(&self.matrix)
    }

    pub fn trace(&self) -> f64 {
        self.matrix[0][0].re + self.matrix[1][1].re
    }
}

pub fn one_rdm(exp: &ExpectationSet, qubit: usize) -> Result<OneRdm> {
    let mut matrix = [[num_complex::Complex64::new(0.0, 0.0); 2]; 2];
    for (a, row) in matrix.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            *entry = expect_single(exp, qubit, &ket_bra(a, b))?;
        }
    }
    Ok(OneRdm { qubit, matrix })
}

pub fn one_rdms(exp: &ExpectationSet) -> Result<Vec<OneRdm>> {
    (0..exp.qubit_count()).map(|q| one_rdm(exp, q)).collect()
}
