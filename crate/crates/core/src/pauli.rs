//! Single-qubit Pauli operators and 2x2 complex matrix helpers.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Row-major 2x2 complex matrix.
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> Mat2 {
        match self {
            Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
            Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => [[ZERO, -I], [I, ZERO]],
            Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
        }
    }

    /// Index into `[X, Y, Z]`; `None` for the identity.
    pub fn xyz_index(self) -> Option<usize> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(0),
            Pauli::Y => Some(1),
            Pauli::Z => Some(2),
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// `|a><b|` on a single qubit.
pub fn ket_bra(a: usize, b: usize) -> Mat2 {
    let mut m = [[ZERO; 2]; 2];
    m[a][b] = ONE;
    m
}

/// Coefficients `c` with `m = sum_k c[k] * Pauli::ALL[k]`.
pub fn decompose(m: &Mat2) -> [Complex64; 4] {
    // c_P = Tr(P m) / 2
    let mut out = [ZERO; 4];
    for (k, p) in Pauli::ALL.iter().enumerate() {
        let pm = p.matrix();
        let mut tr = ZERO;
        for i in 0..2 {
            for j in 0..2 {
                tr += pm[i][j] * m[j][i];
            }
        }
        out[k] = tr * 0.5;
    }
    out
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_adjoint(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Eigenvalues of a 2x2 Hermitian matrix, descending.
pub fn hermitian2_eigenvalues(m: &Mat2) -> [f64; 2] {
    let a = m[0][0].re;
    let d = m[1][1].re;
    let off = 0.5 * (m[0][1] + m[1][0].conj());
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + off.norm_sqr()).sqrt();
    [mean + radius, mean - radius]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_transition_operators() {
        // |0><1| = (X + iY)/2
        let c = decompose(&ket_bra(0, 1));
        assert!((c[0]).norm() < 1e-15);
        assert!((c[1] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((c[2] - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        assert!((c[3]).norm() < 1e-15);
        // |1><1| = (I - Z)/2
        let c = decompose(&ket_bra(1, 1));
        assert!((c[0] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((c[3] + Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_half_projector() {
        let half = Complex64::new(0.5, 0.0);
        let ev = hermitian2_eigenvalues(&[[half, half], [half, half]]);
        assert!((ev[0] - 1.0).abs() < 1e-15 && ev[1].abs() < 1e-15);
    }
}
