//! In-place amplitude kernels shared by the statevector and density-matrix
//! backends. `mask` selects the bit of the basis index the operation acts on.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::pauli::Mat2;

const PAR_THRESHOLD: usize = 1 << 14;

pub(crate) fn apply_single(amps: &mut [Complex64], mask: usize, u: &Mat2) {
    let kernel = |chunk: &mut [Complex64]| {
        let (lo, hi) = chunk.split_at_mut(mask);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = u[0][0] * x + u[0][1] * y;
            *b = u[1][0] * x + u[1][1] * y;
        }
    };
    if amps.len() >= PAR_THRESHOLD && amps.len() / (2 * mask) >= 4 {
        amps.par_chunks_mut(2 * mask).for_each(kernel);
    } else {
        amps.chunks_mut(2 * mask).for_each(kernel);
    }
}

pub(crate) fn apply_cnot(amps: &mut [Complex64], control_mask: usize, target_mask: usize) {
    for i in 0..amps.len() {
        if i & control_mask != 0 && i & target_mask == 0 {
            amps.swap(i, i | target_mask);
        }
    }
}

pub(crate) fn ry_matrix(angle: f64) -> Mat2 {
    let (s, c) = (0.5 * angle).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

pub(crate) fn hadamard_matrix() -> Mat2 {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub(crate) fn x_matrix() -> Mat2 {
    crate::pauli::Pauli::X.matrix()
}

/// Rotation that maps the eigenbasis of `basis` onto the computational basis.
/// X is measured through H, Y through H·S†.
pub(crate) fn basis_change(basis: crate::pauli::Pauli) -> Mat2 {
    use crate::pauli::{mat2_mul, Pauli};
    match basis {
        Pauli::I | Pauli::Z => Pauli::I.matrix(),
        Pauli::X => hadamard_matrix(),
        Pauli::Y => {
            let zero = Complex64::new(0.0, 0.0);
            let s_dag = [
                [Complex64::new(1.0, 0.0), zero],
                [zero, Complex64::new(0.0, -1.0)],
            ];
            mat2_mul(&hadamard_matrix(), &s_dag)
        }
    }
}
