use num_complex::Complex64;

use crate::error::Result;
use crate::pauli::{decompose, Mat2, Pauli};
use crate::tomography::ExpectationSet;

/// `<O_q>` for a one-qubit operator, contracted through its Pauli expansion.
pub(crate) fn expect_single(exp: &ExpectationSet, q: usize, op: &Mat2) -> Result<Complex64> {
    let coeffs = decompose(op);
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, p) in coeffs.iter().zip(Pauli::ALL) {
        if c.norm() != 0.0 {
            acc += c * exp.single(q, p)?;
        }
    }
    Ok(acc)
}

/// `<O_p (x) O'_q>` for distinct qubits.
pub(crate) fn expect_pair(
    exp: &ExpectationSet,
    p: usize,
    op_p: &Mat2,
    q: usize,
    op_q: &Mat2,
) -> Result<Complex64> {
    let (cp, cq) = (decompose(op_p), decompose(op_q));
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, pa) in cp.iter().zip(Pauli::ALL) {
        if a.norm() == 0.0 {
            continue;
        }
        for (b, pb) in cq.iter().zip(Pauli::ALL) {
            if b.norm() != 0.0 {
                acc += a * b * exp.pair(p, pa, q, pb)?;
            }
        }
    }
    Ok(acc)
}
