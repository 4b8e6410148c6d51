//! Cyclic Jacobi diagonalization of Hermitian matrices.

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Hermiticity tolerance relative to `max(1, max|M_ij|)`.
pub const HERMITIAN_TOLERANCE: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unitary whose columns are the eigenvectors, in the order of `values`.
    pub vectors: Option<CMatrix>,
}

impl HermitianEigen {
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// `V diag(values) V†`, when vectors were requested.
    pub fn reconstruct(&self) -> Option<CMatrix> {
        let v = self.vectors.as_ref()?;
        let mut scaled = v.clone();
        for i in 0..v.dim() {
            for (j, &l) in self.values.iter().enumerate() {
                scaled[(i, j)] *= l;
            }
        }
        Some(scaled.matmul(&v.adjoint()))
    }
}

/// Eigen-decomposes `m` after symmetrizing it with its conjugate transpose.
pub fn eigensolve_hermitian(m: &CMatrix, vectors: bool) -> Result<HermitianEigen> {
    let scale = m.max_abs().max(1.0);
    let residual = m.hermiticity_residual();
    if residual > HERMITIAN_TOLERANCE * scale {
        return Err(Error::NonHermitian { residual });
    }
    let n = m.dim();
    let mut a = m.symmetrized();
    let mut v = vectors.then(|| CMatrix::identity(n));
    let frob: f64 = a
        .as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let threshold = f64::EPSILON * frob.max(f64::MIN_POSITIVE);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= threshold * 1e-3 {
                    continue;
                }
                rotate(&mut a, v.as_mut(), p, q, apq, g);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations: MAX_SWEEPS,
            what: "Jacobi eigensolver".into(),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = v.map(|v| {
        let mut sorted = CMatrix::zeros(n);
        for (new, &old) in order.iter().enumerate() {
            for r in 0..n {
                sorted[(r, new)] = v[(r, old)];
            }
        }
        sorted
    });
    Ok(HermitianEigen { values, vectors })
}

/// Annihilates `a[p][q]` with the unitary `diag(1, e^{-i phi}) * [[c, s], [-s, c]]`
/// acting on rows and columns `p`, `q`.
fn rotate(a: &mut CMatrix, v: Option<&mut CMatrix>, p: usize, q: usize, apq: Complex64, g: f64) {
    let n = a.dim();
    let phase = apq / g;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
    let t = if tau >= 0.0 { 1.0 } else { -1.0 } / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e_minus = phase.conj();

    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * c - akq * e_minus * s;
        a[(k, q)] = akp * s + akq * e_minus * c;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    if let Some(v) = v {
        for k in 0..n {
            let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
            v[(k, p)] = vkp * c - vkq * e_minus * s;
            v[(k, q)] = vkp * s + vkq * e_minus * c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_diagonal() {
        assert_eq!(
            eigensolve_hermitian(&CMatrix::identity(4), false)
                .unwrap()
                .values,
            vec![1.0; 4]
        );
        let d = CMatrix::from_diag(&[0.0, 3.0, -1.0, 1.0]);
        assert_eq!(
            eigensolve_hermitian(&d, false).unwrap().values,
            vec![3.0, 1.0, 0.0, -1.0]
        );
    }

    #[test]
    fn pauli_y_spectrum() {
        let m = CMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]);
        let e = eigensolve_hermitian(&m, true).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] + 1.0).abs() < 1e-14);
        assert!(e.reconstruct().unwrap().max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(&[[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]);
        assert!(matches!(
            eigensolve_hermitian(&m, false),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn empty_matrix() {
        assert!(eigensolve_hermitian(&CMatrix::zeros(0), false)
            .unwrap()
            .values
            .is_empty());
    }
}
