use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::PureState;
use crate::error::{Error, Result};
use crate::pauli::{Mat2, Pauli};
use crate::rdm::{eigensolve_hermitian, CMatrix};

const MARGINAL_TOLERANCE: f64 = 1e-12;

pub type Mat4 = [[Complex64; 4]; 4];

/// Two-qubit reduced density matrix in the basis `|b_p b_q>`, `p` the high bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairMarginal {
    pub qubits: (usize, usize),
    pub matrix: Mat4,
}

fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

impl PairMarginal {
    pub fn new(qubits: (usize, usize), matrix: Mat4) -> Result<Self> {
        let m = PairMarginal { qubits, matrix };
        m.validate(MARGINAL_TOLERANCE)?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(qubits: (usize, usize), matrix: Mat4) -> Self {
        PairMarginal { qubits, matrix }
    }

    /// Reconstructs `rho = 1/4 sum <P Q> P (x) Q` from Pauli expectations.
    pub fn from_pauli_expectations(
        qubits: (usize, usize),
        mut expect: impl FnMut(Pauli, Pauli) -> f64,
    ) -> Self {
        let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
        for a in Pauli::ALL {
            for b in Pauli::ALL {
                let e = if a == Pauli::I && b == Pauli::I {
                    1.0
                } else {
                    expect(a, b)
                };
                if e == 0.0 {
                    continue;
                }
                let k = kron2(&a.matrix(), &b.matrix());
                for r in 0..4 {
                    for c in 0..4 {
                        rho[r][c] += k[r][c] * (0.25 * e);
                    }
                }
            }
        }
        PairMarginal {
            qubits,
            matrix: rho,
        }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let mut trace = Complex64::new(0.0, 0.0);
        for r in 0..4 {
            trace += self.matrix[r][r];
            for c in 0..4 {
                let d = (self.matrix[r][c] - self.matrix[c][r].conj()).norm();
                if d > tol {
                    return Err(Error::NonHermitian { residual: d });
                }
            }
        }
        if (trace - 1.0).norm() > tol {
            return Err(Error::invalid(format!("pair marginal trace {trace}")));
        }
        let eig = eigensolve_hermitian(&CMatrix::from_rows(&self.matrix), false)?;
        if let Some(&min) = eig.values.last() {
            if min < -tol {
                return Err(Error::invalid(format!(
                    "pair marginal eigenvalue {min} < 0"
                )));
            }
        }
        Ok(())
    }

    /// `Re Tr(rho (a (x) b))`
    pub fn expectation(&self, a: Pauli, b: Pauli) -> f64 {
        let k = kron2(&a.matrix(), &b.matrix());
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..4 {
            for c in 0..4 {
                acc += self.matrix[r][c] * k[c][r];
            }
        }
        acc.re
    }

    /// Expectation of `op_p (x) op_q` for arbitrary single-qubit operators.
    pub fn operator_expectation(&self, op_p: &Mat2, op_q: &Mat2) -> Complex64 {
        let k = kron2(op_p, op_q);
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..4 {
            for c in 0..4 {
                acc += self.matrix[r][c] * k[c][r];
            }
        }
        acc
    }

    /// Reduced state of the first (`which == 0`) or second qubit of the pair.
    pub fn single(&self, which: usize) -> Mat2 {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out[i][j] += if which == 0 {
                        self.matrix[2 * i + k][2 * j + k]
                    } else {
                        self.matrix[2 * k + i][2 * k + j]
                    };
                }
            }
        }
        out
    }
}

/// Exact two-qubit marginal of the `n`-qubit GHZ state.
///
/// For `n >= 3` every pair sees the equal classical mixture of `|00>` and
/// `|11>`; the coherence between the two branches is an `n`-body correlator.
pub fn ghz_marginals(n: usize, p: usize, q: usize) -> Result<PairMarginal> {
    if n < 3 {
        return Err(Error::invalid(format!(
            "analytic GHZ marginals need n >= 3 (got {n}); simulate smaller registers densely"
        )));
    }
    if p == q || p >= n || q >= n {
        return Err(Error::invalid(format!(
            "invalid qubit pair ({p}, {q}) for n = {n}"
        )));
    }
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    m[0][0] = Complex64::new(0.5, 0.0);
    m[3][3] = Complex64::new(0.5, 0.0);
    Ok(PairMarginal::new_unchecked((p, q), m))
}

/// All one- and two-qubit marginals of an `n`-qubit state: the only data
/// the particle-hole analysis consumes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginalSet {
    qubit_count: usize,
    singles: Vec<Mat2>,
    pairs: BTreeMap<(usize, usize), PairMarginal>,
}

impl MarginalSet {
    pub fn from_pure(state: &PureState) -> Self {
        let n = state.qubit_count();
        let singles = (0..n).map(|q| state.single_marginal(q)).collect();
        let mut pairs = BTreeMap::new();
        for p in 0..n {
            for q in p + 1..n {
                pairs.insert((p, q), state.pair_marginal(p, q).expect("valid pair"));
            }
        }
        MarginalSet {
            qubit_count: n,
            singles,
            pairs,
        }
    }

    /// Closed-form marginals of the GHZ state, valid for any `n >= 3`.
    pub fn ghz(n: usize) -> Result<Self> {
        let half = Complex64::new(0.5, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let singles = vec![[[half, zero], [zero, half]]; n];
        let mut pairs = BTreeMap::new();
        for p in 0..n {
            for q in p + 1..n {
                pairs.insert((p, q), ghz_marginals(n, p, q)?);
            }
        }
        Ok(MarginalSet {
            qubit_count: n,
            singles,
            pairs,
        })
    }

    /// Builds the set from Pauli expectation oracles.
    pub fn from_pauli_expectations(
        n: usize,
        mut single: impl FnMut(usize, Pauli) -> f64,
        mut pair: impl FnMut(usize, usize, Pauli, Pauli) -> f64,
    ) -> Self {
        let singles = (0..n)
            .map(|q| {
                let mut rho = Pauli::I.matrix();
                for r in rho.iter_mut().flatten() {
                    *r *= 0.5;
                }
                for p in Pauli::NON_IDENTITY {
                    let e = single(q, p);
                    let m = p.matrix();
                    for i in 0..2 {
                        for j in 0..2 {
                            rho[i][j] += m[i][j] * (0.5 * e);
                        }
                    }
                }
                rho
            })
            .collect();
        let mut pairs = BTreeMap::new();
        for p in 0..n {
            for q in p + 1..n {
                let m = PairMarginal::from_pauli_expectations((p, q), |a, b| match (a, b) {
                    (Pauli::I, Pauli::I) => 1.0,
                    (a, Pauli::I) => single(p, a),
                    (Pauli::I, b) => single(q, b),
                    (a, b) => pair(p, q, a, b),
                });
                pairs.insert((p, q), m);
            }
        }
        MarginalSet {
            qubit_count: n,
            singles,
            pairs,
        }
    }

    pub(crate) fn from_parts(
        qubit_count: usize,
        singles: Vec<Mat2>,
        pairs: BTreeMap<(usize, usize), PairMarginal>,
    ) -> Self {
        MarginalSet {
            qubit_count,
            singles,
            pairs,
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn single(&self, q: usize) -> &Mat2 {
        &self.singles[q]
    }

    pub fn pair(&self, p: usize, q: usize) -> Option<&PairMarginal> {
        self.pairs.get(&(p.min(q), p.max(q)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = &PairMarginal> {
        self.pairs.values()
    }

    pub fn single_expectation(&self, q: usize, a: Pauli) -> f64 {
        let m = a.matrix();
        let rho = &self.singles[q];
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                acc += rho[i][j] * m[j][i];
            }
        }
        acc.re
    }

    pub fn pair_expectation(&self, p: usize, q: usize, a: Pauli, b: Pauli) -> Result<f64> {
        let m = self
            .pair(p, q)
            .ok_or_else(|| Error::MissingExpectation(format!("pair ({p}, {q})")))?;
        Ok(if p < q {
            m.expectation(a, b)
        } else {
            m.expectation(b, a)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_marginal_rejects_small_and_degenerate() {
        assert!(ghz_marginals(2, 0, 1).is_err());
        assert!(ghz_marginals(5, 2, 2).is_err());
        assert!(ghz_marginals(5, 0, 5).is_err());
    }

    #[test]
    fn ghz_marginal_is_valid_state() {
        let m = ghz_marginals(53, 10, 40).unwrap();
        m.validate(1e-12).unwrap();
        assert_eq!(m.expectation(Pauli::Z, Pauli::Z), 1.0);
        assert_eq!(m.expectation(Pauli::X, Pauli::X), 0.0);
        let s = m.single(1);
        assert_eq!(s[0][0].re, 0.5);
        assert_eq!(s[1][1].re, 0.5);
    }

    #[test]
    fn pauli_reconstruction_round_trip() {
        let m = ghz_marginals(4, 0, 1).unwrap();
        let r = PairMarginal::from_pauli_expectations((0, 1), |a, b| m.expectation(a, b));
        for i in 0..4 {
            for j in 0..4 {
                assert!((r.matrix[i][j] - m.matrix[i][j]).norm() < 1e-15);
            }
        }
    }
}
