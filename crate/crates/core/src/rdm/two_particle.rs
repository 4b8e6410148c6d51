use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::contract::expect_pair;
use super::eigen::eigensolve_hermitian;
use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::pauli::ket_bra;
use crate::sim::Mat4;
use crate::tomography::ExpectationSet;

/// Largest pair dimension [`TwoParticleRdm::to_matrix`] will materialize.
pub const DENSE_PAIR_LIMIT: usize = 4096;

/// Spin-orbital index of orbital `a` on site `p`.
pub fn orbital(p: usize, a: usize) -> usize {
    2 * p + a
}

/// Position of the ordered orbital pair `(i, j)`, `i < j`, among all such pairs
/// of `m` orbitals in lexicographic order.
pub fn pair_index(i: usize, j: usize, m: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

/// Particle-particle RDM `D[(i,j),(k,l)] = <a†_i a†_j a_l a_k>`.
///
/// With one fermion per site the matrix is block diagonal: a pair of
/// orbitals on sites `p < q` only couples to other pairs on the same two
/// sites, and same-site pairs are identically zero. Only the 4x4 site-pair
/// blocks are stored, indexed by `(a, b) -> 2a + b` for orbitals `(p,a), (q,b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoParticleRdm {
    pub qubit_count: usize,
    pub blocks: BTreeMap<(usize, usize), Mat4>,
}

impl TwoParticleRdm {
    /// Number of ordered orbital pairs, `C(2N, 2)`.
    pub fn dim(&self) -> usize {
        let m = 2 * self.qubit_count;
        m * m.saturating_sub(1) / 2
    }

    pub fn element(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let (p, a, q, b) = (i / 2, i % 2, j / 2, j % 2);
        let (pk, c, ql, d) = (k / 2, k % 2, l / 2, l % 2);
        if p == q || p != pk || q != ql || i >= j || k >= l {
            return zero;
        }
        self.blocks
            .get(&(p, q))
            .map_or(zero, |blk| blk[2 * a + b][2 * c + d])
    }

    /// Largest eigenvalue, the fermion-pair signature.
    pub fn lambda_d(&self) -> Result<f64> {
        Ok(self.spectrum()?.first().copied().unwrap_or(0.0))
    }

    /// Full spectrum (including the zero same-site rows), descending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let mut values: Vec<f64> = self
            .blocks
            .values()
            .map(|b| eigensolve_hermitian(&CMatrix::from_rows(b), false).map(|e| e.values))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        values.extend(std::iter::repeat(0.0).take(self.dim() - values.len()));
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(values)
    }

    /// Materializes the full pair-indexed matrix.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let dim = self.dim();
        if dim > DENSE_PAIR_LIMIT {
            return Err(Error::Capacity(format!(
                "two-particle matrix of dimension {dim} exceeds {DENSE_PAIR_LIMIT}"
            )));
        }
        let m = 2 * self.qubit_count;
        let mut out = CMatrix::zeros(dim);
        for (&(p, q), blk) in &self.blocks {
            for r in 0..4 {
                let row = pair_index(orbital(p, r / 2), orbital(q, r % 2), m);
                for c in 0..4 {
                    let col = pair_index(orbital(p, c / 2), orbital(q, c % 2), m);
                    out[(row, col)] = blk[r][c];
                }
            }
        }
        Ok(out)
    }

    /// Row labels `"i,j"` in pair order.
    pub fn labels(&self) -> Vec<String> {
        let m = 2 * self.qubit_count;
        (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| format!("{i},{j}")))
            .collect()
    }
}

fn pair_block(exp: &ExpectationSet, p: usize, q: usize) -> Result<Mat4> {
    let mut blk = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (r, row) in blk.iter_mut().enumerate() {
        let (a, b) = (r / 2, r % 2);
        for (c, entry) in row.iter_mut().enumerate() {
            let (cc, d) = (c / 2, c % 2);
            *entry = expect_pair(exp, p, &ket_bra(a, cc), q, &ket_bra(b, d))?;
        }
    }
    Ok(blk)
}

pub fn assemble_two_particle_rdm(exp: &ExpectationSet) -> Result<TwoParticleRdm> {
    let n = exp.qubit_count();
    let keys: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .collect();
    let blocks = keys
        .par_iter()
        .map(|&(p, q)| pair_block(exp, p, q).map(|b| ((p, q), b)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(TwoParticleRdm {
        qubit_count: n,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_is_dense_and_ordered() {
        let m = 6;
        let mut expected = 0;
        for i in 0..m {
            for j in i + 1..m {
                assert_eq!(pair_index(i, j, m), expected);
                expected += 1;
            }
        }
    }
}
