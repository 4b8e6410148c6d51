use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::contract::{expect_pair, expect_single};
use super::eigen::{eigensolve_hermitian, HermitianEigen};
use super::matrix::CMatrix;
use super::one_rdm::{one_rdms, OneRdm};
use crate::error::Result;
use crate::pauli::{ket_bra, mat2_mul};
use crate::sim::Mat4;
use crate::tomography::ExpectationSet;

/// Orbital transitions `a†_a a_b` of a site, in composite-index order.
pub const TRANSITIONS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

/// Composite row index of transition `s` on qubit `p`.
pub fn composite_index(p: usize, s: usize) -> usize {
    4 * p + s
}

/// Particle-hole block `G[s][t] = <B_{p,s} B_{q,t}†>` with
/// `B_{p,(a,b)} = a†_{p,a} a_{p,b}`.
pub fn g_block(exp: &ExpectationSet, p: usize, q: usize) -> Result<Mat4> {
    let mut block = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (s, &(a, b)) in TRANSITIONS.iter().enumerate() {
        let left = ket_bra(a, b);
        for (t, &(c, d)) in TRANSITIONS.iter().enumerate() {
            let right = ket_bra(d, c);
            block[s][t] = if p == q {
                expect_single(exp, p, &mat2_mul(&left, &right))?
            } else {
                expect_pair(exp, p, &left, q, &right)?
            };
        }
    }
    Ok(block)
}

/// The particle-hole matrix with the ground-state resolution removed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GTilde {
    pub qubit_count: usize,
    pub matrix: CMatrix,
}

impl GTilde {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn spectrum(&self) -> Result<HermitianEigen> {
        eigensolve_hermitian(&self.matrix, false)
    }

    /// Row labels such as `"2:a1+a0"` for dumps.
    pub fn labels(&self) -> Vec<String> {
        (0..self.qubit_count)
            .flat_map(|p| {
                TRANSITIONS
                    .iter()
                    .map(move |&(a, b)| format!("{p}:a{a}+a{b}"))
            })
            .collect()
    }
}

fn corrected_block(exp: &ExpectationSet, d1: &[OneRdm], p: usize, q: usize) -> Result<Mat4> {
    let mut block = g_block(exp, p, q)?;
    for (s, &(a, b)) in TRANSITIONS.iter().enumerate() {
        for (t, &(c, d)) in TRANSITIONS.iter().enumerate() {
            block[s][t] -= d1[p].matrix[a][b] * d1[q].matrix[c][d].conj();
        }
    }
    Ok(block)
}

pub fn assemble_g_tilde(exp: &ExpectationSet) -> Result<GTilde> {
    let n = exp.qubit_count();
    let d1 = one_rdms(exp)?;
    let rows: Vec<Vec<Mat4>> = (0..n)
        .into_par_iter()
        .map(|p| {
            (0..n)
                .map(|q| corrected_block(exp, &d1, p, q))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut matrix = CMatrix::zeros(4 * n);
    for (p, row) in rows.iter().enumerate() {
        for (q, block) in row.iter().enumerate() {
            for s in 0..4 {
                for t in 0..4 {
                    matrix[(composite_index(p, s), composite_index(q, t))] = block[s][t];
                }
            }
        }
    }
    Ok(GTilde {
        qubit_count: n,
        matrix,
    })
}
