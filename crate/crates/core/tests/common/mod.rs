//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use exciton_core::rdm::CMatrix;
use exciton_core::sim::{MarginalSet, PureState};
use exciton_core::tomography::{
    all_pairs, exact_expectations, plan_settings, ExpectationSet, PauliMode,
};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_real_state(n: usize, rng: &mut impl Rng) -> PureState {
    let amps = (0..1usize << n)
        .map(|_| c(rng.gen_range(-1.0..1.0), 0.0))
        .collect();
    PureState::normalized(n, amps).unwrap()
}

pub fn random_complex_state(n: usize, rng: &mut impl Rng) -> PureState {
    let amps = (0..1usize << n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    PureState::normalized(n, amps).unwrap()
}

pub fn basis_state(n: usize, index: usize) -> PureState {
    let mut amps = vec![c(0.0, 0.0); 1 << n];
    amps[index] = c(1.0, 0.0);
    PureState::from_amplitudes(n, amps).unwrap()
}

/// Exact expectations of every label in `mode`.
pub fn exact(state: &PureState, mode: PauliMode) -> ExpectationSet {
    let n = state.qubit_count();
    let plan = plan_settings(n, &all_pairs(n), mode).unwrap();
    exact_expectations(&MarginalSet::from_pure(state), &plan).unwrap()
}

pub fn exact_marginals(m: &MarginalSet, mode: PauliMode) -> ExpectationSet {
    let n = m.qubit_count();
    let plan = plan_settings(n, &all_pairs(n), mode).unwrap();
    exact_expectations(m, &plan).unwrap()
}

/// Second-quantized state over `2N` spin-orbitals with Jordan-Wigner
/// ordering; qubit `p` in `|a>` is the single occupied orbital `2p + a`.
#[derive(Clone, Debug)]
pub struct Fock {
    pub modes: usize,
    pub amps: HashMap<u64, Complex64>,
}

impl Fock {
    pub fn from_qubits(state: &PureState) -> Self {
        let n = state.qubit_count();
        let mut amps = HashMap::new();
        for (idx, &a) in state.amplitudes().iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            let mut occ = 0u64;
            for p in 0..n {
                let bit = (idx >> (n - 1 - p)) & 1;
                occ |= 1 << (2 * p + bit);
            }
            amps.insert(occ, a);
        }
        Fock { modes: 2 * n, amps }
    }

    fn sign(occ: u64, mode: usize) -> f64 {
        if (occ & ((1u64 << mode) - 1)).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn create(&self, mode: usize) -> Fock {
        let mut amps = HashMap::new();
        for (&occ, &a) in &self.amps {
            if occ & (1 << mode) == 0 {
                *amps.entry(occ | (1 << mode)).or_insert(c(0.0, 0.0)) += a * Self::sign(occ, mode);
            }
        }
        Fock {
            modes: self.modes,
            amps,
        }
    }

    pub fn annihilate(&self, mode: usize) -> Fock {
        let mut amps = HashMap::new();
        for (&occ, &a) in &self.amps {
            if occ & (1 << mode) != 0 {
                *amps.entry(occ & !(1 << mode)).or_insert(c(0.0, 0.0)) += a * Self::sign(occ, mode);
            }
        }
        Fock {
            modes: self.modes,
            amps,
        }
    }

    pub fn inner(&self, other: &Fock) -> Complex64 {
        self.amps
            .iter()
            .map(|(k, a)| a.conj() * other.amps.get(k).copied().unwrap_or_default())
            .sum()
    }
}

/// An operator string applied right to left: `ops[0]` acts last.
#[derive(Clone, Copy, Debug)]
pub enum Op {
    Create(usize),
    Annihilate(usize),
}

pub fn fermion_expectation(psi: &Fock, ops: &[Op]) -> Complex64 {
    let mut phi = psi.clone();
    for op in ops.iter().rev() {
        phi = match *op {
            Op::Create(m) => phi.create(m),
            Op::Annihilate(m) => phi.annihilate(m),
        };
    }
    psi.inner(&phi)
}

/// Brute-force particle-particle matrix `<a†_i a†_j a_l a_k>` over `i<j`, `k<l`.
pub fn oracle_two_particle(state: &PureState) -> CMatrix {
    let psi = Fock::from_qubits(state);
    let m = psi.modes;
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let mut out = CMatrix::zeros(pairs.len());
    for (r, &(i, j)) in pairs.iter().enumerate() {
        for (col, &(k, l)) in pairs.iter().enumerate() {
            out[(r, col)] = fermion_expectation(
                &psi,
                &[
                    Op::Create(i),
                    Op::Create(j),
                    Op::Annihilate(l),
                    Op::Annihilate(k),
                ],
            );
        }
    }
    out
}

/// Brute-force covariance particle-hole matrix in the `(p, s)` layout with
/// `s = (a, b) in [(0,0), (0,1), (1,0), (1,1)]` standing for `a†_{p,a} a_{p,b}`.
pub fn oracle_g_tilde(state: &PureState) -> CMatrix {
    let psi = Fock::from_qubits(state);
    let n = state.qubit_count();
    let trans = [(0usize, 0usize), (0, 1), (1, 0), (1, 1)];
    let idx = |p: usize, (a, b): (usize, usize)| (2 * p + a, 2 * p + b);
    let mut out = CMatrix::zeros(4 * n);
    for p in 0..n {
        for (s, &ts) in trans.iter().enumerate() {
            let (i, j) = idx(p, ts);
            let b_s = fermion_expectation(&psi, &[Op::Create(i), Op::Annihilate(j)]);
            for q in 0..n {
                for (t, &tt) in trans.iter().enumerate() {
                    let (k, l) = idx(q, tt);
                    let b_t = fermion_expectation(&psi, &[Op::Create(k), Op::Annihilate(l)]);
                    // B_t† = a†_l a_k
                    let prod = fermion_expectation(
                        &psi,
                        &[
                            Op::Create(i),
                            Op::Annihilate(j),
                            Op::Create(l),
                            Op::Annihilate(k),
                        ],
                    );
                    out[(4 * p + s, 4 * q + t)] = prod - b_s * b_t.conj();
                }
            }
        }
    }
    out
}

/// Number of eigenvalues of Hermitian `m` strictly below `x`, by Sylvester's
/// law of inertia on the `LDL†` pivots of `m - x I`.
pub fn count_below(m: &CMatrix, x: f64) -> usize {
    let n = m.dim();
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| m[(i, j)] - if i == j { c(x, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect();
    let mut negatives = 0;
    for k in 0..n {
        let mut pivot = a[k][k].re;
        if pivot.abs() < 1e-300 {
            pivot = -1e-300;
        }
        if pivot < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let f = a[i][k] / pivot;
            for j in k + 1..n {
                let v = a[k][j];
                a[i][j] -= f * v;
            }
        }
    }
    negatives
}

/// Eigenvalues in descending order by bisection on [`count_below`].
pub fn oracle_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.dim();
    let bound = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    let mut values: Vec<f64> = (0..n)
        .map(|k| {
            // k-th smallest: smallest x with count_below(x) > k
            let (mut lo, mut hi) = (-bound, bound);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(m, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo < 1e-13 {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect();
    values.reverse();
    values
}

pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = c(rng.gen_range(-2.0..2.0), 0.0);
        for j in i + 1..n {
            let v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    m
}
