//! Qubit-state preparation, Pauli tomography and reduced-density-matrix
//! signatures of exciton condensation.
//!
//! Each qubit is a site holding one fermion in two orbitals; qubit `0` is the
//! most significant bit of every basis index and bitstring. The pipeline is
//!
//! 1. build a [`sim::Circuit`] (three-qubit scan family or GHZ),
//! 2. obtain one- and two-qubit Pauli expectations exactly or from sampled
//!    counts ([`tomography`]), optionally with [`noise`] and readout
//!    [`mitigation`],
//! 3. assemble the particle-hole matrix and read off `lambda_G`, `lambda_D`
//!    and the eigenvalue dispersion ([`rdm`]), plus occupation-number
//!    constraints ([`polytope`]).

pub mod error;
pub mod harness;
pub mod mitigation;
pub mod noise;
pub mod pauli;
pub mod polytope;
pub mod rdm;
pub mod seed;
pub mod sim;
pub mod tomography;

pub use error::{Error, Result};
