//! Reduced density matrices of the qubit-as-site fermion model and their
//! condensation signatures.
//!
//! Qubit `p` hosts one fermion in orbitals `(p, 0)` and `(p, 1)`, so
//! `a†_{p,a} a_{p,b}` acts as `|a><b|` on that qubit. Every matrix here is
//! contracted from one- and two-qubit Pauli expectations.

mod contract;
mod dump;
mod eigen;
mod g_tilde;
mod matrix;
mod one_rdm;
mod report;
mod two_particle;

pub use dump::MatrixDump;
pub use eigen::{eigensolve_hermitian, HermitianEigen, HERMITIAN_TOLERANCE};
pub use g_tilde::{assemble_g_tilde, composite_index, g_block, GTilde, TRANSITIONS};
pub use matrix::CMatrix;
pub use one_rdm::{one_rdm, one_rdms, OneRdm};
pub use report::{signature_report, SignatureReport, ABOVE_ONE_TOL};
pub use two_particle::{
    assemble_two_particle_rdm, orbital, pair_index, TwoParticleRdm, DENSE_PAIR_LIMIT,
};
