//! Natural-orbital occupations and the three-qubit generalized Pauli
//! constraints `n5 + n6 - n4 >= 0`, `n1 + n6 = n2 + n5 = n3 + n4 = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rdm::OneRdm;

/// Tolerance for exact (noise-free) inputs.
pub const EXACT_TOLERANCE: f64 = 1e-8;
/// Default tolerance for shot-sampled inputs.
pub const SAMPLED_TOLERANCE: f64 = 0.02;

/// Occupation numbers sorted from largest to smallest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OccupationVector(pub Vec<f64>);

impl OccupationVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(n4, n5, n6)` of a six-entry vector.
    pub fn lower_half(&self) -> Option<[f64; 3]> {
        (self.0.len() == 6).then(|| [self.0[3], self.0[4], self.0[5]])
    }
}

pub fn occupations(one_rdms: &[OneRdm]) -> OccupationVector {
    let mut v: Vec<f64> = one_rdms.iter().flat_map(|d| d.occupations()).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    OccupationVector(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolytopeVerdict {
    pub pauli_ok: bool,
    pub generalized_ok: bool,
    /// `n5 + n6 - n4`
    pub slack: f64,
    /// `|n1 + n6 - 1|`, `|n2 + n5 - 1|`, `|n3 + n4 - 1|`
    pub complementarity_residuals: [f64; 3],
}

/// `0 <= n_i <= 1` within `tol`, for any length.
pub fn pauli_ok(occ: &OccupationVector, tol: f64) -> bool {
    occ.0.iter().all(|&n| n >= -tol && n <= 1.0 + tol)
}

pub fn check_constraints(occ: &OccupationVector) -> Result<PolytopeVerdict> {
    check_constraints_with(occ, EXACT_TOLERANCE)
}

pub fn check_constraints_with(occ: &OccupationVector, tol: f64) -> Result<PolytopeVerdict> {
    let n = match occ.0.as_slice() {
        [a, b, c, d, e, f] => [*a, *b, *c, *d, *e, *f],
        other => {
            return Err(Error::invalid(format!(
                "generalized Pauli constraints need 6 occupations, got {}",
                other.len()
            )))
        }
    };
    let slack = n[4] + n[5] - n[3];
    Ok(PolytopeVerdict {
        pauli_ok: pauli_ok(occ, tol),
        generalized_ok: slack >= -tol,
        slack,
        complementarity_residuals: [
            (n[0] + n[5] - 1.0).abs(),
            (n[1] + n[4] - 1.0).abs(),
            (n[2] + n[3] - 1.0).abs(),
        ],
    })
}
