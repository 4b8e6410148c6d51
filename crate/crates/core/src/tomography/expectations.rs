use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::label::{PauliLabel, PauliMode};
use super::plan::TomographyPlan;
use crate::error::{Error, Result};
use crate::pauli::Pauli;
use crate::sim::MarginalSet;

/// Stored correlators of one qubit pair, indexed `[a][b]` over `X, Y, Z`
/// with `a` on the lower-index qubit.
pub type PairValues = [[Option<f64>; 3]; 3];

/// One- and two-qubit Pauli expectation values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationSet {
    qubit_count: usize,
    mode: PauliMode,
    singles: Vec<[f64; 3]>,
    pairs: BTreeMap<(usize, usize), PairValues>,
    /// Shots behind each estimate; `None` for exact values.
    shots: Option<u64>,
}

/// Bound slack allowed on exact expectations.
pub const EXACT_SLACK: f64 = 1e-9;

impl ExpectationSet {
    pub fn new(
        qubit_count: usize,
        mode: PauliMode,
        singles: Vec<[f64; 3]>,
        pairs: BTreeMap<(usize, usize), PairValues>,
        shots: Option<u64>,
    ) -> Result<Self> {
        if singles.len() != qubit_count {
            return Err(Error::DimensionMismatch {
                expected: qubit_count,
                found: singles.len(),
            });
        }
        let slack = match shots {
            None => EXACT_SLACK,
            Some(s) => EXACT_SLACK + 0.05 * (1.0 / s.max(1) as f64).sqrt(),
        };
        let check = |v: f64, what: &dyn Fn() -> String| {
            if !v.is_finite() || v.abs() > 1.0 + slack {
                Err(Error::invalid(format!(
                    "expectation {} = {v} out of range",
                    what()
                )))
            } else {
                Ok(())
            }
        };
        for (q, s) in singles.iter().enumerate() {
            for (k, &v) in s.iter().enumerate() {
                check(v, &|| format!("{}{q}", Pauli::NON_IDENTITY[k]))?;
            }
        }
        for (&(p, q), vals) in &pairs {
            if p >= q || q >= qubit_count {
                return Err(Error::invalid(format!(
                    "pair key ({p}, {q}) not normalized"
                )));
            }
            for a in 0..3 {
                for b in 0..3 {
                    let (pa, pb) = (Pauli::NON_IDENTITY[a], Pauli::NON_IDENTITY[b]);
                    match vals[a][b] {
                        Some(v) => {
                            if !mode.keeps(pa, pb) {
                                return Err(Error::invalid(format!(
                                    "real-only set stores imaginary label {pa}{p} {pb}{q}"
                                )));
                            }
                            check(v, &|| format!("{pa}{p} {pb}{q}"))?
                        }
                        None => {}
                    }
                }
            }
        }
        Ok(ExpectationSet {
            qubit_count,
            mode,
            singles,
            pairs,
            shots,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn mode(&self) -> PauliMode {
        self.mode
    }

    pub fn shots(&self) -> Option<u64> {
        self.shots
    }

    /// Replaces the shot metadata.
    pub fn with_shots(mut self, shots: Option<u64>) -> Self {
        self.shots = shots;
        self
    }

    pub fn pair_keys(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.pairs.keys()
    }

    pub fn raw_single(&self, q: usize) -> [f64; 3] {
        self.singles[q]
    }

    pub fn raw_pair(&self, p: usize, q: usize) -> Option<&PairValues> {
        self.pairs.get(&(p, q))
    }

    /// `<a_q>`. The identity gives 1; real-only sets report `<Y>` as 0.
    pub fn single(&self, q: usize, a: Pauli) -> Result<f64> {
        if q >= self.qubit_count {
            return Err(Error::MissingExpectation(format!("{a}{q}")));
        }
        Ok(match a.xyz_index() {
            None => 1.0,
            Some(_) if a == Pauli::Y && self.mode == PauliMode::RealOnly => 0.0,
            Some(k) => self.singles[q][k],
        })
    }

    /// `<a_p b_q>` for distinct qubits, reducing identity factors to singles.
    pub fn pair(&self, p: usize, a: Pauli, q: usize, b: Pauli) -> Result<f64> {
        if p == q {
            return Err(Error::invalid(format!(
                "pair expectation on repeated qubit {p}"
            )));
        }
        match (a.xyz_index(), b.xyz_index()) {
            (None, None) => Ok(1.0),
            (Some(_), None) => self.single(p, a),
            (None, Some(_)) => self.single(q, b),
            (Some(ka), Some(kb)) => {
                let (lo, hi, klo, khi) = if p < q {
                    (p, q, ka, kb)
                } else {
                    (q, p, kb, ka)
                };
                let (plo, phi) = (Pauli::NON_IDENTITY[klo], Pauli::NON_IDENTITY[khi]);
                if !self.mode.keeps(plo, phi) {
                    return Ok(0.0);
                }
                self.pairs
                    .get(&(lo, hi))
                    .and_then(|v| v[klo][khi])
                    .ok_or_else(|| Error::MissingExpectation(format!("{plo}{lo} {phi}{hi}")))
            }
        }
    }

    pub fn label(&self, label: &PauliLabel) -> Result<f64> {
        match label.terms() {
            [(q, a)] => self.single(*q, *a),
            [(p, a), (q, b)] => self.pair(*p, *a, *q, *b),
            _ => unreachable!("labels hold one or two factors"),
        }
    }

    /// Replaces every stored value through `f(label, value)`.
    pub fn map_values(&self, mut f: impl FnMut(&PauliLabel, f64) -> f64) -> Result<Self> {
        let mut out = self.clone();
        for (q, s) in out.singles.iter_mut().enumerate() {
            for (k, v) in s.iter_mut().enumerate() {
                *v = f(&PauliLabel::single(q, Pauli::NON_IDENTITY[k])?, *v);
            }
        }
        for (&(p, q), vals) in out.pairs.iter_mut() {
            for a in 0..3 {
                for b in 0..3 {
                    if let Some(v) = vals[a][b].as_mut() {
                        let l =
                            PauliLabel::pair(p, Pauli::NON_IDENTITY[a], q, Pauli::NON_IDENTITY[b])?;
                        *v = f(&l, *v);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Exact (noise-free, infinite-shot) expectations of the plan's labels.
pub fn exact_expectations(source: &MarginalSet, plan: &TomographyPlan) -> Result<ExpectationSet> {
    let n = source.qubit_count();
    if plan.qubit_count != n {
        return Err(Error::DimensionMismatch {
            expected: plan.qubit_count,
            found: n,
        });
    }
    let singles = (0..n)
        .map(|q| {
            let mut s = [0.0; 3];
            for (k, p) in Pauli::NON_IDENTITY.iter().enumerate() {
                s[k] = source.single_expectation(q, *p);
            }
            s
        })
        .collect();
    let mut pairs = BTreeMap::new();
    for &(p, q) in &plan.pairs {
        let mut vals: PairValues = [[None; 3]; 3];
        for &(a, b) in plan.mode.pair_labels() {
            let (ka, kb) = (a.xyz_index().unwrap(), b.xyz_index().unwrap());
            vals[ka][kb] = Some(source.pair_expectation(p, q, a, b)?);
        }
        pairs.insert((p, q), vals);
    }
    ExpectationSet::new(n, plan.mode, singles, pairs, None)
}
