use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::label::{MeasurementSetting, PauliLabel, PauliMode};
use crate::error::{Error, Result};
use crate::pauli::Pauli;

/// Measurement settings together with the labels they are meant to cover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomographyPlan {
    pub qubit_count: usize,
    pub pairs: Vec<(usize, usize)>,
    pub mode: PauliMode,
    pub settings: Vec<MeasurementSetting>,
}

impl TomographyPlan {
    /// Every single-qubit X/Y/Z label plus the mode's pair labels.
    pub fn required_labels(&self) -> Vec<PauliLabel> {
        required_labels(self.qubit_count, &self.pairs, self.mode)
    }

    /// Labels that no setting of the plan exposes (empty for a sound plan).
    pub fn uncovered(&self) -> Vec<PauliLabel> {
        self.required_labels()
            .into_iter()
            .filter(|l| !self.settings.iter().any(|s| s.exposes(l)))
            .collect()
    }
}

/// All ordered-by-index pairs `(p, q)` with `p < q`.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .collect()
}

fn required_labels(n: usize, pairs: &[(usize, usize)], mode: PauliMode) -> Vec<PauliLabel> {
    let mut labels = Vec::new();
    for q in 0..n {
        for p in Pauli::NON_IDENTITY {
            labels.push(PauliLabel::single(q, p).expect("valid single label"));
        }
    }
    for &(p, q) in pairs {
        for &(a, b) in mode.pair_labels() {
            labels.push(PauliLabel::pair(p, a, q, b).expect("valid pair label"));
        }
    }
    labels
}

fn candidate_settings(n: usize, mode: PauliMode) -> Vec<MeasurementSetting> {
    let letters: &[Pauli] = match mode {
        PauliMode::RealOnly => &[Pauli::X, Pauli::Z],
        PauliMode::Full => &Pauli::NON_IDENTITY,
    };
    let mut out = Vec::new();
    // Exhaustive pool for small registers lets the greedy pass find short plans.
    if n <= 4 {
        let total = letters.len().pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let bases = (0..n)
                .map(|_| {
                    let l = letters[c % letters.len()];
                    c /= letters.len();
                    l
                })
                .collect();
            out.push(MeasurementSetting::new(bases).expect("non-empty"));
        }
    }
    // Bit-partition settings: any two distinct qubits differ in some index
    // bit, so every ordered letter pair is realised by one of these.
    let bits = usize::BITS - (n.max(2) - 1).leading_zeros();
    for b in 0..bits {
        for &lo in letters {
            for &hi in letters {
                if lo == hi {
                    continue;
                }
                let bases = (0..n)
                    .map(|q| if (q >> b) & 1 == 0 { lo } else { hi })
                    .collect();
                out.push(MeasurementSetting::new(bases).expect("non-empty"));
            }
        }
    }
    out
}

/// Greedy set cover of the required labels. The three uniform settings
/// `X^n`, `Y^n`, `Z^n` always come first.
pub fn plan_settings(
    n: usize,
    pairs: &[(usize, usize)],
    mode: PauliMode,
) -> Result<TomographyPlan> {
    if n == 0 {
        return Err(Error::invalid("tomography needs at least one qubit"));
    }
    let mut normalized = Vec::with_capacity(pairs.len());
    let mut seen = BTreeSet::new();
    for &(p, q) in pairs {
        if p == q || p >= n || q >= n {
            return Err(Error::invalid(format!(
                "invalid pair ({p}, {q}) for {n} qubits"
            )));
        }
        let key = (p.min(q), p.max(q));
        if !seen.insert(key) {
            return Err(Error::invalid(format!("duplicate pair ({p}, {q})")));
        }
        normalized.push(key);
    }

    let required = required_labels(n, &normalized, mode);
    let mut uncovered: BTreeSet<usize> = (0..required.len()).collect();
    let mut settings = Vec::new();
    let mut take = |s: MeasurementSetting, uncovered: &mut BTreeSet<usize>| {
        uncovered.retain(|&i| !s.exposes(&required[i]));
        settings.push(s);
    };
    for basis in Pauli::NON_IDENTITY {
        take(MeasurementSetting::uniform(n, basis)?, &mut uncovered);
    }

    let candidates = candidate_settings(n, mode);
    while !uncovered.is_empty() {
        let (best, gain) = candidates
            .iter()
            .enumerate()
            .map(|(k, s)| {
                (
                    k,
                    uncovered
                        .iter()
                        .filter(|&&i| s.exposes(&required[i]))
                        .count(),
                )
            })
            .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if gain == 0 {
            return Err(Error::invalid(
                "measurement candidates cannot cover the plan",
            ));
        }
        take(candidates[best].clone(), &mut uncovered);
    }

    Ok(TomographyPlan {
        qubit_count: n,
        pairs: normalized,
        mode,
        settings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_plan_is_xyz() {
        let plan = plan_settings(1, &[], PauliMode::Full).unwrap();
        let s: Vec<String> = plan.settings.iter().map(|s| s.to_string()).collect();
        assert_eq!(s, ["X", "Y", "Z"]);
    }

    #[test]
    fn rejects_duplicate_pairs() {
        assert!(plan_settings(3, &[(0, 1), (1, 0)], PauliMode::Full).is_err());
        assert!(plan_settings(3, &[(0, 3)], PauliMode::Full).is_err());
    }

    #[test]
    fn large_real_only_plan_is_logarithmic() {
        let plan = plan_settings(53, &all_pairs(53), PauliMode::RealOnly).unwrap();
        assert!(plan.uncovered().is_empty());
        // 3 uniform settings + at most 2 per index bit.
        assert!(plan.settings.len() <= 3 + 2 * 6, "{}", plan.settings.len());
    }
}
