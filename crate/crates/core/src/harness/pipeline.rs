use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::mitigation::MitigationFilter;
use crate::noise::{apply_gate_noise, readout_distorted, DensityMatrix, NoiseModel, DENSITY_LIMIT};
use crate::rdm::{assemble_g_tilde, assemble_two_particle_rdm, GTilde, SignatureReport};
use crate::seed::{derive_seed, rng};
use crate::sim::{Circuit, MarginalSet, PureState, Simulator};
use crate::tomography::{
    exact_expectations, expectations_from_counts, sample_plan, ExpectationSet, MeasurableState,
    TomographyPlan,
};

/// Exact (infinite-shot) or sampled estimation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Shots(u64),
}

impl Mode {
    pub fn from_shots(shots: Option<u64>) -> Result<Self> {
        match shots {
            None => Ok(Mode::Exact),
            Some(0) => Err(Error::invalid("shots must be >= 1")),
            Some(s) => Ok(Mode::Shots(s)),
        }
    }
}

/// A prepared state in whichever representation its backend produces.
#[derive(Debug, Clone)]
pub enum Prepared {
    Pure(PureState),
    Mixed(DensityMatrix),
    Marginals(MarginalSet),
}

/// Runs `circuit` on the dense backends, as a density matrix when the model
/// carries gate noise.
pub fn prepare_dense(circuit: &Circuit, noise: Option<&NoiseModel>) -> Result<Prepared> {
    match noise.filter(|m| m.has_gate_noise()) {
        Some(model) => {
            let n = circuit.qubit_count();
            if n > DENSITY_LIMIT {
                return Err(Error::Capacity(format!(
                    "gate noise on {n} qubits exceeds the dense mixed-state limit of {DENSITY_LIMIT}; use the analytic backend"
                )));
            }
            Ok(Prepared::Mixed(DensityMatrix::evolve(circuit, model)?))
        }
        None => Ok(Prepared::Pure(Simulator::default().run(circuit)?)),
    }
}

/// Exact marginals of a (possibly noisy) Clifford circuit at any size.
pub fn prepare_marginals(circuit: &Circuit, noise: Option<&NoiseModel>) -> Result<Prepared> {
    let model = noise.cloned().unwrap_or_default();
    Ok(Prepared::Marginals(apply_gate_noise(circuit, &model)?))
}

impl Prepared {
    pub fn qubit_count(&self) -> usize {
        match self {
            Prepared::Pure(s) => s.qubit_count(),
            Prepared::Mixed(r) => r.qubit_count(),
            Prepared::Marginals(m) => m.qubit_count(),
        }
    }

    pub fn marginals(&self) -> MarginalSet {
        match self {
            Prepared::Pure(s) => MarginalSet::from_pure(s),
            Prepared::Mixed(r) => r.marginals(),
            Prepared::Marginals(m) => m.clone(),
        }
    }

    fn measurable(&self) -> Option<&dyn MeasurableState> {
        match self {
            Prepared::Pure(s) => Some(s),
            Prepared::Mixed(r) => Some(r),
            Prepared::Marginals(_) => None,
        }
    }
}

/// Expectations before and, when a filter was supplied, after mitigation.
#[derive(Debug, Clone)]
pub struct Observed {
    pub raw: ExpectationSet,
    pub mitigated: Option<ExpectationSet>,
}

/// Estimates the plan's expectations from a prepared state.
///
/// Exact mode applies readout error as its infinite-shot average. Sampled
/// mode draws count tables for dense states; marginal-only states draw each
/// label independently from its binomial outcome distribution. Mitigation
/// needs count tables and is therefore restricted to sampled dense states.
pub fn observe(
    prepared: &Prepared,
    plan: &TomographyPlan,
    mode: Mode,
    noise: Option<&NoiseModel>,
    filter: Option<&MitigationFilter>,
    seed: u64,
) -> Result<Observed> {
    let readout = noise.filter(|m| m.has_readout_noise(plan.qubit_count));
    match (mode, prepared.measurable()) {
        (Mode::Shots(shots), Some(state)) => {
            let tables = sample_plan(state, plan, shots, readout, seed)?;
            let raw = expectations_from_counts(&tables, plan)?;
            let mitigated = match filter {
                Some(f) => {
                    let freqs = tables
                        .iter()
                        .map(|t| f.mitigate(t))
                        .collect::<Result<Vec<_>>>()?;
                    Some(expectations_from_counts(&freqs, plan)?)
                }
                None => None,
            };
            Ok(Observed { raw, mitigated })
        }
        (mode, _) => {
            if filter.is_some() {
                return Err(Error::invalid(
                    "mitigation needs sampled count tables: use shots mode with the dense backend",
                ));
            }
            let mut exp = exact_expectations(&prepared.marginals(), plan)?;
            if let Some(model) = readout {
                exp = readout_distorted(&exp, model)?;
            }
            if let Mode::Shots(shots) = mode {
                exp = sample_labels(&exp, shots, seed)?;
            }
            Ok(Observed {
                raw: exp,
                mitigated: None,
            })
        }
    }
}

/// Replaces each expectation `e` by `2k/shots - 1`, `k ~ Binomial(shots, (1+e)/2)`.
pub fn sample_labels(exp: &ExpectationSet, shots: u64, seed: u64) -> Result<ExpectationSet> {
    let mut r = rng(derive_seed(seed, 0xB1A5));
    let mut failure = None;
    let out = exp.map_values(|_, e| {
        let p = ((1.0 + e) / 2.0).clamp(0.0, 1.0);
        match Binomial::new(shots, p) {
            Ok(d) => 2.0 * d.sample(&mut r) as f64 / shots as f64 - 1.0,
            Err(err) => {
                failure = Some(err.to_string());
                e
            }
        }
    })?;
    match failure {
        Some(msg) => Err(Error::invalid(msg)),
        None => Ok(out.with_shots(Some(shots))),
    }
}

/// Signature report together with the matrix it was computed from.
pub fn analyze(exp: &ExpectationSet) -> Result<(SignatureReport, GTilde)> {
    let g = assemble_g_tilde(exp)?;
    let spectrum = g.spectrum()?.values;
    let lambda_d = assemble_two_particle_rdm(exp)?.lambda_d()?;
    Ok((
        SignatureReport::from_spectrum(exp.qubit_count(), spectrum, lambda_d),
        g,
    ))
}

/// Runs `f` on a rayon pool of `workers` threads (the global pool if `None`).
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(Error::invalid("--workers must be at least 1")),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}
