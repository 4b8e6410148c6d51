use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::format::fmt_f64;
use super::pipeline::{
    analyze, observe, prepare_dense, prepare_marginals, with_workers, Mode, Prepared,
};
use crate::error::{Error, Result};
use crate::mitigation::{calibrate_tensored, MitigationFilter, NoisySampler};
use crate::noise::NoiseModel;
use crate::rdm::{MatrixDump, SignatureReport};
use crate::seed::derive_seed;
use crate::sim::{build_ghz, MarginalSet, DEFAULT_DENSE_LIMIT};
use crate::tomography::{all_pairs, plan_settings, PauliMode, DEFAULT_SHOTS};

/// Register sizes swept by default.
pub const DEFAULT_SWEEP_NS: [usize; 20] = [
    3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 22, 28, 34, 39, 47, 53,
];

pub const SWEEP_HEADER: &str = "n,backend,kind,lambda_g,lambda_d,sum_above_one,count_above_one";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Dense,
    Analytic,
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Backend::Dense),
            "analytic" => Ok(Backend::Analytic),
            other => Err(Error::invalid(format!(
                "unknown backend '{other}' (dense | analytic)"
            ))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Dense => "dense",
            Backend::Analytic => "analytic",
        })
    }
}

/// What a sweep row measures: the noiseless state (`sim`), the noisy
/// unmitigated estimate (`exp`), or the readout-mitigated estimate (`mit`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sim,
    Exp,
    Mit,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Sim, Kind::Exp, Kind::Mit];
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sim" => Ok(Kind::Sim),
            "exp" => Ok(Kind::Exp),
            "mit" => Ok(Kind::Mit),
            other => Err(Error::invalid(format!("unknown row kind '{other}'"))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Sim => "sim",
            Kind::Exp => "exp",
            Kind::Mit => "mit",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub ns: Vec<usize>,
    pub backend: Backend,
    /// `None` for exact expectations.
    pub shots: Option<u64>,
    pub noise: Option<NoiseModel>,
    pub mitigate: bool,
    pub calibration_shots: u64,
    pub seed: u64,
    pub workers: Option<usize>,
    /// Pauli label set; chosen per register size when `None`.
    pub pauli_mode: Option<PauliMode>,
    /// Directory receiving one particle-hole matrix dump per row.
    pub dump_dir: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            ns: DEFAULT_SWEEP_NS.to_vec(),
            backend: Backend::Analytic,
            shots: None,
            noise: None,
            mitigate: false,
            calibration_shots: DEFAULT_SHOTS,
            seed: 0,
            workers: None,
            pauli_mode: None,
            dump_dir: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ns.is_empty() {
            return Err(Error::invalid("sweep needs at least one register size"));
        }
        if let Some(&bad) = self.ns.iter().find(|&&n| n == 0) {
            return Err(Error::invalid(format!(
                "register size {bad} must be positive"
            )));
        }
        if let Some(model) = &self.noise {
            model.validate()?;
        }
        if self.mitigate {
            if self.shots.is_none() {
                return Err(Error::invalid("--mitigate requires --shots"));
            }
            if self.backend != Backend::Dense {
                return Err(Error::invalid("--mitigate requires the dense backend"));
            }
        }
        Mode::from_shots(self.shots)?;
        Ok(())
    }

    fn noisy(&self, n: usize) -> bool {
        self.noise
            .as_ref()
            .is_some_and(|m| m.has_gate_noise() || m.has_readout_noise(n))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub backend: Backend,
    pub kind: Kind,
    pub report: SignatureReport,
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.backend,
            self.kind,
            fmt_f64(self.report.lambda_g),
            fmt_f64(self.report.lambda_d),
            fmt_f64(self.report.sum_above_one),
            self.report.count_above_one
        )
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in rows {
        let _ = writeln!(out, "{}", r.csv_line());
    }
    out
}

fn prepare(cfg: &SweepConfig, n: usize) -> Result<Prepared> {
    let circuit = build_ghz(n)?;
    let noise = cfg.noise.as_ref();
    match cfg.backend {
        Backend::Dense => {
            if n > DEFAULT_DENSE_LIMIT {
                return Err(Error::Capacity(format!(
                    "N = {n} exceeds the dense limit of {DEFAULT_DENSE_LIMIT}; use --backend analytic"
                )));
            }
            prepare_dense(&circuit, noise)
        }
        Backend::Analytic => match noise.filter(|m| m.has_gate_noise()) {
            None if n >= 3 => Ok(Prepared::Marginals(MarginalSet::ghz(n)?)),
            _ => prepare_marginals(&circuit, noise),
        },
    }
}

/// All rows for one register size.
pub fn sweep_point(cfg: &SweepConfig, n: usize) -> Result<Vec<SweepRow>> {
    if let Some(model) = &cfg.noise {
        model.check_qubits(n)?;
    }
    let seed = derive_seed(cfg.seed, n as u64);
    let mode = Mode::from_shots(cfg.shots)?;
    let prepared = prepare(cfg, n)?;
    let pauli_mode = cfg.pauli_mode.unwrap_or_else(|| PauliMode::auto(n));
    let plan = plan_settings(n, &all_pairs(n), pauli_mode)?;

    let filter: Option<MitigationFilter> = if cfg.mitigate {
        let model = cfg.noise.clone().unwrap_or_default();
        let sampler = NoisySampler::new(n, model)?;
        Some(calibrate_tensored(
            &sampler,
            cfg.calibration_shots,
            derive_seed(seed, 0xCA1),
        )?)
    } else {
        None
    };
    let observed = observe(
        &prepared,
        &plan,
        mode,
        cfg.noise.as_ref(),
        filter.as_ref(),
        seed,
    )?;

    let primary = if cfg.noisy(n) { Kind::Exp } else { Kind::Sim };
    let mut sets = vec![(primary, observed.raw)];
    if let Some(m) = observed.mitigated {
        sets.push((Kind::Mit, m));
    }
    sets.into_iter()
        .map(|(kind, exp)| {
            let (report, g) = analyze(&exp)?;
            if let Some(dir) = &cfg.dump_dir {
                let dump =
                    MatrixDump::new(format!("g_tilde n={n} kind={kind}"), &g.matrix, g.labels())?;
                std::fs::create_dir_all(dir)?;
                std::fs::write(
                    dir.join(format!("g_tilde_n{n}_{kind}.json")),
                    dump.to_json()?,
                )?;
            }
            Ok(SweepRow {
                n,
                backend: cfg.backend,
                kind,
                report,
            })
        })
        .collect()
}

/// Evaluates every register size on the configured worker pool; row order
/// follows `cfg.ns` regardless of scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let per_n: Vec<Result<Vec<SweepRow>>> = with_workers(cfg.workers, || {
        cfg.ns.par_iter().map(|&n| sweep_point(cfg, n)).collect()
    })?;
    let mut rows = Vec::new();
    for r in per_n {
        rows.extend(r?);
    }
    Ok(rows)
}
