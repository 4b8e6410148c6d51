use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::format::fmt_f64;
use super::grid::GridSpec;
use super::pipeline::{analyze, observe, prepare_dense, with_workers, Mode};
use crate::error::{Error, Result};
use crate::mitigation::{calibrate_tensored, MitigationFilter, NoisySampler};
use crate::noise::NoiseModel;
use crate::polytope::{
    check_constraints_with, occupations, PolytopeVerdict, EXACT_TOLERANCE, SAMPLED_TOLERANCE,
};
use crate::rdm::one_rdms;
use crate::seed::derive_seed;
use crate::sim::{build_min3_prep, PrepAngles};
use crate::tomography::{all_pairs, plan_settings, PauliMode, TomographyPlan, DEFAULT_SHOTS};

pub const SCAN_HEADER: &str = "theta1,theta2,theta3,n4,n5,n6,lambda_g,slack,lambda_d";

/// Grid points evaluated between checkpoints of a file-backed scan.
pub const CHECKPOINT_ROWS: usize = 32;

#[derive(Debug, Clone)]
pub struct ScanConfig {
    /// Per-angle ranges for `theta1`, `theta2`, `theta3`.
    pub grid: [GridSpec; 3],
    /// Explicit `theta1` values replacing its grid axis.
    pub theta1: Option<Vec<f64>>,
    pub shots: Option<u64>,
    pub noise: Option<NoiseModel>,
    pub mitigate: bool,
    pub calibration_shots: u64,
    pub seed: u64,
    pub workers: Option<usize>,
    /// Polytope tolerance; defaults to the exact or sampled value by mode.
    pub tolerance: Option<f64>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            grid: [GridSpec::standard(); 3],
            theta1: None,
            shots: None,
            noise: None,
            mitigate: false,
            calibration_shots: DEFAULT_SHOTS,
            seed: 0,
            workers: None,
            tolerance: None,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        Mode::from_shots(self.shots)?;
        if let Some(model) = &self.noise {
            model.validate()?;
            model.check_qubits(3)?;
        }
        if self.mitigate && self.shots.is_none() {
            return Err(Error::invalid("--mitigate requires --shots"));
        }
        if let Some(t) = &self.theta1 {
            if t.is_empty() || t.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid("--theta1 needs finite values"));
            }
        }
        Ok(())
    }

    /// Grid points in output order (`theta1` slowest).
    pub fn points(&self) -> Vec<PrepAngles> {
        let t1 = self.theta1.clone().unwrap_or_else(|| self.grid[0].values());
        let (t2, t3) = (self.grid[1].values(), self.grid[2].values());
        let mut out = Vec::with_capacity(t1.len() * t2.len() * t3.len());
        for &a in &t1 {
            for &b in &t2 {
                for &c in &t3 {
                    out.push(PrepAngles::new(a, b, c));
                }
            }
        }
        out
    }

    fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(if self.shots.is_some() {
            SAMPLED_TOLERANCE
        } else {
            EXACT_TOLERANCE
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub angles: PrepAngles,
    /// `(n4, n5, n6)`
    pub occupations: [f64; 3],
    pub lambda_g: f64,
    pub lambda_d: f64,
    pub verdict: PolytopeVerdict,
}

fn angle_key(a: &PrepAngles) -> String {
    format!(
        "{},{},{}",
        fmt_f64(a.theta1),
        fmt_f64(a.theta2),
        fmt_f64(a.theta3)
    )
}

impl ScanRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            angle_key(&self.angles),
            fmt_f64(self.occupations[0]),
            fmt_f64(self.occupations[1]),
            fmt_f64(self.occupations[2]),
            fmt_f64(self.lambda_g),
            fmt_f64(self.verdict.slack),
            fmt_f64(self.lambda_d)
        )
    }
}

struct ScanContext {
    plan: TomographyPlan,
    mode: Mode,
    filter: Option<MitigationFilter>,
    tolerance: f64,
}

fn context(cfg: &ScanConfig) -> Result<ScanContext> {
    cfg.validate()?;
    let plan = plan_settings(3, &all_pairs(3), PauliMode::Full)?;
    let filter = if cfg.mitigate {
        let sampler = NoisySampler::new(3, cfg.noise.clone().unwrap_or_default())?;
        Some(calibrate_tensored(
            &sampler,
            cfg.calibration_shots,
            derive_seed(cfg.seed, u64::MAX),
        )?)
    } else {
        None
    };
    Ok(ScanContext {
        plan,
        mode: Mode::from_shots(cfg.shots)?,
        filter,
        tolerance: cfg.tolerance(),
    })
}

fn scan_point(
    cfg: &ScanConfig,
    ctx: &ScanContext,
    index: usize,
    angles: PrepAngles,
) -> Result<ScanRow> {
    let circuit = build_min3_prep(angles)?;
    let prepared = prepare_dense(&circuit, cfg.noise.as_ref())?;
    let seed = derive_seed(cfg.seed, index as u64);
    let observed = observe(
        &prepared,
        &ctx.plan,
        ctx.mode,
        cfg.noise.as_ref(),
        ctx.filter.as_ref(),
        seed,
    )?;
    let exp = observed.mitigated.unwrap_or(observed.raw);
    let (report, _) = analyze(&exp)?;
    let occ = occupations(&one_rdms(&exp)?);
    let verdict = check_constraints_with(&occ, ctx.tolerance)?;
    Ok(ScanRow {
        angles,
        occupations: occ.lower_half().expect("three sites give six occupations"),
        lambda_g: report.lambda_g,
        lambda_d: report.lambda_d,
        verdict,
    })
}

/// Evaluates every grid point in memory.
pub fn run_scan(cfg: &ScanConfig) -> Result<Vec<ScanRow>> {
    let ctx = context(cfg)?;
    let points = cfg.points();
    with_workers(cfg.workers, || {
        points
            .par_iter()
            .enumerate()
            .map(|(i, &a)| scan_point(cfg, &ctx, i, a))
            .collect()
    })?
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = format!("{SCAN_HEADER}\n");
    for r in rows {
        let _ = writeln!(out, "{}", r.csv_line());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanProgress {
    pub computed: usize,
    pub reused: usize,
}

fn read_existing(path: &Path) -> Result<BTreeMap<String, String>> {
    let mut done = BTreeMap::new();
    if !path.exists() {
        return Ok(done);
    }
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        None => return Ok(done),
        Some(h) if h == SCAN_HEADER => {}
        Some(h) => {
            return Err(Error::invalid(format!(
                "{} has header '{h}', not a scan file; refusing to overwrite",
                path.display()
            )))
        }
    }
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != SCAN_HEADER.split(',').count() {
            continue;
        }
        done.insert(fields[..3].join(","), line.to_string());
    }
    Ok(done)
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("partial");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// File-backed scan: rows already present in `path` are kept, missing grid
/// points are computed in checkpointed chunks, and the file is rewritten in
/// grid order after each chunk so an interrupted run can resume.
pub fn run_scan_to_file(cfg: &ScanConfig, path: &Path) -> Result<ScanProgress> {
    let ctx = context(cfg)?;
    let mut done = read_existing(path)?;
    let points = cfg.points();
    let keys: Vec<String> = points.iter().map(angle_key).collect();
    let todo: Vec<usize> = (0..points.len())
        .filter(|&i| !done.contains_key(&keys[i]))
        .collect();
    let reused = points.len() - todo.len();

    let render = |done: &BTreeMap<String, String>| {
        let mut out = format!("{SCAN_HEADER}\n");
        for k in &keys {
            if let Some(line) = done.get(k) {
                let _ = writeln!(out, "{line}");
            }
        }
        out
    };
    for chunk in todo.chunks(CHECKPOINT_ROWS) {
        let rows: Vec<Result<ScanRow>> = with_workers(cfg.workers, || {
            chunk
                .par_iter()
                .map(|&i| scan_point(cfg, &ctx, i, points[i]))
                .collect()
        })?;
        for (&i, row) in chunk.iter().zip(rows) {
            done.insert(keys[i].clone(), row?.csv_line());
        }
        write_atomic(path, &render(&done))?;
    }
    if todo.is_empty() {
        write_atomic(path, &render(&done))?;
    }
    Ok(ScanProgress {
        computed: todo.len(),
        reused,
    })
}
