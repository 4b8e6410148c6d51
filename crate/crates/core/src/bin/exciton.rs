use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use exciton_core::harness::{
    build_report, parse_angle, run_calibration, run_scan, run_scan_to_file, run_sweep, scan_csv,
    sweep_csv, Backend, GridSpec, ScanConfig, SweepConfig, DEFAULT_SWEEP_NS,
};
use exciton_core::noise::NoiseModel;
use exciton_core::tomography::{PauliMode, DEFAULT_SHOTS};
use exciton_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "exciton",
    version,
    about = "Exciton-condensate signatures of simulated qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Shots per measurement setting; exact expectations when omitted.
    #[arg(long)]
    shots: Option<u64>,
    /// Noise configuration JSON.
    #[arg(long)]
    noise: Option<PathBuf>,
    /// Apply tensored readout mitigation (requires --shots).
    #[arg(long)]
    mitigate: bool,
    /// Shots per calibration circuit when mitigating.
    #[arg(long, default_value_t = DEFAULT_SHOTS)]
    calibration_shots: u64,
    /// Master seed; falls back to the noise file's seed, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the three-qubit preparation over an angle grid.
    Scan {
        /// Angle range start:stop:step applied to every angle.
        #[arg(long, default_value = "0:pi/2:pi/6")]
        grid: GridSpec,
        /// Restrict theta1 to these comma-separated values.
        #[arg(long, value_delimiter = ',')]
        theta1: Option<Vec<String>>,
        /// Polytope tolerance (defaults: 1e-8 exact, 0.02 sampled).
        #[arg(long)]
        tolerance: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Signatures of GHZ states over a set of register sizes.
    GhzSweep {
        /// Comma-separated register sizes.
        #[arg(long = "n", value_delimiter = ',')]
        ns: Option<Vec<usize>>,
        #[arg(long, default_value = "analytic")]
        backend: Backend,
        /// Pauli label set: full or real-only (chosen by size when omitted).
        #[arg(long)]
        pauli_mode: Option<PauliMode>,
        /// Write each particle-hole matrix as JSON into this directory.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Fit a tensored readout filter for a noise configuration.
    Calibrate {
        #[arg(long)]
        noise: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SHOTS)]
        shots: u64,
        /// Register size (needed only for scalar readout error).
        #[arg(long)]
        qubits: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Merge sweep CSVs into per-N medians.
    Report {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_noise(path: Option<&Path>) -> Result<Option<NoiseModel>> {
    path.map(NoiseModel::load).transpose()
}

fn resolve_seed(seed: Option<u64>, noise: Option<&NoiseModel>) -> u64 {
    seed.or_else(|| noise.and_then(|m| m.seed)).unwrap_or(0)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Scan {
            grid,
            theta1,
            tolerance,
            common,
        } => {
            let noise = load_noise(common.noise.as_deref())?;
            let theta1 = theta1
                .map(|v| v.iter().map(|s| parse_angle(s)).collect::<Result<Vec<_>>>())
                .transpose()?;
            let cfg = ScanConfig {
                grid: [grid; 3],
                theta1,
                shots: common.shots,
                seed: resolve_seed(common.seed, noise.as_ref()),
                noise,
                mitigate: common.mitigate,
                calibration_shots: common.calibration_shots,
                workers: common.workers,
                tolerance,
            };
            match common.out {
                Some(path) => {
                    let progress = run_scan_to_file(&cfg, &path)?;
                    eprintln!(
                        "scan: {} rows computed, {} reused -> {}",
                        progress.computed,
                        progress.reused,
                        path.display()
                    );
                    Ok(())
                }
                None => emit(None, &scan_csv(&run_scan(&cfg)?)),
            }
        }
        Command::GhzSweep {
            ns,
            backend,
            pauli_mode,
            dump_dir,
            common,
        } => {
            let noise = load_noise(common.noise.as_deref())?;
            let cfg = SweepConfig {
                ns: ns.unwrap_or_else(|| DEFAULT_SWEEP_NS.to_vec()),
                backend,
                shots: common.shots,
                seed: resolve_seed(common.seed, noise.as_ref()),
                noise,
                mitigate: common.mitigate,
                calibration_shots: common.calibration_shots,
                workers: common.workers,
                pauli_mode,
                dump_dir,
            };
            emit(common.out.as_deref(), &sweep_csv(&run_sweep(&cfg)?))
        }
        Command::Calibrate {
            noise,
            shots,
            qubits,
            seed,
            out,
        } => {
            let model = NoiseModel::load(&noise)?;
            let filter = run_calibration(&model, qubits, shots, resolve_seed(seed, Some(&model)))?;
            emit(out.as_deref(), &(filter.to_json()? + "\n"))
        }
        Command::Report { inputs, out } => {
            let report = build_report(&inputs)?;
            emit(
                out.as_deref(),
                &(serde_json::to_string_pretty(&report)? + "\n"),
            )
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Error::exit_code(&e) as u8)
        }
    }
}
