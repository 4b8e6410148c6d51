//! Batch drivers behind the `exciton` command: angle scans of the
//! three-qubit preparation, GHZ sweeps, readout calibration and report
//! merging. Every random stream is derived from the master seed and the row
//! index, so outputs do not depend on the worker count.

mod calibrate;
mod format;
mod grid;
mod pipeline;
mod report;
mod scan;
mod sweep;

pub use calibrate::{run_calibration, DEFAULT_CALIBRATION_QUBITS};
pub use format::fmt_f64;
pub use grid::{parse_angle, GridSpec};
pub use pipeline::{
    analyze, observe, prepare_dense, prepare_marginals, sample_labels, Mode, Observed, Prepared,
};
pub use report::{build_report, median, Report, ReportRow};
pub use scan::{
    run_scan, run_scan_to_file, scan_csv, ScanConfig, ScanProgress, ScanRow, CHECKPOINT_ROWS,
    SCAN_HEADER,
};
pub use sweep::{
    run_sweep, sweep_csv, sweep_point, Backend, Kind, SweepConfig, SweepRow, DEFAULT_SWEEP_NS,
    SWEEP_HEADER,
};
