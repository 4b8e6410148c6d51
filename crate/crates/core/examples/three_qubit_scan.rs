//! Scans the three-qubit preparation circuit with the first angle held at
//! zero and prints the lambda_G surface over the remaining two angles.

use exciton_core::harness::{run_scan, GridSpec, ScanConfig};

fn main() -> exciton_core::Result<()> {
    let grid: GridSpec = "0:pi/2:pi/12".parse()?;
    let cfg = ScanConfig {
        grid: [grid; 3],
        theta1: Some(vec![0.0]),
        ..ScanConfig::default()
    };
    let rows = run_scan(&cfg)?;
    let axis = grid.values();

    print!("theta2\\theta3");
    for t in &axis {
        print!(" {:>6.3}", t);
    }
    println!();
    for (i, t2) in axis.iter().enumerate() {
        print!("{t2:>13.3}");
        for row in &rows[i * axis.len()..(i + 1) * axis.len()] {
            print!(" {:>6.3}", row.lambda_g);
        }
        println!();
    }
    let best = rows
        .iter()
        .max_by(|a, b| a.lambda_g.total_cmp(&b.lambda_g))
        .expect("non-empty grid");
    println!(
        "peak lambda_G = {:.6} at angles {:?}",
        best.lambda_g, best.angles
    );
    Ok(())
}
