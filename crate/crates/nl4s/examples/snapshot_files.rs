// Writes a field snapshot and a short trajectory table, reads both back.

use std::error::Error;
use std::fs;

use nl4s::evolution::{evolve, gaussian, EvolveConfig};
use nl4s::exponents::critical_exponents;
use nl4s::io::{parse_trajectory_csv, read_field, write_field, write_trajectory_csv};
use nl4s::spectral::Grid;

/// Whether both files round-tripped bit for bit.
pub fn run_example() -> Result<bool, Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let e = critical_exponents(1, 10.0)?;
    let grid = Grid::cube(1, 256, 40.0)?;
    let cfg = EvolveConfig {
        t_end: 0.05,
        ..Default::default()
    };
    let ev = evolve(&gaussian(&grid, 0.8, 1.0, &[0.0], &[1.0]), &cfg, &e)?;
    let t = ev.trajectory.last().map_or(0.0, |r| r.t);
    let field_path = dir.path().join("final.nl4s");
    let csv_path = dir.path().join("trajectory.csv");
    write_field(&field_path, &ev.final_field, t)?;
    write_trajectory_csv(&csv_path, &ev.trajectory)?;
    let (back, t_back) = read_field(&field_path)?;
    let text = fs::read_to_string(&csv_path)?;
    let rows = parse_trajectory_csv(&text, "trajectory.csv")?;
    let same = back == ev.final_field && t_back == t && rows == ev.trajectory;
    println!("{} rows, snapshot at t = {t:.4}, round trip exact: {same}", rows.len());
    Ok(same)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
