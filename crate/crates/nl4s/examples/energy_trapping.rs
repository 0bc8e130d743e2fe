// Below the ground-state threshold the energy controls ‖Δu‖² along the whole
// flow; prints the smallest trapping slack seen.

use nl4s::error::Result;
use nl4s::evolution::{energy_trapping_check, evolve, gaussian, EvolveConfig, Status};
use nl4s::exponents::critical_exponents;
use nl4s::groundstate::solve_sobolev_ground_state;
use nl4s::spectral::Grid;

pub fn run_example() -> Result<f64> {
    let e = critical_exponents(1, 10.0)?;
    let s_gs = solve_sobolev_ground_state(&e, &Grid::cube(1, 1024, 80.0)?, &Default::default())?
        .norms
        .sobolev_gamma_c;
    let grid = Grid::cube(1, 512, 80.0)?;
    let u0 = gaussian(&grid, 0.6, 1.0, &[0.0], &[0.0]);
    let cfg = EvolveConfig {
        t_end: 2.0,
        dealias: false,
        dt_max: Some(1e-3),
        ..Default::default()
    };
    let ev = evolve(&u0, &cfg, &e)?;
    assert_eq!(ev.status, Status::Completed);
    let slack = ev
        .trajectory
        .iter()
        .map(|r| energy_trapping_check(r, s_gs, &e))
        .fold(f64::INFINITY, f64::min);
    println!(
        "‖u0‖_Ḣγc / S_gs = {:.3}; {} rows, min slack {slack:.4e}",
        ev.trajectory[0].h_gamma_c / s_gs,
        ev.trajectory.len()
    );
    Ok(slack)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
