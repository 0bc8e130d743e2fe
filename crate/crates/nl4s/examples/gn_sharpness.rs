// Random Gaussian mixtures never beat the ground state in the
// Gagliardo–Nirenberg quotient H.

use nl4s::error::Result;
use nl4s::exponents::critical_exponents;
use nl4s::groundstate::{solve_sobolev_ground_state, verify_gn_sharpness, SharpnessReport};
use nl4s::spectral::Grid;

pub fn run_example() -> Result<SharpnessReport> {
    let e = critical_exponents(1, 10.0)?;
    let grid = Grid::cube(1, 1024, 80.0)?;
    let q = solve_sobolev_ground_state(&e, &grid, &Default::default())?;
    let rep = verify_gn_sharpness(q.sharp_constant, &e, &grid, 200, 7)?;
    println!(
        "A_GN {:.6}; H(Q)/A_GN {:.6}; {} random trials, max H/A_GN {:.4}, {} violations",
        q.sharp_constant,
        q.norms.h_value.unwrap_or(0.0) / q.sharp_constant,
        rep.trials,
        rep.max_ratio,
        rep.violations
    );
    Ok(rep)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
