// Sobolev and Lebesgue ground states for d = 1, α = 10 and their sharp
// Gagliardo–Nirenberg constants.

use nl4s::error::Result;
use nl4s::exponents::critical_exponents;
use nl4s::groundstate::{sharp_constants, solve_ground_state, Equation, GroundStateOptions, GroundStateResult};
use nl4s::spectral::Grid;

pub fn run_example() -> Result<Vec<GroundStateResult>> {
    let e = critical_exponents(1, 10.0)?;
    let opts = GroundStateOptions::default();
    let mut out = Vec::new();
    for (which, l, n) in [(Equation::Sobolev, 80.0, 1024), (Equation::Lebesgue, 40.0, 512)] {
        let grid = Grid::cube(1, n, l)?;
        let gs = solve_ground_state(which, &e, &grid, &opts)?;
        println!(
            "{which:?}: {} iterations, residual {:.2e}, Pohozaev defects {:.2e} {:.2e}, sharp constant {:.6}",
            gs.iterations,
            gs.residual_l2,
            gs.pohozaev_defect_1,
            gs.pohozaev_defect_2,
            sharp_constants(&gs, &e)
        );
        out.push(gs);
    }
    Ok(out)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
