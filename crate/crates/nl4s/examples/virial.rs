// Finite-difference dM/dt of the localized virial action against
// 4dαE − 2(dα − 8)‖Δu‖², for the nonlinear and the free flow.

use nl4s::error::Result;
use nl4s::evolution::{check_virial_law, evolve, gaussian, make_virial_cutoff, EvolveConfig, VirialCheck};
use nl4s::exponents::critical_exponents;
use nl4s::spectral::Grid;

pub fn run_example() -> Result<Vec<VirialCheck>> {
    let e = critical_exponents(1, 10.0)?;
    let grid = Grid::cube(1, 512, 64.0)?;
    let cut = make_virial_cutoff(&grid, 14.0)?;
    let u0 = gaussian(&grid, 0.9, 1.5, &[0.5], &[0.3]);
    let mut out = Vec::new();
    for linear in [false, true] {
        for dt in [4e-3, 2e-3] {
            let cfg = EvolveConfig {
                dt0: dt,
                t_end: 0.05,
                fixed_step: true,
                dealias: false,
                snapshot_every: 1,
                linear,
                ..Default::default()
            };
            let ev = evolve(&u0, &cfg, &e)?;
            let check = check_virial_law(&ev.snapshots, &e, &cut, linear)?;
            println!(
                "linear {linear:5} dt {dt:.0e}: defect {:.2e} over {} points, exterior mass {:.1e}",
                check.max_defect, check.points, check.exterior_mass
            );
            out.push(check);
        }
    }
    Ok(out)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
