// Windowed Ḣ^γc mass of a focusing solution in balls of radius
// a(t) = (T − t)^{1/8}, compared with S_gs².

use nl4s::error::Result;
use nl4s::evolution::{concentration_scan, evolve, fit_blowup, gaussian, window_radius, EvolveConfig};
use nl4s::exponents::critical_exponents;
use nl4s::groundstate::solve_sobolev_ground_state;
use nl4s::spectral::Grid;

/// (T − t, windowed integral / S_gs²) per snapshot.
pub fn run_example() -> Result<Vec<(f64, f64)>> {
    let e = critical_exponents(1, 10.0)?;
    let s_gs = solve_sobolev_ground_state(&e, &Grid::cube(1, 1024, 80.0)?, &Default::default())?
        .norms
        .sobolev_gamma_c;
    let grid = Grid::cube(1, 2048, 20.0)?;
    let cfg = EvolveConfig {
        snapshot_every: 400,
        ..Default::default()
    };
    let ev = evolve(&gaussian(&grid, 1.5, 1.0, &[0.0], &[0.0]), &cfg, &e)?;
    let t_est = fit_blowup(&ev.trajectory, e.rate_exp)?.t_est;
    let mut rows = Vec::new();
    for s in &ev.snapshots {
        let a = window_radius(t_est, s.t);
        let c = concentration_scan(&s.field, e.gamma_c, a)?;
        let ratio = c.value / (s_gs * s_gs);
        println!("T - t {:.3e}  a {a:.4}  centre {:+.4}  ratio {ratio:.4}", t_est - s.t, c.center[0]);
        rows.push((t_est - s.t, ratio));
    }
    Ok(rows)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
