// Recovers phase, scale and centre of a modulated ground state, then measures
// how far late blowup snapshots sit from the ground-state family.

use std::f64::consts::PI;

use nl4s::error::Result;
use nl4s::evolution::{evolve, gaussian, limiting_profile_compare, EvolveConfig, ProfileComparison};
use nl4s::exponents::critical_exponents;
use nl4s::groundstate::solve_sobolev_ground_state;
use nl4s::spectral::{resample_periodic, Grid};
use num_complex::Complex64;

pub fn run_example() -> Result<Vec<ProfileComparison>> {
    let e = critical_exponents(1, 10.0)?;
    let q = solve_sobolev_ground_state(&e, &Grid::cube(1, 1024, 80.0)?, &Default::default())?.field;
    let (theta, lam, x0) = (1.1, 2.0, 0.25);
    let fg = Grid::cube(1, 1024, 40.0)?;
    let f = resample_periodic(&q, &fg, &[lam], &[x0]).scale(Complex64::from_polar(lam.powf(0.4), theta));
    let r = limiting_profile_compare(&f, &q, &e)?;
    println!(
        "recovered scale {:.9} (want {}), shift {:+.9} (want {}), phase {:.9} (want {:.9}), distance {:.1e}",
        r.lam,
        1.0 / lam,
        r.shift[0],
        -x0 / lam,
        r.phase.rem_euclid(2.0 * PI),
        (-theta).rem_euclid(2.0 * PI),
        r.dist_gamma_c
    );
    let mut out = vec![r];
    let grid = Grid::cube(1, 2048, 20.0)?;
    let cfg = EvolveConfig {
        snapshot_every: 400,
        ..Default::default()
    };
    let ev = evolve(&gaussian(&grid, 1.5, 1.0, &[0.0], &[0.0]), &cfg, &e)?;
    for s in ev.snapshots.iter().rev().take(4).rev() {
        let r = limiting_profile_compare(&s.field, &q, &e)?;
        println!("t {:.9}: scale {:.4}, Ḣ^γc distance {:.4}", s.t, r.lam, r.dist_gamma_c);
        out.push(r);
    }
    Ok(out)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
