// A negative-energy Gaussian focuses; the Ḣ² growth is fitted to
// C(T − t)^{−r} and compared with the lower bound r ≥ (2 − γc)/4.

use nl4s::error::Result;
use nl4s::evolution::{evolve, fit_blowup, gaussian, BlowupFit, EvolveConfig};
use nl4s::exponents::critical_exponents;
use nl4s::spectral::Grid;

pub fn run_example() -> Result<BlowupFit> {
    let e = critical_exponents(1, 10.0)?;
    let grid = Grid::cube(1, 2048, 20.0)?;
    let u0 = gaussian(&grid, 1.5, 1.0, &[0.0], &[0.0]);
    let ev = evolve(&u0, &EvolveConfig::default(), &e)?;
    let tr = &ev.trajectory;
    println!("E(u0) = {:.4}, status {:?} after {} steps", tr[0].energy, ev.status, tr.len() - 1);
    let fit = fit_blowup(tr, e.rate_exp)?;
    println!(
        "T ≈ {:.6}, rate {:.4} (bound {:.4}), {:.2} decades of growth",
        fit.t_est, fit.rate, e.rate_exp, fit.decades
    );
    Ok(fit)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
