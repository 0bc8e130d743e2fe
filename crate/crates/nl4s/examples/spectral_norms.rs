// Fractional Sobolev norms of a Gaussian against the whole-space closed form,
// and their behaviour under f ↦ μ f(λ·).

use std::f64::consts::PI;

use nl4s::error::Result;
use nl4s::spectral::{rescale, sobolev_norm, Field, Grid};
use statrs::function::gamma::gamma;

/// Largest relative deviation from the closed form over all cases.
pub fn run_example() -> Result<f64> {
    let g = Grid::cube(1, 1024, 80.0)?;
    let f = Field::from_real_fn(&g, |x| (-x[0] * x[0] / 2.0).exp());
    // ‖e^{-x²/2}‖²_{Ḣ^γ(ℝ)} = √π Γ(γ + 1/2)/Γ(1/2)
    let exact = |gm: f64| PI.sqrt() * gamma(gm + 0.5) / gamma(0.5);
    let mut worst = 0.0f64;
    for (mu, lam) in [(1.0, 1.0), (2.0, 1.0), (1.0, 1.5), (0.7, 0.8)] {
        let r = rescale(&f, mu, lam)?;
        for gm in [0.0, 0.1, 0.5, 1.0, 2.0] {
            let want = mu * mu * lam.powf(2.0 * gm - 1.0) * exact(gm);
            let got = sobolev_norm(&r, gm).powi(2);
            let dev = (got / want - 1.0).abs();
            println!("mu {mu:3.1} lam {lam:3.1} gamma {gm:3.1}: {got:.12} (rel {dev:.1e})");
            worst = worst.max(dev);
        }
    }
    Ok(worst)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
