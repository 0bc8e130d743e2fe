// Exponent table for the intercritical window in d = 5..8.

use nl4s::error::Result;
use nl4s::exponents::{critical_exponents, lwp_exponents, ExponentSet};

pub fn run_example() -> Result<Vec<ExponentSet>> {
    let mut rows = Vec::new();
    println!("{:>2} {:>6} {:>8} {:>8} {:>8} {:>8}  (m*,n*) ok", "d", "alpha", "gamma_c", "alpha_c", "sigma", "rate");
    for d in 5..=8usize {
        let (lo, hi) = (8.0 / d as f64, 8.0 / (d as f64 - 4.0));
        for k in 1..4 {
            let alpha = lo + (hi - lo) * k as f64 / 4.0;
            let e = critical_exponents(d, alpha)?;
            let l = lwp_exponents(d, alpha)?;
            println!(
                "{d:>2} {alpha:>6.3} {:>8.4} {:>8.4} {:>8.4} {:>8.4}  {}",
                e.gamma_c, e.alpha_c, e.sigma, e.rate_exp, l.m_n_admissible
            );
            rows.push(e);
        }
    }
    Ok(rows)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
