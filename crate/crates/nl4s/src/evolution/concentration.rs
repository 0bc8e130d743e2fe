use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{apply_symbol, Field, Grid};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Concentration {
    pub center: Vec<f64>,
    pub index: usize,
    /// ∫ over the ball of |(−Δ)^{γ/2}f|².
    pub value: f64,
}

/// Ball indicator over periodic offsets: the weight of offset δ is
/// clamp((a − |δ|)/h + ½, 0, 1) with h the smallest spacing, a one-cell
/// linear ramp across the sphere so the windowed integral varies
/// continuously with a.
pub fn ball_weights(grid: &Grid, a: f64) -> Vec<f64> {
    let h = grid.spacing().iter().cloned().fold(f64::INFINITY, f64::min);
    let n = grid.n_points().to_vec();
    let sp = grid.spacing().to_vec();
    (0..grid.len())
        .map(|flat| {
            let r2: f64 = grid
                .unravel(flat)
                .iter()
                .zip(&n)
                .zip(&sp)
                .map(|((&k, &n), &h)| {
                    let m = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
                    (m * h).powi(2)
                })
                .sum();
            ((a - r2.sqrt()) / h + 0.5).clamp(0.0, 1.0)
        })
        .collect()
}

fn density(f: &Field, gamma: f64) -> Vec<f64> {
    let sym: Vec<f64> = f.grid().xi_abs().iter().map(|&k| k.powf(gamma)).collect();
    let sym = if gamma == 0.0 { vec![1.0; sym.len()] } else { sym };
    apply_symbol(f, &sym).values().iter().map(|v| v.norm_sqr()).collect()
}

fn check_window(grid: &Grid, a: f64) -> Result<()> {
    let limit = grid.lengths().iter().cloned().fold(f64::INFINITY, f64::min) / 4.0;
    if !(a > 0.0 && a < limit) {
        return Err(Error::WindowTooLarge { a, limit });
    }
    Ok(())
}

fn pick(grid: &Grid, values: &[f64]) -> Concentration {
    let mut index = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[index] {
            index = i;
        }
    }
    Concentration {
        center: grid.point(index),
        index,
        value: values[index],
    }
}

/// Maximises ∫_{|x−c|≤a} |(−Δ)^{γ/2}f|² over grid centres c, with the ball
/// integral evaluated for every centre at once as an FFT convolution.
pub fn concentration_scan(f: &Field, gamma: f64, a: f64) -> Result<Concentration> {
    let grid = f.grid();
    check_window(grid, a)?;
    let w = density(f, gamma);
    let mut ws: Vec<Complex64> = w.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut bs: Vec<Complex64> = ball_weights(grid, a)
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    grid.fft(&mut ws);
    grid.fft(&mut bs);
    ws.iter_mut().zip(&bs).for_each(|(x, b)| *x *= b);
    grid.ifft(&mut ws);
    let cell = grid.cell_volume();
    let values: Vec<f64> = ws.iter().map(|v| v.re * cell).collect();
    Ok(pick(grid, &values))
}

/// The same scan by direct summation over the ball for every centre.
pub fn concentration_scan_direct(f: &Field, gamma: f64, a: f64) -> Result<Concentration> {
    let grid = f.grid();
    check_window(grid, a)?;
    let w = density(f, gamma);
    let b = ball_weights(grid, a);
    let n = grid.n_points().to_vec();
    let cell = grid.cell_volume();
    let support: Vec<(Vec<usize>, f64)> = b
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.0)
        .map(|(i, &v)| (grid.unravel(i), v))
        .collect();
    let values: Vec<f64> = (0..grid.len())
        .map(|c| {
            let ci = grid.unravel(c);
            let mut s = 0.0;
            let mut idx = vec![0; n.len()];
            for (off, wt) in &support {
                for a in 0..n.len() {
                    idx[a] = (ci[a] + off[a]) % n[a];
                }
                s += wt * w[grid.ravel(&idx)];
            }
            s * cell
        })
        .collect();
    Ok(pick(grid, &values))
}

/// a(t) = (T − t)^{1/8}; (T − t)^{1/4}/a(t) → 0 as t → T.
pub fn window_radius(t_est: f64, t: f64) -> f64 {
    (t_est - t).max(0.0).powf(0.125)
}
