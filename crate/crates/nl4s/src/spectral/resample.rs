use std::f64::consts::PI;

use num_complex::Complex64;

use super::field::Field;
use super::grid::Grid;

/// sin and cos of πk/N for k ∈ [-N, N], indexed by k + N.
struct Table {
    n: usize,
    sin: Vec<f64>,
    cos: Vec<f64>,
}

impl Table {
    fn new(n: usize) -> Self {
        let (sin, cos) = (0..=2 * n)
            .map(|i| (PI * (i as f64 - n as f64) / n as f64).sin_cos())
            .unzip();
        Table { n, sin, cos }
    }
}

/// Row weights of the trigonometric interpolant of an N-point periodic axis
/// of length `l`, evaluated at `y`. The Nyquist mode enters as a cosine, so
/// real samples interpolate to real values.
///
/// With t = (y + L/2)/h = m0 + δ the weight of sample m is
/// (−1)^k sin(πδ) cot(π(k+δ)/N)/N, k = m0 − m; the angles are assembled from
/// a table so that points within rounding of a node stay accurate.
fn kernel_row(tab: &Table, l: f64, y: f64, row: &mut [f64]) {
    let n = tab.n;
    let t = (y + l / 2.0) * n as f64 / l;
    let m0 = t.round();
    let delta = t - m0;
    let m0 = m0 as i64;
    row.iter_mut().for_each(|v| *v = 0.0);
    if delta == 0.0 {
        row[m0.rem_euclid(n as i64) as usize] = 1.0;
        return;
    }
    let sd = (PI * delta).sin() / n as f64;
    let (sa, ca) = (PI * delta / n as f64).sin_cos();
    for (m, w) in row.iter_mut().enumerate() {
        let k = m0 - m as i64;
        let i = (k + n as i64) as usize;
        let (sk, ck) = (tab.sin[i], tab.cos[i]);
        let sin_a = sk * ca + ck * sa;
        let cos_a = ck * ca - sk * sa;
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        *w = sign * sd * cos_a / sin_a;
    }
}

/// Samples `src`'s trigonometric interpolant on `target`, where target
/// coordinate x on axis a reads the source at y = scale[a]·x + offset[a].
/// Points with y outside [-L_src/2, L_src/2) on any axis get zero, unless
/// `periodic` is set, in which case y is read modulo the source box.
pub(crate) fn resample(
    src: &Field,
    target: &Grid,
    scale: &[f64],
    offset: &[f64],
    periodic: bool,
) -> Field {
    let sg = src.grid();
    let d = sg.dim();
    // contract one axis at a time: shape goes from src counts to target counts
    let mut shape: Vec<usize> = sg.n_points().to_vec();
    let mut data: Vec<Complex64> = src.values().to_vec();
    for a in 0..d {
        let ns = sg.n_points()[a];
        let nt = target.n_points()[a];
        let ls = sg.lengths()[a];
        let mut mat = vec![0.0; nt * ns];
        let mut live = vec![false; nt];
        let tab = Table::new(ns);
        for j in 0..nt {
            let mut y = scale[a] * target.coord(a, j) + offset[a];
            if periodic {
                y = (y + ls / 2.0).rem_euclid(ls) - ls / 2.0;
            }
            if y >= -ls / 2.0 && y < ls / 2.0 {
                kernel_row(&tab, ls, y, &mut mat[j * ns..(j + 1) * ns]);
                live[j] = true;
            }
        }
        let outer: usize = shape[..a].iter().product();
        let inner: usize = shape[a + 1..].iter().product();
        let mut out = vec![Complex64::default(); outer * nt * inner];
        for o in 0..outer {
            for j in 0..nt {
                if !live[j] {
                    continue;
                }
                let row = &mat[j * ns..(j + 1) * ns];
                for i in 0..inner {
                    let mut acc = Complex64::default();
                    for (m, &w) in row.iter().enumerate() {
                        acc += data[(o * ns + m) * inner + i] * w;
                    }
                    out[(o * nt + j) * inner + i] = acc;
                }
            }
        }
        shape[a] = nt;
        data = out;
    }
    Field::from_values(target, data).expect("resample keeps the target shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_samples_and_band_limited_functions() {
        let g = Grid::cube(1, 32, 2.0 * PI).unwrap();
        let f = Field::from_real_fn(&g, |x| (3.0 * x[0]).cos() + 0.5 * (5.0 * x[0]).sin());
        let same = resample(&f, &g, &[1.0], &[0.0], false);
        for (a, b) in same.values().iter().zip(f.values()) {
            assert!((a - b).norm() < 1e-13);
        }
        let shifted = resample(&f, &g, &[1.0], &[0.123], false);
        for (j, v) in shifted.values().iter().enumerate() {
            let y = g.coord(0, j) + 0.123;
            if (-PI..PI).contains(&y) {
                let e = (3.0 * y).cos() + 0.5 * (5.0 * y).sin();
                assert!((v.re - e).abs() < 1e-12 && v.im.abs() < 1e-14);
            }
        }
        let wrapped = resample(&f, &g, &[1.0], &[0.123 + 4.0 * PI], true);
        for (j, v) in wrapped.values().iter().enumerate() {
            let y = g.coord(0, j) + 0.123;
            let e = (3.0 * y).cos() + 0.5 * (5.0 * y).sin();
            assert!((v.re - e).abs() < 1e-12);
        }
    }
}
