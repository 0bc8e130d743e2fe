use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Periodic Cartesian grid on ∏[-L_i/2, L_i/2) with row-major layout.
#[derive(Clone)]
pub struct Grid {
    n: Vec<usize>,
    lengths: Vec<f64>,
    spacing: Vec<f64>,
    freqs: Vec<Vec<f64>>,
    plans: Arc<Plans>,
}

struct Plans {
    fwd: Vec<Arc<dyn Fft<f64>>>,
    inv: Vec<Arc<dyn Fft<f64>>>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("n", &self.n)
            .field("lengths", &self.lengths)
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.lengths == other.lengths
    }
}

pub fn make_grid(d: usize, n_points: &[usize], lengths: &[f64]) -> Result<Grid> {
    Grid::new(d, n_points, lengths)
}

impl Grid {
    pub fn new(d: usize, n_points: &[usize], lengths: &[f64]) -> Result<Self> {
        if d == 0 || n_points.len() != d || lengths.len() != d {
            return Err(Error::BadShape(format!(
                "dimension {d} with {} counts and {} lengths",
                n_points.len(),
                lengths.len()
            )));
        }
        for (&n, &l) in n_points.iter().zip(lengths) {
            if n < 8 || !n.is_power_of_two() {
                return Err(Error::BadShape(format!("N = {n} is not a power of two >= 8")));
            }
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::BadShape(format!("L = {l} is not positive")));
            }
        }
        let mut planner = FftPlanner::new();
        let fwd = n_points.iter().map(|&n| planner.plan_fft_forward(n)).collect();
        let inv = n_points.iter().map(|&n| planner.plan_fft_inverse(n)).collect();
        let freqs = n_points
            .iter()
            .zip(lengths)
            .map(|(&n, &l)| {
                (0..n)
                    .map(|k| {
                        let k = if k >= n / 2 { k as f64 - n as f64 } else { k as f64 };
                        2.0 * PI * k / l
                    })
                    .collect()
            })
            .collect();
        Ok(Grid {
            n: n_points.to_vec(),
            lengths: lengths.to_vec(),
            spacing: n_points.iter().zip(lengths).map(|(&n, &l)| l / n as f64).collect(),
            freqs,
            plans: Arc::new(Plans { fwd, inv }),
        })
    }

    /// Uniform grid with the same N and L on every axis.
    pub fn cube(d: usize, n: usize, l: f64) -> Result<Self> {
        Grid::new(d, &vec![n; d], &vec![l; d])
    }

    pub fn dim(&self) -> usize {
        self.n.len()
    }

    pub fn n_points(&self) -> &[usize] {
        &self.n
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    /// Angular frequencies of one axis in FFT order (Nyquist stored as negative).
    pub fn frequencies(&self, axis: usize) -> &[f64] {
        &self.freqs[axis]
    }

    pub fn len(&self) -> usize {
        self.n.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// h^d, the weight of the discrete integral.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    pub fn volume(&self) -> f64 {
        self.lengths.iter().product()
    }

    /// Box-centred coordinate of index j on an axis: -L/2 + j h.
    pub fn coord(&self, axis: usize, j: usize) -> f64 {
        -self.lengths[axis] / 2.0 + j as f64 * self.spacing[axis]
    }

    pub fn coords(&self, axis: usize) -> Vec<f64> {
        (0..self.n[axis]).map(|j| self.coord(axis, j)).collect()
    }

    /// Multi-index of a flat row-major index.
    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for a in (0..self.dim()).rev() {
            idx[a] = flat % self.n[a];
            flat /= self.n[a];
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.n).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    /// Position of a flat index in physical coordinates.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.unravel(flat)
            .iter()
            .enumerate()
            .map(|(a, &j)| self.coord(a, j))
            .collect()
    }

    /// Flat index of the box centre (N_i/2 on every axis).
    pub fn center_index(&self) -> usize {
        let c: Vec<usize> = self.n.iter().map(|&n| n / 2).collect();
        self.ravel(&c)
    }

    /// Evaluates `f` at every frequency vector, in flat FFT order.
    pub fn map_frequencies<T>(&self, mut f: impl FnMut(&[f64]) -> T) -> Vec<T> {
        let mut xi = vec![0.0; self.dim()];
        (0..self.len())
            .map(|flat| {
                let idx = self.unravel(flat);
                for (a, &k) in idx.iter().enumerate() {
                    xi[a] = self.freqs[a][k];
                }
                f(&xi)
            })
            .collect()
    }

    /// |ξ| at every flat frequency index.
    pub fn xi_abs(&self) -> Vec<f64> {
        self.map_frequencies(|xi| xi.iter().map(|v| v * v).sum::<f64>().sqrt())
    }

    /// Evaluates `f` at every grid point, in flat order.
    pub fn map_points<T>(&self, mut f: impl FnMut(&[f64]) -> T) -> Vec<T> {
        let mut x = vec![0.0; self.dim()];
        (0..self.len())
            .map(|flat| {
                let idx = self.unravel(flat);
                for (a, &j) in idx.iter().enumerate() {
                    x[a] = self.coord(a, j);
                }
                f(&x)
            })
            .collect()
    }

    /// Unnormalised forward DFT over all axes, in place.
    pub fn fft(&self, data: &mut [Complex64]) {
        self.transform(data, &self.plans.fwd);
    }

    /// Inverse DFT including the 1/∏N factor, in place.
    pub fn ifft(&self, data: &mut [Complex64]) {
        self.transform(data, &self.plans.inv);
        let s = 1.0 / self.len() as f64;
        data.iter_mut().for_each(|v| *v *= s);
    }

    fn transform(&self, data: &mut [Complex64], plans: &[Arc<dyn Fft<f64>>]) {
        debug_assert_eq!(data.len(), self.len());
        let d = self.dim();
        for axis in 0..d {
            let n = self.n[axis];
            let stride: usize = self.n[axis + 1..].iter().product();
            let plan = &plans[axis];
            if stride == 1 {
                plan.process(data);
                continue;
            }
            let outer = data.len() / (n * stride);
            let mut line = vec![Complex64::default(); n];
            let mut scratch = vec![Complex64::default(); plan.get_inplace_scratch_len()];
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * n * stride + s;
                    for (j, v) in line.iter_mut().enumerate() {
                        *v = data[base + j * stride];
                    }
                    plan.process_with_scratch(&mut line, &mut scratch);
                    for (j, v) in line.iter().enumerate() {
                        data[base + j * stride] = *v;
                    }
                }
            }
        }
    }
}
