use num_complex::Complex64;

use super::grid::Grid;
use crate::error::{Error, Result};

/// Complex samples of a function on a periodic grid, row-major.
#[derive(Clone, Debug)]
pub struct Field {
    grid: Grid,
    values: Vec<Complex64>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid && self.values == other.values
    }
}

impl Field {
    pub fn zeros(grid: &Grid) -> Self {
        Field {
            grid: grid.clone(),
            values: vec![Complex64::default(); grid.len()],
        }
    }

    pub fn from_values(grid: &Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::BadShape(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Field {
            grid: grid.clone(),
            values,
        })
    }

    pub fn from_fn(grid: &Grid, f: impl FnMut(&[f64]) -> Complex64) -> Self {
        Field {
            grid: grid.clone(),
            values: grid.map_points(f),
        }
    }

    /// Real-valued field from a real function of position.
    pub fn from_real_fn(grid: &Grid, mut f: impl FnMut(&[f64]) -> f64) -> Self {
        Field::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    /// Inverse of [`Field::spectrum`].
    pub fn from_spectrum(grid: &Grid, mut spec: Vec<Complex64>) -> Self {
        grid.ifft(&mut spec);
        Field {
            grid: grid.clone(),
            values: spec,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Raw (unnormalised) DFT of the samples.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut s = self.values.clone();
        self.grid.fft(&mut s);
        s
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    pub fn map(&self, mut f: impl FnMut(Complex64) -> Complex64) -> Field {
        Field {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Field {
        self.map(|v| v * c)
    }

    /// self + c·other.
    pub fn axpy(&self, c: Complex64, other: &Field) -> Field {
        debug_assert_eq!(self.grid, other.grid);
        Field {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a + c * b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Field) -> Field {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    pub fn add(&self, other: &Field) -> Field {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    /// Discrete ⟨f, g⟩ = h^d Σ f ḡ.
    pub fn inner(&self, other: &Field) -> Complex64 {
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        s * self.grid.cell_volume()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Flat index of the largest modulus (first one on ties).
    pub fn argmax_abs(&self) -> usize {
        let mut best = 0;
        let mut m = -1.0;
        for (i, v) in self.values.iter().enumerate() {
            let a = v.norm_sqr();
            if a > m {
                m = a;
                best = i;
            }
        }
        best
    }

    /// Cyclic shift by whole grid cells: out[i + k] = in[i].
    pub fn roll(&self, k: &[isize]) -> Field {
        let g = &self.grid;
        let n = g.n_points();
        let mut out = vec![Complex64::default(); g.len()];
        for (flat, &v) in self.values.iter().enumerate() {
            let idx: Vec<usize> = g
                .unravel(flat)
                .iter()
                .zip(n)
                .zip(k)
                .map(|((&i, &n), &s)| (i as isize + s).rem_euclid(n as isize) as usize)
                .collect();
            out[g.ravel(&idx)] = v;
        }
        Field {
            grid: g.clone(),
            values: out,
        }
    }
}
