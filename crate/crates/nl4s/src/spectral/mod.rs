//! Periodic grids, fields, Fourier multipliers, norms and functionals.
//!
//! Discrete integrals are h^d Σ over grid points and the spectrum is the raw
//! DFT, so ‖f‖²_{Ḣ^γ} = h^d/∏N · Σ_k w_k |F_k|² with w_k the symbol of
//! (−Δ)^γ. For 0 < γ < 1 the weights at ξ = 0 and its nearest neighbours
//! carry the lattice correction from [`lattice`]; everywhere else
//! w_k = |ξ_k|^{2γ}.

mod field;
mod grid;
pub mod lattice;
mod resample;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

pub use field::Field;
pub use grid::{make_grid, Grid};

use crate::error::{Error, Result};
use crate::exponents::ExponentSet;

/// Symbol weights of (−Δ)^γ on the grid, in flat FFT order.
pub fn laplacian_symbol(grid: &Grid, gamma: f64) -> Vec<f64> {
    let mut w: Vec<f64> = grid.xi_abs().iter().map(|&k| k.powf(2.0 * gamma)).collect();
    if gamma > 0.0 && gamma < 1.0 {
        let spacings: Vec<f64> = grid.lengths().iter().map(|&l| 2.0 * PI / l).collect();
        if let Some(c) = lattice::fractional_weights(&spacings, gamma) {
            let d = grid.dim();
            w[0] = c.center;
            for a in 0..d {
                let mut idx = vec![0; d];
                idx[a] = 1;
                w[grid.ravel(&idx)] = c.neighbors[a];
                idx[a] = grid.n_points()[a] - 1;
                w[grid.ravel(&idx)] = c.neighbors[a];
            }
        }
    }
    w
}

/// Multiplies the spectrum by precomputed symbol weights.
pub fn apply_symbol(f: &Field, symbol: &[f64]) -> Field {
    let mut s = f.spectrum();
    s.iter_mut().zip(symbol).for_each(|(v, &m)| *v *= m);
    Field::from_spectrum(f.grid(), s)
}

/// Applies the radial multiplier m(|ξ|); m(0) is whatever the closure returns.
pub fn apply_multiplier(f: &Field, m: impl Fn(f64) -> f64) -> Result<Field> {
    let xi = f.grid().xi_abs();
    let mut symbol = Vec::with_capacity(xi.len());
    for &k in &xi {
        let v = m(k);
        if !v.is_finite() {
            return Err(Error::SingularSymbol { xi: k });
        }
        symbol.push(v);
    }
    Ok(apply_symbol(f, &symbol))
}

/// h^d/∏N Σ w_k |F_k|² for a raw spectrum F.
pub fn weighted_sum(grid: &Grid, spectrum: &[Complex64], weights: &[f64]) -> f64 {
    let s: f64 = spectrum.iter().zip(weights).map(|(v, &w)| w * v.norm_sqr()).sum();
    s * grid.cell_volume() / grid.len() as f64
}

pub fn sobolev_norm(f: &Field, gamma: f64) -> f64 {
    let w = laplacian_symbol(f.grid(), gamma);
    weighted_sum(f.grid(), &f.spectrum(), &w).max(0.0).sqrt()
}

/// (h^d Σ |f_j|^q)^{1/q}, or max |f_j| for q = ∞.
pub fn lebesgue_norm(f: &Field, q: f64) -> f64 {
    if q.is_infinite() {
        return f.max_abs();
    }
    let s: f64 = f.values().iter().map(|v| v.norm().powf(q)).sum();
    (s * f.grid().cell_volume()).powf(1.0 / q)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FunctionalReport {
    pub mass: f64,
    pub energy: f64,
    pub sobolev_gamma_c: f64,
    pub sobolev_2: f64,
    pub lebesgue_alpha2: f64,
    pub lebesgue_alpha_c: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_value: Option<f64>,
}

/// Cached symbols for repeated diagnostics on one grid.
#[derive(Clone, Debug)]
pub struct Diagnostics {
    exps: ExponentSet,
    sym_gc: Vec<f64>,
    sym_2: Vec<f64>,
}

impl Diagnostics {
    pub fn new(grid: &Grid, exps: &ExponentSet) -> Self {
        Diagnostics {
            exps: *exps,
            sym_gc: laplacian_symbol(grid, exps.gamma_c),
            sym_2: laplacian_symbol(grid, 2.0),
        }
    }

    pub fn exponents(&self) -> &ExponentSet {
        &self.exps
    }

    pub fn symbol_gamma_c(&self) -> &[f64] {
        &self.sym_gc
    }

    pub fn symbol_2(&self) -> &[f64] {
        &self.sym_2
    }

    pub fn report(&self, f: &Field) -> FunctionalReport {
        self.report_with_spectrum(f, &f.spectrum())
    }

    pub fn report_with_spectrum(&self, f: &Field, spec: &[Complex64]) -> FunctionalReport {
        let g = f.grid();
        let a = self.exps.alpha;
        let ac = self.exps.alpha_c;
        let hv = g.cell_volume();
        let (mut mass, mut p_a2, mut p_ac) = (0.0, 0.0, 0.0);
        for v in f.values() {
            let r = v.norm();
            mass += r * r;
            p_a2 += r.powf(a + 2.0);
            p_ac += r.powf(ac);
        }
        mass *= hv;
        p_a2 *= hv;
        p_ac *= hv;
        let s_gc = weighted_sum(g, spec, &self.sym_gc).max(0.0).sqrt();
        let s2_sq = weighted_sum(g, spec, &self.sym_2);
        let s2 = s2_sq.sqrt();
        let l_a2 = p_a2.powf(1.0 / (a + 2.0));
        let l_ac = p_ac.powf(1.0 / ac);
        let nonzero = mass > 0.0;
        FunctionalReport {
            mass,
            energy: 0.5 * s2_sq - p_a2 / (a + 2.0),
            sobolev_gamma_c: s_gc,
            sobolev_2: s2,
            lebesgue_alpha2: l_a2,
            lebesgue_alpha_c: l_ac,
            h_value: nonzero.then(|| p_a2 / (s_gc.powf(a) * s2_sq)),
            k_value: nonzero.then(|| p_a2 / (l_ac.powf(a) * s2_sq)),
        }
    }
}

pub fn functionals(f: &Field, exps: &ExponentSet) -> FunctionalReport {
    Diagnostics::new(f.grid(), exps).report(f)
}

/// Spectral partial derivatives ∂_a f, Nyquist modes dropped.
pub fn gradient(f: &Field) -> Vec<Field> {
    let g = f.grid();
    let spec = f.spectrum();
    (0..g.dim())
        .map(|a| {
            let n = g.n_points()[a];
            let inner: usize = g.n_points()[a + 1..].iter().product();
            let xi = g.frequencies(a);
            let s: Vec<Complex64> = spec
                .iter()
                .enumerate()
                .map(|(flat, &v)| {
                    let k = (flat / inner) % n;
                    if k == n / 2 {
                        Complex64::default()
                    } else {
                        v * Complex64::new(0.0, xi[k])
                    }
                })
                .collect();
            Field::from_spectrum(g, s)
        })
        .collect()
}

/// g(x) = f(x − shift), by a Fourier phase.
pub fn translate(f: &Field, shift: &[f64]) -> Field {
    let g = f.grid();
    let phase = g.map_frequencies(|xi| {
        let t: f64 = xi.iter().zip(shift).map(|(k, s)| k * s).sum();
        Complex64::from_polar(1.0, -t)
    });
    let mut s = f.spectrum();
    s.iter_mut().zip(&phase).for_each(|(v, p)| *v *= p);
    Field::from_spectrum(g, s)
}

/// Re∫(−Δ)^γ f · x·∇f̄ − (γ − d/2)‖f‖²_{Ḣ^γ}, with box-centred x.
pub fn pairing_residual(f: &Field, gamma: f64) -> f64 {
    let g = f.grid();
    let w = laplacian_symbol(g, gamma);
    let lap = apply_symbol(f, &w);
    let grad = gradient(f);
    let pts = g.map_points(|x| x.to_vec());
    let mut lhs = 0.0;
    for (j, x) in pts.iter().enumerate() {
        let xg: Complex64 = grad.iter().zip(x).map(|(gr, &xa)| gr.values()[j] * xa).sum();
        lhs += (lap.values()[j] * xg.conj()).re;
    }
    lhs *= g.cell_volume();
    let norm_sq = weighted_sum(g, &f.spectrum(), &w);
    lhs - (gamma - g.dim() as f64 / 2.0) * norm_sq
}

/// Fraction of ‖f‖² the rescaling f ↦ μ f(λ·) cannot represent: spectral
/// content pushed past Nyquist (λ > 1) or mass pulled in from outside
/// |x_a| < λL_a/2 (λ < 1).
fn rescale_loss(f: &Field, lam: f64) -> f64 {
    let g = f.grid();
    let spec = f.spectrum();
    let total: f64 = spec.iter().map(|v| v.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let mut lost = 0.0;
    if lam > 1.0 {
        let nyq: Vec<f64> = g.spacing().iter().map(|&h| PI / h).collect();
        let outside = g.map_frequencies(|xi| xi.iter().zip(&nyq).any(|(k, n)| (lam * k).abs() > *n));
        lost += spec
            .iter()
            .zip(&outside)
            .filter(|(_, &o)| o)
            .map(|(v, _)| v.norm_sqr())
            .sum::<f64>()
            / total;
    } else if lam < 1.0 {
        let half: Vec<f64> = g.lengths().iter().map(|&l| lam * l / 2.0).collect();
        let outside = g.map_points(|x| x.iter().zip(&half).any(|(xa, h)| xa.abs() >= *h));
        let mass: f64 = f.values().iter().map(|v| v.norm_sqr()).sum();
        lost += f
            .values()
            .iter()
            .zip(&outside)
            .filter(|(_, &o)| o)
            .map(|(v, _)| v.norm_sqr())
            .sum::<f64>()
            / mass;
    }
    lost
}

/// f_{μ,λ}(x) = μ f(λx) by trigonometric interpolation on the same grid.
///
/// For λ > 1 the points with |λx_a| ≥ L_a/2 are set to zero rather than
/// read from the periodic extension.
pub fn rescale(f: &Field, mu: f64, lam: f64) -> Result<Field> {
    let tail = rescale_loss(f, lam);
    if tail > 1e-8 {
        return Err(Error::Underresolved { tail });
    }
    let d = f.grid().dim();
    let out = if lam == 1.0 {
        f.clone()
    } else {
        resample::resample(f, f.grid(), &vec![lam; d], &vec![0.0; d], false)
    };
    Ok(out.scale(Complex64::new(mu, 0.0)))
}

/// Samples the trigonometric interpolant of `src` on `target` at
/// y_a = scale_a·x_a + offset_a, zero where y leaves the source box.
pub fn resample_affine(src: &Field, target: &Grid, scale: &[f64], offset: &[f64]) -> Field {
    resample::resample(src, target, scale, offset, false)
}

/// As [`resample_affine`], reading `src` as a periodic function.
pub fn resample_periodic(src: &Field, target: &Grid, scale: &[f64], offset: &[f64]) -> Field {
    resample::resample(src, target, scale, offset, true)
}

/// The (μ, λ) that make ‖μ f(λ·)‖_{Ḣ^γc} = ‖μ f(λ·)‖_{Ḣ²} = 1.
pub fn unit_scaling(gc_norm: f64, h2_norm: f64, exps: &ExponentSet) -> (f64, f64) {
    let gc = exps.gamma_c;
    let half_d = exps.dim() / 2.0;
    let lam = (gc_norm / h2_norm).powf(1.0 / (2.0 - gc));
    let mu = 1.0 / (gc_norm * lam.powf(gc - half_d));
    (mu, lam)
}

/// Rescales f so both critical norms equal one.
///
/// The continuum (μ, λ) is applied and then corrected by a few Newton-like
/// passes, since the grid norms follow the scaling law only up to
/// discretisation error.
pub fn normalize_to_unit(f: &Field, exps: &ExponentSet) -> Result<Field> {
    if f.is_zero() {
        return Err(Error::ZeroField);
    }
    let diag = Diagnostics::new(f.grid(), exps);
    let mut g = f.clone();
    for _ in 0..6 {
        let r = diag.report(&g);
        if (r.sobolev_gamma_c - 1.0).abs() < 1e-13 && (r.sobolev_2 - 1.0).abs() < 1e-13 {
            break;
        }
        let (mu, lam) = unit_scaling(r.sobolev_gamma_c, r.sobolev_2, exps);
        g = rescale(&g, mu, lam)?;
    }
    Ok(g)
}
