//! Lattice-sum corrections for fractional symbols |ξ|^{2γ}.
//!
//! The punctured frequency sum h^d/N Σ_{ξ≠0} |ξ|^{2γ} g(ξ) misses the
//! contribution of the cell around ξ = 0, an error of order (2π/L)^{d+2γ}
//! that decays slowly in the box size. The generalised Euler–Maclaurin
//! expansion for homogeneous singularities gives that error in closed form
//! through the Epstein zeta function Z_Λ of the frequency lattice:
//!
//!   cell·Σ' |k|^{2γ} g(k) = ∫ |ξ|^{2γ} g + cell·[Z(-2γ) g(0) + Σ_i S_i/2 ∂_i² g(0) + …]
//!
//! with S_i = Σ' |k|^{2γ} k_i² (continued). Subtracting the two leading terms
//! turns into modified symbol weights at ξ = 0 and at the 2d nearest
//! frequencies.

use std::f64::consts::PI;

use statrs::function::gamma::{gamma, gamma_ui};

/// Terms with π|k|² above this are below 1e-19 relative and dropped.
const XMAX: f64 = 45.0;

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-12
}

/// Γ(a, x) for real a, x > 0, by upward recurrence into a > 0.
fn upper_gamma(a: f64, x: f64) -> f64 {
    if a > 0.0 {
        gamma_ui(a, x)
    } else {
        (upper_gamma(a + 1.0, x) - x.powf(a) * (-x).exp()) / a
    }
}

/// x^{-a} Γ(a, x).
fn theta_tail(a: f64, x: f64) -> f64 {
    x.powf(-a) * upper_gamma(a, x)
}

fn lattice_sum(spacings: &[f64], mut term: impl FnMut(f64) -> f64) -> f64 {
    let d = spacings.len();
    let bounds: Vec<i64> = spacings
        .iter()
        .map(|&u| ((XMAX / PI).sqrt() / u).ceil() as i64)
        .collect();
    let mut idx: Vec<i64> = bounds.iter().map(|&b| -b).collect();
    let mut total = 0.0;
    loop {
        if idx.iter().any(|&m| m != 0) {
            let r2: f64 = idx.iter().zip(spacings).map(|(&m, &u)| (m as f64 * u).powi(2)).sum();
            let x = PI * r2;
            if x <= XMAX {
                total += term(x);
            }
        }
        let mut a = 0;
        loop {
            if a == d {
                return total;
            }
            idx[a] += 1;
            if idx[a] <= bounds[a] {
                break;
            }
            idx[a] = -bounds[a];
            a += 1;
        }
    }
}

/// Epstein zeta Z(s) = Σ'_{k ∈ ⊕ D_i ℤ} |k|^{-s}, analytically continued.
///
/// Uses the theta-function splitting at t = 1 after rescaling the lattice to
/// unit covolume, so both the direct and the dual sums converge like e^{-π|k|²}.
pub fn epstein_zeta(spacings: &[f64], s: f64) -> f64 {
    let d = spacings.len() as f64;
    if s == 0.0 {
        return -1.0;
    }
    if s < 0.0 && is_integer(s / 2.0) {
        return 0.0;
    }
    let vol: f64 = spacings.iter().product();
    let c = vol.powf(1.0 / d);
    let unit: Vec<f64> = spacings.iter().map(|&u| u / c).collect();
    let dual: Vec<f64> = unit.iter().map(|&u| 1.0 / u).collect();
    let direct = lattice_sum(&unit, |x| theta_tail(s / 2.0, x));
    let reciprocal = lattice_sum(&dual, |x| theta_tail((d - s) / 2.0, x));
    let bracket = direct + reciprocal - 2.0 / s - 2.0 / (d - s);
    c.powf(-s) * PI.powf(s / 2.0) / gamma(s / 2.0) * bracket
}

/// Weights replacing |ξ|^{2γ} at ξ = 0 and at ±D_i e_i.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalWeights {
    pub center: f64,
    /// Per-axis weight at the two nearest frequencies ±D_i e_i.
    pub neighbors: Vec<f64>,
}

/// Corrected weights for |ξ|^{2γ} on the frequency lattice with spacings D_i.
///
/// Integer γ needs no correction: the symbol is a polynomial and the plain
/// sum is spectrally accurate (with 0⁰ = 1 at γ = 0).
pub fn fractional_weights(spacings: &[f64], gamma: f64) -> Option<FractionalWeights> {
    if is_integer(gamma) {
        return None;
    }
    let d = spacings.len();
    let s2 = -2.0 * gamma - 2.0;
    let isotropic = spacings.iter().all(|&u| (u - spacings[0]).abs() <= 1e-14 * u);
    let second: Vec<f64> = if isotropic {
        vec![epstein_zeta(spacings, s2) / d as f64; d]
    } else {
        let eps: f64 = 1e-5;
        (0..d)
            .map(|i| {
                let mut up = spacings.to_vec();
                let mut dn = spacings.to_vec();
                up[i] *= (eps / 2.0).exp();
                dn[i] *= (-eps / 2.0).exp();
                (epstein_zeta(&up, s2) - epstein_zeta(&dn, s2)) / (2.0 * eps * (gamma + 1.0))
            })
            .collect()
    };
    let mut center = -epstein_zeta(spacings, -2.0 * gamma);
    let neighbors = spacings
        .iter()
        .zip(&second)
        .map(|(&u, &s)| {
            center += s / (u * u);
            u.powf(2.0 * gamma) - s / (2.0 * u * u)
        })
        .collect();
    Some(FractionalWeights { center, neighbors })
}
