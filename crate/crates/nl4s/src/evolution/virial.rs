//! Localized virial action and the virial law.
//!
//! The cutoff is φ_R(x) = R²θ(|x|/R) with θ(s) = s² for s ≤ 1, constant for
//! s ≥ 2, and on [1, 2]
//!
//!   θ'(s) = 2s·(1 − S(s − 1)),
//!
//! where S is the degree-11 smoothstep (S(0) = 0, S(1) = 1, derivatives one
//! to five vanishing at both ends). Then θ'' = 2(1 − S) − 2sS' ≤ 2,
//! 2 − θ'/s = 2S ≥ 0 and 2d − Δφ_R = 2dS + 2sS' ≥ 0 hold by construction, and
//! θ is C⁶. A θ that also vanishes for s ≥ 2 cannot satisfy θ'' ≤ 2: from
//! θ'(2) = 0 and θ'' ≤ 2 one gets θ' ≥ −2(2 − s), hence θ(2) ≥ θ(1) − 1 = 0
//! with equality only for θ' = 2s − 4 on (1, 2), which jumps at s = 1. Only ∇φ
//! enters the action, so the constant outer value is immaterial.

use num_complex::Complex64;
use serde::Serialize;

use super::Snapshot;
use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::spectral::{apply_symbol, functionals, gradient, laplacian_symbol, Field, Grid};

/// Polynomial in t with coefficients in increasing degree.
#[derive(Clone, Debug, PartialEq)]
struct Poly(Vec<f64>);

impl Poly {
    fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    fn integral(&self) -> Poly {
        let mut c = vec![0.0];
        c.extend(self.0.iter().enumerate().map(|(i, &v)| v / (i + 1) as f64));
        Poly(c)
    }
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The profile θ and its first two derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct Theta {
    outer: [Poly; 3],
    plateau: f64,
}

impl Theta {
    fn new() -> Self {
        let n = 5u64;
        let mut step = vec![0.0; (2 * n + 2) as usize];
        for k in 0..=n {
            let c = binomial(n + k, k) * binomial(2 * n + 1, n - k);
            step[(n + 1 + k) as usize] = if k % 2 == 0 { c } else { -c };
        }
        // θ'(1 + t) = 2(1 + t)(1 − S(t))
        let mut one_minus: Vec<f64> = step.iter().map(|c| -c).collect();
        one_minus[0] += 1.0;
        let mut d1 = vec![0.0; one_minus.len() + 1];
        for (i, &c) in one_minus.iter().enumerate() {
            d1[i] += 2.0 * c;
            d1[i + 1] += 2.0 * c;
        }
        let d1 = Poly(d1);
        let mut th = d1.integral();
        th.0[0] = 1.0;
        let d2 = d1.derivative();
        let plateau = th.eval(1.0);
        Theta {
            outer: [th, d1, d2],
            plateau,
        }
    }

    /// θ^{(k)}(s) for k ∈ {0, 1, 2}.
    pub fn eval(&self, k: usize, s: f64) -> f64 {
        if s <= 1.0 {
            [s * s, 2.0 * s, 2.0][k]
        } else if s >= 2.0 {
            if k == 0 {
                self.plateau
            } else {
                0.0
            }
        } else {
            self.outer[k].eval(s - 1.0)
        }
    }

    /// The constant value of θ beyond s = 2.
    pub fn plateau(&self) -> f64 {
        self.plateau
    }
}

#[derive(Clone, Debug)]
pub struct VirialCutoff {
    pub r: f64,
    pub theta: Theta,
    pub phi: Field,
    pub grad_phi: Vec<Field>,
    pub laplacian_phi: Field,
    /// Δ²φ_R and Δ³φ_R, spectrally from φ_R.
    pub bilaplacian_phi: Field,
    pub trilaplacian_phi: Field,
}

impl VirialCutoff {
    /// φ_R at radius r.
    pub fn phi_at(&self, r: f64) -> f64 {
        self.r * self.r * self.theta.eval(0, r / self.r)
    }
}

/// Number of radial points in the constraint sweep.
const SWEEP: usize = 100_000;

fn check_constraints(theta: &Theta, d: usize) -> Result<()> {
    let tol = 1e-10;
    let df = d as f64;
    for i in 0..=SWEEP {
        let s = 2.5 * i as f64 / SWEEP as f64;
        let t1 = theta.eval(1, s);
        let t2 = theta.eval(2, s);
        if t2 > 2.0 + tol {
            return Err(Error::ConstraintViolated(format!("theta'' = {t2} at s = {s}")));
        }
        if s > 0.0 {
            if 2.0 - t1 / s < -tol {
                return Err(Error::ConstraintViolated(format!("2 - phi'/r < 0 at s = {s}")));
            }
            let lap = t2 + (df - 1.0) * t1 / s;
            if 2.0 * df - lap < -tol {
                return Err(Error::ConstraintViolated(format!("2d - lap phi < 0 at s = {s}")));
            }
        }
        if s <= 1.0 && (theta.eval(0, s) - s * s).abs() > tol {
            return Err(Error::ConstraintViolated(format!("theta != s^2 at s = {s}")));
        }
    }
    Ok(())
}

/// Builds φ_R on the grid after checking the θ constraints on a fine radial
/// sweep.
pub fn make_virial_cutoff(grid: &Grid, r: f64) -> Result<VirialCutoff> {
    let limit = grid.lengths().iter().cloned().fold(f64::INFINITY, f64::min) / 2.0;
    if !(r > 0.0 && 2.0 * r < limit) {
        return Err(Error::CutoffTooLarge { r, limit });
    }
    let theta = Theta::new();
    let d = grid.dim();
    check_constraints(&theta, d)?;
    let radius = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let phi = Field::from_real_fn(grid, |x| r * r * theta.eval(0, radius(x) / r));
    let grad_phi = (0..d)
        .map(|a| {
            Field::from_real_fn(grid, |x| {
                let rr = radius(x);
                if rr == 0.0 {
                    0.0
                } else {
                    r * theta.eval(1, rr / r) * x[a] / rr
                }
            })
        })
        .collect();
    let laplacian_phi = Field::from_real_fn(grid, |x| {
        let rr = radius(x);
        let s = rr / r;
        if s <= 1.0 {
            2.0 * d as f64
        } else {
            theta.eval(2, s) + (d as f64 - 1.0) * theta.eval(1, s) / s
        }
    });
    let k4 = laplacian_symbol(grid, 2.0);
    let k6: Vec<f64> = laplacian_symbol(grid, 3.0).iter().map(|v| -v).collect();
    Ok(VirialCutoff {
        r,
        bilaplacian_phi: apply_symbol(&phi, &k4),
        trilaplacian_phi: apply_symbol(&phi, &k6),
        theta,
        phi,
        grad_phi,
        laplacian_phi,
    })
}

/// M_{φR}(f) = 2∫∇φ_R·Im(f̄∇f).
///
/// With f = a + ib, Im(f̄∇f) = a∇b − b∇a, and the gradients of the real and
/// imaginary parts are taken separately, so real f gives exactly zero.
pub fn virial_action(f: &Field, cut: &VirialCutoff) -> f64 {
    let g = f.grid();
    let part = |take: fn(&Complex64) -> f64| {
        Field::from_values(g, f.values().iter().map(|v| Complex64::new(take(v), 0.0)).collect())
            .expect("same grid")
    };
    let (a, b) = (part(|v| v.re), part(|v| v.im));
    let (ga, gb) = (gradient(&a), gradient(&b));
    let mut s = 0.0;
    for ((gphi, da), db) in cut.grad_phi.iter().zip(&ga).zip(&gb) {
        for i in 0..g.len() {
            let cur = a.values()[i].re * db.values()[i].re - b.values()[i].re * da.values()[i].re;
            s += gphi.values()[i].re * cur;
        }
    }
    2.0 * s * g.cell_volume()
}

/// 4dαE(f) − 2(dα − 8)‖Δf‖², the time derivative of M_{|x|²}.
pub fn virial_rhs(f: &Field, exps: &ExponentSet) -> f64 {
    let r = functionals(f, exps);
    let da = exps.dim() * exps.alpha;
    4.0 * da * r.energy - 2.0 * (da - 8.0) * r.sobolev_2 * r.sobolev_2
}

/// 16‖Δf‖², the virial right-hand side of the linear flow.
pub fn virial_rhs_linear(f: &Field) -> f64 {
    let k4 = laplacian_symbol(f.grid(), 2.0);
    16.0 * crate::spectral::weighted_sum(f.grid(), &f.spectrum(), &k4)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VirialCheck {
    /// max_i |dM/dt − rhs| / max_i |rhs| over interior snapshots.
    pub max_defect: f64,
    pub points: usize,
    /// Largest fraction of mass found outside |x| < R.
    pub exterior_mass: f64,
}

fn exterior_fraction(f: &Field, r: f64) -> f64 {
    let pts = f.grid().map_points(|x| x.iter().map(|v| v * v).sum::<f64>() >= r * r);
    let (mut out, mut all) = (0.0, 0.0);
    for (v, o) in f.values().iter().zip(pts) {
        let m = v.norm_sqr();
        all += m;
        if o {
            out += m;
        }
    }
    if all == 0.0 {
        0.0
    } else {
        out / all
    }
}

/// Compares the three-point derivative of M_{φR} along `snapshots` with the
/// virial right-hand side (linear flow when `linear` is set).
pub fn check_virial_law(
    snapshots: &[Snapshot],
    exps: &ExponentSet,
    cut: &VirialCutoff,
    linear: bool,
) -> Result<VirialCheck> {
    if snapshots.len() < 3 {
        return Err(Error::Precondition("need at least three snapshots".into()));
    }
    let exterior = snapshots
        .iter()
        .map(|s| exterior_fraction(&s.field, cut.r))
        .fold(0.0, f64::max);
    if exterior >= 1e-8 {
        return Err(Error::Precondition(format!(
            "mass fraction {exterior:.3e} outside |x| < R"
        )));
    }
    let m: Vec<f64> = snapshots.iter().map(|s| virial_action(&s.field, cut)).collect();
    let mut defects = Vec::new();
    let mut scale: f64 = 0.0;
    for i in 1..snapshots.len() - 1 {
        let (t0, t1, t2) = (snapshots[i - 1].t, snapshots[i].t, snapshots[i + 1].t);
        let (h1, h2) = (t1 - t0, t2 - t1);
        let dm = (h1 * h1 * m[i + 1] - h2 * h2 * m[i - 1] + (h2 * h2 - h1 * h1) * m[i])
            / (h1 * h2 * (h1 + h2));
        let f = &snapshots[i].field;
        let rhs = if linear {
            virial_rhs_linear(f)
        } else {
            virial_rhs(f, exps)
        };
        scale = scale.max(rhs.abs());
        defects.push((dm - rhs).abs());
    }
    let max_abs = defects.iter().cloned().fold(0.0, f64::max);
    Ok(VirialCheck {
        max_defect: if scale > 0.0 { max_abs / scale } else { max_abs },
        points: defects.len(),
        exterior_mass: exterior,
    })
}
