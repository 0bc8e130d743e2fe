//! Split-step integration of i u_t − Δ²u = −|u|^α u and diagnostics along
//! the flow.
//!
//! The linear part u_t = −iΔ²u is diagonal in Fourier space (û ↦
//! e^{−i t|ξ|⁴}û) and the nonlinear part u_t = i|u|^αu conserves |u|
//! pointwise (u ↦ e^{i t|u|^α}u), so Strang splitting of the two is
//! second order and conserves the discrete mass exactly in exact arithmetic.

mod blowup;
mod concentration;
mod limiting;
mod virial;

pub use blowup::{fit_blowup, BlowupFit};
pub use concentration::{
    ball_weights, concentration_scan, concentration_scan_direct, window_radius, Concentration,
};
pub(crate) use limiting::refine_peak;
pub use limiting::{limiting_profile_compare, ProfileComparison};
pub use virial::{
    check_virial_law, make_virial_cutoff, virial_action, virial_rhs, virial_rhs_linear, Theta,
    VirialCheck, VirialCutoff,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::spectral::{laplacian_symbol, Diagnostics, Field, FunctionalReport, Grid};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub t: f64,
    pub dt: f64,
    pub mass: f64,
    pub energy: f64,
    pub h_gamma_c: f64,
    pub h_2: f64,
    pub l_alpha2: f64,
    pub l_alpha_c: f64,
    pub max_amp: f64,
}

impl TrajectoryRecord {
    pub const HEADER: &'static str = "t,dt,mass,energy,h_gamma_c,h_2,l_alpha2,l_alpha_c,max_amp";

    fn new(t: f64, dt: f64, r: &FunctionalReport, max_amp: f64) -> Self {
        TrajectoryRecord {
            t,
            dt,
            mass: r.mass,
            energy: r.energy,
            h_gamma_c: r.sobolev_gamma_c,
            h_2: r.sobolev_2,
            l_alpha2: r.lebesgue_alpha2,
            l_alpha_c: r.lebesgue_alpha_c,
            max_amp,
        }
    }

    pub fn values(&self) -> [f64; 9] {
        [
            self.t,
            self.dt,
            self.mass,
            self.energy,
            self.h_gamma_c,
            self.h_2,
            self.l_alpha2,
            self.l_alpha_c,
            self.max_amp,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolveConfig {
    pub dt0: f64,
    pub t_end: f64,
    /// Largest nonlinear phase dt·max|u|^α allowed in one step.
    pub phase_cap: f64,
    /// Upper bound on the adaptive step; unbounded when absent.
    pub dt_max: Option<f64>,
    pub dt_floor: f64,
    /// Ḣ² growth over the initial value that counts as blowup.
    pub blowup_norm_factor: f64,
    /// Zero the modes beyond two thirds of the Nyquist index after each
    /// linear substep.
    pub dealias: bool,
    pub snapshot_every: usize,
    /// Keep dt = dt0 instead of adapting it.
    pub fixed_step: bool,
    /// Drop the nonlinear substeps (linear biharmonic flow).
    pub linear: bool,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        EvolveConfig {
            dt0: 1e-4,
            t_end: 1.0,
            phase_cap: 0.002,
            dt_max: None,
            dt_floor: 1e-14,
            blowup_norm_factor: 1e3,
            dealias: true,
            snapshot_every: 100,
            fixed_step: false,
            linear: false,
        }
    }
}

impl EvolveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt0 > self.dt_floor && self.dt_floor > 0.0) {
            return Err(Error::Config("need dt0 > dt_floor > 0".into()));
        }
        if self.dt_max.is_some_and(|m| !(m > self.dt_floor)) {
            return Err(Error::Config("dt_max must exceed dt_floor".into()));
        }
        if !(self.phase_cap > 0.0 && self.phase_cap <= 1.0) {
            return Err(Error::Config("phase_cap must lie in (0, 1]".into()));
        }
        if !(self.t_end >= 0.0) || self.blowup_norm_factor <= 1.0 || self.snapshot_every == 0 {
            return Err(Error::Config(
                "need t_end >= 0, blowup_norm_factor > 1, snapshot_every >= 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Completed,
    BlowupDetected,
    StepFloor,
}

#[derive(Clone, Debug)]
pub struct Snapshot {
    pub step: usize,
    pub t: f64,
    pub field: Field,
}

#[derive(Clone, Debug)]
pub struct Evolution {
    pub trajectory: Vec<TrajectoryRecord>,
    pub snapshots: Vec<Snapshot>,
    pub status: Status,
    pub final_field: Field,
}

/// One Strang step u ↦ N(dt/2) L(dt) N(dt/2) u on a fixed grid.
#[derive(Clone, Debug)]
pub struct Propagator {
    grid: Grid,
    alpha: f64,
    xi4: Vec<f64>,
    keep: Option<Vec<bool>>,
    linear: bool,
}

impl Propagator {
    pub fn new(grid: &Grid, alpha: f64, dealias: bool, linear: bool) -> Self {
        let keep = dealias.then(|| {
            let n = grid.n_points().to_vec();
            (0..grid.len())
                .map(|flat| {
                    grid.unravel(flat).iter().zip(&n).all(|(&k, &n)| {
                        let m = if k <= n / 2 { k } else { n - k };
                        3 * m <= n
                    })
                })
                .collect()
        });
        Propagator {
            grid: grid.clone(),
            alpha,
            xi4: laplacian_symbol(grid, 2.0),
            keep,
            linear,
        }
    }

    fn nonlinear_phase(&self, u: &mut [Complex64], tau: f64) {
        if self.linear {
            return;
        }
        let a = self.alpha;
        for v in u.iter_mut() {
            let r = v.norm();
            if r > 0.0 {
                *v *= Complex64::from_polar(1.0, tau * r.powf(a));
            }
        }
    }

    pub fn step(&self, f: &Field, dt: f64) -> Result<Field> {
        let mut u = f.values().to_vec();
        self.nonlinear_phase(&mut u, dt / 2.0);
        self.grid.fft(&mut u);
        for (i, (v, &k4)) in u.iter_mut().zip(&self.xi4).enumerate() {
            match &self.keep {
                Some(keep) if !keep[i] => *v = Complex64::default(),
                _ => *v *= Complex64::from_polar(1.0, -dt * k4),
            }
        }
        self.grid.ifft(&mut u);
        self.nonlinear_phase(&mut u, dt / 2.0);
        let out = Field::from_values(&self.grid, u)?;
        if !out.is_finite() {
            return Err(Error::NonFinite {
                t: f64::NAN,
                partial: Vec::new(),
            });
        }
        Ok(out)
    }

    /// The nonlinear substep alone.
    pub fn nonlinear_substep(&self, f: &Field, tau: f64) -> Field {
        let mut u = f.values().to_vec();
        self.nonlinear_phase(&mut u, tau);
        Field::from_values(&self.grid, u).expect("same grid")
    }
}

/// A Strang step without dealiasing.
pub fn step_strang(f: &Field, dt: f64, exps: &ExponentSet) -> Result<Field> {
    if !(dt > 0.0) {
        return Err(Error::Precondition("dt must be positive".into()));
    }
    Propagator::new(f.grid(), exps.alpha, false, false).step(f, dt)
}

/// Integrates from f0 until t_end, Ḣ² blowup, or the step floor.
///
/// The step is dt = min(1.1·dt_prev, phase_cap/max|u|^α, dt_max), clipped to land on
/// t_end. One trajectory row is recorded per step (plus the initial row), and
/// a snapshot every `snapshot_every` steps.
pub fn evolve(f0: &Field, cfg: &EvolveConfig, exps: &ExponentSet) -> Result<Evolution> {
    cfg.validate()?;
    if !f0.is_finite() {
        return Err(Error::Precondition("initial data is not finite".into()));
    }
    let grid = f0.grid();
    let prop = Propagator::new(grid, exps.alpha, cfg.dealias, cfg.linear);
    let diag = Diagnostics::new(grid, exps);
    let mut u = f0.clone();
    let r0 = diag.report(&u);
    let h2_0 = r0.sobolev_2;
    let mut traj = vec![TrajectoryRecord::new(0.0, 0.0, &r0, u.max_abs())];
    let mut snaps = vec![Snapshot {
        step: 0,
        t: 0.0,
        field: u.clone(),
    }];
    let mut t = 0.0;
    let mut dt_prev = cfg.dt0 / 1.1;
    let mut step = 0;
    let mut status = Status::Completed;
    while t < cfg.t_end {
        let amp = u.max_abs();
        let mut dt = if cfg.fixed_step { cfg.dt0 } else { 1.1 * dt_prev };
        if !cfg.linear && amp > 0.0 && !cfg.fixed_step {
            dt = dt.min(cfg.phase_cap / amp.powf(exps.alpha));
        }
        if let (Some(m), false) = (cfg.dt_max, cfg.fixed_step) {
            dt = dt.min(m);
        }
        let adaptive_dt = dt;
        let last = t + dt >= cfg.t_end;
        if last {
            dt = cfg.t_end - t;
        }
        u = match prop.step(&u, dt) {
            Ok(v) => v,
            Err(_) => {
                return Err(Error::NonFinite {
                    t: t + dt,
                    partial: traj,
                })
            }
        };
        t = if last { cfg.t_end } else { t + dt };
        step += 1;
        dt_prev = adaptive_dt;
        let r = diag.report(&u);
        let row = TrajectoryRecord::new(t, dt, &r, u.max_abs());
        let growing = row.h_2 > traj.last().map_or(0.0, |p| p.h_2);
        traj.push(row);
        if step % cfg.snapshot_every == 0 {
            snaps.push(Snapshot {
                step,
                t,
                field: u.clone(),
            });
        }
        if h2_0 > 0.0 && row.h_2 > cfg.blowup_norm_factor * h2_0 {
            status = Status::BlowupDetected;
            break;
        }
        if adaptive_dt < cfg.dt_floor {
            status = if growing {
                Status::BlowupDetected
            } else {
                Status::StepFloor
            };
            break;
        }
    }
    if snaps.last().map(|s| s.step) != Some(step) {
        snaps.push(Snapshot {
            step,
            t,
            field: u.clone(),
        });
    }
    Ok(Evolution {
        trajectory: traj,
        snapshots: snaps,
        status,
        final_field: u,
    })
}

/// E − ½(1 − (‖u‖_{Ḣγc}/S_gs)^α)‖u‖²_{Ḣ²}; nonnegative whenever the sharp
/// Gagliardo–Nirenberg inequality holds with A_GN = (α+2)/2·S_gs^{−α}.
pub fn energy_trapping_check(row: &TrajectoryRecord, s_gs: f64, exps: &ExponentSet) -> f64 {
    let ratio = row.h_gamma_c / s_gs;
    row.energy - 0.5 * (1.0 - ratio.powf(exps.alpha)) * row.h_2 * row.h_2
}

/// A Gaussian a·exp(−|x−c|²/(2w²))·e^{iv·x}.
pub fn gaussian(grid: &Grid, amplitude: f64, width: f64, center: &[f64], velocity: &[f64]) -> Field {
    Field::from_fn(grid, |x| {
        let mut r2 = 0.0;
        let mut ph = 0.0;
        for (a, &xa) in x.iter().enumerate() {
            let c = center.get(a).copied().unwrap_or(0.0);
            r2 += (xa - c) * (xa - c);
            ph += velocity.get(a).copied().unwrap_or(0.0) * xa;
        }
        Complex64::from_polar(amplitude * (-r2 / (2.0 * width * width)).exp(), ph)
    })
}
