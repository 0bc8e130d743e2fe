//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines always reach the
//! console; the process exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma as gamma_fn;

use nl4s::evolution::{
    check_virial_law, concentration_scan, concentration_scan_direct, energy_trapping_check, evolve, fit_blowup,
    gaussian, limiting_profile_compare, make_virial_cutoff, window_radius, EvolveConfig, Evolution, Propagator,
    Status, TrajectoryRecord,
};
use nl4s::exponents::{classify_pair, critical_exponents, gamma_pq, lwp_exponents, ExponentSet};
use nl4s::groundstate::{
    solve_mass_critical_ground_state, solve_sobolev_ground_state, verify_gn_sharpness, GroundStateOptions,
    GroundStateResult,
};
use nl4s::profiles::{compactness_extract, decompose, pythagorean_defects, synth_sequence, ShiftLaw};
use nl4s::spectral::{
    apply_multiplier, functionals, laplacian_symbol, pairing_residual, rescale, resample_periodic, sobolev_norm,
    translate, Field, Grid,
};

#[derive(Default)]
struct Checks {
    failed: Vec<String>,
    passed: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: String) {
        if ok {
            self.passed.push(what);
        } else {
            self.failed.push(what);
        }
    }
}

fn e110() -> ExponentSet {
    critical_exponents(1, 10.0).unwrap()
}

fn sobolev_q(l: f64, n: usize) -> GroundStateResult {
    let g = Grid::cube(1, n, l).unwrap();
    solve_sobolev_ground_state(&e110(), &g, &GroundStateOptions::default()).unwrap()
}

fn q80() -> &'static GroundStateResult {
    static Q: OnceLock<GroundStateResult> = OnceLock::new();
    Q.get_or_init(|| sobolev_q(80.0, 1024))
}

/// The torus truncation of Q's slowly decaying tail biases H(Q) low by about
/// (2π/L)^{2γc}-sized amounts, so the sharpness ratio needs a long box.
fn q640() -> &'static GroundStateResult {
    static Q: OnceLock<GroundStateResult> = OnceLock::new();
    Q.get_or_init(|| sobolev_q(640.0, 8192))
}

fn blowup_run() -> &'static Evolution {
    static RUN: OnceLock<Evolution> = OnceLock::new();
    RUN.get_or_init(|| {
        let g = Grid::cube(1, 8192, 20.0).unwrap();
        let f0 = gaussian(&g, 1.5, 1.0, &[0.0], &[0.0]);
        let cfg = EvolveConfig {
            blowup_norm_factor: 3000.0,
            snapshot_every: 25,
            ..Default::default()
        };
        evolve(&f0, &cfg, &e110()).unwrap()
    })
}

/// ‖e^{-|x|²/(2w²)}‖²_{Ḣ^γ(ℝ^d)} = π^{d/2} Γ(γ + d/2)/Γ(d/2) · w^{d-2γ}.
fn gaussian_hgamma_sq(d: usize, w: f64, gamma: f64) -> f64 {
    let hd = d as f64 / 2.0;
    PI.powf(hd) * gamma_fn(gamma + hd) / gamma_fn(hd) * w.powf(d as f64 - 2.0 * gamma)
}

fn real_gaussian(g: &Grid, width: f64) -> Field {
    Field::from_real_fn(g, |x| (-x.iter().map(|v| v * v).sum::<f64>() / (2.0 * width * width)).exp())
}

fn random_field(g: &Grid, seed: u64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (0..g.len())
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    Field::from_values(g, v).unwrap()
}

fn power_sum(f: &Field, p: f64) -> f64 {
    f.values().iter().map(|v| v.norm().powf(p)).sum::<f64>() * f.grid().cell_volume()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn exponent_algebra(c: &mut Checks) {
    let (mut sigma, mut alpha_c, mut theta, mut pairs, mut count) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0);
    for d in 5..=12usize {
        let df = d as f64;
        let (lo, hi) = (8.0 / df, 8.0 / (df - 4.0));
        for k in 0..20 {
            let alpha = lo + (hi - lo) * (k as f64 + 0.5) / 20.0;
            let e = critical_exponents(d, alpha).unwrap();
            let gc = df / 2.0 - 4.0 / alpha;
            sigma = sigma.max(((2.0 - gc) / gc - (8.0 - (df - 4.0) * alpha) / (df * alpha - 8.0)).abs());
            sigma = sigma.max((e.sigma - e.sigma_explicit()).abs());
            alpha_c = alpha_c.max((2.0 * df / (df - 2.0 * gc) - df * alpha / 4.0).abs());
            alpha_c = alpha_c.max((e.alpha_c - e.alpha_c_embedding()).abs());
            let l = lwp_exponents(d, alpha).unwrap();
            theta = theta.max((l.theta / alpha - e.rate_exp).abs());
            theta = theta.max((e.rate_exp - (2.0 - gc) / 4.0).abs());
            pairs = pairs.max(gamma_pq(l.p, l.q, d).abs());
            pairs = pairs.max(gamma_pq(l.m_star, l.n_star, d).abs());
            if l.pq_admissible {
                pairs = pairs.max(classify_pair(l.p, l.q, d).gamma_pq.abs());
            }
            count += 1;
        }
    }
    c.check(count == 160, format!("{count} (d, α) pairs"));
    c.check(sigma <= 1e-12, format!("σ formulas {sigma:.1e}"));
    c.check(alpha_c <= 1e-12, format!("α_c formulas {alpha_c:.1e}"));
    c.check(theta <= 1e-12, format!("θ/α vs rate {theta:.1e}"));
    c.check(pairs <= 1e-12, format!("γ_pq of constructed pairs {pairs:.1e}"));
}

fn spectral_layer(c: &mut Checks) {
    let e = e110();
    let g = Grid::new(2, &[16, 32], &[3.0, 7.0]).unwrap();
    let mut planch = 0.0f64;
    let mut comp = 0.0f64;
    let mut unit = 0.0f64;
    for seed in 0..10 {
        let f = random_field(&g, seed);
        let direct = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * g.cell_volume();
        planch = planch.max(rel(sobolev_norm(&f, 0.0).powi(2), direct));
        let m1 = |k: f64| 1.0 / (1.0 + k.powf(1.7));
        let m2 = |k: f64| (-k * k / 30.0).exp();
        let two = apply_multiplier(&apply_multiplier(&f, m1).unwrap(), m2).unwrap();
        let one = apply_multiplier(&f, |k| m1(k) * m2(k)).unwrap();
        comp = comp.max(two.sub(&one).max_abs());
        let t = translate(&f, &[0.37 * seed as f64, -1.3]);
        for gm in [0.0, e.gamma_c, 1.0, 2.0] {
            unit = unit.max(rel(sobolev_norm(&t, gm), sobolev_norm(&f, gm)));
        }
    }
    c.check(planch <= 1e-12, format!("Plancherel {planch:.1e}"));
    c.check(comp <= 1e-12, format!("composition {comp:.1e}"));
    c.check(unit <= 1e-12, format!("translate unitary {unit:.1e}"));

    let g = Grid::cube(1, 1024, 80.0).unwrap();
    let f = real_gaussian(&g, 1.0);
    let mut scaling = 0.0f64;
    for (mu, lam) in [(1.3, 0.7), (0.5, 1.6), (2.0, 1.1)] {
        let r = rescale(&f, mu, lam).unwrap();
        for gm in [0.0, e.gamma_c, 1.0, 2.0] {
            let want = mu * mu * lam.powf(2.0 * gm - 1.0) * gaussian_hgamma_sq(1, 1.0, gm);
            scaling = scaling.max(rel(sobolev_norm(&r, gm).powi(2), want));
        }
    }
    c.check(scaling <= 1e-6, format!("Ḣ^γ rescale law {scaling:.1e}"));
}

/// Both sides of Re∫(−Δ)^γ f · x f̄' = (γ − 1/2)‖f‖²_{Ḣ^γ} for f = e^{-x²/2}
/// by dense quadrature of closed forms.
fn pairing_sides_by_quadrature(gamma: f64) -> (f64, f64) {
    let n = 4000;
    let xmax = 20.0;
    let dx = 2.0 * xmax / n as f64;
    let lap = |x: f64| -> f64 {
        let e = (-x * x / 2.0).exp();
        if gamma == 1.0 {
            (1.0 - x * x) * e
        } else if gamma == 2.0 {
            (x.powi(4) - 6.0 * x * x + 3.0) * e
        } else {
            // √(2/π)∫₀^∞ k e^{-k²/2} cos(kx) dk, trapezoid plus the endpoint
            // correction for the kink of |k| at 0
            let m = 20_000;
            let dk = 40.0 / m as f64;
            let s: f64 = (1..m)
                .map(|i| {
                    let k = i as f64 * dk;
                    k * (-k * k / 2.0).exp() * (k * x).cos()
                })
                .sum();
            (2.0 / PI).sqrt() * (s * dk + dk * dk / 12.0)
        }
    };
    let lhs: f64 = (0..n)
        .map(|i| {
            let x = -xmax + i as f64 * dx;
            lap(x) * (-x * x * (-x * x / 2.0).exp()) * dx
        })
        .sum();
    (lhs, (gamma - 0.5) * gaussian_hgamma_sq(1, 1.0, gamma))
}

fn pairing_identity(c: &mut Checks) {
    let g = Grid::cube(1, 512, 40.0).unwrap();
    let r0 = pairing_residual(&real_gaussian(&g, 1.0), 0.0).abs();
    c.check(r0 < 1e-8, format!("γ=0 residual {r0:.1e}"));
    let g = Grid::cube(1, 1024, 160.0).unwrap();
    let f = real_gaussian(&g, 1.0);
    for gm in [0.5, 1.0, 2.0] {
        let (lhs, rhs) = pairing_sides_by_quadrature(gm);
        let r = pairing_residual(&f, gm);
        let dev = (r - (lhs - rhs)).abs();
        c.check(dev < 1e-6, format!("γ={gm} vs quadrature {dev:.1e}"));
    }
}

fn fixed(dt: f64, t_end: f64) -> EvolveConfig {
    EvolveConfig {
        dt0: dt,
        t_end,
        fixed_step: true,
        dealias: false,
        snapshot_every: 1_000_000,
        ..Default::default()
    }
}

fn mass_drift(tr: &[TrajectoryRecord]) -> f64 {
    let m0 = tr[0].mass;
    tr.iter().map(|r| rel(r.mass, m0)).fold(0.0, f64::max)
}

fn integrator(c: &mut Checks) {
    let g = Grid::cube(1, 32, 2.0 * PI).unwrap();
    let f = Field::from_fn(&g, |x| Complex64::from_polar(1.0, 3.0 * x[0]));
    let prop = Propagator::new(&g, 10.0, false, true);
    let dt = 1e-3;
    let mut u = f.clone();
    for _ in 0..100 {
        u = prop.step(&u, dt).unwrap();
    }
    let exact = f.scale(Complex64::from_polar(1.0, -100.0 * dt * 81.0));
    let err = u.sub(&exact).max_abs();
    c.check(err < 1e-13, format!("single mode {err:.1e}"));

    let e = e110();
    let g = Grid::cube(1, 256, 40.0).unwrap();
    let f0 = gaussian(&g, 0.9, 2.0, &[0.0], &[0.0]);
    let runs: Vec<Evolution> = [1e-3, 5e-4, 2.5e-4]
        .iter()
        .map(|&dt| evolve(&f0, &fixed(dt, 0.5), &e).unwrap())
        .collect();
    let drift = |r: &Evolution| (r.trajectory.last().unwrap().energy - r.trajectory[0].energy).abs();
    let o1 = (drift(&runs[0]) / drift(&runs[1])).log2();
    let o2 = (drift(&runs[1]) / drift(&runs[2])).log2();
    c.check((o1 - 2.0).abs() <= 0.2 && (o2 - 2.0).abs() <= 0.2, format!("energy-drift order {o1:.3}, {o2:.3}"));
    let adaptive = evolve(
        &gaussian(&g, 1.0, 1.0, &[0.0], &[0.5]),
        &EvolveConfig {
            t_end: 1.0,
            dealias: false,
            ..Default::default()
        },
        &e,
    )
    .unwrap();
    let m = runs
        .iter()
        .chain(std::iter::once(&adaptive))
        .map(|r| mass_drift(&r.trajectory))
        .fold(0.0, f64::max);
    c.check(m < 1e-10, format!("mass drift {m:.1e}"));
}

fn ground_states(c: &mut Checks) {
    let g = Grid::cube(1, 256, 40.0).unwrap();
    let opts = GroundStateOptions {
        tol: 1e-10,
        ..Default::default()
    };
    let r = solve_mass_critical_ground_state(&g, 8.0, &opts).unwrap();
    let lq = apply_multiplier(&r.field, |k| k.powi(4) + 1.0).unwrap();
    let res = power_sum(&lq.sub(&r.field.map(|v| v * v.norm().powi(8))), 2.0).sqrt();
    let h2 = sobolev_norm(&r.field, 2.0).powi(2);
    let energy = (0.5 * h2 - power_sum(&r.field, 10.0) / 10.0).abs() / (0.5 * h2);
    let poh = r.pohozaev.defect_1.max(r.pohozaev.defect_2);
    c.check(res < 1e-10, format!("γc=0 residual {res:.1e}"));
    c.check(energy < 1e-6, format!("γc=0 E(Q) {energy:.1e}"));
    c.check(poh < 1e-6, format!("γc=0 Pohozaev {poh:.1e}"));

    let q = q80();
    let f = &q.field;
    let g = f.grid();
    let mut sym = laplacian_symbol(g, e110().gamma_c);
    sym.iter_mut().zip(laplacian_symbol(g, 2.0)).for_each(|(a, b)| *a += b);
    let mut spec = f.spectrum();
    let nspec = f.map(|v| v * v.norm().powi(10)).spectrum();
    spec.iter_mut().zip(&nspec).zip(&sym).for_each(|((v, n), s)| *v = *v * s - n);
    spec[0] = Complex64::default();
    let res = power_sum(&Field::from_spectrum(g, spec), 2.0).sqrt();
    c.check(res < 1e-8, format!("L=80 off-mean residual {res:.1e}"));
    let (p1, p2) = (q.pohozaev_defect_1, q.pohozaev_defect_2);
    c.check(p1 < 1e-2 && p2 < 1e-2, format!("L=80 Pohozaev {p1:.2e}, {p2:.2e}"));
    let q2 = sobolev_q(160.0, 2048);
    let (r1, r2) = (q2.pohozaev_defect_1, q2.pohozaev_defect_2);
    c.check(r1 < p1 && r2 < p2, format!("L=160 Pohozaev {r1:.2e}, {r2:.2e}"));
}

fn gn_sharpness(c: &mut Checks) {
    let e = e110();
    let q = q640();
    let a_gn = q.sharp_constant;
    let rep = verify_gn_sharpness(a_gn, &e, q.field.grid(), 1000, 2024).unwrap();
    c.check(
        rep.trials == 1000 && rep.violations == 0,
        format!("{} trials, max ratio {:.4}, {} violations", rep.trials, rep.max_ratio, rep.violations),
    );
    let h = functionals(&q.field, &e).h_value.unwrap() / a_gn;
    c.check((h - 1.0).abs() <= 1e-3, format!("H(Q)/A_GN = {h:.6}"));
}

fn virial_law(c: &mut Checks) {
    let e = e110();
    let g = Grid::cube(1, 512, 64.0).unwrap();
    let cut = make_virial_cutoff(&g, 14.0).unwrap();
    let f0 = gaussian(&g, 0.9, 1.5, &[0.5], &[0.3]);
    let run = |dt: f64| {
        let cfg = EvolveConfig {
            snapshot_every: 1,
            ..fixed(dt, 0.05)
        };
        let ev = evolve(&f0, &cfg, &e).unwrap();
        check_virial_law(&ev.snapshots, &e, &cut, false).unwrap()
    };
    let (a, b) = (run(4e-3), run(2e-3));
    let ext = a.exterior_mass.max(b.exterior_mass);
    c.check(ext < 1e-8, format!("exterior mass {ext:.1e}"));
    c.check(a.max_defect < 1e-2 && b.max_defect < 1e-2, format!("defects {:.2e}, {:.2e}", a.max_defect, b.max_defect));
    c.check(b.max_defect < a.max_defect, "improves under dt halving".into());
}

fn energy_trapping(c: &mut Checks) {
    let e = e110();
    let g = Grid::cube(1, 512, 80.0).unwrap();
    let f0 = gaussian(&g, 0.6, 1.0, &[0.0], &[0.0]);
    let s_gs = q640().norms.sobolev_gamma_c;
    let cfg = EvolveConfig {
        t_end: 5.0,
        dealias: false,
        dt_max: Some(1e-3),
        ..Default::default()
    };
    let ev = evolve(&f0, &cfg, &e).unwrap();
    c.check(ev.status == Status::Completed, format!("{:?} over {} rows", ev.status, ev.trajectory.len()));
    let h0 = ev.trajectory[0].h_gamma_c;
    c.check(h0 < s_gs, format!("‖u0‖_Ḣγc/S_gs = {:.3}", h0 / s_gs));
    let worst = ev
        .trajectory
        .iter()
        .map(|r| energy_trapping_check(r, s_gs, &e))
        .fold(f64::INFINITY, f64::min);
    c.check(worst >= -1e-8, format!("min slack {worst:.3e}"));
}

fn synthetic_trajectory(rate: f64, t_end: f64, n: usize) -> Vec<TrajectoryRecord> {
    (0..n)
        .map(|i| {
            let t = t_end * (1.0 - 10f64.powf(-8.0 * i as f64 / (n - 1) as f64));
            TrajectoryRecord {
                t,
                dt: 0.0,
                mass: 1.0,
                energy: 0.0,
                h_gamma_c: 1.0,
                h_2: 3.0 * (t_end - t).powf(-rate),
                l_alpha2: 0.0,
                l_alpha_c: 0.0,
                max_amp: 0.0,
            }
        })
        .collect()
}

fn blowup_pipeline(c: &mut Checks) {
    let e = e110();
    let ev = blowup_run();
    let tr = &ev.trajectory;
    c.check(tr[0].energy < 0.0, format!("E(u0) = {:.3}", tr[0].energy));
    c.check(ev.status == Status::BlowupDetected, format!("{:?}", ev.status));
    let decades = (tr.last().unwrap().h_2 / tr[0].h_2).log10();
    c.check(decades >= 3.0, format!("{decades:.2} decades of Ḣ² growth"));
    match fit_blowup(tr, e.rate_exp) {
        Ok(fit) => c.check(
            fit.lower_bound_ok && fit.rate >= 0.75 * e.rate_exp,
            format!("rate {:.4} vs bound {}, T {:.6}", fit.rate, e.rate_exp, fit.t_est),
        ),
        Err(err) => c.check(false, format!("fit failed: {err}")),
    }
    let syn = synthetic_trajectory(0.41, 0.7, 400);
    let fit = fit_blowup(&syn, e.rate_exp).unwrap();
    let (dt, dr) = ((fit.t_est - 0.7).abs(), (fit.rate - 0.41).abs());
    c.check(dt < 1e-3 && dr < 1e-3, format!("synthetic recovery ΔT {dt:.1e}, Δrate {dr:.1e}"));
}

fn concentration(c: &mut Checks) {
    let mut worst = 0.0f64;
    let mut same_argmax = true;
    for seed in 0..20u64 {
        let (d, n) = if seed % 4 == 3 { (2, 32) } else { (1, 128) };
        let g = Grid::cube(d, n, 16.0).unwrap();
        let raw = random_field(&g, 100 + seed);
        let f = apply_multiplier(&raw, |k| (-k * k / 4.0).exp()).unwrap();
        let (gamma, a) = ([0.1, 0.5, 1.0, 0.0][seed as usize % 4], 1.0 + 0.15 * seed as f64);
        let fast = concentration_scan(&f, gamma, a).unwrap();
        let slow = concentration_scan_direct(&f, gamma, a).unwrap();
        same_argmax &= fast.index == slow.index;
        worst = worst.max((fast.value - slow.value).abs() / slow.value.max(1.0));
    }
    c.check(same_argmax && worst < 1e-10, format!("20 fields vs direct sum {worst:.1e}"));

    let e = e110();
    let ev = blowup_run();
    let s_gs = q640().norms.sobolev_gamma_c;
    let Ok(fit) = fit_blowup(&ev.trajectory, e.rate_exp) else {
        c.check(false, "no blowup fit".into());
        return;
    };
    let h_final = ev.trajectory.last().unwrap().h_2;
    let h_at = |t: f64| {
        let i = ev.trajectory.partition_point(|r| r.t < t).min(ev.trajectory.len() - 1);
        ev.trajectory[i].h_2
    };
    let values: Vec<f64> = ev
        .snapshots
        .iter()
        .filter(|s| h_at(s.t) >= h_final / 10.0)
        .map(|s| concentration_scan(&s.field, e.gamma_c, window_radius(fit.t_est, s.t)).unwrap().value)
        .collect();
    let monotone = values.windows(2).all(|w| w[1] >= w[0]);
    c.check(values.len() >= 5 && monotone, format!("{} snapshots over the final decade, nondecreasing", values.len()));
    let last = values.last().copied().unwrap_or(0.0) / (s_gs * s_gs);
    c.check(last >= 0.5, format!("final windowed integral {last:.3}·S_gs²"));
}

fn limiting_profile(c: &mut Checks) {
    let e = e110();
    let q = &q80().field;
    let (theta0, lam0, x0) = (0.7, 2.0, 3.0 * 80.0 / 1024.0);
    let fg = Grid::cube(1, 1024, 80.0 / lam0).unwrap();
    let f = resample_periodic(q, &fg, &[lam0], &[x0]).scale(Complex64::from_polar(lam0.powf(4.0 / e.alpha), theta0));
    let r = limiting_profile_compare(&f, q, &e).unwrap();
    let dphase = (r.phase + theta0).rem_euclid(2.0 * PI);
    let dev = (r.lam - 1.0 / lam0)
        .abs()
        .max((r.shift[0] + x0 / lam0).abs())
        .max(dphase.min(2.0 * PI - dphase))
        .max(r.dist_gamma_c)
        .max(r.dist_2);
    c.check(dev < 1e-6, format!("round trip {dev:.1e}"));

    let ev = blowup_run();
    let tail = &ev.snapshots[ev.snapshots.len().saturating_sub(5)..];
    let d: Vec<f64> = tail
        .iter()
        .map(|s| limiting_profile_compare(&s.field, q, &e).unwrap().dist_gamma_c)
        .collect();
    let trend = d.len() == 5 && d.windows(2).all(|w| w[1] <= w[0]);
    let shown: Vec<String> = d.iter().map(|v| format!("{v:.3}")).collect();
    c.check(trend, format!("aligned Ḣ^γc distance over last 5 snapshots [{}]", shown.join(", ")));
}

fn profile_decomposition(c: &mut Checks) {
    let e = e110();
    let g = Grid::cube(1, 2048, 320.0).unwrap();
    let truth = [
        gaussian(&g, 1.0, 1.0, &[0.0], &[0.0]),
        gaussian(&g, 0.7, 1.5, &[0.0], &[0.5]),
        gaussian(&g, 0.5, 0.8, &[0.0], &[0.0]),
    ];
    let law = ShiftLaw {
        base: vec![vec![0.0], vec![-3.0], vec![3.0]],
        velocity: vec![vec![-0.3], vec![0.0], vec![0.25]],
        power: 2.0,
    };
    for seed in [5u64, 6] {
        let seq = synth_sequence(&g, &truth, &law, 1e-3, 16, seed).unwrap();
        let dec = match decompose(&seq, 5, 12.0, 1e-2, &e) {
            Ok(d) => d,
            Err(err) => {
                c.check(false, format!("seed {seed}: {err}"));
                continue;
            }
        };
        let err = truth
            .iter()
            .map(|t| {
                dec.profiles
                    .iter()
                    .map(|p| {
                        let diff = p.sub(t);
                        (sobolev_norm(&diff, e.gamma_c) / sobolev_norm(t, e.gamma_c)).max(sobolev_norm(&diff, 2.0) / sobolev_norm(t, 2.0))
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        let dg = pythagorean_defects(&dec, &seq, e.gamma_c);
        let d2 = pythagorean_defects(&dec, &seq, 2.0);
        c.check(
            dec.profiles.len() == 3 && err < 5e-2,
            format!("seed {seed}: {} profiles, worst error {err:.1e}", dec.profiles.len()),
        );
        c.check(dg < 5e-2 && d2 < 5e-2, format!("seed {seed}: defects {dg:.1e}, {d2:.1e}"));
    }
    let gs = q80();
    let seq = vec![gs.field.clone(); 8];
    let out = compactness_extract(&seq, gs.norms.lebesgue_alpha2, gs.norms.sobolev_2, gs.norms.sobolev_gamma_c, &e);
    match out {
        Ok(r) => c.check(
            r.norm_gamma_c >= 0.95 * r.bound,
            format!("compactness {:.4} vs bound {:.4}", r.norm_gamma_c, r.bound),
        ),
        Err(err) => c.check(false, format!("compactness: {err}")),
    }
}

type Criterion = (u32, &'static str, Duration, fn(&mut Checks));

const CRITERIA: [Criterion; 12] = [
    (1, "exponent algebra", Duration::from_secs(1), exponent_algebra),
    (2, "spectral layer", Duration::from_secs(10), spectral_layer),
    (3, "pairing identity", Duration::from_secs(10), pairing_identity),
    (4, "integrator", Duration::from_secs(60), integrator),
    (5, "ground states", Duration::from_secs(120), ground_states),
    (6, "GN sharpness", Duration::from_secs(60), gn_sharpness),
    (7, "virial law", Duration::from_secs(60), virial_law),
    (8, "energy trapping", Duration::from_secs(60), energy_trapping),
    (9, "blowup pipeline", Duration::from_secs(300), blowup_pipeline),
    (10, "concentration", Duration::from_secs(300), concentration),
    (11, "limiting profile", Duration::from_secs(120), limiting_profile),
    (12, "profile decomposition", Duration::from_secs(120), profile_decomposition),
];

fn main() -> ExitCode {
    let mut failures = 0;
    for (id, name, budget, run) in CRITERIA {
        let mut c = Checks::default();
        let start = Instant::now();
        run(&mut c);
        let took = start.elapsed();
        c.check(took < budget, format!("runtime {:.2} s of {} s", took.as_secs_f64(), budget.as_secs()));
        let ok = c.failed.is_empty();
        failures += usize::from(!ok);
        println!("{} criterion {id:>2} {name}: {}", if ok { "PASS" } else { "FAIL" }, c.passed.join("; "));
        for f in &c.failed {
            println!("     failed: {f}");
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
