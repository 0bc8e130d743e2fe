use serde::Serialize;

use super::TrajectoryRecord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlowupFit {
    pub t_est: f64,
    /// r in ‖u(t)‖_{Ḣ²} ≈ C(T − t)^{−r}.
    pub rate: f64,
    /// rate ≥ 0.75·rate_exp.
    pub lower_bound_ok: bool,
    /// log10 of the total Ḣ² growth along the trajectory.
    pub decades: f64,
    pub points: usize,
    pub rms_log_residual: f64,
}

/// Least-squares line through (x, y); returns (slope, intercept, sse).
fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let sse = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - icpt - slope * a).powi(2))
        .sum();
    (slope, icpt, sse)
}

/// Fits log h_2 = c − r·log(T − t) over the last decade of Ḣ² growth, with
/// T chosen to minimise the residual (a golden-section search in log(T − t_last)
/// started from a log-spaced scan).
pub fn fit_blowup(trajectory: &[TrajectoryRecord], rate_exp: f64) -> Result<BlowupFit> {
    let first = trajectory.first().map_or(0.0, |r| r.h_2);
    let last = trajectory.last().map_or(0.0, |r| r.h_2);
    let decades = if first > 0.0 && last > 0.0 {
        (last / first).log10()
    } else {
        0.0
    };
    if decades < 1.0 || !decades.is_finite() {
        return Err(Error::InsufficientGrowth { decades });
    }
    // last decade: the trailing run of rows with h_2 ≥ last/10
    let start = trajectory
        .iter()
        .rposition(|r| r.h_2 < last / 10.0)
        .map_or(0, |i| i + 1);
    let sel = &trajectory[start..];
    if sel.len() < 4 {
        return Err(Error::InsufficientGrowth { decades });
    }
    let t: Vec<f64> = sel.iter().map(|r| r.t).collect();
    let y: Vec<f64> = sel.iter().map(|r| r.h_2.ln()).collect();
    let t_last = *t.last().unwrap();
    let span = t_last - t[0];
    let sse = |log_delta: f64| {
        let tt = t_last + log_delta.exp();
        let x: Vec<f64> = t.iter().map(|&ti| (tt - ti).ln()).collect();
        line_fit(&x, &y).2
    };
    let (lo, hi) = ((1e-8 * span).ln(), (10.0 * span).ln());
    let scan = 400;
    let grid: Vec<f64> = (0..=scan).map(|i| lo + (hi - lo) * i as f64 / scan as f64).collect();
    let best = (0..=scan)
        .min_by(|&a, &b| sse(grid[a]).total_cmp(&sse(grid[b])))
        .unwrap();
    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(scan)];
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (sse(c), sse(d));
    for _ in 0..200 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = sse(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = sse(d);
        }
    }
    let log_delta = 0.5 * (a + b);
    let t_est = t_last + log_delta.exp();
    let x: Vec<f64> = t.iter().map(|&ti| (t_est - ti).ln()).collect();
    let (slope, _, err) = line_fit(&x, &y);
    let rate = -slope;
    Ok(BlowupFit {
        t_est,
        rate,
        lower_bound_ok: rate >= rate_exp * 0.75,
        decades,
        points: sel.len(),
        rms_log_residual: (err / sel.len() as f64).sqrt(),
    })
}
