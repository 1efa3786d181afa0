use crate::error::{Error, Result};

use super::series::TimeSeries;

/// Summary of an elevation tracking run. Angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// RMSE of `e1` over the evaluation window.
    pub rmse: f64,
    /// First time after which `|e1|` stays inside the settling band;
    /// `None` if the last sample is still outside.
    pub settling_time: Option<f64>,
    /// Largest `|e1|` from the settling time on.
    pub max_error_after_settling: Option<f64>,
    pub final_lyapunov: f64,
    pub peak_control: f64,
    /// Half-width of the settling band.
    pub band: f64,
}

/// Metrics with a settling band of 2% of the reference amplitude, taken as
/// half the peak-to-peak swing of `x1r`.
pub fn compute_metrics(series: &TimeSeries, window: (f64, f64)) -> Result<Metrics> {
    let (lo, hi) = series
        .records
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.x1r), hi.max(r.x1r))
        });
    let amplitude = if series.is_empty() { 0.0 } else { 0.5 * (hi - lo) };
    compute_metrics_with_band(series, window, 0.02 * amplitude)
}

pub fn compute_metrics_with_band(series: &TimeSeries, window: (f64, f64), band: f64) -> Result<Metrics> {
    let (ta, tb) = window;
    let in_window: Vec<f64> = series
        .records
        .iter()
        .filter(|r| r.t >= ta && r.t <= tb)
        .map(|r| r.e1)
        .collect();
    if in_window.is_empty() {
        return Err(Error::domain(format!(
            "metrics window [{ta}, {tb}] contains no samples"
        )));
    }
    let rmse = (in_window.iter().map(|e| e * e).sum::<f64>() / in_window.len() as f64).sqrt();

    let recs = &series.records;
    let last_outside = recs.iter().rposition(|r| r.e1.abs() > band);
    let settle_idx = match last_outside {
        None => Some(0),
        Some(i) if i + 1 < recs.len() => Some(i + 1),
        Some(_) => None,
    };
    let settling_time = settle_idx.map(|i| recs[i].t);
    let max_error_after_settling = settle_idx.map(|i| recs[i..].iter().map(|r| r.e1.abs()).fold(0.0, f64::max));

    Ok(Metrics {
        rmse,
        settling_time,
        max_error_after_settling,
        final_lyapunov: recs.last().map_or(0.0, |r| r.lyapunov),
        peak_control: recs.iter().map(|r| r.u1.abs()).fold(0.0, f64::max),
        band,
    })
}
