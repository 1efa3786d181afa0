//! Residual-set radius of the finite-time bound, evaluated from the gains.

use crate::controller::ControllerGains;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteTimeBound {
    /// Linear decay rate `min(2 k1 - 1, 2 k2 - 1)`.
    pub eta1: f64,
    /// Power decay coefficient.
    pub eta2: f64,
    /// User-supplied estimate of the residual disturbance level.
    pub eta3: f64,
    pub kappa: f64,
    /// Bound on `|e1|` after the settling time, from whichever decay terms are positive.
    pub radius: Option<f64>,
    /// True only when both decay coefficients are positive.
    pub valid: bool,
}

pub fn finite_time_bounds(gains: &ControllerGains, eta3: f64, kappa: f64) -> Result<FiniteTimeBound> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::domain(format!("kappa {kappa} outside (0, 1)")));
    }
    if !(eta3 > 0.0 && eta3.is_finite()) {
        return Err(Error::domain(format!("eta3 must be positive, got {eta3}")));
    }
    let h = gains.h.value();
    let eta1 = (2.0 * gains.k1 - 1.0).min(2.0 * gains.k2 - 1.0);
    let scale = 2f64.powf((1.0 + h) / 2.0);
    let eta2 = [(gains.m1, gains.n1), (gains.m2, gains.n2)]
        .iter()
        .flat_map(|&(m, n)| [(m - n / (1.0 + h)) * scale, n / (1.0 + h) * scale])
        .fold(f64::INFINITY, f64::min);

    let linear = (eta1 > 0.0).then(|| 2.0 * (2.0 * eta3 / ((1.0 - kappa) * eta1)).sqrt());
    let power = (eta2 > 0.0).then(|| 2.0 * (2.0 * (eta3 / ((1.0 - kappa) * eta2)).powf(2.0 / (1.0 + h))).sqrt());
    let radius = match (linear, power) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    Ok(FiniteTimeBound {
        eta1,
        eta2,
        eta3,
        kappa,
        radius,
        valid: eta1 > 0.0 && eta2 > 0.0,
    })
}
