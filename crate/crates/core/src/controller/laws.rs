//! Algebraic pieces of the finite-time backstepping design for one channel.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mathcore::OddFraction;
use crate::plant::PlantParams;

/// Design gains of one channel.
///
/// `m1, m2, n1, n2` may be zero, which removes the finite-time terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerGains {
    pub k1: f64,
    pub k2: f64,
    pub m1: f64,
    pub m2: f64,
    pub n1: f64,
    pub n2: f64,
    pub h: OddFraction,
}

impl ControllerGains {
    /// The gain set of the reference helicopter experiment.
    pub fn nominal() -> Self {
        Self {
            k1: 1.0,
            k2: 2.0,
            m1: 0.5,
            m2: 0.5,
            n1: 1.0,
            n2: 1.0,
            h: OddFraction::new(3, 5).expect("3/5 is a valid odd fraction"),
        }
    }

    /// Same gains with every finite-time term switched off.
    pub fn without_finite_time_terms(self) -> Self {
        Self {
            m1: 0.0,
            m2: 0.0,
            n1: 0.0,
            n2: 0.0,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("k1", self.k1), ("k2", self.k2)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("gains.{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("m1", self.m1), ("m2", self.m2), ("n1", self.n1), ("n2", self.n2)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("gains.{name} must be non-negative, got {v}")));
            }
        }
        Ok(())
    }

    /// True when some `m_i <= n_i / (1 + h)`, which leaves the power-decay
    /// coefficient of the Lyapunov bound non-positive.
    pub fn power_decay_warning(&self) -> bool {
        let s = 1.0 + self.h.value();
        self.m1 <= self.n1 / s || self.m2 <= self.n2 / s
    }
}

/// Which axis a channel drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    Elevation,
    Pitch,
}

impl Channel {
    /// Indices of (angle, rate) in the plant state.
    pub fn state_indices(self) -> (usize, usize) {
        match self {
            Channel::Elevation => (0, 1),
            Channel::Pitch => (2, 3),
        }
    }
}

/// Reference position and its time derivative.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RefSample {
    pub pos: f64,
    pub vel: f64,
}

impl RefSample {
    pub fn new(pos: f64, vel: f64) -> Self {
        Self { pos, vel }
    }
}

/// Error-compensation signals `xi1, xi2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatorState {
    pub xi1: f64,
    pub xi2: f64,
}

impl CompensatorState {
    pub fn new(xi1: f64, xi2: f64) -> Self {
        Self { xi1, xi2 }
    }
}

/// `e1 = angle - x_r`, `e2 = rate - x1c`.
#[inline]
pub fn tracking_errors(angle: f64, rate: f64, x1c: f64, r: RefSample) -> (f64, f64) {
    (angle - r.pos, rate - x1c)
}

/// Compensator dynamics driven by the differentiator's filtering error
/// `filter_err = x1c - alpha`.
#[inline]
pub fn compensation_derivatives(c: CompensatorState, filter_err: f64, g: &ControllerGains) -> (f64, f64) {
    let dxi1 = -g.k1 * c.xi1 + c.xi2 + filter_err - g.n1 * g.h.pow(c.xi1);
    let dxi2 = -g.k2 * c.xi2 - c.xi1 - g.n2 * g.h.pow(c.xi2);
    (dxi1, dxi2)
}

/// `z = e - xi`.
#[inline]
pub fn compensated_errors(e1: f64, e2: f64, c: CompensatorState) -> (f64, f64) {
    (e1 - c.xi1, e2 - c.xi2)
}

/// Virtual control `alpha = -k1 e1 + dx_r - m1 z1^h`.
#[inline]
pub fn intermediate_control(e1: f64, ref_vel: f64, z1: f64, g: &ControllerGains) -> f64 {
    -g.k1 * e1 + ref_vel - g.m1 * g.h.pow(z1)
}

/// Elevation actuator command, cancelling gravity and the estimated disturbance.
#[allow(clippy::too_many_arguments)]
pub fn control_law_elevation(
    e1: f64,
    e2: f64,
    z2: f64,
    x2c: f64,
    x1: f64,
    nn_out: f64,
    g: &ControllerGains,
    p: &PlantParams,
) -> f64 {
    let a = -g.k2 * e2 - e1 + x2c + p.gravity_coefficient() * x1.cos() - g.m2 * g.h.pow(z2) - nn_out;
    a / p.elevation_gain()
}

/// Pitch actuator command; the pitch axis has no gravity drift.
pub fn control_law_pitch(
    e1: f64,
    e2: f64,
    z2: f64,
    x2c: f64,
    nn_out: f64,
    g: &ControllerGains,
    p: &PlantParams,
) -> f64 {
    (-g.k2 * e2 - e1 + x2c - g.m2 * g.h.pow(z2) - nn_out) / p.pitch_gain()
}

/// `V = (z1^2 + z2^2 + xi1^2 + xi2^2) / 2`.
#[inline]
pub fn lyapunov(z1: f64, z2: f64, c: CompensatorState) -> f64 {
    0.5 * (z1 * z1 + z2 * z2 + c.xi1 * c.xi1 + c.xi2 * c.xi2)
}
