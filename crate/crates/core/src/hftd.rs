//! Hybrid finite-time differentiator: a singularly perturbed second-order
//! filter whose first state tracks an input signal and whose second state
//! estimates the input's derivative. Accuracy is governed by `eps`.

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};
use crate::mathcore::sig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HftdConfig {
    pub a0: f64,
    pub a1: f64,
    pub b0: f64,
    pub b1: f64,
    /// Exponent on the tracking-error term, in (0, 1).
    pub r1: f64,
    /// Exponent on the damping term, in (0, 1).
    pub r2: f64,
    /// Time-scale parameter, in (0, 1).
    pub eps: f64,
}

impl Default for HftdConfig {
    fn default() -> Self {
        Self {
            a0: 5.0,
            a1: 0.5,
            b0: 2.0,
            b1: 0.5,
            r1: 0.5,
            r2: 0.5,
            eps: 0.01,
        }
    }
}

impl HftdConfig {
    pub fn with_eps(self, eps: f64) -> Self {
        Self { eps, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a0", self.a0), ("a1", self.a1), ("b0", self.b0), ("b1", self.b1)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("hftd.{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("r1", self.r1), ("r2", self.r2), ("eps", self.eps)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Config(format!("hftd.{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(())
    }

    /// Right-hand side of the differentiator ODE without finiteness checks.
    #[inline]
    pub fn rhs(&self, x1c: f64, x2c: f64, input: f64) -> (f64, f64) {
        let e = x1c - input;
        let ex = self.eps * x2c;
        let num = -self.a0 * e - self.a1 * sig(e, self.r1) - self.b0 * ex - self.b1 * sig(ex, self.r2);
        (x2c, num / (self.eps * self.eps))
    }
}

/// Signal estimate `x1c` and derivative estimate `x2c`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HftdState {
    pub x1c: f64,
    pub x2c: f64,
}

impl HftdState {
    pub fn new(x1c: f64, x2c: f64) -> Self {
        Self { x1c, x2c }
    }

    /// At rest on `input`: the equilibrium of the differentiator.
    pub fn settled(input: f64) -> Self {
        Self::new(input, 0.0)
    }

    /// `(signal estimate, derivative estimate)`.
    pub fn outputs(&self) -> (f64, f64) {
        (self.x1c, self.x2c)
    }
}

/// Time derivative of the differentiator state for the given input.
pub fn hftd_derivatives(s: &HftdState, input: f64, cfg: &HftdConfig) -> Result<HftdState> {
    let (d1, d2) = cfg.rhs(s.x1c, s.x2c, input);
    check_finite("hftd derivatives", &["dx1c", "dx2c"], &[d1, d2])?;
    Ok(HftdState::new(d1, d2))
}

/// `(x1c, x2c)`: the filtered signal and its derivative estimate.
pub fn hftd_outputs(s: &HftdState) -> (f64, f64) {
    s.outputs()
}
