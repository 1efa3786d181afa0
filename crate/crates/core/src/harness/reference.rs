use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::controller::RefSample;
use crate::error::{Error, Result};

/// Reference trajectory of one channel, with its analytic derivative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ReferenceSpec {
    Constant {
        value: f64,
    },
    /// `offset + amplitude * sin(omega t + phase)`.
    Sinusoid {
        amplitude: f64,
        omega: f64,
        phase: f64,
        offset: f64,
    },
}

impl Default for ReferenceSpec {
    fn default() -> Self {
        ReferenceSpec::Constant { value: 0.0 }
    }
}

impl ReferenceSpec {
    /// `(pi/18) sin(0.3 pi t - pi/2)`: a 10 degree swing with a 20/3 s period.
    pub fn nominal_elevation() -> Self {
        ReferenceSpec::Sinusoid {
            amplitude: PI / 18.0,
            omega: 0.3 * PI,
            phase: -PI / 2.0,
            offset: 0.0,
        }
    }

    pub fn eval(&self, t: f64) -> RefSample {
        match *self {
            ReferenceSpec::Constant { value } => RefSample::new(value, 0.0),
            ReferenceSpec::Sinusoid {
                amplitude,
                omega,
                phase,
                offset,
            } => {
                let arg = omega * t + phase;
                RefSample::new(offset + amplitude * arg.sin(), amplitude * omega * arg.cos())
            }
        }
    }

    /// Peak deviation of the reference from its centre line.
    pub fn amplitude(&self) -> f64 {
        match *self {
            ReferenceSpec::Constant { .. } => 0.0,
            ReferenceSpec::Sinusoid { amplitude, .. } => amplitude.abs(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ReferenceSpec::Constant { value } => value.is_finite(),
            ReferenceSpec::Sinusoid {
                amplitude,
                omega,
                phase,
                offset,
            } => [amplitude, omega, phase, offset].iter().all(|v| v.is_finite()),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config("reference parameters must be finite".into()))
        }
    }

    pub(crate) fn scale_angles(&mut self, k: f64) {
        match self {
            ReferenceSpec::Constant { value } => *value *= k,
            ReferenceSpec::Sinusoid { amplitude, offset, .. } => {
                *amplitude *= k;
                *offset *= k;
            }
        }
    }
}

/// The elevation reference of the nominal experiment: `(x1r, dx1r)` at `t`.
pub fn reference_eval(t: f64) -> (f64, f64) {
    let r = ReferenceSpec::nominal_elevation().eval(t);
    (r.pos, r.vel)
}
