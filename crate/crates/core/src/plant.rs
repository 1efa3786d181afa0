//! Elevation and pitch dynamics of the bench helicopter.

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};

/// Physical constants of the elevation/pitch model.
///
/// The defaults are representative bench-helicopter values; they are
/// configuration, not measured data for a particular rig.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantParams {
    /// Elevation inertia (kg m^2).
    pub j_alpha: f64,
    /// Pitch inertia (kg m^2).
    pub j_beta: f64,
    /// Elevation arm length (m).
    pub l_a: f64,
    /// Pitch arm length (m).
    pub l_h: f64,
    /// Effective mass (kg).
    pub m: f64,
    /// Gravity (m/s^2).
    pub g: f64,
}

impl Default for PlantParams {
    fn default() -> Self {
        Self {
            j_alpha: 1.044,
            j_beta: 0.044,
            l_a: 0.660,
            l_h: 0.178,
            m: 1.15,
            g: 9.81,
        }
    }
}

impl PlantParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("j_alpha", self.j_alpha),
            ("j_beta", self.j_beta),
            ("l_a", self.l_a),
            ("l_h", self.l_h),
            ("m", self.m),
            ("g", self.g),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!(
                    "plant.{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Elevation input gain `L_a / J_alpha`.
    pub fn elevation_gain(&self) -> f64 {
        self.l_a / self.j_alpha
    }

    /// Pitch input gain `L_h / J_beta`.
    pub fn pitch_gain(&self) -> f64 {
        self.l_h / self.j_beta
    }

    /// Gravity torque coefficient `g m L_a / J_alpha`; multiplies `cos(x1)`.
    pub fn gravity_coefficient(&self) -> f64 {
        self.g / self.j_alpha * self.m * self.l_a
    }
}

/// Helicopter state: elevation angle and rate, pitch angle and rate (rad, rad/s).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlantState {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl PlantState {
    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Self { x1, x2, x3, x4 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Checks finiteness and that both angles stay inside `|angle| < limit`.
    pub fn check_envelope(&self, limit: f64) -> Result<()> {
        check_finite("plant state", &["x1", "x2", "x3", "x4"], &self.to_array())?;
        for (name, angle) in [("x1", self.x1), ("x3", self.x3)] {
            if angle.abs() >= limit {
                return Err(Error::overflow(
                    "plant state",
                    format!("{name} = {angle} rad left the envelope |angle| < {limit}"),
                ));
            }
        }
        Ok(())
    }
}

/// Actuator commands for the elevation and pitch axes.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ControlInput {
    pub u1: f64,
    pub u2: f64,
}

impl ControlInput {
    pub fn new(u1: f64, u2: f64) -> Self {
        Self { u1, u2 }
    }

    /// Clamps both commands to `[-limit, limit]` when a limit is given.
    pub fn saturate(self, limit: Option<f64>) -> Self {
        match limit {
            Some(l) => Self::new(self.u1.clamp(-l, l), self.u2.clamp(-l, l)),
            None => self,
        }
    }
}

/// Time-dependent compound disturbance acting on one axis (rad/s^2).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DisturbanceSpec {
    #[default]
    None,
    /// `amplitude * sin(omega t + phase)`.
    Sinusoid { amplitude: f64, omega: f64, phase: f64 },
    /// Piecewise-linear through `(times[i], values[i])`, held constant past the last sample.
    Tabulated { times: Vec<f64>, values: Vec<f64> },
}

impl DisturbanceSpec {
    /// `sin(2t)` on the elevation axis.
    pub fn nominal_elevation() -> Self {
        DisturbanceSpec::Sinusoid {
            amplitude: 1.0,
            omega: 2.0,
            phase: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DisturbanceSpec::None => Ok(()),
            DisturbanceSpec::Sinusoid {
                amplitude,
                omega,
                phase,
            } => {
                if [amplitude, omega, phase].iter().all(|v| v.is_finite()) {
                    Ok(())
                } else {
                    Err(Error::Config("sinusoid disturbance parameters must be finite".into()))
                }
            }
            DisturbanceSpec::Tabulated { times, values } => {
                if times.is_empty() || times.len() != values.len() {
                    return Err(Error::Config(
                        "tabulated disturbance needs equally many (>= 1) times and values".into(),
                    ));
                }
                if times.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::Config(
                        "tabulated disturbance times must be strictly increasing".into(),
                    ));
                }
                if times.iter().chain(values).any(|v| !v.is_finite()) {
                    return Err(Error::Config("tabulated disturbance entries must be finite".into()));
                }
                Ok(())
            }
        }
    }

    /// Disturbance value at time `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        match self {
            DisturbanceSpec::None => Ok(0.0),
            DisturbanceSpec::Sinusoid {
                amplitude,
                omega,
                phase,
            } => Ok(amplitude * (omega * t + phase).sin()),
            DisturbanceSpec::Tabulated { times, values } => {
                let first = *times
                    .first()
                    .ok_or_else(|| Error::domain("tabulated disturbance is empty"))?;
                if t < first {
                    return Err(Error::domain(format!(
                        "t = {t} precedes first disturbance sample at {first}"
                    )));
                }
                // index of the first sample strictly after t
                let i = times.partition_point(|&ti| ti <= t);
                if i == times.len() {
                    return Ok(values[values.len() - 1]);
                }
                let (t0, t1) = (times[i - 1], times[i]);
                let w = (t - t0) / (t1 - t0);
                Ok(values[i - 1] + w * (values[i] - values[i - 1]))
            }
        }
    }
}

/// Free-function form of [`DisturbanceSpec::eval`].
pub fn disturbance_eval(spec: &DisturbanceSpec, t: f64) -> Result<f64> {
    spec.eval(t)
}

/// Elevation acceleration `(L_a/J_a) u1 - (g/J_a) m L_a cos(x1) + d1`.
#[inline]
pub fn elevation_accel(x1: f64, u1: f64, d1: f64, p: &PlantParams) -> f64 {
    p.elevation_gain() * u1 - p.gravity_coefficient() * x1.cos() + d1
}

/// Pitch acceleration `(L_h/J_b) u2 + d2`.
#[inline]
pub fn pitch_accel(u2: f64, d2: f64, p: &PlantParams) -> f64 {
    p.pitch_gain() * u2 + d2
}

/// State derivative of the elevation/pitch model.
pub fn plant_derivatives(s: &PlantState, u: &ControlInput, d1: f64, d2: f64, p: &PlantParams) -> Result<PlantState> {
    let ds = PlantState::new(s.x2, elevation_accel(s.x1, u.u1, d1, p), s.x4, pitch_accel(u.u2, d2, p));
    check_finite("plant derivatives", &["dx1", "dx2", "dx3", "dx4"], &ds.to_array())?;
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn gravity_compensation_is_equilibrium() {
        let p = PlantParams::default();
        for x1 in [-1.0, -0.3, 0.0, 0.4, 1.2] {
            let s = PlantState::new(x1, 0.0, 0.0, 0.0);
            let u = ControlInput::new(p.g * p.m * f64::cos(x1), 0.0);
            let ds = plant_derivatives(&s, &u, 0.0, 0.0, &p).unwrap();
            assert_relative_eq!(ds.x2, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn pitch_has_no_drift() {
        let p = PlantParams::default();
        let s = PlantState::new(0.3, -0.2, 0.5, 1.0);
        let ds = plant_derivatives(&s, &ControlInput::new(0.7, 0.0), 0.0, 0.0, &p).unwrap();
        assert_eq!(ds.x4, 0.0);
        assert_eq!(ds.x3, 1.0);
    }

    #[test]
    fn disturbance_is_additive() {
        let p = PlantParams::default();
        let s = PlantState::new(0.3, -0.2, 0.5, 1.0);
        let u = ControlInput::new(0.7, 0.1);
        let a = plant_derivatives(&s, &u, 0.3, 0.0, &p).unwrap();
        let b = plant_derivatives(&s, &u, 0.0, 0.0, &p).unwrap();
        assert_eq!(a.x1 - b.x1, 0.0);
        assert_relative_eq!(a.x2 - b.x2, 0.3, epsilon = 1e-15);
        assert_eq!(a.x3 - b.x3, 0.0);
        assert_eq!(a.x4 - b.x4, 0.0);
    }

    #[test]
    fn horizontal_arm_has_no_gravity_torque() {
        let p = PlantParams::default();
        for x1 in [FRAC_PI_2, -FRAC_PI_2] {
            let s = PlantState::new(x1, 0.4, 0.1, -0.3);
            let ds = plant_derivatives(&s, &ControlInput::default(), 0.0, 0.0, &p).unwrap();
            assert_eq!(ds.x1, 0.4);
            assert_relative_eq!(ds.x2, 0.0, epsilon = 1e-15);
            assert_eq!((ds.x3, ds.x4), (-0.3, 0.0));
        }
    }

    #[test]
    fn overflow_names_component() {
        let p = PlantParams::default();
        let err = plant_derivatives(
            &PlantState::default(),
            &ControlInput::new(f64::INFINITY, 0.0),
            0.0,
            0.0,
            &p,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Overflow { .. }));
        assert!(err.to_string().contains("dx2"));
    }

    #[test]
    fn disturbance_examples() {
        let s = DisturbanceSpec::nominal_elevation();
        assert_eq!(s.eval(0.0).unwrap(), 0.0);
        assert_relative_eq!(s.eval(FRAC_PI_4).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(DisturbanceSpec::None.eval(123.0).unwrap(), 0.0);
    }

    #[test]
    fn tabulated_disturbance() {
        let s = DisturbanceSpec::Tabulated {
            times: vec![1.0, 2.0, 4.0],
            values: vec![0.0, 1.0, -1.0],
        };
        s.validate().unwrap();
        assert!(s.eval(0.5).is_err());
        assert_eq!(s.eval(1.0).unwrap(), 0.0);
        assert_eq!(s.eval(1.5).unwrap(), 0.5);
        assert_eq!(s.eval(2.0).unwrap(), 1.0);
        assert_eq!(s.eval(3.0).unwrap(), 0.0);
        assert_eq!(s.eval(9.0).unwrap(), -1.0);

        let bad = DisturbanceSpec::Tabulated {
            times: vec![0.0, 0.0],
            values: vec![1.0, 2.0],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn params_validation() {
        PlantParams::default().validate().unwrap();
        let p = PlantParams {
            m: 0.0,
            ..PlantParams::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn envelope() {
        assert!(PlantState::new(0.1, 50.0, -0.2, 0.0).check_envelope(3.0).is_ok());
        assert!(PlantState::new(3.5, 0.0, 0.0, 0.0)
            .check_envelope(std::f64::consts::PI)
            .is_err());
        assert!(PlantState::new(0.0, f64::NAN, 0.0, 0.0).check_envelope(3.0).is_err());
    }

    proptest! {
        #[test]
        fn affine_in_inputs(
            x1 in -1.5f64..1.5, x2 in -2.0f64..2.0,
            ua in -5.0f64..5.0, ub in -5.0f64..5.0, va in -5.0f64..5.0, vb in -5.0f64..5.0,
            da in -1.0f64..1.0, db in -1.0f64..1.0, ea in -1.0f64..1.0, eb in -1.0f64..1.0,
        ) {
            let p = PlantParams::default();
            let s = PlantState::new(x1, x2, 0.2, -0.1);
            let f = |u1, u2, d1, d2| plant_derivatives(&s, &ControlInput::new(u1, u2), d1, d2, &p).unwrap().to_array();
            let zero = f(0.0, 0.0, 0.0, 0.0);
            let a = f(ua, va, da, ea);
            let b = f(ub, vb, db, eb);
            let ab = f(ua + ub, va + vb, da + db, ea + eb);
            for i in 0..4 {
                // f(a + b) - f(0) = (f(a) - f(0)) + (f(b) - f(0))
                prop_assert!((ab[i] - zero[i] - (a[i] - zero[i]) - (b[i] - zero[i])).abs() < 1e-12);
            }
        }
    }
}
