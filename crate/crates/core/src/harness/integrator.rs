//! Classical fixed-step fourth-order Runge-Kutta.

use crate::error::{Error, Result};

const STAGES: [&str; 4] = ["rk4 stage k1", "rk4 stage k2", "rk4 stage k3", "rk4 stage k4"];

fn check(stage: usize, k: &[f64]) -> Result<()> {
    match k.iter().position(|v| !v.is_finite()) {
        None => Ok(()),
        Some(i) => Err(Error::overflow(STAGES[stage], format!("component {i} = {}", k[i]))),
    }
}

/// Advances `y' = f(t, y)` from `t` to `t + dt`. Any input the caller holds
/// fixed across the step (such as an actuator command) lives in the closure.
pub fn rk4_step<const N: usize, F>(mut f: F, t: f64, y: &[f64; N], dt: f64) -> Result<[f64; N]>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    if !(dt > 0.0) {
        return Err(Error::domain(format!("rk4 step size must be positive, got {dt}")));
    }
    let shifted = |k: &[f64; N], c: f64| -> [f64; N] { std::array::from_fn(|i| y[i] + c * k[i]) };

    let k1 = f(t, y);
    check(0, &k1)?;
    let k2 = f(t + 0.5 * dt, &shifted(&k1, 0.5 * dt));
    check(1, &k2)?;
    let k3 = f(t + 0.5 * dt, &shifted(&k2, 0.5 * dt));
    check(2, &k3)?;
    let k4 = f(t + dt, &shifted(&k3, dt));
    check(3, &k4)?;

    let next: [f64; N] = std::array::from_fn(|i| y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    check(3, &next)?;
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_field_is_identity() {
        let y = [1.0, -2.0, 3.5];
        assert_eq!(rk4_step(|_, _| [0.0; 3], 0.0, &y, 0.1).unwrap(), y);
    }

    #[test]
    fn one_exponential_step() {
        let y = rk4_step(|_, y: &[f64; 1]| [y[0]], 0.0, &[1.0], 0.1).unwrap();
        // 1 + h + h^2/2 + h^3/6 + h^4/24
        assert_relative_eq!(y[0], 1.105_170_833_333_333_3, epsilon = 1e-15);
        assert!((y[0] - 0.1f64.exp()).abs() < 1e-7);
    }

    #[test]
    fn time_argument_is_staged() {
        // y' = t integrates exactly
        let y = rk4_step(|t, _: &[f64; 1]| [t], 1.0, &[0.0], 0.5).unwrap();
        assert_relative_eq!(y[0], 0.5 * (1.5f64 * 1.5 - 1.0), epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_step_and_reports_stage() {
        assert!(rk4_step(|_, y: &[f64; 1]| [y[0]], 0.0, &[1.0], 0.0).is_err());
        let err = rk4_step(
            |t, _: &[f64; 1]| [if t > 0.0 { f64::NAN } else { 1.0 }],
            0.0,
            &[0.0],
            0.1,
        )
        .unwrap_err();
        assert!(err.to_string().contains("k2"), "{err}");
    }
}
