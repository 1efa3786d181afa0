//! Conventional adaptive-NN backstepping used as the comparison method:
//! linear virtual control, the standard command-filter compensator, and
//! plain gradient descent on the network. It shares the differentiator and
//! plant inversion with the finite-time design but none of its
//! fractional-power terms.

use crate::error::{check_finite, Result};
use crate::plant::PlantParams;
use crate::rbfnn::{NnErrorSignal, RbfNet, TrainerConfig};

use super::laws::{Channel, CompensatorState};

/// Gains used by the baseline: only the linear feedback pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineGains {
    pub k1: f64,
    pub k2: f64,
}

/// `alpha = -k1 e1 + dx_r`.
#[inline]
pub fn intermediate_control(e1: f64, ref_vel: f64, g: &BaselineGains) -> f64 {
    -g.k1 * e1 + ref_vel
}

#[inline]
pub fn compensation_derivatives(c: CompensatorState, filter_err: f64, g: &BaselineGains) -> (f64, f64) {
    (-g.k1 * c.xi1 + c.xi2 + filter_err, -g.k2 * c.xi2 - c.xi1)
}

/// Actuator command for either channel.
#[allow(clippy::too_many_arguments)]
pub fn control_law(
    channel: Channel,
    e1: f64,
    e2: f64,
    x2c: f64,
    angle: f64,
    nn_out: f64,
    g: &BaselineGains,
    p: &PlantParams,
) -> f64 {
    match channel {
        Channel::Elevation => {
            (-g.k2 * e2 - e1 + x2c + p.gravity_coefficient() * angle.cos() - nn_out) / p.elevation_gain()
        }
        Channel::Pitch => (-g.k2 * e2 - e1 + x2c - nn_out) / p.pitch_gain(),
    }
}

/// `E = dz2c + k2 z2 + z1`.
pub fn residual(dz2c: f64, z1: f64, z2: f64, g: &BaselineGains) -> Result<NnErrorSignal> {
    let e = dz2c + g.k2 * z2 + z1;
    check_finite("nn residual", &["E"], &[e])?;
    Ok(NnErrorSignal::new(e))
}

/// Plain gradient step: every parameter moves by `lambda * delta`.
pub fn gradient_step(net: &mut RbfNet, x: &[f64], e: f64, cfg: &TrainerConfig) -> Result<()> {
    let (dw, dmu, ddelta) = net.update_directions(x, e)?;
    let lr = cfg.learning_rate;
    let dw: Vec<f64> = dw.iter().map(|d| lr * d).collect();
    let dmu: Vec<f64> = dmu.iter().map(|d| lr * d).collect();
    let ddelta: Vec<f64> = ddelta.iter().map(|d| lr * d).collect();
    net.apply_increments(&dw, &dmu, &ddelta, cfg.width_floor)
}

/// One baseline control sample. Returns `(u, alpha, nn_out, E)`.
#[allow(clippy::too_many_arguments)]
pub fn baseline_control_step(
    channel: Channel,
    angle: f64,
    rate: f64,
    ref_pos: f64,
    ref_vel: f64,
    comp: CompensatorState,
    x1c: f64,
    x2c: f64,
    dz2c: f64,
    net: &RbfNet,
    g: &BaselineGains,
    p: &PlantParams,
) -> Result<(f64, f64, f64, NnErrorSignal)> {
    let e1 = angle - ref_pos;
    let e2 = rate - x1c;
    let alpha = intermediate_control(e1, ref_vel, g);
    let nn_out = net.eval(&[angle, rate])?;
    let u = control_law(channel, e1, e2, x2c, angle, nn_out, g, p);
    let r = residual(dz2c, e1 - comp.xi1, e2 - comp.xi2, g)?;
    Ok((u, alpha, nn_out, r))
}
