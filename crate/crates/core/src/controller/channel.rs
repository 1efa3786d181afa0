use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};
use crate::hftd::{HftdConfig, HftdState};
use crate::plant::PlantParams;
use crate::rbfnn::{nn_residual, NnErrorSignal, RbfNet, TrainerConfig};

use super::baseline::{self, BaselineGains};
use super::laws::{
    compensated_errors, compensation_derivatives, control_law_elevation, control_law_pitch, intermediate_control,
    lyapunov, tracking_errors, Channel, CompensatorState, ControllerGains, RefSample,
};

/// Control design running on a channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Finite-time backstepping with finite-time gradient-descent training.
    Proposed,
    /// Conventional adaptive-NN backstepping with plain gradient descent.
    Baseline,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Proposed => "proposed",
            Variant::Baseline => "baseline",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proposed" => Ok(Variant::Proposed),
            "baseline" => Ok(Variant::Baseline),
            other => Err(Error::Config(format!("unknown controller variant {other:?}"))),
        }
    }
}

/// A differentiator instance: its tuning and current state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Filter {
    pub cfg: HftdConfig,
    pub state: HftdState,
}

/// Continuous states owned by a channel, in integration order:
/// `[xi1, xi2, x1c, x2c, y1c, y2c]` where `(x1c, x2c)` filter the virtual
/// control and `(y1c, y2c)` filter `z2`.
pub type InternalState = [f64; 6];

/// Per-sample quantities logged by the harness.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Diagnostics {
    pub e1: f64,
    pub e2: f64,
    pub z1: f64,
    pub z2: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub alpha: f64,
    pub x1c: f64,
    pub x2c: f64,
    pub dz2c: f64,
    pub u: f64,
    pub residual: f64,
    pub nn_out: f64,
    pub lyapunov: f64,
}

/// Result of [`ChannelController::channel_step`].
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutput {
    pub u: f64,
    pub next: ChannelController,
    pub diag: Diagnostics,
}

/// Everything one control channel carries between samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelController {
    pub channel: Channel,
    pub variant: Variant,
    pub gains: ControllerGains,
    pub comp: CompensatorState,
    /// Tracks the virtual control and its derivative.
    pub alpha_filter: Filter,
    /// Estimates the derivative of `z2` for the training residual.
    pub z2_filter: Filter,
    pub net: RbfNet,
    pub trainer: TrainerConfig,
    pub params: PlantParams,
}

impl ChannelController {
    pub fn new(
        channel: Channel,
        variant: Variant,
        gains: ControllerGains,
        hftd: HftdConfig,
        trainer: TrainerConfig,
        net: RbfNet,
        params: PlantParams,
    ) -> Result<Self> {
        gains.validate()?;
        hftd.validate()?;
        trainer.validate()?;
        params.validate()?;
        if net.input_dim() != 2 {
            return Err(Error::Config(format!(
                "channel network takes (angle, rate), got input dimension {}",
                net.input_dim()
            )));
        }
        let filter = Filter {
            cfg: hftd,
            state: HftdState::default(),
        };
        Ok(Self {
            channel,
            variant,
            gains,
            comp: CompensatorState::default(),
            alpha_filter: filter,
            z2_filter: filter,
            net,
            trainer,
            params,
        })
    }

    fn baseline_gains(&self) -> BaselineGains {
        BaselineGains {
            k1: self.gains.k1,
            k2: self.gains.k2,
        }
    }

    fn virtual_control(&self, e1: f64, ref_vel: f64, z1: f64) -> f64 {
        match self.variant {
            Variant::Proposed => intermediate_control(e1, ref_vel, z1, &self.gains),
            Variant::Baseline => baseline::intermediate_control(e1, ref_vel, &self.baseline_gains()),
        }
    }

    fn compensator_rhs(&self, c: CompensatorState, filter_err: f64) -> (f64, f64) {
        match self.variant {
            Variant::Proposed => compensation_derivatives(c, filter_err, &self.gains),
            Variant::Baseline => baseline::compensation_derivatives(c, filter_err, &self.baseline_gains()),
        }
    }

    /// Puts compensators at zero and both differentiators at rest on their
    /// inputs, so the first sample sees no filter transient.
    pub fn initialize(&mut self, angle: f64, rate: f64, r: RefSample) {
        self.comp = CompensatorState::default();
        let e1 = angle - r.pos;
        let alpha = self.virtual_control(e1, r.vel, e1);
        self.alpha_filter.state = HftdState::settled(alpha);
        let z2 = rate - alpha;
        self.z2_filter.state = HftdState::settled(z2);
    }

    pub fn internal(&self) -> InternalState {
        let (a, z) = (self.alpha_filter.state, self.z2_filter.state);
        [self.comp.xi1, self.comp.xi2, a.x1c, a.x2c, z.x1c, z.x2c]
    }

    pub fn set_internal(&mut self, s: &InternalState) {
        self.comp = CompensatorState::new(s[0], s[1]);
        self.alpha_filter.state = HftdState::new(s[2], s[3]);
        self.z2_filter.state = HftdState::new(s[4], s[5]);
    }

    /// Time derivative of the channel's internal states given the axis state
    /// and reference at the same instant.
    pub fn internal_derivatives(&self, s: &InternalState, angle: f64, rate: f64, r: RefSample) -> InternalState {
        let comp = CompensatorState::new(s[0], s[1]);
        let (x1c, x2c) = (s[2], s[3]);
        let (e1, e2) = tracking_errors(angle, rate, x1c, r);
        let (z1, z2) = compensated_errors(e1, e2, comp);
        let alpha = self.virtual_control(e1, r.vel, z1);
        let (dxi1, dxi2) = self.compensator_rhs(comp, x1c - alpha);
        let (dx1c, dx2c) = self.alpha_filter.cfg.rhs(x1c, x2c, alpha);
        let (dy1, dy2) = self.z2_filter.cfg.rhs(s[4], s[5], z2);
        [dxi1, dxi2, dx1c, dx2c, dy1, dy2]
    }

    /// Computes the actuator command for the current sample and applies one
    /// training iteration to the network.
    pub fn step_in_place(&mut self, angle: f64, rate: f64, r: RefSample) -> Result<(f64, Diagnostics)> {
        let (x1c, x2c) = self.alpha_filter.state.outputs();
        let dz2c = self.z2_filter.state.x2c;
        let x_in = [angle, rate];
        let (e1, e2) = tracking_errors(angle, rate, x1c, r);
        let (z1, z2) = compensated_errors(e1, e2, self.comp);

        let (u, alpha, nn_out, err): (f64, f64, f64, NnErrorSignal) = match self.variant {
            Variant::Proposed => {
                let alpha = intermediate_control(e1, r.vel, z1, &self.gains);
                let nn_out = self.net.eval(&x_in)?;
                let u = match self.channel {
                    Channel::Elevation => {
                        control_law_elevation(e1, e2, z2, x2c, angle, nn_out, &self.gains, &self.params)
                    }
                    Channel::Pitch => control_law_pitch(e1, e2, z2, x2c, nn_out, &self.gains, &self.params),
                };
                let err = nn_residual(dz2c, z1, z2, self.comp.xi2, &self.gains)?;
                (u, alpha, nn_out, err)
            }
            Variant::Baseline => baseline::baseline_control_step(
                self.channel,
                angle,
                rate,
                r.pos,
                r.vel,
                self.comp,
                x1c,
                x2c,
                dz2c,
                &self.net,
                &self.baseline_gains(),
                &self.params,
            )?,
        };
        check_finite("control law", &["u", "alpha"], &[u, alpha])?;

        match self.variant {
            Variant::Proposed => self.net.train(&x_in, err.residual, &self.trainer)?,
            Variant::Baseline => baseline::gradient_step(&mut self.net, &x_in, err.residual, &self.trainer)?,
        }

        let diag = Diagnostics {
            e1,
            e2,
            z1,
            z2,
            xi1: self.comp.xi1,
            xi2: self.comp.xi2,
            alpha,
            x1c,
            x2c,
            dz2c,
            u,
            residual: err.residual,
            nn_out,
            lyapunov: lyapunov(z1, z2, self.comp),
        };
        Ok((u, diag))
    }

    /// Value-returning form of [`ChannelController::step_in_place`]. The
    /// continuous internal states are advanced by the harness together with
    /// the plant.
    pub fn channel_step(&self, angle: f64, rate: f64, r: RefSample) -> Result<StepOutput> {
        let mut next = self.clone();
        let (u, diag) = next.step_in_place(angle, rate, r)?;
        Ok(StepOutput { u, next, diag })
    }
}
