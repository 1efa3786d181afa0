//! Fixed-step closed-loop simulation.
//!
//! Each sample: both channels compute their commands from the current state
//! (and train their networks once), then the plant, both compensators and
//! all four differentiators advance together through one RK4 step with the
//! commands held.

use crate::controller::{Channel, ChannelController, Diagnostics, InternalState};
use crate::error::{Error, Result};
use crate::plant::{elevation_accel, pitch_accel, ControlInput, DisturbanceSpec, PlantState};

use super::config::ScenarioConfig;
use super::integrator::rk4_step;
use super::reference::ReferenceSpec;
use super::series::{Record, TimeSeries};

/// Plant (4) + elevation internals (6) + pitch internals (6).
const AUG: usize = 16;

/// Outcome of a run: the samples logged so far and, when the run stopped
/// early, why.
#[derive(Debug)]
pub struct RunResult {
    pub series: TimeSeries,
    pub failure: Option<Error>,
}

impl RunResult {
    pub fn completed(&self) -> bool {
        self.failure.is_none()
    }

    /// The series if the run completed, otherwise the error.
    pub fn into_result(self) -> Result<TimeSeries> {
        match self.failure {
            None => Ok(self.series),
            Some(e) => Err(e),
        }
    }
}

/// A running closed loop that can be advanced sample by sample.
#[derive(Debug, Clone)]
pub struct Simulation {
    cfg: ScenarioConfig,
    elevation: ChannelController,
    pitch: ChannelController,
    state: PlantState,
    step: usize,
}

fn disturbance(spec: &DisturbanceSpec, t: f64) -> Result<f64> {
    spec.eval(t)
}

impl Simulation {
    pub fn new(cfg: &ScenarioConfig) -> Result<Self> {
        cfg.validate()?;
        let variant = cfg.controller;
        let mut elevation = cfg.elevation.build(Channel::Elevation, variant, cfg.plant)?;
        let mut pitch = cfg.pitch.build(Channel::Pitch, variant, cfg.plant)?;
        let s = cfg.initial;
        elevation.initialize(s.x1, s.x2, cfg.elevation.reference.eval(0.0));
        pitch.initialize(s.x3, s.x4, cfg.pitch.reference.eval(0.0));
        Ok(Self {
            cfg: cfg.clone(),
            elevation,
            pitch,
            state: s,
            step: 0,
        })
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.cfg.dt
    }

    pub fn state(&self) -> PlantState {
        self.state
    }

    pub fn channel(&self, channel: Channel) -> &ChannelController {
        match channel {
            Channel::Elevation => &self.elevation,
            Channel::Pitch => &self.pitch,
        }
    }

    /// Diagnostic column names appended when `output.diagnostics` is set.
    pub fn diagnostic_columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = [
            "x1c",
            "x2c",
            "alpha",
            "dz2c",
            "x3r",
            "dx3r",
            "e1_pitch",
            "e2_pitch",
            "u2",
            "E_pitch",
            "nn_out_pitch",
            "V_pitch",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        cols.extend(self.elevation.net.param_names("net_"));
        cols
    }

    /// Computes commands for the current sample, advances the closed loop by
    /// one step, and returns what was sampled before the advance.
    pub fn advance(&mut self) -> Result<(Record, Option<Vec<f64>>)> {
        let k = self.step;
        let (record, extra, u) = self.sample().map_err(|e| e.at_step(k))?;
        self.integrate(u).map_err(|e| e.at_step(k))?;
        self.step += 1;
        Ok((record, extra))
    }

    fn sample(&mut self) -> Result<(Record, Option<Vec<f64>>, ControlInput)> {
        let t = self.time();
        let s = self.state;
        let r1 = self.cfg.elevation.reference.eval(t);
        let r2 = self.cfg.pitch.reference.eval(t);
        let (u1, d1) = self.elevation.step_in_place(s.x1, s.x2, r1)?;
        let (u2, d2) = self.pitch.step_in_place(s.x3, s.x4, r2)?;
        let u = ControlInput::new(u1, u2).saturate(self.cfg.saturation);

        let record = Record {
            t,
            x: s.to_array(),
            x1r: r1.pos,
            dx1r: r1.vel,
            e1: d1.e1,
            e2: d1.e2,
            z1: d1.z1,
            z2: d1.z2,
            xi1: d1.xi1,
            xi2: d1.xi2,
            u1: u.u1,
            residual: d1.residual,
            nn_out: d1.nn_out,
            lyapunov: d1.lyapunov,
        };
        let extra = self.cfg.output.diagnostics.then(|| {
            let Diagnostics {
                x1c, x2c, alpha, dz2c, ..
            } = d1;
            let mut row = vec![
                x1c,
                x2c,
                alpha,
                dz2c,
                r2.pos,
                r2.vel,
                d2.e1,
                d2.e2,
                u.u2,
                d2.residual,
                d2.nn_out,
                d2.lyapunov,
            ];
            row.extend(self.elevation.net.flat_params());
            row
        });
        Ok((record, extra, u))
    }

    fn integrate(&mut self, u: ControlInput) -> Result<()> {
        let t = self.time();
        let dt = self.cfg.dt;
        let mut y = [0.0; AUG];
        y[..4].copy_from_slice(&self.state.to_array());
        y[4..10].copy_from_slice(&self.elevation.internal());
        y[10..16].copy_from_slice(&self.pitch.internal());

        let cfg = &self.cfg;
        let (elev, pitch) = (&self.elevation, &self.pitch);
        let elev_ref: &ReferenceSpec = &cfg.elevation.reference;
        let pitch_ref: &ReferenceSpec = &cfg.pitch.reference;
        // disturbances are sampled up front so the RHS closure is infallible
        let stage_times = [t, t + 0.5 * dt, t + dt];
        let mut d = [[0.0; 2]; 3];
        for (i, &ts) in stage_times.iter().enumerate() {
            d[i] = [
                disturbance(&cfg.elevation.disturbance, ts)?,
                disturbance(&cfg.pitch.disturbance, ts)?,
            ];
        }
        let stage = |ts: f64| -> usize {
            if ts == t {
                0
            } else if ts == t + dt {
                2
            } else {
                1
            }
        };

        let rhs = |ts: f64, y: &[f64; AUG]| -> [f64; AUG] {
            let [d1, d2] = d[stage(ts)];
            let mut dy = [0.0; AUG];
            dy[0] = y[1];
            dy[1] = elevation_accel(y[0], u.u1, d1, &cfg.plant);
            dy[2] = y[3];
            dy[3] = pitch_accel(u.u2, d2, &cfg.plant);
            let ie: &InternalState = y[4..10].try_into().expect("slice of six");
            let ip: &InternalState = y[10..16].try_into().expect("slice of six");
            dy[4..10].copy_from_slice(&elev.internal_derivatives(ie, y[0], y[1], elev_ref.eval(ts)));
            dy[10..16].copy_from_slice(&pitch.internal_derivatives(ip, y[2], y[3], pitch_ref.eval(ts)));
            dy
        };
        let next = rk4_step(rhs, t, &y, dt)?;

        let state = PlantState::new(next[0], next[1], next[2], next[3]);
        state.check_envelope(cfg.angle_limit)?;
        self.state = state;
        self.elevation
            .set_internal(next[4..10].try_into().expect("slice of six"));
        self.pitch.set_internal(next[10..16].try_into().expect("slice of six"));
        Ok(())
    }
}

/// Runs a scenario to `t_end`. Identical configs give bit-identical series.
///
/// A numerical failure mid-run returns the samples logged up to the failing
/// step together with the error.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunResult> {
    let mut sim = Simulation::new(cfg)?;
    let extra_cols = if cfg.output.diagnostics {
        sim.diagnostic_columns()
    } else {
        Vec::new()
    };
    let steps = cfg.steps();
    let mut series = TimeSeries::new(extra_cols);
    series.records.reserve(steps + 1);
    // the last sample is logged without integrating past t_end
    for k in 0..=steps {
        let res = if k < steps {
            sim.advance()
        } else {
            sim.sample().map_err(|e| e.at_step(k)).map(|(r, e, _)| (r, e))
        };
        match res {
            Ok((record, extra)) => series.push(record, extra),
            Err(e) => {
                return Ok(RunResult {
                    series,
                    failure: Some(e),
                })
            }
        }
    }
    Ok(RunResult { series, failure: None })
}
