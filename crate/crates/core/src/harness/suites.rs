//! Stand-alone checks of the differentiator and the trainer, outside the
//! closed loop.

use crate::error::Result;
use crate::hftd::{HftdConfig, HftdState};
use crate::rbfnn::{RbfInit, RbfNet, TrainerConfig};

use super::integrator::rk4_step;

/// Settings for the sinusoid differentiation test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffTestConfig {
    pub hftd: HftdConfig,
    pub dt: f64,
    pub t_end: f64,
    /// Errors are measured from this time on.
    pub t_skip: f64,
}

impl Default for DiffTestConfig {
    fn default() -> Self {
        Self {
            hftd: HftdConfig::default(),
            dt: 1e-4,
            t_end: 10.0,
            t_skip: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffTestReport {
    pub eps: f64,
    pub dt: f64,
    /// `max |x1c - sin t|` after `t_skip`.
    pub max_signal_error: f64,
    /// `max |x2c - cos t|` after `t_skip`.
    pub max_derivative_error: f64,
}

/// Feeds `sin(t)` through a differentiator started at rest on `sin(0)` and
/// records the worst tracking errors after the transient.
pub fn run_difftest(cfg: &DiffTestConfig) -> Result<DiffTestReport> {
    cfg.hftd.validate()?;
    let steps = (cfg.t_end / cfg.dt).round() as usize;
    let mut s = HftdState::settled(0.0);
    let (mut e_sig, mut e_der) = (0.0f64, 0.0f64);
    let hftd = cfg.hftd;
    for k in 0..=steps {
        let t = k as f64 * cfg.dt;
        if t >= cfg.t_skip {
            e_sig = e_sig.max((s.x1c - t.sin()).abs());
            e_der = e_der.max((s.x2c - t.cos()).abs());
        }
        if k == steps {
            break;
        }
        let y = rk4_step(
            |ts, y: &[f64; 2]| {
                let (a, b) = hftd.rhs(y[0], y[1], ts.sin());
                [a, b]
            },
            t,
            &[s.x1c, s.x2c],
            cfg.dt,
        )
        .map_err(|e| e.at_step(k))?;
        s = HftdState::new(y[0], y[1]);
    }
    Ok(DiffTestReport {
        eps: cfg.hftd.eps,
        dt: cfg.dt,
        max_signal_error: e_sig,
        max_derivative_error: e_der,
    })
}

/// Settings for offline approximation of `sin(2 x1)` along a closed input cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainTestConfig {
    pub init: RbfInit,
    pub trainer: TrainerConfig,
    pub iterations: usize,
    /// Samples per input cycle; also the smoothing window of the cost.
    pub cycle: usize,
}

impl Default for TrainTestConfig {
    fn default() -> Self {
        Self {
            init: RbfInit::default(),
            trainer: TrainerConfig::default(),
            iterations: 100_000,
            cycle: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainTestReport {
    /// Mean cost `Y` over each complete cycle, in order.
    pub cycle_costs: Vec<f64>,
    pub initial_cost: f64,
    pub final_cost: f64,
    pub net: RbfNet,
}

impl TrainTestReport {
    pub fn final_ratio(&self) -> f64 {
        self.final_cost / self.initial_cost
    }
}

/// Input at iteration `k`: an ellipse through the nominal operating box.
pub fn cycle_input(k: usize, cycle: usize) -> [f64; 2] {
    let th = std::f64::consts::TAU * (k % cycle) as f64 / cycle as f64;
    [0.5 * th.sin(), th.cos()]
}

pub fn train_target(x: &[f64; 2]) -> f64 {
    (2.0 * x[0]).sin()
}

/// Trains a fresh network on `sin(2 x1)` with the finite-time update, one
/// sample per iteration, and reports the per-cycle mean cost.
pub fn run_traintest(cfg: &TrainTestConfig) -> Result<TrainTestReport> {
    cfg.trainer.validate()?;
    let mut net = cfg.init.build()?;
    let mut cycle_costs = Vec::with_capacity(cfg.iterations / cfg.cycle);
    let mut acc = 0.0;
    for k in 0..cfg.iterations {
        let x = cycle_input(k, cfg.cycle);
        let e = train_target(&x) - net.eval(&x)?;
        acc += 0.5 * e * e;
        net.train(&x, e, &cfg.trainer).map_err(|err| err.at_step(k))?;
        if (k + 1) % cfg.cycle == 0 {
            cycle_costs.push(acc / cfg.cycle as f64);
            acc = 0.0;
        }
    }
    let initial_cost = cycle_costs.first().copied().unwrap_or(f64::NAN);
    let final_cost = cycle_costs.last().copied().unwrap_or(f64::NAN);
    Ok(TrainTestReport {
        cycle_costs,
        initial_cost,
        final_cost,
        net,
    })
}
