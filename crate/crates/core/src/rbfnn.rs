//! Gaussian RBF network used as the disturbance estimator, and the
//! finite-time gradient-descent trainer that adapts its weights, centers
//! and widths online.
//!
//! Each parameter moves by `lambda * sig(delta)^p`, where `delta` is the
//! negative-gradient direction of `Y = E^2 / 2`. With `p = 1` this is plain
//! gradient descent; `p < 1` boosts small corrections.

use serde::{Deserialize, Serialize};

use crate::controller::ControllerGains;
use crate::error::{check_finite, Error, Result};
use crate::mathcore::sig;

/// Single-layer Gaussian RBF network `W^T Q(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RbfNet {
    weights: Vec<f64>,
    /// Row-major `M x N`.
    centers: Vec<f64>,
    widths: Vec<f64>,
    dim: usize,
}

impl RbfNet {
    /// Builds a network from weights, per-neuron centers and widths.
    pub fn new(weights: Vec<f64>, centers: Vec<Vec<f64>>, widths: Vec<f64>) -> Result<Self> {
        let m = weights.len();
        if m == 0 {
            return Err(Error::domain("RBF network needs at least one neuron"));
        }
        if centers.len() != m || widths.len() != m {
            return Err(Error::domain(format!(
                "RBF network: {m} weights but {} centers and {} widths",
                centers.len(),
                widths.len()
            )));
        }
        let dim = centers[0].len();
        if dim == 0 || centers.iter().any(|c| c.len() != dim) {
            return Err(Error::domain("RBF centers must share a non-zero dimension"));
        }
        let net = Self {
            weights,
            centers: centers.into_iter().flatten().collect(),
            widths,
            dim,
        };
        net.validate()?;
        Ok(net)
    }

    /// Zero weights, the same `width` for every neuron, and `neurons` centers
    /// spaced evenly along the diagonal of the box `[lower, upper]`.
    pub fn diagonal(neurons: usize, lower: &[f64], upper: &[f64], width: f64) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::domain("RBF init box bounds differ in dimension"));
        }
        let centers = (0..neurons)
            .map(|i| {
                let s = if neurons > 1 {
                    i as f64 / (neurons - 1) as f64
                } else {
                    0.5
                };
                lower.iter().zip(upper).map(|(lo, hi)| lo + s * (hi - lo)).collect()
            })
            .collect();
        Self::new(vec![0.0; neurons], centers, vec![width; neurons])
    }

    fn validate(&self) -> Result<()> {
        if self.widths.iter().any(|&d| !(d > 0.0)) {
            return Err(Error::domain("RBF widths must be positive"));
        }
        if self
            .weights
            .iter()
            .chain(&self.centers)
            .chain(&self.widths)
            .any(|v| !v.is_finite())
        {
            return Err(Error::domain("RBF parameters must be finite"));
        }
        Ok(())
    }

    pub fn neurons(&self) -> usize {
        self.weights.len()
    }

    pub fn input_dim(&self) -> usize {
        self.dim
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn center(&self, i: usize) -> &[f64] {
        &self.centers[i * self.dim..(i + 1) * self.dim]
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    /// Weights, then centers row by row, then widths.
    pub fn flat_params(&self) -> Vec<f64> {
        self.weights
            .iter()
            .chain(&self.centers)
            .chain(&self.widths)
            .copied()
            .collect()
    }

    /// Replaces all parameters from the [`RbfNet::flat_params`] layout.
    pub fn set_flat_params(&mut self, params: &[f64]) -> Result<()> {
        let (m, c) = (self.weights.len(), self.centers.len());
        if params.len() != 2 * m + c {
            return Err(Error::domain(format!(
                "expected {} RBF parameters, got {}",
                2 * m + c,
                params.len()
            )));
        }
        let mut next = self.clone();
        next.weights.copy_from_slice(&params[..m]);
        next.centers.copy_from_slice(&params[m..m + c]);
        next.widths.copy_from_slice(&params[m + c..]);
        next.validate()?;
        *self = next;
        Ok(())
    }

    /// Column names matching [`RbfNet::flat_params`], prefixed with `prefix`.
    pub fn param_names(&self, prefix: &str) -> Vec<String> {
        let m = self.neurons();
        let mut names: Vec<String> = (0..m).map(|i| format!("{prefix}w{i}")).collect();
        for i in 0..m {
            names.extend((0..self.dim).map(|j| format!("{prefix}mu{i}_{j}")));
        }
        names.extend((0..m).map(|i| format!("{prefix}delta{i}")));
        names
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::domain(format!(
                "RBF input has dimension {}, network expects {}",
                x.len(),
                self.dim
            )));
        }
        Ok(())
    }

    fn sq_dist(&self, i: usize, x: &[f64]) -> f64 {
        self.center(i).iter().zip(x).map(|(c, xj)| (xj - c) * (xj - c)).sum()
    }

    fn q(&self, i: usize, x: &[f64]) -> f64 {
        let d = self.widths[i];
        (-self.sq_dist(i, x) / (d * d)).exp()
    }

    /// Basis vector `q_i(x) = exp(-|x - mu_i|^2 / delta_i^2)`.
    pub fn basis(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_input(x)?;
        Ok((0..self.neurons()).map(|i| self.q(i, x)).collect())
    }

    /// Network output `W^T Q(x)`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.check_input(x)?;
        Ok((0..self.neurons()).map(|i| self.weights[i] * self.q(i, x)).sum())
    }

    /// Raw update directions `(dw, dmu, ddelta)` for residual `e` at input `x`,
    /// all computed from the current parameters.
    pub fn update_directions(&self, x: &[f64], e: f64) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        self.check_input(x)?;
        let m = self.neurons();
        let mut dw = Vec::with_capacity(m);
        let mut dmu = Vec::with_capacity(m * self.dim);
        let mut ddelta = Vec::with_capacity(m);
        for i in 0..m {
            let q = self.q(i, x);
            let d = self.widths[i];
            let ewq = e * self.weights[i] * q;
            dw.push(e * q);
            dmu.extend(self.center(i).iter().zip(x).map(|(c, xj)| ewq * (xj - c) / (d * d)));
            ddelta.push(ewq * self.sq_dist(i, x) / (d * d * d));
        }
        Ok((dw, dmu, ddelta))
    }

    /// One finite-time gradient-descent iteration, in place.
    pub fn train(&mut self, x: &[f64], e: f64, cfg: &TrainerConfig) -> Result<()> {
        let (dw, dmu, ddelta) = self.update_directions(x, e)?;
        let step = |d: &Vec<f64>| -> Vec<f64> { d.iter().map(|&v| cfg.learning_rate * sig(v, cfg.exponent)).collect() };
        self.apply_increments(&step(&dw), &step(&dmu), &step(&ddelta), cfg.width_floor)
    }

    /// Adds increments to weights, centers and widths, then clamps widths
    /// to `width_floor`.
    pub fn apply_increments(&mut self, dw: &[f64], dmu: &[f64], ddelta: &[f64], width_floor: f64) -> Result<()> {
        if dw.len() != self.weights.len() || dmu.len() != self.centers.len() || ddelta.len() != self.widths.len() {
            return Err(Error::domain("RBF increment lengths do not match the network"));
        }
        for (w, d) in self.weights.iter_mut().zip(dw) {
            *w += d;
        }
        for (c, d) in self.centers.iter_mut().zip(dmu) {
            *c += d;
        }
        for (w, d) in self.widths.iter_mut().zip(ddelta) {
            *w = (*w + d).max(width_floor);
        }
        if let Some(bad) = self.flat_params().into_iter().find(|v| !v.is_finite()) {
            return Err(Error::overflow(
                "ftgd update",
                format!("network parameter became {bad}"),
            ));
        }
        Ok(())
    }

    /// One finite-time gradient-descent iteration returning the updated network.
    pub fn ftgd_step(&self, x: &[f64], e: f64, cfg: &TrainerConfig) -> Result<RbfNet> {
        let mut next = self.clone();
        next.train(x, e, cfg)?;
        Ok(next)
    }
}

/// Learning rate, update exponent and width floor of the trainer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainerConfig {
    /// In (0, 1).
    pub learning_rate: f64,
    /// In [0, 1]; 1 gives classic gradient descent.
    pub exponent: f64,
    /// Lower clamp applied to every width after an update.
    pub width_floor: f64,
}

impl Default for TrainerConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.005,
            exponent: 0.6,
            width_floor: 0.05,
        }
    }
}

impl TrainerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate < 1.0) {
            return Err(Error::Config(format!(
                "learning rate {} outside (0, 1)",
                self.learning_rate
            )));
        }
        // p = 1 is admitted so the classic-gradient baseline shares this type
        if !(self.exponent >= 0.0 && self.exponent <= 1.0) {
            return Err(Error::Config(format!(
                "trainer exponent {} outside [0, 1]",
                self.exponent
            )));
        }
        if !(self.width_floor > 0.0 && self.width_floor.is_finite()) {
            return Err(Error::Config(format!(
                "width floor {} must be positive",
                self.width_floor
            )));
        }
        Ok(())
    }
}

/// Initial layout of a channel's network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RbfInit {
    pub neurons: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub width: f64,
}

impl Default for RbfInit {
    fn default() -> Self {
        Self {
            neurons: 5,
            lower: vec![-0.5, -1.0],
            upper: vec![0.5, 1.0],
            width: 1.0,
        }
    }
}

impl RbfInit {
    pub fn build(&self) -> Result<RbfNet> {
        RbfNet::diagonal(self.neurons, &self.lower, &self.upper, self.width)
            .map_err(|e| Error::Config(format!("rbf init: {e}")))
    }
}

/// Training residual and its cost `Y = E^2 / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NnErrorSignal {
    pub residual: f64,
    pub cost: f64,
}

impl NnErrorSignal {
    pub fn new(residual: f64) -> Self {
        Self {
            residual,
            cost: 0.5 * residual * residual,
        }
    }
}

/// Residual `E = dz2c + k2 z2 + z1 + m2 z2^h - n2 xi2^h` from the estimated
/// derivative `dz2c` of the compensated error.
pub fn nn_residual(dz2c: f64, z1: f64, z2: f64, xi2: f64, gains: &ControllerGains) -> Result<NnErrorSignal> {
    let h = gains.h;
    let e = dz2c + gains.k2 * z2 + z1 + gains.m2 * h.pow(z2) - gains.n2 * h.pow(xi2);
    check_finite("nn residual", &["E"], &[e])?;
    Ok(NnErrorSignal::new(e))
}
