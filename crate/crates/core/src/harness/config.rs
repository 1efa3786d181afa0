//! Scenario configuration, read from a TOML document.
//!
//! Every field except `schema_version` has a default, so an empty document
//! with `schema_version = 1` describes the nominal elevation experiment.
//! All values are SI with angles in radians unless the document is loaded
//! through [`ScenarioConfig::from_toml_degrees`].
//!
//! A channel table that is present starts from [`ChannelConfig::default`]
//! (undisturbed, zero reference), not from the nominal elevation channel.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::controller::{Channel, ChannelController, ControllerGains, Variant};
use crate::error::{Error, Result};
use crate::hftd::HftdConfig;
use crate::plant::{DisturbanceSpec, PlantParams, PlantState};
use crate::rbfnn::{RbfInit, TrainerConfig};

use super::reference::ReferenceSpec;

pub const SCHEMA_VERSION: u32 = 1;

/// Per-channel design and environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelConfig {
    pub gains: ControllerGains,
    pub hftd: HftdConfig,
    pub trainer: TrainerConfig,
    pub rbf: RbfInit,
    pub disturbance: DisturbanceSpec,
    pub reference: ReferenceSpec,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            gains: ControllerGains::nominal(),
            hftd: HftdConfig::default(),
            trainer: TrainerConfig::default(),
            rbf: RbfInit::default(),
            disturbance: DisturbanceSpec::None,
            reference: ReferenceSpec::default(),
        }
    }
}

impl ChannelConfig {
    pub fn nominal_elevation() -> Self {
        Self {
            disturbance: DisturbanceSpec::nominal_elevation(),
            reference: ReferenceSpec::nominal_elevation(),
            ..Self::default()
        }
    }

    /// Builds the channel controller; the baseline variant drops the
    /// finite-time terms and trains with exponent 1.
    pub fn build(&self, channel: Channel, variant: Variant, params: PlantParams) -> Result<ChannelController> {
        let mut trainer = self.trainer;
        if variant == Variant::Baseline {
            trainer.exponent = 1.0;
        }
        ChannelController::new(
            channel,
            variant,
            self.gains,
            self.hftd,
            trainer,
            self.rbf.build()?,
            params,
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputOptions {
    /// Append differentiator, pitch and network columns to the CSV.
    pub diagnostics: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema_version: u32,
    /// Integration step (s).
    pub dt: f64,
    /// Final time (s).
    pub t_end: f64,
    /// Stability factor: every differentiator requires `dt <= c_stab * eps^2`.
    pub c_stab: f64,
    pub controller: Variant,
    pub initial: PlantState,
    pub plant: PlantParams,
    /// Symmetric actuator clamp; absent means unsaturated.
    pub saturation: Option<f64>,
    /// Simulation aborts once `|x1|` or `|x3|` reaches this (rad).
    pub angle_limit: f64,
    pub elevation: ChannelConfig,
    pub pitch: ChannelConfig,
    pub output: OutputOptions,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::nominal()
    }
}

impl ScenarioConfig {
    /// The reference experiment: start at -24 degrees elevation, `sin(2t)`
    /// disturbance, 20 s at `dt = 1e-4`. Pitch regulates to zero undisturbed.
    pub fn nominal() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            dt: 1e-4,
            t_end: 20.0,
            c_stab: 1.0,
            controller: Variant::Proposed,
            initial: PlantState::new((-24f64).to_radians(), 0.0, 0.0, 0.0),
            plant: PlantParams::default(),
            saturation: None,
            angle_limit: std::f64::consts::PI,
            elevation: ChannelConfig::nominal_elevation(),
            pitch: ChannelConfig::default(),
            output: OutputOptions::default(),
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.controller = variant;
        self
    }

    pub fn channel(&self, channel: Channel) -> &ChannelConfig {
        match channel {
            Channel::Elevation => &self.elevation,
            Channel::Pitch => &self.pitch,
        }
    }

    /// Number of integration steps; samples are taken at `k * dt` for `k = 0..=steps`.
    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end > self.dt && self.t_end.is_finite()) {
            return Err(Error::Config(format!(
                "t_end {} must exceed dt {}",
                self.t_end, self.dt
            )));
        }
        if !(self.c_stab > 0.0) {
            return Err(Error::Config(format!("c_stab must be positive, got {}", self.c_stab)));
        }
        if !(self.angle_limit > 0.0) {
            return Err(Error::Config("angle_limit must be positive".into()));
        }
        if let Some(s) = self.saturation {
            if !(s > 0.0) {
                return Err(Error::Config(format!("saturation limit must be positive, got {s}")));
            }
        }
        self.plant.validate()?;
        self.initial
            .check_envelope(self.angle_limit)
            .map_err(|e| Error::Config(format!("initial state: {e}")))?;
        for (name, ch) in [("elevation", &self.elevation), ("pitch", &self.pitch)] {
            let ctx = |e: Error| Error::Config(format!("{name}: {e}"));
            ch.gains.validate().map_err(ctx)?;
            ch.hftd.validate().map_err(ctx)?;
            ch.trainer.validate().map_err(ctx)?;
            ch.rbf.build().map_err(ctx)?;
            ch.disturbance.validate().map_err(ctx)?;
            ch.reference.validate().map_err(ctx)?;
            let limit = self.c_stab * ch.hftd.eps * ch.hftd.eps;
            // relative slack so that dt = eps^2 written in decimal passes
            if self.dt > limit * (1.0 + 1e-9) {
                return Err(Error::Config(format!(
                    "{name}: dt = {} exceeds the differentiator stability limit c_stab * eps^2 = {limit}",
                    self.dt
                )));
            }
        }
        Ok(())
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parses a document whose initial angles/rates and reference
    /// amplitudes/offsets are given in degrees.
    pub fn from_toml_degrees(s: &str) -> Result<Self> {
        let mut cfg: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        let k = std::f64::consts::PI / 180.0;
        let PlantState { x1, x2, x3, x4 } = cfg.initial;
        cfg.initial = PlantState::new(x1 * k, x2 * k, x3 * k, x4 * k);
        cfg.elevation.reference.scale_angles(k);
        cfg.pitch.reference.scale_angles(k);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path, degrees: bool) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        if degrees {
            Self::from_toml_degrees(&text)
        } else {
            Self::from_toml_str(&text)
        }
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("scenario config always serializes")
    }
}
