//! Attitude tracking for a 3-DOF bench helicopter with a finite-time
//! backstepping controller whose disturbance estimator is an RBF network
//! trained online by finite-time gradient descent.
//!
//! Module map:
//! - [`mathcore`]: sign-preserving powers and power inequalities
//! - [`plant`]: elevation/pitch dynamics and disturbances
//! - [`rbfnn`]: RBF network and its trainer
//! - [`hftd`]: hybrid finite-time differentiator
//! - [`controller`]: per-channel control law and the conventional baseline
//! - [`harness`]: simulation, metrics, configuration and output

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod controller;
pub mod error;
pub mod harness;
pub mod hftd;
pub mod mathcore;
pub mod plant;
pub mod rbfnn;

pub use controller::{Channel, ChannelController, ControllerGains, Variant};
pub use error::{Error, Result};
pub use harness::{run_scenario, ScenarioConfig, TimeSeries};
pub use hftd::{HftdConfig, HftdState};
pub use mathcore::{odd_pow, sig_pow, OddFraction};
pub use plant::{ControlInput, DisturbanceSpec, PlantParams, PlantState};
pub use rbfnn::{RbfNet, TrainerConfig};
