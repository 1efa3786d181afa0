//! Finite-time backstepping control channel and the conventional baseline.

pub mod baseline;
mod channel;
mod laws;

pub use channel::{ChannelController, Diagnostics, Filter, InternalState, StepOutput, Variant};
pub use laws::{
    compensated_errors, compensation_derivatives, control_law_elevation, control_law_pitch, intermediate_control,
    lyapunov, tracking_errors, Channel, CompensatorState, ControllerGains, RefSample,
};
