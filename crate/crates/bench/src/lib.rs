//! Shared fixtures for the criterion benchmarks.

use ftgd_core::ScenarioConfig;

/// The nominal scenario shortened to `t_end` seconds.
pub fn nominal_for(t_end: f64) -> ScenarioConfig {
    ScenarioConfig {
        t_end,
        ..ScenarioConfig::nominal()
    }
}
