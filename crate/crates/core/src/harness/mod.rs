//! Closed-loop simulation harness: reference, integrator, scenarios,
//! metrics, bound diagnostics and file output.

pub mod bounds;
pub mod config;
pub mod integrator;
pub mod metrics;
pub mod plot;
pub mod reference;
pub mod series;
pub mod sim;
pub mod suites;

pub use bounds::{finite_time_bounds, FiniteTimeBound};
pub use config::{ChannelConfig, OutputOptions, ScenarioConfig, SCHEMA_VERSION};
pub use integrator::rk4_step;
pub use metrics::{compute_metrics, compute_metrics_with_band, Metrics};
pub use plot::emit_plot_script;
pub use reference::{reference_eval, ReferenceSpec};
pub use series::{export_csv, import_csv, Record, TimeSeries, BASE_COLUMNS};
pub use sim::{run_scenario, RunResult, Simulation};
pub use suites::{run_difftest, run_traintest, DiffTestConfig, DiffTestReport, TrainTestConfig, TrainTestReport};
