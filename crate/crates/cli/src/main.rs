//! Command-line front end: scenario runs, variant comparison, and the
//! differentiator, training and bound diagnostics.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ftgd_core::controller::Variant;
use ftgd_core::harness::{
    compute_metrics, emit_plot_script, export_csv, finite_time_bounds, run_difftest, run_scenario, run_traintest,
    DiffTestConfig, Metrics, RunResult, TrainTestConfig,
};
use ftgd_core::{Channel, Error, HftdConfig, Result, ScenarioConfig, TrainerConfig};

const DEG: f64 = std::f64::consts::PI / 180.0;

#[derive(Parser)]
#[command(
    name = "ftgd",
    version,
    about = "Finite-time RBF backstepping control of a 3-DOF helicopter"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and report tracking metrics.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Overrides the controller named in the config.
        #[arg(long)]
        controller: Option<Variant>,
        #[arg(long)]
        out: PathBuf,
        /// Write the time series to `<out>/<controller>.csv`.
        #[arg(long)]
        csv: bool,
        /// Write `<out>/plot.py` (implies --csv).
        #[arg(long)]
        plot: bool,
        /// Append internal-state and network-parameter columns to the CSV.
        #[arg(long)]
        diag: bool,
    },
    /// Run the proposed and baseline controllers on the same scenario.
    Compare {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        diag: bool,
    },
    /// Differentiate sin(t) and report the worst errors after the transient.
    Difftest {
        /// Differentiator time scale; repeat to compare several.
        #[arg(long, default_values_t = [0.02, 0.01, 0.005])]
        eps: Vec<f64>,
        /// Upper limit on the step; each run uses min(dt, eps^2).
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
    },
    /// Train a network offline on sin(2 x1) and report the cost reduction.
    Traintest {
        #[arg(long, default_value_t = 100_000)]
        iterations: usize,
        #[arg(long, default_value_t = TrainerConfig::default().learning_rate)]
        learning_rate: f64,
        #[arg(long, default_value_t = TrainerConfig::default().exponent)]
        exponent: f64,
    },
    /// Evaluate the residual-set radius from the configured gains.
    Bounds {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, allow_hyphen_values = true)]
        eta3: f64,
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
    },
}

#[derive(clap::Args)]
struct ScenarioArgs {
    /// Scenario file (TOML). The nominal scenario is used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Read angles and angular rates in the config as degrees.
    #[arg(long)]
    deg: bool,
}

impl ScenarioArgs {
    fn load(&self) -> Result<ScenarioConfig> {
        match &self.config {
            Some(path) => ScenarioConfig::load(path, self.deg),
            None => Ok(ScenarioConfig::nominal()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors count as configuration errors
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Simulate {
            scenario,
            controller,
            out,
            csv,
            plot,
            diag,
        } => {
            let mut cfg = scenario.load()?;
            if let Some(v) = controller {
                cfg = cfg.with_variant(v);
            }
            cfg.output.diagnostics |= diag;
            create_dir(&out)?;
            let variant = cfg.controller;
            let res = run_scenario(&cfg)?;
            let csv_path = out.join(format!("{variant}.csv"));
            if csv || plot {
                export_csv(&res.series, &csv_path)?;
            }
            if plot {
                emit_plot_script(&[(&variant.to_string(), &csv_path)], &out.join("plot.py"))?;
            }
            finish(&cfg, &out, &[(variant, res)])
        }
        Command::Compare { scenario, out, diag } => {
            let mut cfg = scenario.load()?;
            cfg.output.diagnostics |= diag;
            create_dir(&out)?;
            let (p, b) = rayon::join(
                || run_scenario(&cfg.clone().with_variant(Variant::Proposed)),
                || run_scenario(&cfg.clone().with_variant(Variant::Baseline)),
            );
            let runs = [(Variant::Proposed, p?), (Variant::Baseline, b?)];
            let mut labelled = Vec::new();
            for (v, r) in &runs {
                let path = out.join(format!("{v}.csv"));
                export_csv(&r.series, &path)?;
                labelled.push((v.to_string(), path));
            }
            let refs: Vec<(&str, &Path)> = labelled.iter().map(|(l, p)| (l.as_str(), p.as_path())).collect();
            emit_plot_script(&refs, &out.join("plot.py"))?;
            finish(&cfg, &out, &runs)
        }
        Command::Difftest { eps, dt, t_end } => {
            println!(
                "{:>8} {:>10} {:>16} {:>16}",
                "eps", "dt", "max|x1c-sin t|", "max|x2c-cos t|"
            );
            for e in eps {
                let cfg = DiffTestConfig {
                    hftd: HftdConfig::default().with_eps(e),
                    dt: dt.min(e * e),
                    t_end,
                    ..DiffTestConfig::default()
                };
                let r = run_difftest(&cfg)?;
                println!(
                    "{:>8} {:>10.3e} {:>16.6e} {:>16.6e}",
                    r.eps, r.dt, r.max_signal_error, r.max_derivative_error
                );
            }
            Ok(())
        }
        Command::Traintest {
            iterations,
            learning_rate,
            exponent,
        } => {
            let cfg = TrainTestConfig {
                iterations,
                trainer: TrainerConfig {
                    learning_rate,
                    exponent,
                    ..TrainerConfig::default()
                },
                ..TrainTestConfig::default()
            };
            let r = run_traintest(&cfg)?;
            println!("cycles: {}", r.cycle_costs.len());
            println!("initial cycle cost: {:.6e}", r.initial_cost);
            println!("final cycle cost: {:.6e}", r.final_cost);
            println!("ratio: {:.6e}", r.final_ratio());
            Ok(())
        }
        Command::Bounds { scenario, eta3, kappa } => {
            let cfg = scenario.load()?;
            for ch in [Channel::Elevation, Channel::Pitch] {
                let b = finite_time_bounds(&cfg.channel(ch).gains, eta3, kappa)?;
                let radius = b
                    .radius
                    .map_or("none".to_string(), |r| format!("{r:.6e} rad ({:.4} deg)", r / DEG));
                println!(
                    "{ch:?}: eta1 = {:.6}, eta2 = {:.6}, valid = {}, |e1| radius = {radius}",
                    b.eta1, b.eta2, b.valid
                );
            }
            Ok(())
        }
    }
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Prints and stores the metrics table, then surfaces the first run failure.
fn finish(cfg: &ScenarioConfig, out: &Path, runs: &[(Variant, RunResult)]) -> Result<()> {
    let window = (0.5 * cfg.t_end, cfg.t_end);
    let mut table = format!(
        "# steady window [{}, {}] s\n{:<9} {:>12} {:>11} {:>16} {:>12} {:>12}\n",
        window.0, window.1, "variant", "rmse_deg", "settling_s", "max_err_set_deg", "final_V", "peak_u"
    );
    for (v, r) in runs {
        match compute_metrics(&r.series, window) {
            Ok(m) => table.push_str(&row(*v, &m)),
            Err(e) => {
                let _ = writeln!(table, "{v:<9} unavailable: {e}");
            }
        }
    }
    print!("{table}");
    let path = out.join("metrics.txt");
    fs::write(&path, &table).map_err(|source| Error::Io { path, source })?;
    match runs.iter().find_map(|(_, r)| r.failure.as_ref()) {
        Some(e) => Err(clone_failure(e)),
        None => Ok(()),
    }
}

fn row(v: Variant, m: &Metrics) -> String {
    let opt = |x: Option<f64>, scale: f64| x.map_or("-".to_string(), |x| format!("{:.6}", x / scale));
    format!(
        "{v:<9} {:>12.6e} {:>11} {:>16} {:>12.4e} {:>12.4}\n",
        m.rmse / DEG,
        opt(m.settling_time, 1.0),
        opt(m.max_error_after_settling, DEG),
        m.final_lyapunov,
        m.peak_control
    )
}

/// Run failures are only ever overflow or domain errors.
fn clone_failure(e: &Error) -> Error {
    match e {
        Error::Overflow { stage, step, detail } => Error::Overflow {
            stage,
            step: *step,
            detail: detail.clone(),
        },
        other => Error::Domain(other.to_string()),
    }
}
