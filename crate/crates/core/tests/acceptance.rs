//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use approx::relative_eq;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ftgd_core::controller::{ControllerGains, Variant};
use ftgd_core::harness::{
    compute_metrics, finite_time_bounds, run_difftest, run_scenario, run_traintest, DiffTestConfig, ScenarioConfig,
    TimeSeries, TrainTestConfig,
};
use ftgd_core::mathcore::{power_mean_bounds, sig_pow, young_bound};
use ftgd_core::plant::disturbance_eval;
use ftgd_core::{HftdConfig, RbfNet, TrainerConfig};

const DEG: f64 = std::f64::consts::PI / 180.0;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

/// The nominal runs are shared by several criteria.
struct Runs {
    proposed: TimeSeries,
    proposed_time: Duration,
    proposed_overflow: Option<String>,
    baseline: TimeSeries,
}

fn nominal_runs() -> Runs {
    let start = Instant::now();
    let p = run_scenario(&ScenarioConfig::nominal()).expect("nominal config is valid");
    let proposed_time = start.elapsed();
    let b = run_scenario(&ScenarioConfig::nominal().with_variant(Variant::Baseline)).expect("valid");
    Runs {
        proposed_overflow: p.failure.as_ref().map(|e| e.to_string()),
        proposed: p.series,
        proposed_time,
        baseline: b.series,
    }
}

fn c1_properties() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut bad = Vec::new();

    for _ in 0..10_000 {
        let x: f64 = rng.gen_range(-1e3..1e3);
        let y: f64 = rng.gen_range(-1e3..1e3);
        let p: f64 = rng.gen_range(0.0..=1.0);
        let odd = sig_pow(-x, p).unwrap() == -sig_pow(x, p).unwrap();
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let mono = sig_pow(lo, p).unwrap() <= sig_pow(hi, p).unwrap();
        if !(odd && mono) {
            bad.push(format!("sig_pow x={x} y={y} p={p}"));
            break;
        }
    }

    let slack = |v: f64| v.abs() * 1e-12 + 1e-300;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=8);
        let ys: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let gamma = 1.0 - rng.gen::<f64>(); // (0, 1]
        let (lhs, mid, rhs) = power_mean_bounds(&ys, gamma).unwrap();
        if lhs > mid + slack(mid) || mid > rhs + slack(rhs) {
            bad.push(format!("power mean {ys:?} gamma={gamma}: {lhs} {mid} {rhs}"));
            break;
        }
    }
    for _ in 0..10_000 {
        let a: f64 = rng.gen_range(-10.0..10.0);
        let b: f64 = rng.gen_range(-10.0..10.0);
        let c1: f64 = rng.gen_range(0.05..3.0);
        let c2: f64 = rng.gen_range(0.05..3.0);
        let prod = a.abs().powf(c1) * b.abs().powf(c2);
        let bound = young_bound(a, b, c1, c2).unwrap();
        if prod > bound + slack(bound) {
            bad.push(format!("young a={a} b={b} c1={c1} c2={c2}"));
            break;
        }
    }

    let mut basis_min = f64::INFINITY;
    let mut basis_max = 0.0f64;
    let mut worst_grad = 0.0f64;
    for _ in 0..200 {
        let net = random_net(&mut rng);
        let x = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.5..1.5)];
        for q in net.basis(&x).unwrap() {
            basis_min = basis_min.min(q);
            basis_max = basis_max.max(q);
        }
        let target: f64 = rng.gen_range(-1.0..1.0);
        let e = target - net.eval(&x).unwrap();
        let (dw, dmu, dd) = net.update_directions(&x, e).unwrap();
        let fd = common::cost_gradient_fd(&net, &x, target, 1e-3);
        let analytic: Vec<f64> = dw
            .iter()
            .map(|v| -v)
            .chain(dmu.iter().chain(&dd).map(|v| -2.0 * v))
            .collect();
        for (a, f) in analytic.iter().zip(&fd) {
            if !relative_eq!(*a, *f, max_relative = 1e-6, epsilon = 1e-12) {
                worst_grad = worst_grad.max((a - f).abs() / f.abs().max(1e-300));
            }
        }
    }
    if !(basis_min > 0.0 && basis_max <= 1.0) {
        bad.push(format!("basis range [{basis_min}, {basis_max}]"));
    }
    if worst_grad > 0.0 {
        bad.push(format!("gradient mismatch rel {worst_grad:.3e}"));
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 10.0 {
        bad.push("runtime".into());
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "sig_pow, power-mean chain, Young bound on 1e4 samples each; basis in [{basis_min:.3e}, {basis_max}]; \
             FD gradient rel tol 1e-6 on 200 nets; {:.2}s < 10s{}",
            elapsed.as_secs_f64(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("; failures: {}", bad.join("; "))
            }
        ),
    )
}

fn random_net(rng: &mut StdRng) -> RbfNet {
    let m = rng.gen_range(1..=6);
    let weights = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let centers = (0..m)
        .map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.5..1.5)])
        .collect();
    let widths = (0..m).map(|_| rng.gen_range(0.3..2.0)).collect();
    RbfNet::new(weights, centers, widths).unwrap()
}

fn c2_differentiator() -> Outcome {
    let start = Instant::now();
    let report = |eps: f64| {
        let cfg = DiffTestConfig {
            hftd: HftdConfig::default().with_eps(eps),
            dt: 1e-4f64.min(eps * eps),
            ..DiffTestConfig::default()
        };
        run_difftest(&cfg).unwrap()
    };
    let nominal = report(0.01);
    let fine = report(0.005);
    let coarse = report(0.02);
    let elapsed = start.elapsed().as_secs_f64();
    let sig_ok = nominal.max_signal_error < 1e-3;
    let der_ok = nominal.max_derivative_error < 5e-2;
    let order_ok =
        fine.max_signal_error < coarse.max_signal_error && fine.max_derivative_error < coarse.max_derivative_error;
    Outcome::new(
        sig_ok && der_ok && order_ok && elapsed < 30.0,
        format!(
            "eps=0.01: max|x1c-sin t| = {:.4e} (< 1e-3: {}), max|x2c-cos t| = {:.4e} (< 5e-2: {}); \
             eps=0.005 signal/derivative {:.3e}/{:.3e} vs eps=0.02 {:.3e}/{:.3e} (ordered: {}); {elapsed:.2}s < 30s",
            nominal.max_signal_error,
            sig_ok,
            nominal.max_derivative_error,
            der_ok,
            fine.max_signal_error,
            fine.max_derivative_error,
            coarse.max_signal_error,
            coarse.max_derivative_error,
            order_ok,
        ),
    )
}

fn c3_training() -> Outcome {
    let start = Instant::now();
    let cfg = TrainTestConfig::default();
    assert_eq!(cfg.trainer, TrainerConfig::default());
    let r = run_traintest(&cfg).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let ratio = r.final_ratio();
    Outcome::new(
        ratio < 0.05 && elapsed < 30.0,
        format!(
            "{} iterations, cycle cost {:.4e} -> {:.4e}, ratio {ratio:.3e} < 0.05; {elapsed:.2}s < 30s",
            cfg.iterations, r.initial_cost, r.final_cost
        ),
    )
}

fn c4_nominal(runs: &Runs) -> Outcome {
    let s = &runs.proposed;
    let worst = s
        .records
        .iter()
        .filter(|r| r.t > 5.0)
        .map(|r| r.e1.abs())
        .fold(0.0, f64::max);
    let rmse = compute_metrics(s, (10.0, 20.0)).unwrap().rmse;
    let complete = runs.proposed_overflow.is_none() && s.records.last().is_some_and(|r| (r.t - 20.0).abs() < 1e-9);
    let secs = runs.proposed_time.as_secs_f64();
    Outcome::new(
        complete && worst < 0.5 * DEG && rmse < 0.1 * DEG && secs < 60.0,
        format!(
            "completed 20 s: {complete}{}; max|e1| for t>5s = {:.4e} deg < 0.5; rmse[10,20] = {:.4e} deg < 0.1; {secs:.2}s < 60s",
            runs.proposed_overflow.as_deref().map(|e| format!(" ({e})")).unwrap_or_default(),
            worst / DEG,
            rmse / DEG,
        ),
    )
}

fn c5_comparison(runs: &Runs) -> Outcome {
    let p = compute_metrics(&runs.proposed, (10.0, 20.0)).unwrap();
    let b = compute_metrics(&runs.baseline, (10.0, 20.0)).unwrap();
    let ts = |m: &ftgd_core::harness::Metrics| m.settling_time.unwrap_or(f64::INFINITY);
    Outcome::new(
        ts(&p) < ts(&b) && p.rmse < b.rmse,
        format!(
            "settling (band {:.3} deg) proposed {:.3}s vs baseline {:.3}s; rmse proposed {:.4e} deg vs baseline {:.4e} deg",
            p.band / DEG,
            ts(&p),
            ts(&b),
            p.rmse / DEG,
            b.rmse / DEG
        ),
    )
}

fn c6_lyapunov(runs: &Runs) -> Outcome {
    let c = common::lyapunov_check(&runs.proposed.records, 0.5, 1e-4);
    let pass = c.increases_above_floor == 0 && c.max_after_floor <= 2e-4;
    Outcome::new(
        pass,
        format!(
            "non-decreasing steps with V > 1e-4 after 0.5 s: {}{}; V < 1e-4 from t = {}; max V afterwards {:.3e} <= 2e-4",
            c.increases_above_floor,
            c.first_increase_at.map(|t| format!(" (first at {t:.4}s)")).unwrap_or_default(),
            c.entered_floor_at.map(|t| format!("{t:.4}s")).unwrap_or_else(|| "never".into()),
            c.max_after_floor
        ),
    )
}

fn c7_degeneration() -> Outcome {
    let base = ScenarioConfig {
        t_end: 0.1,
        ..ScenarioConfig::nominal()
    };
    let mut proposed = base.clone();
    for ch in [&mut proposed.elevation, &mut proposed.pitch] {
        ch.gains = ch.gains.without_finite_time_terms();
        ch.trainer.exponent = 1.0;
    }
    let baseline = base.with_variant(Variant::Baseline);
    let a = run_scenario(&proposed).unwrap().into_result().unwrap();
    let b = run_scenario(&baseline).unwrap().into_result().unwrap();
    let steps = a.len() - 1;
    let diff = common::max_record_difference(&a.records, &b.records);
    Outcome::new(
        steps == 1000 && diff < 1e-12,
        format!("proposed with m=n=0, p=1 vs baseline over {steps} steps: max abs difference {diff:.3e} < 1e-12"),
    )
}

fn c8_determinism() -> Outcome {
    let mut cfg = ScenarioConfig {
        t_end: 2.0,
        ..ScenarioConfig::nominal()
    };
    cfg.output.diagnostics = true;
    let csv = |s: &TimeSeries| {
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        buf
    };
    let first = run_scenario(&cfg).unwrap().into_result().unwrap();
    let second = run_scenario(&cfg).unwrap().into_result().unwrap();
    let (a, b) = (csv(&first), csv(&second));
    let identical = a == b;

    let back = TimeSeries::read_csv(a.as_slice()).unwrap();
    let bits = |s: &TimeSeries| -> Vec<u64> {
        s.records
            .iter()
            .zip(&s.extras)
            .flat_map(|(r, x)| {
                let mut v = vec![
                    r.t, r.x1r, r.dx1r, r.e1, r.e2, r.z1, r.z2, r.xi1, r.xi2, r.u1, r.residual, r.nn_out, r.lyapunov,
                ];
                v.extend(r.x);
                v.extend(x);
                v
            })
            .map(f64::to_bits)
            .collect()
    };
    let round_trip = back.header() == first.header() && bits(&back) == bits(&first) && !bits(&first).is_empty();

    let e1 = common::exp_global_error(20);
    let e2 = common::exp_global_error(40);
    let ratio = e1 / e2;
    let order_ok = (15.0..=17.0).contains(&ratio);
    Outcome::new(
        identical && round_trip && order_ok,
        format!(
            "two runs byte-identical ({} bytes): {identical}; CSV round-trip bit-exact over {} rows: {round_trip}; \
             rk4 error ratio on dt halving {ratio:.3} in [15, 17]",
            a.len(),
            first.len()
        ),
    )
}

/// Compares the post-settling error of a run with gains chosen so that both
/// decay coefficients are positive against the residual-set radius.
fn bound_report() -> String {
    let mut cfg = ScenarioConfig::nominal();
    cfg.output.diagnostics = true;
    cfg.elevation.gains = ControllerGains {
        m1: 1.0,
        m2: 1.0,
        n1: 0.5,
        n2: 0.5,
        ..ControllerGains::nominal()
    };
    let run = match run_scenario(&cfg) {
        Ok(r) if r.completed() => r.series,
        Ok(r) => return format!("adjusted-gain run failed: {}", r.failure.unwrap()),
        Err(e) => return format!("adjusted-gain run rejected: {e}"),
    };
    let x1c = run.column("x1c").unwrap();
    let alpha = run.column("alpha").unwrap();
    let mut proxy = 0.0f64;
    let mut worst = 0.0f64;
    for (k, r) in run.records.iter().enumerate() {
        if r.t <= 5.0 {
            continue;
        }
        let d1 = disturbance_eval(&cfg.elevation.disturbance, r.t).unwrap();
        proxy = proxy.max(0.5 * ((x1c[k] - alpha[k]).powi(2) + (d1 - r.nn_out).powi(2)));
        worst = worst.max(r.e1.abs());
    }
    let kappa = 0.5;
    match finite_time_bounds(&cfg.elevation.gains, proxy, kappa) {
        Ok(b) => format!(
            "m=1, n=0.5: eta1={:.3} eta2={:.3} valid={} eta3(proxy)={proxy:.3e} kappa={kappa}; radius {} vs max|e1| for t>5s {worst:.3e} ({})",
            b.eta1,
            b.eta2,
            b.valid,
            b.radius.map(|r| format!("{r:.3e}")).unwrap_or_else(|| "none".into()),
            match b.radius {
                Some(r) if worst <= r => "consistent",
                Some(_) => "exceeded",
                None => "no radius",
            }
        ),
        Err(e) => format!("bound not computable: {e}"),
    }
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Outcome::new(false, format!("panicked: {msg}"))
    })
}

fn main() {
    let runs = panic::catch_unwind(nominal_runs).ok();
    let with_runs = |f: fn(&Runs) -> Outcome| match &runs {
        Some(r) => guarded(|| f(r)),
        None => Outcome::new(false, "nominal runs could not be produced"),
    };

    let results = [
        ("C1 primitives and network properties", guarded(c1_properties)),
        ("C2 differentiator accuracy", guarded(c2_differentiator)),
        ("C3 offline training", guarded(c3_training)),
        ("C4 nominal closed loop", with_runs(c4_nominal)),
        ("C5 proposed beats baseline", with_runs(c5_comparison)),
        ("C6 Lyapunov decrease", with_runs(c6_lyapunov)),
        ("C7 degeneration to baseline", guarded(c7_degeneration)),
        ("C8 determinism and format", guarded(c8_determinism)),
    ];

    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("[INFO] bound consistency: {}", bound_report());
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
