//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use ftgd_core::harness::{rk4_step, Record};
use ftgd_core::RbfNet;

/// Five-point central-difference gradient of `Y = (target - net(x))^2 / 2`
/// with respect to every flat parameter.
pub fn cost_gradient_fd(net: &RbfNet, x: &[f64], target: f64, h: f64) -> Vec<f64> {
    let base = net.flat_params();
    let cost = |params: &[f64]| {
        let mut n = net.clone();
        n.set_flat_params(params).unwrap();
        let e = target - n.eval(x).unwrap();
        0.5 * e * e
    };
    (0..base.len())
        .map(|i| {
            let at = |k: f64| {
                let mut p = base.clone();
                p[i] += k * h;
                cost(&p)
            };
            (-at(2.0) + 8.0 * at(1.0) - 8.0 * at(-1.0) + at(-2.0)) / (12.0 * h)
        })
        .collect()
}

/// Global error at t = 1 of RK4 on `y' = y, y(0) = 1` with `n` steps.
pub fn exp_global_error(n: usize) -> f64 {
    let dt = 1.0 / n as f64;
    let mut y = [1.0];
    for k in 0..n {
        y = rk4_step(|_, y: &[f64; 1]| [y[0]], k as f64 * dt, &y, dt).unwrap();
    }
    (y[0] - 1f64.exp()).abs()
}

/// Outcome of the Lyapunov monotonicity check.
#[derive(Debug, Default)]
pub struct LyapunovCheck {
    /// Consecutive pairs with `V_k > floor` but `V_{k+1} >= V_k`.
    pub increases_above_floor: usize,
    pub first_increase_at: Option<f64>,
    /// Time V first dropped below the floor.
    pub entered_floor_at: Option<f64>,
    /// Largest V after first dropping below the floor.
    pub max_after_floor: f64,
}

pub fn lyapunov_check(records: &[Record], t_after: f64, floor: f64) -> LyapunovCheck {
    let mut out = LyapunovCheck::default();
    for w in records.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.t <= t_after {
            continue;
        }
        if out.entered_floor_at.is_some() {
            out.max_after_floor = out.max_after_floor.max(b.lyapunov);
        } else if a.lyapunov > floor && b.lyapunov.partial_cmp(&a.lyapunov) != Some(std::cmp::Ordering::Less) {
            out.increases_above_floor += 1;
            out.first_increase_at.get_or_insert(b.t);
        }
        if out.entered_floor_at.is_none() && b.lyapunov < floor {
            out.entered_floor_at = Some(b.t);
        }
    }
    out
}

/// Largest absolute difference over every logged field of two runs.
pub fn max_record_difference(a: &[Record], b: &[Record]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(p, q)| {
            let f = |r: &Record| {
                let mut v = vec![
                    r.t, r.x1r, r.dx1r, r.e1, r.e2, r.z1, r.z2, r.xi1, r.xi2, r.u1, r.residual, r.nn_out, r.lyapunov,
                ];
                v.extend(r.x);
                v
            };
            f(p).iter().zip(f(q)).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}
