//! Sign-preserving fractional powers and the two power inequalities the
//! finite-time stability argument leans on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `|x|^p * sign(x)` with `sign(0) = 0`. Unchecked; use [`sig_pow`] at API
/// boundaries.
#[inline]
pub fn sig(x: f64, p: f64) -> f64 {
    if x > 0.0 {
        x.powf(p)
    } else if x < 0.0 {
        -(-x).powf(p)
    } else {
        0.0
    }
}

/// Checked sign-preserving power `sig(x)^p = |x|^p sign(x)`.
pub fn sig_pow(x: f64, p: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("sig_pow: non-finite input {x}")));
    }
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::domain(format!(
            "sig_pow: exponent must be finite and >= 0, got {p}"
        )));
    }
    Ok(sig(x, p))
}

/// A ratio `h2/h1` of positive odd integers with value in (0, 1), stored in
/// lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct OddFraction {
    num: u32,
    den: u32,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl OddFraction {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 || num.is_multiple_of(2) || den.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "odd fraction {num}/{den}: both terms must be positive odd integers"
            )));
        }
        if num >= den {
            return Err(Error::domain(format!("odd fraction {num}/{den} must be below 1")));
        }
        let g = gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    pub fn value(&self) -> f64 {
        f64::from(self.num) / f64::from(self.den)
    }

    /// `x^h` for the odd ratio `h`, which is real and sign-preserving.
    #[inline]
    pub fn pow(&self, x: f64) -> f64 {
        sig(x, self.value())
    }
}

impl fmt::Display for OddFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for OddFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::domain(format!("odd fraction {s:?}: expected \"num/den\"")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::domain(format!("odd fraction {s:?}: {e}")))
        };
        Self::new(parse(n)?, parse(d)?)
    }
}

impl TryFrom<String> for OddFraction {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<OddFraction> for String {
    fn from(h: OddFraction) -> String {
        h.to_string()
    }
}

/// `x^h` for an odd ratio `h`.
pub fn odd_pow(x: f64, h: OddFraction) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("odd_pow: non-finite input {x}")));
    }
    Ok(h.pow(x))
}

/// The three sides of the power-mean chain
/// `(Σ|y|)^γ <= Σ|y|^γ <= n^(1-γ) (Σ|y|)^γ`, returned as `(lhs, mid, rhs)`.
pub fn power_mean_bounds(ys: &[f64], gamma: f64) -> Result<(f64, f64, f64)> {
    if ys.is_empty() {
        return Err(Error::domain("power_mean_bounds: empty input"));
    }
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::domain(format!(
            "power_mean_bounds: gamma {gamma} outside (0, 1]"
        )));
    }
    let sum_abs: f64 = ys.iter().map(|y| y.abs()).sum();
    let lhs = sum_abs.powf(gamma);
    let mid = ys.iter().map(|y| y.abs().powf(gamma)).sum();
    let rhs = (ys.len() as f64).powf(1.0 - gamma) * lhs;
    Ok((lhs, mid, rhs))
}

/// Right-hand side of the weighted Young inequality
/// `|a|^c1 |b|^c2 <= c1/(c1+c2) |a|^(c1+c2) + c2/(c1+c2) |b|^(c1+c2)`.
pub fn young_bound(a: f64, b: f64, c1: f64, c2: f64) -> Result<f64> {
    if !(c1 > 0.0 && c2 > 0.0) {
        return Err(Error::domain(format!(
            "young_bound: exponents must be positive, got {c1}, {c2}"
        )));
    }
    let s = c1 + c2;
    Ok(c1 / s * a.abs().powf(s) + c2 / s * b.abs().powf(s))
}
