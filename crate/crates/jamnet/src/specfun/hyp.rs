//! Gauss and confluent hypergeometric series.
//!
//! Everything here is real-argument only. The evaluation strategy is the
//! plain power series with a term-ratio recurrence, switching to a Pfaff or
//! Kummer transformation (and, for the `(1, b; 1+b)` and `(a, a+1)` parameter
//! families that the closed-form outage/error expressions produce, an exact
//! large-argument form) before the series would lose accuracy.

use crate::error::{Error, Result};
use crate::specfun::gamma::gamma;

const MAX_TERMS: usize = 10_000;
const SERIES_EPS: f64 = 1e-16;
const CONSECUTIVE_SMALL: u32 = 3;

fn is_non_positive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// Power series for pFq with numerator parameters `num`, denominator
/// parameters `den` and argument `x`.
fn pfq_series(num: &[f64], den: &[f64], x: f64, func: &'static str) -> Result<f64> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut small_streak = 0u32;

    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let mut ratio = x / (nf + 1.0);
        for &a in num {
            ratio *= a + nf;
        }
        for &b in den {
            ratio /= b + nf;
        }
        term *= ratio;
        if term == 0.0 {
            // terminating (polynomial) case
            return Ok(sum);
        }
        if !term.is_finite() {
            return Err(Error::NonConvergence {
                func,
                details: format!("series term became non-finite at n={n}, x={x}"),
            });
        }
        sum += term;
        if term.abs() < SERIES_EPS * sum.abs() {
            small_streak += 1;
            if small_streak >= CONSECUTIVE_SMALL {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence {
        func,
        details: format!("no convergence after {MAX_TERMS} terms at x={x}"),
    })
}

/// 2F1(1, b; 1+b; -z) for 0 < b < 1 and large z, via the exact split of the
/// Euler integral b * z^-b * int_0^z u^(b-1)/(1+u) du into the full integral
/// pi/sin(pi b) minus a tail that expands in inverse powers of z (valid and
/// absolutely convergent for z > 1).
fn hyp2f1_unit_family(b: f64, z: f64) -> Result<f64> {
    debug_assert!(z > 1.0 && b > 0.0 && b < 1.0);
    let head = b * z.powf(-b) * std::f64::consts::PI / (std::f64::consts::PI * b).sin();

    let mut tail = 0.0_f64;
    let mut zpow = 1.0 / z;
    let mut sign = 1.0_f64;
    for k in 0..MAX_TERMS {
        let term = sign * zpow / (k as f64 + 1.0 - b);
        tail += term;
        if term.abs() < SERIES_EPS * tail.abs().max(head.abs()) {
            return Ok(head - b * tail);
        }
        zpow /= z;
        sign = -sign;
    }
    Err(Error::NonConvergence {
        func: "hyp2f1",
        details: format!("tail expansion stalled at z={z}"),
    })
}

/// Gauss hypergeometric function 2F1(a, b; c; x) for x <= 0 (small positive
/// x is also accepted while the direct series converges comfortably).
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if is_non_positive_integer(c) {
        return Err(Error::domain(format!(
            "hyp2f1: c must not be a non-positive integer, got {c}"
        )));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x >= 0.9 {
        return Err(Error::domain(format!(
            "hyp2f1: argument {x} >= 0.9 unsupported (callers use x <= 0)"
        )));
    }

    if x <= -2.0 {
        // the (1, b; 1+b) family admits an exact large-argument form
        if a == 1.0 && (c - b - 1.0).abs() < 1e-12 && b > 0.0 && b < 1.0 {
            return hyp2f1_unit_family(b, -x);
        }
        if b == 1.0 && (c - a - 1.0).abs() < 1e-12 && a > 0.0 && a < 1.0 {
            return hyp2f1_unit_family(a, -x);
        }
    }

    if x.abs() < 0.9 {
        return pfq_series(&[a, b], &[c], x, "hyp2f1");
    }

    // Pfaff transformation maps x <= -0.9 into x/(x-1) in (0, 1)
    let y = x / (x - 1.0);
    let transformed = pfq_series(&[a, c - b], &[c], y, "hyp2f1")?;
    Ok((1.0 - x).powf(-a) * transformed)
}

/// Kummer confluent hypergeometric function 1F1(a; b; x).
pub fn hyp1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    if is_non_positive_integer(b) {
        return Err(Error::domain(format!(
            "hyp1f1: b must not be a non-positive integer, got {b}"
        )));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x > 0.0 {
        return pfq_series(&[a], &[b], x, "hyp1f1");
    }

    let s = -x;
    // 1F1(-beta; 1-beta; -s) = Gamma(1-beta) s^beta + beta s^beta Gamma(-beta, s):
    // the incomplete-gamma remainder is below e^-s, so past s = 40 the head
    // term alone is exact to f64.
    if a < 0.0 && a > -1.0 && (b - a - 1.0).abs() < 1e-12 && s >= 40.0 {
        let beta = -a;
        return Ok(gamma(1.0 - beta)? * s.powf(beta));
    }

    if s > 700.0 {
        return Err(Error::NonConvergence {
            func: "hyp1f1",
            details: format!("argument {x} too negative for the Kummer series path"),
        });
    }
    // Kummer transformation: the reflected series has argument +s and, for
    // the b > a cases used here, all-positive terms (no cancellation).
    let reflected = pfq_series(&[b - a], &[b], s, "hyp1f1")?;
    Ok(x.exp() * reflected)
}

/// Hypergeometric-type series sum_n (a)_n / [(b1)_n (b2)_n] x^n, i.e. the
/// 1F2 shape carrying an implicit unit numerator parameter (equivalently
/// 2F2[a, 1; b1, b2; x]). This is the form under which a unit denominator
/// parameter cancels, giving the reduction to 1F1 that the characteristic-
/// function derivations rely on: hyp1f2(a, b, 1, x) = hyp1f1(a, b, x).
pub fn hyp1f2(a: f64, b1: f64, b2: f64, x: f64) -> Result<f64> {
    for (name, v) in [("b1", b1), ("b2", b2)] {
        if is_non_positive_integer(v) {
            return Err(Error::domain(format!(
                "hyp1f2: {name} must not be a non-positive integer, got {v}"
            )));
        }
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    pfq_series(&[a, 1.0], &[b1, b2], x, "hyp1f2")
}
