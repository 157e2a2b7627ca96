//! Outage probability of the victim receiver: the closed-form expression
//! (serving-distance integral over the PPP interference exponential and the
//! per-jammer disk factor raised to the jammer count), its Gauss-Hermite
//! fast path for the shadowing expectation, and the Monte Carlo estimator
//! that reproduces the same probability from the SIR model directly.

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{sample_ppp_radii, trial_rng, JammerParams, NetworkParams};
use crate::quad;
use crate::specfun::{gauss_hermite, hyp2f1, GhqRule};

/// Truncation of the serving-distance integral: the Rayleigh-type density
/// exp(-lambda pi r0^2) is below 1e-14 past this value of u = lambda pi r0^2.
const U_MAX: f64 = 32.23619130191664; // 14 ln 10

/// SIR outage query: threshold plus the full parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageQuery {
    pub theta: f64,
    pub net: NetworkParams,
    pub jam: JammerParams,
}

impl OutageQuery {
    pub fn new(theta: f64, net: NetworkParams, jam: JammerParams) -> Result<Self> {
        if !(theta > 0.0) {
            return Err(Error::domain(format!("theta must be > 0, got {theta}")));
        }
        Ok(OutageQuery { theta, net, jam })
    }
}

/// How the shadowing expectation inside the jammer factor is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutageMode {
    /// Adaptive quadrature of the log-normal integral (reference path).
    Exact,
    /// N-node Gauss-Hermite rule (5..=40).
    Ghq(usize),
}

/// A binomial Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithCI {
    pub value: f64,
    pub stderr: f64,
    pub trials: u64,
    pub rejected_trials: u64,
}

impl EstimateWithCI {
    pub fn from_counts(successes: u64, trials: u64, rejected: u64) -> Self {
        let value = successes as f64 / trials as f64;
        EstimateWithCI {
            value,
            stderr: (value * (1.0 - value) / trials as f64).sqrt(),
            trials,
            rejected_trials: rejected,
        }
    }
}

/// The pair of theta-only Gauss hypergeometric values entering both closed
/// forms; hoisted so sweeps can reuse them.
#[derive(Debug, Clone, Copy)]
struct ExclusionKernel {
    f2: f64,
    f1: f64,
}

impl ExclusionKernel {
    fn new(theta: f64, alpha: f64) -> Result<Self> {
        let x = -1.0 / theta;
        Ok(ExclusionKernel {
            f2: hyp2f1(1.0, 2.0 / alpha, 1.0 + 2.0 / alpha, x)?,
            f1: hyp2f1(1.0, 1.0 / alpha, 1.0 + 1.0 / alpha, x)?,
        })
    }
}

/// Exclusion-zone integral of the PPP interference exponent:
/// int_{r0}^inf [1 - 1/(1 + theta (1+r0)^alpha (1+r)^-alpha)] r dr
/// in closed form. After q = 1 + r the antiderivative is
/// q^2/2 F21(1, 2/a; 1+2/a; -q^a/w) - q F21(1, 1/a; 1+1/a; -q^a/w) with
/// w = theta (1+r0)^alpha, and the q -> inf boundary term is finite for
/// alpha > 2: (pi/alpha) [w^(2/a)/sin(2 pi/a) - w^(1/a)/sin(pi/a)].
pub fn ppp_exclusion_integral(r0: f64, theta: f64, alpha: f64) -> Result<f64> {
    let kernel = ExclusionKernel::new(theta, alpha)?;
    Ok(ppp_exclusion_with(r0, theta, alpha, &kernel))
}

fn ppp_exclusion_with(r0: f64, theta: f64, alpha: f64, kernel: &ExclusionKernel) -> f64 {
    let q0 = 1.0 + r0;
    let pi = std::f64::consts::PI;
    // w^(2/alpha) = theta^(2/alpha) q0^2 and w^(1/alpha) = theta^(1/alpha) q0
    let boundary = (pi / alpha)
        * (theta.powf(2.0 / alpha) * q0 * q0 / (2.0 * pi / alpha).sin()
            - theta.powf(1.0 / alpha) * q0 / (pi / alpha).sin());
    let at_q0 = q0 * q0 / 2.0 * kernel.f2 - q0 * kernel.f1;
    boundary - at_q0
}

/// Normalized per-jammer disk factor:
/// (2/R_J^2) int_0^{R_J} r / (1 + theta (1+r0)^alpha (P_J chi / P_T) (1+r)^-alpha) dr,
/// evaluated through the antiderivative of (x-1) x^alpha / (b + x^alpha).
pub fn bpp_disk_term(
    r0: f64,
    theta: f64,
    alpha: f64,
    power_ratio: f64,
    chi: f64,
    r_j: f64,
) -> Result<f64> {
    let b = theta * (1.0 + r0).powf(alpha) * power_ratio * chi;
    if b == 0.0 {
        return Ok(1.0);
    }
    let g = |x: f64| -> Result<f64> {
        let arg = -x.powf(alpha) / b;
        let f2 = hyp2f1(1.0, 2.0 / alpha, 1.0 + 2.0 / alpha, arg)?;
        let f1 = hyp2f1(1.0, 1.0 / alpha, 1.0 + 1.0 / alpha, arg)?;
        Ok(x * x / 2.0 * (1.0 - f2) - x * (1.0 - f1))
    };
    let upper = g(1.0 + r_j)?;
    let lower = g(1.0)?;
    Ok(2.0 / (r_j * r_j) * (upper - lower))
}

/// Per-jammer factor with the shadowing expectation folded in.
fn jammer_factor_expectation(
    r0: f64,
    query: &OutageQuery,
    power_ratio: f64,
    mode: OutageMode,
    rule: Option<&GhqRule>,
) -> Result<f64> {
    let net = &query.net;
    let jam = &query.jam;
    let mu_scale = net.mu_chi.exp();

    if net.sigma_chi == 0.0 {
        return bpp_disk_term(r0, query.theta, net.alpha, power_ratio, mu_scale, jam.r_j);
    }

    match mode {
        OutageMode::Ghq(_) => {
            let rule = rule.expect("rule present in ghq mode");
            let mut failure = None;
            let value = rule.lognormal_expectation(net.sigma_chi, |chi| {
                match bpp_disk_term(r0, query.theta, net.alpha, power_ratio, mu_scale * chi, jam.r_j)
                {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                }
            });
            match failure {
                Some(e) => Err(e),
                None => Ok(value),
            }
        }
        OutageMode::Exact => {
            let scale = std::f64::consts::SQRT_2 * net.sigma_chi;
            let v = quad::integrate(
                |t| {
                    let chi = mu_scale * (scale * t).exp();
                    Ok((-t * t).exp()
                        * bpp_disk_term(r0, query.theta, net.alpha, power_ratio, chi, jam.r_j)?)
                },
                -8.0,
                8.0,
                1e-11,
                "shadowing expectation",
            )?;
            Ok(v / std::f64::consts::PI.sqrt())
        }
    }
}

fn validate_mode(mode: OutageMode) -> Result<Option<GhqRule>> {
    match mode {
        OutageMode::Exact => Ok(None),
        OutageMode::Ghq(n) => {
            if !(5..=40).contains(&n) {
                return Err(Error::domain(format!(
                    "ghq order must be in 5..=40, got {n}"
                )));
            }
            Ok(Some(gauss_hermite(n)?))
        }
    }
}

/// Outage probability P(SIR < theta), clamped to [0, 1]; also returns the
/// raw pre-clamp value for diagnostics.
pub fn outage_probability_raw(query: &OutageQuery, mode: OutageMode) -> Result<(f64, f64)> {
    let rule = validate_mode(mode)?;
    let net = &query.net;
    let power_ratio = query.jam.p_j / net.p_t;
    let kernel = ExclusionKernel::new(query.theta, net.alpha)?;
    let lam_pi = net.lambda_t * std::f64::consts::PI;

    // substitute u = lambda pi r0^2: the serving-distance density becomes
    // exactly e^-u and the truncation rule is u <= 14 ln 10
    let survival = quad::integrate(
        |u| {
            let r0 = (u / lam_pi).sqrt();
            let ppp_exponent =
                -2.0 * std::f64::consts::PI * net.p * net.lambda_t
                    * ppp_exclusion_with(r0, query.theta, net.alpha, &kernel);
            let mut value = (-u).exp() * ppp_exponent.exp();
            if query.jam.n_j > 0 && value != 0.0 {
                let per_jammer =
                    jammer_factor_expectation(r0, query, power_ratio, mode, rule.as_ref())?;
                value *= per_jammer.powi(query.jam.n_j as i32);
            }
            Ok(value)
        },
        0.0,
        U_MAX,
        1e-9,
        "serving-distance integral",
    )?;

    let raw = 1.0 - survival;
    Ok((raw.clamp(0.0, 1.0), raw))
}

/// Outage probability P(SIR < theta) in [0, 1].
pub fn outage_probability(query: &OutageQuery, mode: OutageMode) -> Result<f64> {
    outage_probability_raw(query, mode).map(|(p, _)| p)
}

/// One SIR trial: full PPP field with nearest-serving association, activity
/// thinning on the interferers, Rayleigh fading everywhere, log-normal
/// shadowing on jammer links.
fn outage_trial(query: &OutageQuery, seed: u64, trial: u64) -> (bool, u64, u64) {
    let net = &query.net;
    let jam = &query.jam;
    let mut rng = trial_rng(seed, trial);
    let window = net.simulation_radius();

    let mut radii: Vec<f64> = Vec::new();
    let mut rejected = 0u64;
    loop {
        sample_ppp_radii(net.lambda_t, window, &mut rng, &mut radii);
        if !radii.is_empty() {
            break;
        }
        rejected += 1;
    }

    let serving_idx = radii
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("non-empty");
    let r0 = radii[serving_idx];

    let h0: f64 = Exp1.sample(&mut rng);
    let signal = net.p_t * h0 * (1.0 + r0).powf(-net.alpha);

    let mut interference = 0.0f64;
    for (i, &r) in radii.iter().enumerate() {
        if i == serving_idx {
            continue;
        }
        if rng.gen::<f64>() < net.p {
            let h: f64 = Exp1.sample(&mut rng);
            interference += net.p_t * h * (1.0 + r).powf(-net.alpha);
        }
    }

    for _ in 0..jam.n_j {
        let d = jam.r_j * rng.gen::<f64>().sqrt();
        let chi = crate::channel::sample_shadowing(net.mu_chi, net.sigma_chi, &mut rng);
        let g: f64 = Exp1.sample(&mut rng);
        interference += jam.p_j * chi * g * (1.0 + d).powf(-net.alpha);
    }

    (signal < query.theta * interference, rejected, trial)
}

/// Monte Carlo outage estimate over `trials` independent seeded trials.
/// Identical (seed, trials) reproduce the same estimate regardless of the
/// number of worker threads.
pub fn simulate_outage(query: &OutageQuery, trials: u64, seed: u64) -> Result<EstimateWithCI> {
    if trials < 1000 {
        return Err(Error::domain(format!(
            "simulate_outage needs at least 1000 trials, got {trials}"
        )));
    }
    let (outages, rejected) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (out, rej, _) = outage_trial(query, seed, t);
            (out as u64, rej)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(EstimateWithCI::from_counts(outages, trials, rejected))
}
