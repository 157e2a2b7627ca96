//! Minimum-jammer-count search: the smallest deployment whose outage
//! probability is closest to a target, under either the scaled-radius
//! policy (disk grows with the jammer count so jammers-per-cell stays put)
//! or the fixed-radius policy (disk pinned, per-cell count floats).

use crate::channel::JammingScheme;
use crate::error::{Error, Result};
use crate::geometry::{JammerParams, NetworkParams};
use crate::outage::{bpp_disk_term, ppp_exclusion_integral};
use crate::quad;
use crate::specfun::gauss_hermite;

const U_MAX: f64 = 32.23619130191664; // 14 ln 10
const PANELS: usize = 32;

/// Deployment policy for the search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SizingMode {
    /// R_J = sqrt(N_J / (pi lambda_T N_Jc)) per candidate, N_Jc fixed.
    ScaledRadius { n_jc: f64 },
    /// R_J held constant; N_Jc implied by the candidate count.
    FixedRadius { r_j: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizingPolicy {
    pub mode: SizingMode,
    pub target_outage: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizingResult {
    pub n_star: u32,
    pub achieved_outage: f64,
    /// The scan hit `n_max` without bracketing the target.
    pub saturated: bool,
}

/// Outage evaluator over a fixed serving-distance grid, so that candidate
/// jammer counts can be swept with the expensive per-node quantities cached.
/// The grid lives in r0-space, where the integrand is analytic, and matches
/// the adaptive path to well below the search's decision resolution.
pub struct OutageSweep {
    net: NetworkParams,
    theta: f64,
    r0_max: f64,
    /// per node: serving distance
    r0: Vec<f64>,
    /// per node: serving-distance density times the PPP interference factor
    ppp_factor: Vec<f64>,
    /// shadowing nodes (chi, weight)
    chi_nodes: Vec<(f64, f64)>,
}

impl OutageSweep {
    pub fn new(net: &NetworkParams, theta: f64, ghq_n: usize) -> Result<Self> {
        if !(theta > 0.0) {
            return Err(Error::domain(format!("theta must be > 0, got {theta}")));
        }
        let lam_pi = net.lambda_t * std::f64::consts::PI;
        let r0_max = (U_MAX / lam_pi).sqrt();
        let nodes = quad::fixed_panel_nodes(0.0, r0_max, PANELS);
        let mut r0 = Vec::with_capacity(nodes.len());
        let mut ppp_factor = Vec::with_capacity(nodes.len());
        for &r in &nodes {
            let excl = ppp_exclusion_integral(r, theta, net.alpha)?;
            r0.push(r);
            ppp_factor.push(
                2.0 * lam_pi * r * (-lam_pi * r * r).exp()
                    * (-2.0 * std::f64::consts::PI * net.p * net.lambda_t * excl).exp(),
            );
        }

        let chi_nodes = if net.sigma_chi == 0.0 {
            vec![(net.mu_chi.exp(), 1.0)]
        } else {
            let rule = gauss_hermite(ghq_n)?;
            let scale = std::f64::consts::SQRT_2 * net.sigma_chi;
            rule.nodes()
                .iter()
                .zip(rule.weights())
                .map(|(&x, &w)| {
                    (
                        (net.mu_chi + scale * x).exp(),
                        w / std::f64::consts::PI.sqrt(),
                    )
                })
                .collect()
        };

        Ok(OutageSweep {
            net: *net,
            theta,
            r0_max,
            r0,
            ppp_factor,
            chi_nodes,
        })
    }

    /// Per-node shadowing-averaged disk factor for a deployment radius.
    pub fn disk_profile(&self, r_j: f64, power_ratio: f64) -> Result<Vec<f64>> {
        self.r0
            .iter()
            .map(|&r| {
                let mut acc = 0.0;
                for &(chi, w) in &self.chi_nodes {
                    acc += w
                        * bpp_disk_term(r, self.theta, self.net.alpha, power_ratio, chi, r_j)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Outage probability for `n_j` jammers given a cached disk profile.
    pub fn outage_from_profile(&self, profile: &[f64], n_j: u32) -> f64 {
        let values: Vec<f64> = self
            .ppp_factor
            .iter()
            .zip(profile)
            .map(|(&ppp, &disk)| {
                if n_j == 0 {
                    ppp
                } else {
                    ppp * disk.powi(n_j as i32)
                }
            })
            .collect();
        let survival = quad::fixed_panels_from_values(&values, 0.0, self.r0_max, PANELS);
        (1.0 - survival).clamp(0.0, 1.0)
    }

    /// Outage probability of an arbitrary deployment (profile not reused).
    pub fn outage(&self, jam: &JammerParams) -> Result<f64> {
        if jam.n_j == 0 {
            return Ok(self.outage_from_profile(&vec![1.0; self.r0.len()], 0));
        }
        let profile = self.disk_profile(jam.r_j, jam.p_j / self.net.p_t)?;
        Ok(self.outage_from_profile(&profile, jam.n_j))
    }
}

fn candidate_outage(
    sweep: &OutageSweep,
    net: &NetworkParams,
    template: &JammerParams,
    mode: SizingMode,
    fixed_profile: Option<&[f64]>,
    n: u32,
) -> Result<f64> {
    match mode {
        SizingMode::FixedRadius { .. } => {
            Ok(sweep.outage_from_profile(fixed_profile.expect("profile cached"), n))
        }
        SizingMode::ScaledRadius { n_jc } => {
            if n == 0 {
                return Ok(sweep.outage_from_profile(&vec![1.0; sweep.r0.len()], 0));
            }
            let jam = JammerParams::scaled(n, n_jc, net.lambda_t, template.p_j, template.scheme)?;
            sweep.outage(&jam)
        }
    }
}

/// Minimum jammer count whose outage is closest to the policy target,
/// searched over 0..=n_max with ties broken toward fewer jammers.
///
/// Under the fixed-radius policy the outage is nondecreasing in the count,
/// so an exponential bracket plus bisection replaces the linear scan; the
/// scaled policy scans exhaustively.
pub fn min_jammers(
    net: &NetworkParams,
    jam_template: &JammerParams,
    policy: &SizingPolicy,
    n_max: u32,
) -> Result<SizingResult> {
    if n_max < 1 {
        return Err(Error::domain("n_max must be at least 1".to_string()));
    }
    if !(policy.target_outage > 0.0 && policy.target_outage < 1.0) {
        return Err(Error::domain(format!(
            "target outage must be in (0,1), got {}",
            policy.target_outage
        )));
    }
    let sweep = OutageSweep::new(net, policy.theta, 15)?;
    let target = policy.target_outage;

    match policy.mode {
        SizingMode::ScaledRadius { .. } => {
            let mut best = (0u32, f64::INFINITY, 0.0f64);
            let mut bracketed = false;
            for n in 0..=n_max {
                let p = candidate_outage(&sweep, net, jam_template, policy.mode, None, n)?;
                if p >= target {
                    bracketed = true;
                }
                let miss = (p - target).abs();
                if miss < best.1 {
                    best = (n, miss, p);
                }
            }
            Ok(SizingResult {
                n_star: best.0,
                achieved_outage: best.2,
                saturated: !bracketed,
            })
        }
        SizingMode::FixedRadius { r_j } => {
            let profile = sweep.disk_profile(r_j, jam_template.p_j / net.p_t)?;
            let eval = |n: u32| sweep.outage_from_profile(&profile, n);

            if eval(0) >= target {
                return Ok(SizingResult {
                    n_star: 0,
                    achieved_outage: eval(0),
                    saturated: false,
                });
            }
            if eval(n_max) < target {
                return Ok(SizingResult {
                    n_star: n_max,
                    achieved_outage: eval(n_max),
                    saturated: true,
                });
            }
            // smallest n with outage >= target
            let (mut lo, mut hi) = (0u32, 1u32);
            while eval(hi) < target {
                lo = hi;
                hi = (hi * 2).min(n_max);
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if eval(mid) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            // the optimum is hi or its predecessor, ties toward fewer
            let (p_lo, p_hi) = (eval(hi - 1), eval(hi));
            let n_star = if (p_lo - target).abs() <= (p_hi - target).abs() {
                hi - 1
            } else {
                hi
            };
            Ok(SizingResult {
                n_star,
                achieved_outage: eval(n_star),
                saturated: false,
            })
        }
    }
}

/// Reference implementation: exhaustive scan of 0..=n_max. The search must
/// agree with this at every grid point.
pub fn min_jammers_exhaustive(
    net: &NetworkParams,
    jam_template: &JammerParams,
    policy: &SizingPolicy,
    n_max: u32,
) -> Result<SizingResult> {
    let sweep = OutageSweep::new(net, policy.theta, 15)?;
    let target = policy.target_outage;
    let fixed_profile = match policy.mode {
        SizingMode::FixedRadius { r_j } => {
            Some(sweep.disk_profile(r_j, jam_template.p_j / net.p_t)?)
        }
        SizingMode::ScaledRadius { .. } => None,
    };
    let mut best = (0u32, f64::INFINITY, 0.0f64);
    let mut bracketed = false;
    for n in 0..=n_max {
        let p = candidate_outage(
            &sweep,
            net,
            jam_template,
            policy.mode,
            fixed_profile.as_deref(),
            n,
        )?;
        if p >= target {
            bracketed = true;
        }
        let miss = (p - target).abs();
        if miss < best.1 {
            best = (n, miss, p);
        }
    }
    Ok(SizingResult {
        n_star: best.0,
        achieved_outage: best.2,
        saturated: !bracketed,
    })
}

/// Template deployment for sizing sweeps: carries power and scheme; count
/// and radius are owned by the policy.
pub fn sizing_template(p_j: f64, scheme: JammingScheme) -> JammerParams {
    JammerParams::none_with_power(p_j, scheme)
}
