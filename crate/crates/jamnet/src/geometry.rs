//! Spatial model: the base-station Poisson point process, the jammer
//! Binomial point process on a disk around the victim, and the parameter
//! bundles shared by both engines.
//!
//! Sampling takes an explicit per-trial RNG stream so that Monte Carlo
//! results are reproducible for a given seed regardless of scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::channel::JammingScheme;
use crate::error::{Error, Result};

/// Base-station density of a hexagonal grid with the given inter-site
/// distance, the usual reference deployment for into-PPP comparisons.
pub fn hex_grid_density(inter_site_distance_m: f64) -> f64 {
    2.0 / (3.0_f64.sqrt() * inter_site_distance_m * inter_site_distance_m)
}

/// Converts a shadowing standard deviation quoted in dB to natural-log units.
pub fn shadowing_db_to_natural(sigma_db: f64) -> f64 {
    sigma_db * std::f64::consts::LN_10 / 10.0
}

pub fn db_to_linear(db: f64) -> f64 {
    10.0_f64.powf(db / 10.0)
}

/// Density of the displacement-equivalent PPP that absorbs log-normal
/// shadowing: lambda * exp(2 sigma^2 / alpha^2) (log-mean zero).
pub fn effective_density(lambda_raw: f64, sigma_chi: f64, alpha: f64) -> f64 {
    lambda_raw * (2.0 * sigma_chi * sigma_chi / (alpha * alpha)).exp()
}

/// Radius of the jammer deployment disk so that the jammer-per-cell count
/// comes out to `n_jc`: R_J = sqrt(N_J / (pi lambda_T N_Jc)).
pub fn jammer_radius(n_j: u32, n_jc: f64, lambda_t: f64) -> Result<f64> {
    if n_j == 0 || n_jc <= 0.0 || lambda_t <= 0.0 {
        return Err(Error::domain(format!(
            "jammer_radius requires positive inputs, got n_j={n_j}, n_jc={n_jc}, lambda_t={lambda_t}"
        )));
    }
    Ok((n_j as f64 / (std::f64::consts::PI * lambda_t * n_jc)).sqrt())
}

/// Downlink network parameters.
///
/// `lambda_t` is the post-displacement effective density; use
/// [`NetworkParams::from_raw_density`] to fold shadowing into it. Powers are
/// linear; `noise_power` is the sigma^2 of the transmit-SNR definition
/// SNR = P_T / sigma^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams {
    pub lambda_t: f64,
    pub p_t: f64,
    pub p: f64,
    pub alpha: f64,
    pub mu_chi: f64,
    pub sigma_chi: f64,
    pub noise_power: f64,
}

impl NetworkParams {
    pub fn new(
        lambda_t: f64,
        p_t: f64,
        p: f64,
        alpha: f64,
        mu_chi: f64,
        sigma_chi: f64,
        noise_power: f64,
    ) -> Result<Self> {
        if !(lambda_t > 0.0) {
            return Err(Error::domain(format!("lambda_t must be > 0, got {lambda_t}")));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("activity factor must be in [0,1], got {p}")));
        }
        if !(alpha > 2.0) {
            return Err(Error::domain(format!("path-loss exponent must be > 2, got {alpha}")));
        }
        if !(sigma_chi >= 0.0) {
            return Err(Error::domain(format!("sigma_chi must be >= 0, got {sigma_chi}")));
        }
        if !(p_t > 0.0) || !(noise_power > 0.0) {
            return Err(Error::domain(format!(
                "powers must be positive, got p_t={p_t}, noise_power={noise_power}"
            )));
        }
        Ok(NetworkParams {
            lambda_t,
            p_t,
            p,
            alpha,
            mu_chi,
            sigma_chi,
            noise_power,
        })
    }

    /// Same as [`NetworkParams::new`] but with the raw (pre-displacement)
    /// density; the effective density is derived from the shadowing spread.
    #[allow(clippy::too_many_arguments)]
    pub fn from_raw_density(
        lambda_raw: f64,
        p_t: f64,
        p: f64,
        alpha: f64,
        mu_chi: f64,
        sigma_chi: f64,
        noise_power: f64,
    ) -> Result<Self> {
        Self::new(
            effective_density(lambda_raw, sigma_chi, alpha),
            p_t,
            p,
            alpha,
            mu_chi,
            sigma_chi,
            noise_power,
        )
    }

    /// Reference configuration used throughout the bundled experiments:
    /// 500 m hexagonal grid folded through the displacement transform,
    /// alpha = 3.7, 6 dB shadowing, 1% activity, unit powers and noise.
    pub fn defaults() -> Self {
        let sigma = shadowing_db_to_natural(6.0);
        Self::from_raw_density(hex_grid_density(500.0), 1.0, 0.01, 3.7, 0.0, sigma, 1.0)
            .expect("reference parameters are valid")
    }

    /// Radius of the Monte Carlo simulation disk: sized for an expected 100
    /// active interfering base stations, floored so the serving-distance
    /// distribution is never truncated. A silent network (p = 0) has no
    /// active-count requirement and uses the floor alone.
    pub fn simulation_radius(&self) -> f64 {
        let floor = 20.0 / self.lambda_t.sqrt();
        if self.p == 0.0 {
            return floor;
        }
        let by_active = (100.0 / (self.p * self.lambda_t * std::f64::consts::PI)).sqrt();
        by_active.max(floor)
    }
}

/// Jammer deployment: `n_j` nodes placed uniformly on a disk of radius
/// `r_j`, transmitting at power `p_j` with the given signaling scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JammerParams {
    pub n_j: u32,
    pub n_jc: f64,
    pub r_j: f64,
    pub p_j: f64,
    pub scheme: JammingScheme,
}

impl JammerParams {
    /// Scaled deployment: the disk radius tracks the network so that the
    /// per-cell jammer count stays at `n_jc`.
    pub fn scaled(n_j: u32, n_jc: f64, lambda_t: f64, p_j: f64, scheme: JammingScheme) -> Result<Self> {
        if !(p_j > 0.0) {
            return Err(Error::domain(format!("jammer power must be > 0, got {p_j}")));
        }
        if n_j == 0 {
            return Ok(Self::none_with_power(p_j, scheme));
        }
        Ok(JammerParams {
            n_j,
            n_jc,
            r_j: jammer_radius(n_j, n_jc, lambda_t)?,
            p_j,
            scheme,
        })
    }

    /// Fixed-radius deployment: `r_j` is held constant and the per-cell
    /// count follows from `n_j`.
    pub fn fixed_radius(n_j: u32, r_j: f64, lambda_t: f64, p_j: f64, scheme: JammingScheme) -> Result<Self> {
        if !(r_j > 0.0) || !(p_j > 0.0) {
            return Err(Error::domain(format!(
                "fixed_radius requires r_j > 0 and p_j > 0, got r_j={r_j}, p_j={p_j}"
            )));
        }
        Ok(JammerParams {
            n_j,
            n_jc: n_j as f64 / (std::f64::consts::PI * r_j * r_j * lambda_t),
            r_j,
            p_j,
            scheme,
        })
    }

    /// No jammers; the placeholder radius keeps downstream formulas total.
    pub fn none_with_power(p_j: f64, scheme: JammingScheme) -> Self {
        JammerParams {
            n_j: 0,
            n_jc: 0.0,
            r_j: 1.0,
            p_j,
            scheme,
        }
    }

    /// This deployment re-scaled to a different jammer count (scaled policy).
    pub fn rescaled_to_count(&self, n_j: u32, lambda_t: f64) -> Result<Self> {
        if n_j == 0 {
            return Ok(Self::none_with_power(self.p_j, self.scheme));
        }
        Ok(JammerParams {
            n_j,
            n_jc: self.n_jc,
            r_j: jammer_radius(n_j, self.n_jc, lambda_t)?,
            p_j: self.p_j,
            scheme: self.scheme,
        })
    }

    /// This deployment with a different jammer count at unchanged radius
    /// (fixed-radius policy).
    pub fn recounted_fixed_radius(&self, n_j: u32, lambda_t: f64) -> Self {
        JammerParams {
            n_j,
            n_jc: n_j as f64 / (std::f64::consts::PI * self.r_j * self.r_j * lambda_t),
            r_j: self.r_j,
            p_j: self.p_j,
            scheme: self.scheme,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    Ppp,
    Bpp,
}

/// A sampled point pattern in polar coordinates around the victim receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct PointPattern {
    pub kind: PatternKind,
    /// (distance from origin, angle) pairs
    pub points: Vec<(f64, f64)>,
}

impl PointPattern {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|&(r, _)| r)
    }

    /// Distance to the nearest point; an empty pattern has no serving node.
    pub fn nearest_distance(&self) -> Result<f64> {
        self.radii()
            .min_by(f64::total_cmp)
            .ok_or(Error::EmptyPattern)
    }
}

/// Independent per-trial RNG substream: `trial` selects a ChaCha stream of
/// the seeded generator, so trials can run in any order or in parallel and
/// still reproduce bit-identical results.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One uniformly placed point on the disk of the given radius: radial
/// density proportional to r, angle uniform on [0, 2 pi).
fn sample_disk_point<R: Rng>(radius: f64, rng: &mut R) -> (f64, f64) {
    let r = radius * rng.gen::<f64>().sqrt();
    let theta = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
    (r, theta)
}

/// Homogeneous PPP of the given density on a disk: Poisson count, then
/// i.i.d. uniform placement.
pub fn sample_ppp<R: Rng>(density: f64, radius: f64, rng: &mut R) -> PointPattern {
    let mean = density * std::f64::consts::PI * radius * radius;
    let count = if mean > 0.0 {
        Poisson::new(mean).expect("positive finite mean").sample(rng) as usize
    } else {
        0
    };
    let points = (0..count).map(|_| sample_disk_point(radius, rng)).collect();
    PointPattern {
        kind: PatternKind::Ppp,
        points,
    }
}

/// Binomial point process: exactly `n` i.i.d. uniform points on the disk.
pub fn sample_bpp<R: Rng>(n: u32, radius: f64, rng: &mut R) -> PointPattern {
    let points = (0..n).map(|_| sample_disk_point(radius, rng)).collect();
    PointPattern {
        kind: PatternKind::Bpp,
        points,
    }
}

/// Radii-only PPP sample into a reusable buffer (hot path of the Monte
/// Carlo engines; same radial law as [`sample_ppp`]).
pub(crate) fn sample_ppp_radii<R: Rng>(density: f64, radius: f64, rng: &mut R, out: &mut Vec<f64>) {
    out.clear();
    let mean = density * std::f64::consts::PI * radius * radius;
    if mean <= 0.0 {
        return;
    }
    let count = Poisson::new(mean).expect("positive finite mean").sample(rng) as usize;
    out.reserve(count);
    for _ in 0..count {
        out.push(radius * rng.gen::<f64>().sqrt());
    }
}
