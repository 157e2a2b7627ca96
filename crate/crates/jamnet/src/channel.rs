//! Fading, shadowing, path-loss and modulation primitives shared by the
//! analytical and Monte Carlo engines.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::specfun::gamma;

/// Jamming signal kind: a digital constellation or white Gaussian noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JammingScheme {
    Bpsk,
    Qpsk,
    Qam16,
    Awgn,
}

impl JammingScheme {
    pub fn constellation_label(self) -> Option<ConstellationLabel> {
        match self {
            JammingScheme::Bpsk => Some(ConstellationLabel::Bpsk),
            JammingScheme::Qpsk => Some(ConstellationLabel::Qpsk),
            JammingScheme::Qam16 => Some(ConstellationLabel::Qam16),
            JammingScheme::Awgn => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstellationLabel {
    Bpsk,
    Qpsk,
    Qam16,
}

/// Unit-average-energy symbol set with its neighbor-distance bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    label: ConstellationLabel,
    symbols: Vec<Complex64>,
    /// distinct symbol moduli with probability weights (exact values, so
    /// constant-modulus schemes share the identical envelope set bitwise)
    envelope_classes: Vec<(f64, f64)>,
    /// distinct pairwise distances with per-symbol average multiplicity
    distance_classes: Vec<(f64, f64)>,
    /// per-symbol (minimum distance, count at that distance)
    per_symbol_min: Vec<(f64, f64)>,
}

impl Constellation {
    pub fn label(&self) -> ConstellationLabel {
        self.label
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[Complex64] {
        &self.symbols
    }

    /// Distinct |s| values with their probability weights.
    pub fn envelope_classes(&self) -> &[(f64, f64)] {
        &self.envelope_classes
    }

    /// Distinct pairwise distances |s_m - s_i| with average multiplicity per
    /// symbol (the union-bound weights of the error analysis).
    pub fn distance_classes(&self) -> &[(f64, f64)] {
        &self.distance_classes
    }

    /// Per-symbol minimum distance and the number of neighbors at it.
    pub fn per_symbol_min(&self) -> &[(f64, f64)] {
        &self.per_symbol_min
    }

    /// Global minimum distance of the constellation.
    pub fn min_distance(&self) -> f64 {
        self.per_symbol_min
            .iter()
            .map(|&(d, _)| d)
            .fold(f64::INFINITY, f64::min)
    }

    /// Average count of minimum-distance neighbors across symbols.
    pub fn avg_min_neighbor_count(&self) -> f64 {
        self.per_symbol_min.iter().map(|&(_, n)| n).sum::<f64>() / self.size() as f64
    }

    pub fn sample_symbol<R: Rng>(&self, rng: &mut R) -> Complex64 {
        self.symbols[rng.gen_range(0..self.symbols.len())]
    }
}

/// Builds the unit-energy symbol set and neighbor tables for a label.
pub fn make_constellation(label: ConstellationLabel) -> Constellation {
    let (symbols, envelope_classes): (Vec<Complex64>, Vec<(f64, f64)>) = match label {
        ConstellationLabel::Bpsk => (
            vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            vec![(1.0, 1.0)],
        ),
        ConstellationLabel::Qpsk => {
            let a = std::f64::consts::FRAC_1_SQRT_2;
            (
                vec![
                    Complex64::new(a, a),
                    Complex64::new(-a, a),
                    Complex64::new(-a, -a),
                    Complex64::new(a, -a),
                ],
                // constant modulus: exactly 1 by construction
                vec![(1.0, 1.0)],
            )
        }
        ConstellationLabel::Qam16 => {
            let scale = 1.0 / 10.0_f64.sqrt();
            let levels = [-3.0, -1.0, 1.0, 3.0];
            let mut symbols = Vec::with_capacity(16);
            for &re in &levels {
                for &im in &levels {
                    symbols.push(Complex64::new(re * scale, im * scale));
                }
            }
            // |s|^2 in {2, 10, 18}/10 with multiplicities 4, 8, 4
            let classes = vec![
                (0.2_f64.sqrt(), 0.25),
                (1.0, 0.5),
                (1.8_f64.sqrt(), 0.25),
            ];
            (symbols, classes)
        }
    };

    let m = symbols.len();
    let mut per_symbol_min = Vec::with_capacity(m);
    let mut distance_classes: Vec<(f64, f64)> = Vec::new();
    let push_distance = |d: f64, weight: f64, classes: &mut Vec<(f64, f64)>| {
        for entry in classes.iter_mut() {
            if (entry.0 - d).abs() < 1e-9 {
                entry.1 += weight;
                return;
            }
        }
        classes.push((d, weight));
    };

    for (i, &s) in symbols.iter().enumerate() {
        let mut dmin = f64::INFINITY;
        let mut count = 0.0;
        for (j, &t) in symbols.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = (s - t).norm();
            push_distance(d, 1.0 / m as f64, &mut distance_classes);
            if d < dmin - 1e-9 {
                dmin = d;
                count = 1.0;
            } else if (d - dmin).abs() <= 1e-9 {
                count += 1.0;
            }
        }
        per_symbol_min.push((dmin, count));
    }
    distance_classes.sort_by(|a, b| a.0.total_cmp(&b.0));

    Constellation {
        label,
        symbols,
        envelope_classes,
        distance_classes,
        per_symbol_min,
    }
}

/// Path-loss law (1 + r)^-alpha: bounded at the origin, value 1 at r = 0.
pub fn path_loss(r: f64, alpha: f64) -> f64 {
    (1.0 + r).powf(-alpha)
}

/// Unit-variance circularly symmetric complex Gaussian (Rayleigh fading
/// coefficient, E|h|^2 = 1).
pub fn sample_fading<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Log-normal shadowing multiplier exp(N(mu, sigma^2)).
pub fn sample_shadowing<R: Rng>(mu: f64, sigma: f64, rng: &mut R) -> f64 {
    if sigma == 0.0 && mu == 0.0 {
        return 1.0;
    }
    let z: f64 = rng.sample(StandardNormal);
    (mu + sigma * z).exp()
}

/// Complex AWGN with total variance `sigma2` (each real component carries
/// sigma2/2, so the unit-variance characteristic function is exp(-w^2/4)).
pub fn sample_noise<R: Rng>(sigma2: f64, rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * (sigma2 / 2.0).sqrt()
}

/// One jamming symbol: a uniform constellation draw, or for AWGN jamming a
/// zero-mean unit-variance complex Gaussian.
pub fn sample_jamming_symbol<R: Rng>(
    scheme: JammingScheme,
    constellation: Option<&Constellation>,
    rng: &mut R,
) -> Complex64 {
    match scheme {
        JammingScheme::Awgn => {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        }
        _ => constellation
            .expect("constellation required for modulated jamming")
            .sample_symbol(rng),
    }
}

/// E[|j|^(2q)] for the jamming scheme: the constellation average, or the
/// Gaussian moment 2^q Gamma(q + 1/2) / sqrt(pi) for AWGN jamming.
pub fn jamming_moment(scheme: JammingScheme, q: u32) -> Result<f64> {
    if q > 60 {
        return Err(Error::domain(format!(
            "jamming_moment supports q <= 60 (series truncation ceiling), got {q}"
        )));
    }
    match scheme.constellation_label() {
        Some(label) => {
            let c = make_constellation(label);
            Ok(c.envelope_classes()
                .iter()
                .map(|&(env, w)| w * env.powi(2 * q as i32))
                .sum())
        }
        None => Ok(2.0_f64.powi(q as i32) * gamma(q as f64 + 0.5)? / std::f64::consts::PI.sqrt()),
    }
}

/// Maximum-likelihood demodulation with known serving gain: index of the
/// symbol minimizing |y - gain * s|^2.
pub fn ml_demodulate(y: Complex64, gain: Complex64, constellation: &Constellation) -> usize {
    let mut best = 0;
    let mut best_metric = f64::INFINITY;
    for (idx, &s) in constellation.symbols().iter().enumerate() {
        let metric = (y - gain * s).norm_sqr();
        if metric < best_metric {
            best_metric = metric;
            best = idx;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::trial_rng;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn constellations_have_unit_energy_and_negation_symmetry() {
        for label in [
            ConstellationLabel::Bpsk,
            ConstellationLabel::Qpsk,
            ConstellationLabel::Qam16,
        ] {
            let c = make_constellation(label);
            let energy: f64 = c.symbols().iter().map(|s| s.norm_sqr()).sum::<f64>() / c.size() as f64;
            assert_abs_diff_eq!(energy, 1.0, epsilon = 1e-12);
            for &s in c.symbols() {
                assert!(
                    c.symbols().iter().any(|&t| (t + s).norm() < 1e-12),
                    "{label:?} not closed under negation"
                );
            }
        }
    }

    #[test]
    fn neighbor_tables() {
        let bpsk = make_constellation(ConstellationLabel::Bpsk);
        assert_abs_diff_eq!(bpsk.min_distance(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(bpsk.avg_min_neighbor_count(), 1.0, epsilon = 1e-12);

        let qpsk = make_constellation(ConstellationLabel::Qpsk);
        assert_abs_diff_eq!(qpsk.min_distance(), 2.0_f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(qpsk.avg_min_neighbor_count(), 2.0, epsilon = 1e-12);

        let qam = make_constellation(ConstellationLabel::Qam16);
        assert_abs_diff_eq!(qam.min_distance(), 2.0 / 10.0_f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(qam.avg_min_neighbor_count(), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn union_bound_weights_count_all_pairs() {
        // distance classes carry (M-1) neighbors per symbol in total
        for label in [
            ConstellationLabel::Bpsk,
            ConstellationLabel::Qpsk,
            ConstellationLabel::Qam16,
        ] {
            let c = make_constellation(label);
            let total: f64 = c.distance_classes().iter().map(|&(_, w)| w).sum();
            assert_abs_diff_eq!(total, (c.size() - 1) as f64, epsilon = 1e-9);
        }
    }

    #[test]
    fn fading_power_is_unit() {
        let mut rng = trial_rng(5, 0);
        let n = 1_000_000;
        let mean: f64 = (0..n).map(|_| sample_fading(&mut rng).norm_sqr()).sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 0.005, "E|h|^2 = {mean}");
    }

    #[test]
    fn shadowing_degenerate_and_lognormal_mean() {
        let mut rng = trial_rng(6, 0);
        for _ in 0..10 {
            assert_eq!(sample_shadowing(0.0, 0.0, &mut rng), 1.0);
        }
        let sigma = crate::geometry::shadowing_db_to_natural(6.0);
        let n = 200_000;
        let mean: f64 = (0..n).map(|_| sample_shadowing(0.0, sigma, &mut rng)).sum::<f64>() / n as f64;
        let expected = (sigma * sigma / 2.0).exp();
        // log-normal mean has heavy-tailed noise; 3% band at 2e5 draws
        assert!((mean - expected).abs() < 0.03 * expected, "E[chi] = {mean} vs {expected}");
    }

    #[test]
    fn noise_variance_convention() {
        let mut rng = trial_rng(8, 0);
        let n = 500_000;
        let (mut total, mut re_var) = (0.0, 0.0);
        for _ in 0..n {
            let z = sample_noise(2.0, &mut rng);
            total += z.norm_sqr();
            re_var += z.re * z.re;
        }
        assert!((total / n as f64 - 2.0).abs() < 0.02);
        assert!((re_var / n as f64 - 1.0).abs() < 0.01);
    }

    #[test]
    fn qam16_symbol_energy_exact_over_alphabet() {
        let c = make_constellation(ConstellationLabel::Qam16);
        let e: f64 = c.symbols().iter().map(|s| s.norm_sqr()).sum::<f64>() / 16.0;
        assert_abs_diff_eq!(e, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn constant_modulus_moments_are_one() {
        for scheme in [JammingScheme::Bpsk, JammingScheme::Qpsk] {
            for q in [0, 1, 2, 5, 17, 60] {
                assert_abs_diff_eq!(jamming_moment(scheme, q).unwrap(), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn awgn_moments_match_gaussian_formula() {
        assert_relative_eq!(jamming_moment(JammingScheme::Awgn, 1).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(jamming_moment(JammingScheme::Awgn, 2).unwrap(), 3.0, max_relative = 1e-12);
        assert_relative_eq!(
            jamming_moment(JammingScheme::Awgn, 5).unwrap(),
            945.0, // (2*5 - 1)!!
            max_relative = 1e-12
        );
        assert!(jamming_moment(JammingScheme::Awgn, 61).is_err());
    }

    #[test]
    fn clean_signal_demodulates_exactly() {
        let mut rng = trial_rng(9, 0);
        for label in [
            ConstellationLabel::Bpsk,
            ConstellationLabel::Qpsk,
            ConstellationLabel::Qam16,
        ] {
            let c = make_constellation(label);
            for (idx, &s) in c.symbols().iter().enumerate() {
                let gain = sample_fading(&mut rng) * 3.0;
                let y = gain * s;
                assert_eq!(ml_demodulate(y, gain, &c), idx);
            }
        }
    }

    #[test]
    fn path_loss_values() {
        assert_eq!(path_loss(0.0, 3.7), 1.0);
        assert_abs_diff_eq!(path_loss(1.0, 4.0), 1.0 / 16.0, epsilon = 1e-15);
        assert_relative_eq!(path_loss(499.0, 3.7), 500.0_f64.powf(-3.7), max_relative = 1e-14);
    }
}
