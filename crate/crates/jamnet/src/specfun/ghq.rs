//! Gauss-Hermite quadrature rules and the log-normal expectation built on them.

use crate::error::{Error, Result};

pub const MAX_GHQ_ORDER: usize = 64;

/// A Gauss-Hermite rule: integrates f against exp(-x^2) over the real line,
/// exactly for polynomials of degree <= 2N-1.
#[derive(Debug, Clone, PartialEq)]
pub struct GhqRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GhqRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Quadrature of exp(-x^2) * f(x) over (-inf, inf).
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// E[f(chi)] for chi log-normal with log-mean 0 and log-std `sigma_chi`
    /// (natural-log units): (1/sqrt(pi)) * sum w_n f(exp(sqrt(2) sigma x_n)).
    pub fn lognormal_expectation<F: FnMut(f64) -> f64>(&self, sigma_chi: f64, mut f: F) -> f64 {
        let scale = std::f64::consts::SQRT_2 * sigma_chi;
        self.integrate(|x| f((scale * x).exp())) / std::f64::consts::PI.sqrt()
    }
}

/// Orthonormal Hermite value and derivative at `x` for order `n`.
///
/// Uses the normalized three-term recurrence, which keeps intermediate
/// values O(1) up to the supported orders.
fn hermite_value_deriv(n: usize, x: f64) -> (f64, f64) {
    let pi_quarter = std::f64::consts::PI.powf(-0.25);
    let mut p_prev = 0.0_f64;
    let mut p = pi_quarter;
    for k in 0..n {
        let kf = k as f64;
        let p_next = x * (2.0 / (kf + 1.0)).sqrt() * p - (kf / (kf + 1.0)).sqrt() * p_prev;
        p_prev = p;
        p = p_next;
    }
    let deriv = (2.0 * n as f64).sqrt() * p_prev;
    (p, deriv)
}

/// Build the N-point Gauss-Hermite rule by Newton iteration on the Hermite
/// recurrence, seeded with the standard asymptotic guesses and mirrored so
/// the node set is exactly symmetric.
pub fn gauss_hermite(n: usize) -> Result<GhqRule> {
    if n == 0 || n > MAX_GHQ_ORDER {
        return Err(Error::domain(format!(
            "gauss_hermite order must be in 1..={MAX_GHQ_ORDER}, got {n}"
        )));
    }

    let mut nodes = vec![0.0_f64; n];
    let mut weights = vec![0.0_f64; n];

    let m = (n + 1) / 2;
    let mut roots: Vec<f64> = Vec::with_capacity(m);

    for i in 0..m {
        // asymptotic initial guesses, largest root first
        let mut z = match i {
            0 => {
                let an = (2 * n + 1) as f64;
                an.sqrt() - 1.85575 * an.powf(-1.0 / 6.0)
            }
            1 => roots[0] - 1.14 * (n as f64).powf(0.426) / roots[0],
            2 => 1.86 * roots[1] - 0.86 * roots[0],
            3 => 1.91 * roots[2] - 0.91 * roots[1],
            _ => 2.0 * roots[i - 1] - roots[i - 2],
        };

        let odd_center = n % 2 == 1 && i == m - 1;
        if odd_center {
            z = 0.0;
        } else {
            let mut converged = false;
            for _ in 0..200 {
                let (p, dp) = hermite_value_deriv(n, z);
                let delta = p / dp;
                z -= delta;
                if delta.abs() <= 1e-14 * z.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NonConvergence {
                    func: "gauss_hermite",
                    details: format!("Newton stalled for order {n}, root index {i}"),
                });
            }
        }
        roots.push(z);

        let (_, dp) = hermite_value_deriv(n, z);
        let w = 2.0 / (dp * dp);

        // store mirrored pair (ascending order; roots come out descending)
        nodes[n - 1 - i] = z;
        nodes[i] = -z;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }

    Ok(GhqRule {
        order: n,
        nodes,
        weights,
    })
}

/// E[f(chi)] for log-normal shadowing chi = exp(N(0, sigma_chi^2)), computed
/// with the N-node Gauss-Hermite rule after the change of variables
/// chi = exp(sqrt(2) sigma_chi x).
pub fn ghq_lognormal_expectation<F: FnMut(f64) -> f64>(
    f: F,
    sigma_chi: f64,
    n: usize,
) -> Result<f64> {
    if sigma_chi < 0.0 {
        return Err(Error::domain(format!(
            "sigma_chi must be non-negative, got {sigma_chi}"
        )));
    }
    Ok(gauss_hermite(n)?.lognormal_expectation(sigma_chi, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    const SQRT_PI: f64 = 1.7724538509055160273;

    #[test]
    fn order_one_is_midpoint() {
        let rule = gauss_hermite(1).unwrap();
        assert_eq!(rule.nodes(), &[0.0]);
        assert_abs_diff_eq!(rule.weights()[0], SQRT_PI, epsilon = 1e-14);
    }

    #[test]
    fn order_two_closed_form() {
        let rule = gauss_hermite(2).unwrap();
        let x = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(rule.nodes()[0], -x, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.nodes()[1], x, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.weights()[0], SQRT_PI / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.weights()[1], SQRT_PI / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn invariants_hold_across_orders() {
        for n in 1..=MAX_GHQ_ORDER {
            let rule = gauss_hermite(n).unwrap();
            let nodes = rule.nodes();
            let weights = rule.weights();

            // weights sum to sqrt(pi)
            let wsum: f64 = weights.iter().sum();
            assert_abs_diff_eq!(wsum, SQRT_PI, epsilon = 1e-12);

            // exact mirror symmetry and strictly increasing nodes
            for k in 0..n {
                assert_eq!(nodes[k], -nodes[n - 1 - k], "order {n}");
                assert!(weights[k] > 0.0);
                if k > 0 {
                    assert!(nodes[k] > nodes[k - 1], "order {n} not increasing");
                }
            }
        }
    }

    #[test]
    fn even_moments_match_gamma() {
        // int x^(2k) exp(-x^2) dx = Gamma(k + 1/2), exact for k <= N-1
        let rule = gauss_hermite(15).unwrap();
        for k in 0..15usize {
            let q = rule.integrate(|x| x.powi(2 * k as i32));
            let exact = gamma(k as f64 + 0.5).unwrap();
            assert_relative_eq!(q, exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn x28_against_gamma_14_5() {
        let rule = gauss_hermite(15).unwrap();
        let q = rule.integrate(|x| x.powi(28));
        assert_relative_eq!(q, gamma(14.5).unwrap(), max_relative = 1e-10);
    }

    #[test]
    fn lognormal_constant_and_degenerate() {
        let one = ghq_lognormal_expectation(|_| 1.0, 1.3816, 15).unwrap();
        assert_abs_diff_eq!(one, 1.0, epsilon = 1e-12);

        let degenerate = ghq_lognormal_expectation(|chi| chi, 0.0, 15).unwrap();
        assert_abs_diff_eq!(degenerate, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn lognormal_mean_identity() {
        // E[chi] = exp(sigma^2 / 2) for the 6 dB shadowing figure
        let sigma = 6.0 * std::f64::consts::LN_10 / 10.0;
        let v = ghq_lognormal_expectation(|chi| chi, sigma, 15).unwrap();
        assert_relative_eq!(v, (sigma * sigma / 2.0).exp(), max_relative = 1e-11);
    }

    #[test]
    fn rejects_out_of_range_order() {
        assert!(gauss_hermite(0).is_err());
        assert!(gauss_hermite(65).is_err());
    }
}
