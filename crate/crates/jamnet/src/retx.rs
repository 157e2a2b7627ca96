//! Retransmission steady state: how packet failures inflate the effective
//! network activity factor, and the residual drop probability under a
//! retransmission limit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{JammerParams, NetworkParams};
use crate::outage::{outage_probability, OutageMode, OutageQuery};

/// Whether the outage probability feeding the steady-state balance is
/// evaluated at the exogenous activity factor or iterated to the fixed
/// point of the steady-state activity itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coupling {
    OpenLoop,
    FixedPoint,
}

/// Steady-state activity factor under a retransmission limit `d` (so d+1
/// total attempts): p_s = 1 - (1-p)^(sum_{k=0..d} P_o^k). The geometric-sum
/// form is exact for every P_o in [0, 1], including the saturation limit
/// P_o = 1 where the exponent becomes d+1.
pub fn steady_state_activity(p: f64, p_o: f64, d: u32) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("activity must be in (0,1), got {p}")));
    }
    if !(0.0..=1.0).contains(&p_o) {
        return Err(Error::domain(format!("outage must be in [0,1], got {p_o}")));
    }
    let mut exponent = 0.0;
    let mut power = 1.0;
    for _ in 0..=d {
        exponent += power;
        power *= p_o;
    }
    Ok(1.0 - (1.0 - p).powf(exponent))
}

/// Probability a packet is dropped after exhausting its d+1 attempts.
pub fn drop_probability(p_o: f64, d: u32) -> f64 {
    p_o.powi(d as i32 + 1)
}

/// One row of a retransmission profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RetxRow {
    pub d: u32,
    pub p_s: f64,
    pub delta: f64,
    pub p_o: f64,
    pub converged: bool,
}

/// Steady-state profile across retransmission limits. Open-loop rows use
/// the outage at the exogenous activity factor; fixed-point rows iterate
/// p_s <- f(P_o(p_s)) with step halving on oscillation.
pub fn retx_profile(
    net: &NetworkParams,
    jam: &JammerParams,
    theta: f64,
    coupling: Coupling,
    d_grid: &[u32],
) -> Result<Vec<RetxRow>> {
    let p = net.p;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("activity must be in (0,1), got {p}")));
    }
    let outage_at = |activity: f64| -> Result<f64> {
        let mut net_a = *net;
        net_a.p = activity;
        let q = OutageQuery::new(theta, net_a, *jam)?;
        outage_probability(&q, OutageMode::Ghq(15))
    };

    let open_loop_outage = outage_at(p)?;
    let mut rows = Vec::with_capacity(d_grid.len());
    for &d in d_grid {
        let (p_s, p_o, converged) = match coupling {
            Coupling::OpenLoop => (
                steady_state_activity(p, open_loop_outage, d)?,
                open_loop_outage,
                true,
            ),
            Coupling::FixedPoint => {
                let mut p_s = p;
                let mut p_o = open_loop_outage;
                let mut prev_delta = 0.0f64;
                let mut converged = false;
                for _ in 0..100 {
                    p_o = outage_at(p_s)?;
                    let next = steady_state_activity(p, p_o, d)?;
                    let delta = next - p_s;
                    if delta.abs() < 1e-8 {
                        p_s = next;
                        converged = true;
                        break;
                    }
                    if prev_delta * delta < 0.0 {
                        p_s += delta / 2.0; // dampen oscillation
                    } else {
                        p_s = next;
                    }
                    prev_delta = delta;
                }
                (p_s, p_o, converged)
            }
        };
        rows.push(RetxRow {
            d,
            p_s,
            delta: drop_probability(p_o, d),
            p_o,
            converged,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::JammingScheme;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn steady_state_closed_form_points() {
        // no failures or no retransmissions leave the activity unchanged
        assert_abs_diff_eq!(steady_state_activity(0.3, 0.0, 5).unwrap(), 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(steady_state_activity(0.3, 0.7, 0).unwrap(), 0.3, epsilon = 1e-15);

        let v = steady_state_activity(0.01, 0.5, 4).unwrap();
        let exponent = (1.0 - 0.5f64.powi(5)) / 0.5;
        assert_relative_eq!(v, 1.0 - 0.99f64.powf(exponent), max_relative = 1e-14);

        // saturation limit: exponent tends to d+1
        let sat = steady_state_activity(0.01, 1.0, 4).unwrap();
        assert_relative_eq!(sat, 1.0 - 0.99f64.powi(5), max_relative = 1e-14);
    }

    #[test]
    fn drop_probability_points() {
        assert_eq!(drop_probability(0.0, 7), 0.0);
        assert_eq!(drop_probability(1.0, 7), 1.0);
        assert_abs_diff_eq!(drop_probability(0.5, 4), 0.03125, epsilon = 1e-15);
    }

    #[test]
    fn steady_state_monotonicity() {
        let mut last = 0.0;
        for p_o in [0.0, 0.2, 0.5, 0.8, 0.95] {
            let v = steady_state_activity(0.05, p_o, 6).unwrap();
            assert!(v >= last);
            assert!(v >= 0.05);
            last = v;
        }
        let mut last = 0.0;
        for d in 0..10 {
            let v = steady_state_activity(0.05, 0.6, d).unwrap();
            assert!(v >= last);
            last = v;
        }
        let mut last = 1.0;
        for d in 0..10 {
            let v = drop_probability(0.6, d);
            assert!(v <= last);
            last = v;
        }
    }

    #[test]
    fn modes_agree_without_jamming() {
        let net = NetworkParams::defaults();
        let jam = JammerParams::none_with_power(1.0, JammingScheme::Bpsk);
        let d_grid = [0u32, 4, 8];
        let open = retx_profile(&net, &jam, 1.0, Coupling::OpenLoop, &d_grid).unwrap();
        let fixed = retx_profile(&net, &jam, 1.0, Coupling::FixedPoint, &d_grid).unwrap();
        for (o, f) in open.iter().zip(&fixed) {
            assert!(f.converged);
            assert!((o.p_s - f.p_s).abs() < 1e-3, "D={}: {} vs {}", o.d, o.p_s, f.p_s);
        }
    }

    #[test]
    fn fixed_point_raises_activity_under_jamming() {
        let net = NetworkParams::defaults();
        let jam = JammerParams::scaled(1, 1.0, net.lambda_t, 1.0, JammingScheme::Bpsk).unwrap();
        let rows = retx_profile(&net, &jam, 1.0, Coupling::FixedPoint, &[0, 2, 8]).unwrap();
        assert!(rows.iter().all(|r| r.converged));
        assert!(rows[0].p_s >= net.p);
        assert!(rows[2].p_s > rows[1].p_s && rows[1].p_s > rows[0].p_s);
        assert!(rows[2].delta < rows[0].delta);
    }
}
