//! Adaptive Gauss–Kronrod quadrature (7–15 pair) on finite intervals.
//!
//! Used by the outage and error-probability engines for every integral that
//! is not reduced to a closed form, and by the test suites as the
//! brute-force oracle against those closed forms.

use crate::error::{Error, Result};

// 15-point Kronrod abscissae (positive half) with the embedded 7-point
// Gauss rule on the odd-indexed nodes. Standard QUADPACK qk15 constants.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss–Kronrod 7–15 panel: returns (kronrod value, |kronrod - gauss|).
fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;

    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let fsum = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[i] * fsum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * fsum;
        }
    }

    kronrod *= half;
    gauss *= half;
    Ok((kronrod, (kronrod - gauss).abs()))
}

/// Globally adaptive integration of `f` over `[a, b]` to absolute tolerance
/// `abs_tol`. Worst-interval-first bisection; `context` names the failing
/// axis in the error when the subdivision budget runs out.
pub fn integrate<F>(mut f: F, a: f64, b: f64, abs_tol: f64, context: &str) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    const MAX_INTERVALS: usize = 4096;

    if a == b {
        return Ok(0.0);
    }

    let (value, err) = gk15(&mut f, a, b)?;
    // (value, error, lo, hi)
    let mut segments: Vec<(f64, f64, f64, f64)> = vec![(value, err, a, b)];

    loop {
        let total_err: f64 = segments.iter().map(|s| s.1).sum();
        if total_err <= abs_tol {
            return Ok(segments.iter().map(|s| s.0).sum());
        }
        if segments.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature {
                context: context.to_string(),
                requested: abs_tol,
                achieved: total_err,
            });
        }

        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .1.total_cmp(&y.1 .1))
            .map(|(i, _)| i)
            .expect("non-empty segment list");
        let (_, _, lo, hi) = segments[worst];
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval at floating-point resolution: nothing left to refine
            segments[worst].1 = 0.0;
            continue;
        }
        segments.swap_remove(worst);
        segments.push(gk15_segment(&mut f, lo, mid)?);
        segments.push(gk15_segment(&mut f, mid, hi)?);
    }
}

fn gk15_segment<F>(f: &mut F, lo: f64, hi: f64) -> Result<(f64, f64, f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (v, e) = gk15(f, lo, hi)?;
    Ok((v, e, lo, hi))
}

/// Fixed composite Gauss–Kronrod rule: `panels` equal panels over `[a, b]`,
/// no adaptivity. The node set depends only on `(a, b, panels)`, which lets
/// callers cache per-node quantities across repeated sweeps.
pub fn fixed_panels<F>(mut f: F, a: f64, b: f64, panels: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let lo = a + k as f64 * width;
        let (v, _) = gk15(&mut f, lo, lo + width)?;
        total += v;
    }
    Ok(total)
}

/// The abscissae of [`fixed_panels`] in evaluation order.
pub fn fixed_panel_nodes(a: f64, b: f64, panels: usize) -> Vec<f64> {
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * 15);
    for k in 0..panels {
        let lo = a + k as f64 * width;
        let center = lo + 0.5 * width;
        let half = 0.5 * width;
        nodes.push(center);
        for &x in XGK.iter().take(7) {
            nodes.push(center - half * x);
            nodes.push(center + half * x);
        }
    }
    nodes
}

/// Quadrature against the same node layout as [`fixed_panels`], with values
/// supplied per node (same order as [`fixed_panel_nodes`]).
pub fn fixed_panels_from_values(values: &[f64], a: f64, b: f64, panels: usize) -> f64 {
    assert_eq!(values.len(), panels * 15);
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut total = 0.0;
    let mut idx = 0;
    for _ in 0..panels {
        let mut kronrod = WGK[7] * values[idx];
        idx += 1;
        for wgk in WGK.iter().take(7) {
            kronrod += wgk * (values[idx] + values[idx + 1]);
            idx += 2;
        }
        total += kronrod * half;
    }
    total
}
