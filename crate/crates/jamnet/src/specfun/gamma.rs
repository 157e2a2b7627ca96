use crate::error::{Error, Result};

// Lanczos approximation, g = 7, 9 coefficients (GNU Scientific Library set).
// Relative error stays below ~1e-14 on the positive real axis, which covers
// the 1e-12 contract with margin.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Gamma function for positive real arguments.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!(
            "gamma requires a positive argument, got {x}"
        )));
    }
    Ok(gamma_positive(x))
}

fn gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the Lanczos sum on its well-conditioned side
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma_positive(1.0 - x))
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}
