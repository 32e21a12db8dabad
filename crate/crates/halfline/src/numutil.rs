//! Small numeric helpers shared across modules.

use crate::complex2::C64;

/// Distance from `z` to the ray `[0, ∞)`: `|Im z|` when `Re z ≥ 0`, else
/// `|z|`.
pub fn dist_to_nonneg_ray(z: C64) -> f64 {
    if z.re >= 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

/// Distance from `z` to the ray `(-∞, 0]`.
pub fn dist_to_nonpos_ray(z: C64) -> f64 {
    dist_to_nonneg_ray(-z)
}

/// Least-squares slope of `y` against `x`.
pub fn linear_fit_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        num += (xi - mx) * (yi - my);
        den += (xi - mx) * (xi - mx);
    }
    num / den
}

/// Slope of `log y` against `log x`; all inputs must be positive.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    linear_fit_slope(&lx, &ly)
}
