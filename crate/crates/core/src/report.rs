//! Number formatting shared by reports: percentages with two decimals and
//! ratios with six significant digits.

/// `fraction` as a percentage rounded half away from zero to two decimals.
pub fn percent(fraction: f64) -> f64 {
    (fraction * 10_000.0).round() / 100.0
}

/// Rounds to six significant digits.
pub fn ratio(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let digits = 6 - 1 - x.abs().log10().floor() as i32;
    let scale = 10f64.powi(digits);
    (x * scale).round() / scale
}
