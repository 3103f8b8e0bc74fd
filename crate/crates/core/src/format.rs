//! Number rendering for reports: decimals for machine-readable output,
//! small fractions for the markdown tables.

/// Largest denominator tried when rendering a value as a fraction.
pub const MAX_DENOMINATOR: i64 = 64;

const FRACTION_TOL: f64 = 1e-9;

/// Finds `n/d` in lowest terms with `d <= max_den` within `1e-9` of `x`.
pub fn rationalize(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() {
        return None;
    }
    (1..=max_den).find_map(|d| {
        let n = (x * d as f64).round();
        ((n / d as f64 - x).abs() <= FRACTION_TOL).then_some((n as i64, d))
    })
}

/// `19/3`, `-15/4`, `2`; falls back to a decimal when no small fraction fits.
pub fn fraction(x: f64) -> String {
    match rationalize(x, MAX_DENOMINATOR) {
        Some((0, _)) => "0".to_string(),
        Some((n, 1)) => n.to_string(),
        Some((n, d)) => format!("{n}/{d}"),
        None => decimal(x),
    }
}

/// Rounds to 12 decimal places and trims trailing zeros:
/// `6.333333333333`, `2`, `-5.666666666667`.
pub fn decimal(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

/// Rounds to 12 decimal places, for JSON output.
pub fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}
