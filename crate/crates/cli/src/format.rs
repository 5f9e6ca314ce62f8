//! Locale-independent number formatting for CSV output.

use fog_ndt::Ndt;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `v` like C's `%.12g`: 12 significant digits, trailing zeros
/// dropped, scientific notation only for very large or small magnitudes.
/// Infinity prints as `inf`.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_owned();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_owned();
    }
    if v == 0.0 {
        return "0".to_owned();
    }

    let precision = SIGNIFICANT_DIGITS - 1;
    let sci = format!("{v:.precision$e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");

    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (precision as i32 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_owned()
    }
}

pub fn format_ndt(v: Ndt) -> String {
    format_number(v.get())
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Inverse of [`format_number`] for the values it produces.
pub fn parse_number(s: &str) -> Option<f64> {
    match s {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => s.parse().ok(),
    }
}
