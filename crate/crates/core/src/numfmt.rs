//! Fixed-significant-digit number formatting for reproducible text output.
//!
//! CSV and JSON reports round every float to the same number of significant
//! digits so that repeated runs diff cleanly.

/// Significant digits used by all emitted reports.
pub const REPORT_SIG_DIGITS: i32 = 9;

/// Rounds `x` to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let scale = digits - 1 - x.abs().log10().floor() as i32;
    let scale = scale.clamp(-300, 300);
    let factor = 10f64.powi(scale);
    (x * factor).round() / factor
}

/// Formats `x` with [`round_sig`] applied, using the shortest decimal
/// representation of the rounded value.
pub fn fmt_sig(x: f64, digits: i32) -> String {
    format!("{}", round_sig(x, digits))
}

/// Recursively rounds every float in a JSON value to `digits` significant
/// digits. Integers are left untouched.
pub fn round_json(value: &mut serde_json::Value, digits: i32) {
    match value {
        serde_json::Value::Number(n) => {
            if n.is_f64() {
                if let Some(f) = n.as_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(round_sig(f, digits)) {
                        *n = rounded;
                    }
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                round_json(item, digits);
            }
        }
        serde_json::Value::Object(map) => {
            for (_, item) in map.iter_mut() {
                round_json(item, digits);
            }
        }
        _ => {}
    }
}
