//! Small numerical helpers shared by the measure and verification code.

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Format a double with 17 significant digits, which round-trips every f64.
pub fn fmt_sig17(x: f64) -> String {
    format!("{x:.16e}")
}
