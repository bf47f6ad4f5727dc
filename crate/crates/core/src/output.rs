//! Fixed-format numeric output shared by every CSV writer.

/// Seventeen significant digits in scientific notation, so every `f64`
/// round-trips and the text is identical across runs and platforms.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        // normalise -0.0
        return format!("{:.16e}", 0.0f64);
    }
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for v in [std::f64::consts::PI, -1.0 / 3.0, 1e-300, 4.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(-0.0), fmt_f64(0.0));
        assert_eq!(fmt_f64(0.25), "2.5000000000000000e-1");
    }
}
