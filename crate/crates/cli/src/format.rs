//! Number formatting for CSV output: fixed decimal notation, 12 significant
//! digits, no exponents, `.` as the decimal separator.

pub const SIGNIFICANT_DIGITS: i32 = 12;

/// Format `x` in fixed notation with [`SIGNIFICANT_DIGITS`] significant digits.
///
/// Integers of more than 12 digits keep their magnitude and are rounded in
/// the trailing places. Non-finite values print as `NaN`, `inf`, `-inf`.
pub fn fixed(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return format!("{:.*}", (SIGNIFICANT_DIGITS - 1) as usize, 0.0);
    }
    let mut e = x.abs().log10().floor() as i32;
    if 10f64.powi(e) > x.abs() {
        e -= 1;
    }
    if e >= SIGNIFICANT_DIGITS - 1 {
        let scale = 10f64.powi(e - SIGNIFICANT_DIGITS + 1);
        return format!("{:.0}", (x / scale).round() * scale);
    }
    let decimals = (SIGNIFICANT_DIGITS - 1 - e) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit, e.g. 9.99…9 -> 10.00…0
    let carried = s.parse::<f64>().is_ok_and(|v| v.abs() >= 10f64.powi(e + 1));
    if carried && decimals > 0 {
        format!("{:.*}", decimals - 1, x)
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn significant(s: &str) -> usize {
        s.trim_start_matches('-')
            .replace('.', "")
            .trim_start_matches('0')
            .len()
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fixed(17.845599540410861), "17.8455995404");
        assert_eq!(fixed(-1.4603545088095868), "-1.46035450881");
        assert_eq!(fixed(0.000123456789012345), "0.000123456789012");
        assert_eq!(fixed(10142.090347526812), "10142.0903475");
        assert_eq!(fixed(1.0), "1.00000000000");
        assert_eq!(fixed(0.0), "0.00000000000");
    }

    #[test]
    fn carry_keeps_digit_count() {
        let s = fixed(9.9999999999996);
        assert_eq!(s, "10.0000000000");
        assert_eq!(significant(&s), 12);
        assert_eq!(fixed(0.099999999999996), "0.100000000000");
    }

    #[test]
    fn large_integers_stay_fixed() {
        assert_eq!(fixed(123456789012345.0), "123456789012000");
        assert_eq!(fixed(100000000000.0), "100000000000");
    }

    #[test]
    fn never_uses_exponent() {
        for x in [1e-20, 3.5e-9, 2.2e14, -7.25e-5] {
            let s = fixed(x);
            assert!(!s.contains('e') && !s.contains('E'), "{s}");
            let back: f64 = s.parse().unwrap();
            assert!((back - x).abs() <= 1e-11 * x.abs());
        }
    }

    #[test]
    fn non_finite() {
        assert_eq!(fixed(f64::NAN), "NaN");
        assert_eq!(fixed(f64::NEG_INFINITY), "-inf");
    }
}
