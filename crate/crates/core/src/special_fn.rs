//! log Γ, digamma, the functional-equation factor Δ(s) and the
//! Riemann–Siegel theta function.
//!
//! Δ(s) is evaluated in the symmetric form `π^{s-1/2} Γ((1-s)/2) / Γ(s/2)`,
//! which equals `2^s π^{s-1} Γ(1-s) sin(πs/2)` by the duplication and
//! reflection formulas. In this form `log Δ(1-s) = -log Δ(s)` holds term by
//! term and the real part of `log Δ(1/2+it)` is exactly zero, so both unit
//! modulus on the critical line and `Δ(s)Δ(1-s) = 1` survive rounding.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

pub type ComplexValue = Complex64;

/// Shift arguments right until the real part reaches this before applying
/// Stirling's series; this also guarantees `|z| >= 10`.
const STIRLING_MIN_RE: f64 = 10.0;

/// Above this height ϑ uses its asymptotic expansion.
pub const THETA_SWITCH: f64 = 20.0;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_8;

/// B_2, B_4, ..., B_20.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// ϑ(t) together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaValue {
    pub t: f64,
    /// Continuous branch with ϑ(0) = 0.
    pub theta: f64,
    pub accuracy: f64,
}

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

fn check_finite(func: &'static str, s: Complex64) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(domain(
            func,
            if s.re.is_finite() { s.im } else { s.re },
            "finite argument",
        ))
    }
}

/// Principal-branch log Γ(s), analytic off the non-positive real axis.
///
/// The argument is shifted to `Re z >= 10` with the recurrence, each shift
/// contributing a principal logarithm; the accumulated imaginary part is
/// therefore continuous along vertical lines.
pub fn log_gamma(s: ComplexValue) -> Result<ComplexValue> {
    check_finite("log_gamma", s)?;
    if is_nonpositive_integer(s) {
        return Err(Error::Pole {
            func: "log_gamma",
            at: s,
        });
    }
    if s.im < 0.0 {
        return log_gamma(s.conj()).map(|v| v.conj());
    }
    // Σ log(s+k) as log Π|s+k| + iΣ arg(s+k): one rounding in the real part
    // and an unwrapped imaginary part.
    let mut z = s;
    let mut modulus = 1.0;
    let mut log_modulus = 0.0;
    let mut arg = 0.0;
    while z.re < STIRLING_MIN_RE {
        modulus *= z.norm();
        if modulus > 1e250 {
            log_modulus += modulus.ln();
            modulus = 1.0;
        }
        arg += z.arg();
        z += 1.0;
    }
    Ok(stirling(z) - Complex64::new(log_modulus + modulus.ln(), arg))
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        series += power * (b / (two_k * (two_k - 1.0)));
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_2PI_HALF + series
}

/// ψ(s) = Γ'(s)/Γ(s).
pub fn digamma(s: ComplexValue) -> Result<ComplexValue> {
    check_finite("digamma", s)?;
    if is_nonpositive_integer(s) {
        return Err(Error::Pole {
            func: "digamma",
            at: s,
        });
    }
    if s.im < 0.0 {
        return digamma(s.conj()).map(|v| v.conj());
    }
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < STIRLING_MIN_RE {
        shift += z.inv();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut power = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        series += power * (b / (2.0 * (k as f64 + 1.0)));
        power *= inv2;
    }
    Ok(z.ln() - 0.5 * inv - series - shift)
}

/// log Δ(s) on the branch given by the two log Γ terms. Returns `None` at the
/// zeros of Δ (s = 0, -2, -4, ...).
fn log_delta(s: Complex64) -> Result<Option<Complex64>> {
    let upper = (1.0 - s) * 0.5;
    if is_nonpositive_integer(upper) {
        return Err(Error::Pole {
            func: "delta",
            at: s,
        });
    }
    let lower = s * 0.5;
    if is_nonpositive_integer(lower) {
        return Ok(None);
    }
    let ln_pi = PI.ln();
    Ok(Some(
        (s - 0.5) * ln_pi + log_gamma(upper)? - log_gamma(lower)?,
    ))
}

/// The functional-equation factor Δ(s) with ζ(s) = Δ(s)ζ(1-s).
pub fn delta(s: ComplexValue) -> Result<ComplexValue> {
    check_finite("delta", s)?;
    if s.im < 0.0 {
        return delta(s.conj()).map(|v| v.conj());
    }
    match log_delta(s)? {
        None => Ok(Complex64::new(0.0, 0.0)),
        Some(l) if l.re > f64::MAX.ln() => Err(Error::Overflow {
            func: "delta",
            at: s,
        }),
        Some(l) => Ok(l.exp()),
    }
}

/// Leading term `(|t|/2π)^{1/2-σ-it} e^{i(t+π/4)}` of Δ(σ+it), conjugated for
/// negative t so that it respects Δ(s̄) = conj Δ(s).
pub fn delta_asymptotic(s: ComplexValue) -> Result<ComplexValue> {
    check_finite("delta_asymptotic", s)?;
    if s.im.abs() < 1.0 {
        return Err(domain("delta_asymptotic", s.im, "|Im s| >= 1"));
    }
    if s.im < 0.0 {
        return delta_asymptotic(s.conj()).map(|v| v.conj());
    }
    let t = s.im;
    let exponent = Complex64::new(0.5 - s.re, -t);
    let l = exponent * (t / (2.0 * PI)).ln() + Complex64::new(0.0, t + PI / 4.0);
    if l.re > f64::MAX.ln() {
        return Err(Error::Overflow {
            func: "delta_asymptotic",
            at: s,
        });
    }
    Ok(l.exp())
}

/// Δ'/Δ(s) = log π − ½ψ((1−s)/2) − ½ψ(s/2).
pub fn log_delta_derivative(s: ComplexValue) -> Result<ComplexValue> {
    check_finite("log_delta_derivative", s)?;
    if s.im.abs() < 1.0 {
        return Err(domain("log_delta_derivative", s.im, "|Im s| >= 1"));
    }
    if s.im < 0.0 {
        return log_delta_derivative(s.conj()).map(|v| v.conj());
    }
    Ok(PI.ln() - 0.5 * digamma((1.0 - s) * 0.5)? - 0.5 * digamma(s * 0.5)?)
}

// Coefficients a/b of t^{-p} in the large-t expansion of ϑ.
const THETA_SERIES: [(f64, f64, i32); 5] = [
    (1.0, 48.0, 1),
    (7.0, 5760.0, 3),
    (31.0, 80640.0, 5),
    (127.0, 430080.0, 7),
    (511.0, 1216512.0, 9),
];

fn theta_asymptotic(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let mut power = inv;
    let mut series = 0.0;
    for (a, b, _) in THETA_SERIES {
        series += a / b * power;
        power *= inv2;
    }
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + series
}

fn theta_exact(t: f64) -> f64 {
    // t >= 0 keeps the argument in the upper half plane, where log Γ is
    // continuous; log_gamma cannot fail for Re = 1/4.
    let lg =
        log_gamma(Complex64::new(0.25, 0.5 * t)).expect("log_gamma is finite off the real axis");
    lg.im - 0.5 * t * PI.ln()
}

/// ϑ(t) without domain checking. Callers guarantee `t >= 0`.
#[inline]
pub(crate) fn theta_raw(t: f64) -> f64 {
    if t >= THETA_SWITCH {
        theta_asymptotic(t)
    } else {
        theta_exact(t)
    }
}

/// Riemann–Siegel theta, `exp(iϑ(t)) = Δ(1/2+it)^{-1/2}`.
pub fn theta(t: f64) -> Result<ThetaValue> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(domain("theta", t, "finite t >= 0"));
    }
    let value = theta_raw(t);
    let accuracy = if t >= THETA_SWITCH {
        // first omitted term is ~1.2e-3 t^{-11}; rounding of the leading terms dominates
        1.2e-3 * t.powi(-11) + 4.0 * f64::EPSILON * (0.5 * t * t.ln()).abs().max(1.0)
    } else {
        1e-14 * (1.0 + value.abs())
    };
    Ok(ThetaValue {
        t,
        theta: value,
        accuracy,
    })
}

#[inline]
pub(crate) fn theta_derivative_raw(t: f64) -> f64 {
    if t >= THETA_SWITCH {
        let inv2 = 1.0 / (t * t);
        let mut power = inv2;
        let mut series = 0.0;
        for (a, b, p) in THETA_SERIES {
            series -= p as f64 * a / b * power;
            power *= inv2;
        }
        0.5 * (t / (2.0 * PI)).ln() + series
    } else {
        let psi =
            digamma(Complex64::new(0.25, 0.5 * t)).expect("digamma is finite off the real axis");
        0.5 * psi.re - 0.5 * PI.ln()
    }
}

/// ϑ'(t) ≈ ½ log(t/2π), from the same two evaluation regimes as [`theta`].
pub fn theta_derivative(t: f64) -> Result<f64> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(domain("theta_derivative", t, "finite t >= 1"));
    }
    Ok(theta_derivative_raw(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_trivial_values() {
        // exact zeros come out of a cancellation between terms of size ~15
        let tol = 8.0 * f64::EPSILON * 16.0;
        assert_abs_diff_eq!(log_gamma(c(1.0, 0.0)).unwrap().norm(), 0.0, epsilon = tol);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(half.re, 0.5 * PI.ln(), epsilon = tol);
        assert_abs_diff_eq!(half.im, 0.0, epsilon = tol);
    }

    #[test]
    fn log_gamma_matches_multiprecision_reference() {
        // mpmath.loggamma(0.25 + 10j) at 30 digits
        let v = log_gamma(c(0.25, 10.0)).unwrap();
        assert_abs_diff_eq!(v.re, -15.364_592_760_295_24, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 12.634_193_666_938_486, epsilon = 1e-12);
    }

    #[test]
    fn log_gamma_poles() {
        for s in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(s, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(c(-1.0, 1e-3)).is_ok());
    }

    #[test]
    fn log_gamma_recurrence_on_negative_half_plane() {
        // log Γ(s+1) − log Γ(s) = log s up to a multiple of 2πi
        for s in [c(-2.5, 0.7), c(-0.3, 4.0), c(3.2, -11.0)] {
            let d = log_gamma(s + 1.0).unwrap() - log_gamma(s).unwrap() - s.ln();
            assert_abs_diff_eq!(d.re, 0.0, epsilon = 1e-12);
            let k = (d.im / (2.0 * PI)).round();
            assert_abs_diff_eq!(d.im, 2.0 * PI * k, epsilon = 1e-12);
        }
    }

    #[test]
    fn log_gamma_continuous_along_vertical_line() {
        let mut prev = log_gamma(c(0.25, 0.0)).unwrap().im;
        for i in 1..=4000 {
            let im = log_gamma(c(0.25, i as f64 * 0.05)).unwrap().im;
            assert!((im - prev).abs() < 0.5, "jump at {}", i as f64 * 0.05);
            prev = im;
        }
    }

    #[test]
    fn digamma_known_values() {
        // ψ(1) = −γ, ψ(1/2) = −γ − 2 ln 2
        let gamma = 0.577_215_664_901_532_9;
        assert_abs_diff_eq!(digamma(c(1.0, 0.0)).unwrap().re, -gamma, epsilon = 1e-14);
        assert_abs_diff_eq!(
            digamma(c(0.5, 0.0)).unwrap().re,
            -gamma - 2.0 * 2f64.ln(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn delta_at_half_is_one() {
        let d = delta(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(d.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn delta_at_two_is_finite_limit() {
        let d = delta(c(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(d.re, -2.0 * PI * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn delta_zeros_and_poles() {
        assert_eq!(delta(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(delta(c(-4.0, 0.0)).unwrap(), c(0.0, 0.0));
        for s in [1.0, 3.0, 5.0] {
            assert!(matches!(delta(c(s, 0.0)), Err(Error::Pole { .. })));
        }
    }

    #[test]
    fn delta_overflow_far_left() {
        assert!(matches!(delta(c(-400.0, 1e5)), Err(Error::Overflow { .. })));
    }

    #[test]
    fn delta_agrees_with_defining_product() {
        // 2^s π^{s−1} Γ(1−s) sin(πs/2), evaluated directly at moderate height
        for s in [c(0.3, 7.0), c(-1.5, 2.0), c(2.5, 12.0), c(0.5, 30.0)] {
            let direct = (s * 2f64.ln() + (s - 1.0) * PI.ln() + log_gamma(1.0 - s).unwrap()).exp()
                * (s * (PI / 2.0)).sin();
            let d = delta(s).unwrap();
            assert!((d - direct).norm() <= 1e-11 * direct.norm(), "s = {s}");
        }
    }

    #[test]
    fn delta_on_critical_line_matches_theta() {
        let d = delta(c(0.5, 100.0)).unwrap();
        assert_abs_diff_eq!(d.norm(), 1.0, epsilon = 1e-10);
        let th = theta(100.0).unwrap().theta;
        let expected = Complex64::from_polar(1.0, -2.0 * th);
        assert_abs_diff_eq!((d - expected).norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn delta_asymptotic_examples() {
        let s = c(0.5, 1000.0);
        let rel =
            (delta_asymptotic(s).unwrap() - delta(s).unwrap()).norm() / delta(s).unwrap().norm();
        assert!(rel <= 2e-3, "rel = {rel}");

        let up = delta_asymptotic(c(0.5, 50.0)).unwrap();
        let down = delta_asymptotic(c(0.5, -50.0)).unwrap();
        assert_eq!(up, down.conj());

        let m = delta_asymptotic(c(2.0, 100.0)).unwrap().norm();
        let expected = (100.0 / (2.0 * PI)).powf(-1.5);
        assert!((m / expected - 1.0).abs() <= 0.01);

        assert!(delta_asymptotic(c(0.5, 0.5)).is_err());
    }

    #[test]
    fn log_delta_derivative_examples() {
        let v = log_delta_derivative(c(0.5, 1000.0)).unwrap();
        assert_abs_diff_eq!(v.re, -(1000.0 / (2.0 * PI)).ln(), epsilon = 0.01);

        let v = log_delta_derivative(c(0.5, 2.0 * PI * std::f64::consts::E)).unwrap();
        assert_abs_diff_eq!(v.re, -1.0, epsilon = 0.05);

        // central difference of log Δ along the real direction
        let s = c(2.0, 500.0);
        let h = 1e-4;
        let lp = log_delta(s + h).unwrap().unwrap();
        let lm = log_delta(s - h).unwrap().unwrap();
        let fd = (lp - lm) / (2.0 * h);
        let v = log_delta_derivative(s).unwrap();
        assert_abs_diff_eq!((v - fd).norm(), 0.0, epsilon = 1e-6);

        assert!(log_delta_derivative(c(0.5, 0.9)).is_err());
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(0.0).unwrap().theta, 0.0);
        // first Gram point, mpmath.grampoint(0)
        assert_abs_diff_eq!(
            theta(17.845_599_540_410_86).unwrap().theta,
            0.0,
            epsilon = 1e-10
        );
        // mpmath.siegeltheta(100)
        assert_abs_diff_eq!(
            theta(100.0).unwrap().theta,
            87.972_165_231_787_22,
            epsilon = 1e-8
        );
        assert!(theta(-1.0).is_err());
    }

    #[test]
    fn theta_regimes_agree_on_overlap() {
        for i in 0..=100 {
            let t = 15.0 + 0.1 * i as f64;
            assert_abs_diff_eq!(theta_asymptotic(t), theta_exact(t), epsilon = 1e-11);
        }
    }

    #[test]
    fn theta_derivative_examples() {
        let e = std::f64::consts::E;
        assert_abs_diff_eq!(theta_derivative(2.0 * PI * e).unwrap(), 0.5, epsilon = 0.01);
        assert_abs_diff_eq!(theta_derivative(2.0 * PI).unwrap(), 0.0, epsilon = 0.02);
        // mpmath.diff(siegeltheta, 1000)
        assert_abs_diff_eq!(
            theta_derivative(1000.0).unwrap(),
            2.534_939_085_453_059,
            epsilon = 1e-12
        );
        let h = 1e-3;
        let fd = (theta_raw(1000.0 + h) - theta_raw(1000.0 - h)) / (2.0 * h);
        assert_abs_diff_eq!(theta_derivative(1000.0).unwrap(), fd, epsilon = 1e-8);
        assert!(theta_derivative(0.5).is_err());
    }
}
