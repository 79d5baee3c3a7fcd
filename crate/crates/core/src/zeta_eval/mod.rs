//! ζ(s) in the critical strip, Hardy's Z(t) and the line detector Φ(t; φ).
//!
//! Two evaluation paths: Euler–Maclaurin summation ([`zeta_em`]) is slow but
//! accurate anywhere in the working strip, and the Riemann–Siegel formula
//! ([`z_rs`], defined for `t >= 30`) is the production path on the critical
//! line above [`RS_SWITCH_T`].

mod remainder;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::angle::LineAngle;
use crate::error::{domain, Error, Result};
use crate::special_fn::{theta_raw, ComplexValue};
use crate::summation::CompensatedComplexSum;

/// Lower end of the domain of [`z_rs`].
pub const RS_MIN_T: f64 = 30.0;

/// Below this height ζ(1/2+it) and Z(t) come from [`zeta_em`]; there the
/// Riemann–Siegel truncation error (about 1e-9 at t = 200) would dominate.
pub const RS_SWITCH_T: f64 = 200.0;

/// Accuracy requested from Euler–Maclaurin when it stands in for the
/// Riemann–Siegel path at small t.
const SMALL_T_ACCURACY: f64 = 1e-12;

const EM_MAX_TERMS: usize = 12;
const EM_MAX_N: usize = 1 << 20;

/// B_{2k}/(2k)! for k = 1..=13.
const BERNOULLI_OVER_FACTORIAL: [f64; 13] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
    657931.0 / 186313420339200000000000000.0,
];

/// ζ(1/2+it) with the derived Z(t), ϑ(t) and an accuracy estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalLinePoint {
    pub t: f64,
    pub zeta: ComplexValue,
    pub z: f64,
    pub theta: f64,
    pub accuracy: f64,
}

/// ζ(s) by Euler–Maclaurin summation with an absolute error of at most
/// `target_accuracy` in the truncation (rounding adds roughly `1e-15·|t|`).
pub fn zeta_em(s: ComplexValue, target_accuracy: f64) -> Result<ComplexValue> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(domain("zeta_em", s.re, "finite argument"));
    }
    if (s - 1.0).norm() <= 1e-6 {
        return Err(Error::Pole {
            func: "zeta_em",
            at: s,
        });
    }
    if !(-1.0..=3.0).contains(&s.re) {
        return Err(domain("zeta_em", s.re, "-1 <= Re s <= 3"));
    }
    if s.im.abs() > 1e5 {
        return Err(domain("zeta_em", s.im, "|Im s| <= 1e5"));
    }
    if s.im < 0.0 {
        return zeta_em(s.conj(), target_accuracy).map(|z| z.conj());
    }

    let mut n = (s.im.ceil() as usize).max(10);
    let mut best = f64::INFINITY;
    while n <= EM_MAX_N {
        let (value, estimate) = euler_maclaurin(s, n, target_accuracy);
        if estimate <= target_accuracy {
            return Ok(value);
        }
        best = best.min(estimate);
        n *= 2;
    }
    Err(Error::AccuracyUnreachable {
        at: s,
        target: target_accuracy,
        estimate: best,
    })
}

/// One Euler–Maclaurin evaluation with `n` head terms; returns the value and
/// the size of the first omitted correction.
fn euler_maclaurin(s: Complex64, n: usize, target: f64) -> (Complex64, f64) {
    let mut acc = CompensatedComplexSum::new();
    for k in 1..n {
        acc.add((-s * (k as f64).ln()).exp());
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    acc.add(n_pow * nf / (s - 1.0));
    acc.add(n_pow * 0.5);

    // T_k = B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let inv_n2 = 1.0 / (nf * nf);
    let mut rising = s;
    let mut power = n_pow / nf;
    for k in 0..EM_MAX_TERMS {
        let term = rising * power * BERNOULLI_OVER_FACTORIAL[k];
        acc.add(term);
        let two_k = 2.0 * (k as f64 + 1.0);
        rising *= (s + two_k - 1.0) * (s + two_k);
        power *= inv_n2;
        let next = (rising * power * BERNOULLI_OVER_FACTORIAL[k + 1]).norm();
        if next <= target {
            return (acc.value(), next);
        }
    }
    let omitted = (rising * power * BERNOULLI_OVER_FACTORIAL[EM_MAX_TERMS]).norm();
    (acc.value(), omitted)
}

/// Z(t) by the Riemann–Siegel formula with corrections C₀..C₄.
///
/// The truncation error is below `0.03·t^{-11/4}` (about 1e-6 at t = 30 and
/// 1e-11 at t = 1000); for large t rounding in the phases `ϑ(t) − t log n`
/// dominates at roughly `1e-15·t`.
pub fn z_rs(t: f64) -> Result<f64> {
    if !(t >= RS_MIN_T) || !t.is_finite() {
        return Err(domain("z_rs", t, "t >= 30"));
    }
    Ok(z_rs_raw(t))
}

pub(crate) fn rs_accuracy(t: f64) -> f64 {
    0.03 * t.powf(-2.75) + 1e-15 * t
}

fn z_rs_raw(t: f64) -> f64 {
    let theta = theta_raw(t);
    let tau = (t / (2.0 * PI)).sqrt();
    let terms = tau.floor() as usize;
    let mut main = 0.0;
    for k in 1..=terms {
        let kf = k as f64;
        main += (theta - t * kf.ln()).cos() / kf.sqrt();
    }
    let frac = tau - terms as f64;
    let sign = if terms % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * main + sign * tau.recip().sqrt() * remainder::correction(frac - 0.5, tau.recip())
}

/// Z(t) for any `t >= 0`, switching paths at [`RS_SWITCH_T`].
pub fn hardy_z(t: f64) -> Result<f64> {
    critical_point(t).map(|p| p.z)
}

/// Z(t) for `t >= 0` without domain checks; used inside sweeps.
#[inline]
pub(crate) fn z_raw(t: f64) -> f64 {
    if t >= RS_SWITCH_T {
        z_rs_raw(t)
    } else {
        let zeta = zeta_em(Complex64::new(0.5, t), SMALL_T_ACCURACY)
            .expect("zeta_em covers the critical line below t = 30");
        (Complex64::from_polar(1.0, theta_raw(t)) * zeta).re
    }
}

/// Evaluate ζ(1/2+it), Z(t) and ϑ(t) consistently.
pub fn critical_point(t: f64) -> Result<CriticalLinePoint> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(domain("critical_point", t, "finite t >= 0"));
    }
    let theta = theta_raw(t);
    if t >= RS_SWITCH_T {
        let z = z_rs_raw(t);
        Ok(CriticalLinePoint {
            t,
            zeta: Complex64::from_polar(1.0, -theta) * z,
            z,
            theta,
            accuracy: rs_accuracy(t),
        })
    } else {
        let zeta = zeta_em(Complex64::new(0.5, t), SMALL_T_ACCURACY)?;
        let z = (Complex64::from_polar(1.0, theta) * zeta).re;
        Ok(CriticalLinePoint {
            t,
            zeta,
            z,
            theta,
            accuracy: 10.0 * SMALL_T_ACCURACY,
        })
    }
}

/// Φ(t; φ) = ζ(1/2+it) − e^{2iφ} ζ(1/2−it); zero exactly at zeta zeros and at
/// the roots of Δ(1/2+it) = e^{2iφ}.
pub fn phi_fn(t: f64, phi: LineAngle) -> Result<ComplexValue> {
    let zeta = critical_point(t)?.zeta;
    Ok(zeta - Complex64::from_polar(1.0, 2.0 * phi.radians()) * zeta.conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zeta_em_closed_forms() {
        let z2 = zeta_em(Complex64::new(2.0, 0.0), 1e-12).unwrap();
        assert_abs_diff_eq!(z2.re, PI * PI / 6.0, epsilon = 1e-10);
        let z0 = zeta_em(Complex64::new(0.0, 0.0), 1e-12).unwrap();
        assert_abs_diff_eq!(z0.re, -0.5, epsilon = 1e-10);
        // ζ(−1) = −1/12
        let zm1 = zeta_em(Complex64::new(-1.0, 0.0), 1e-12).unwrap();
        assert_abs_diff_eq!(zm1.re, -1.0 / 12.0, epsilon = 1e-10);
    }

    #[test]
    fn zeta_em_half_matches_reference() {
        // mpmath.zeta(0.5)
        let z = zeta_em(Complex64::new(0.5, 0.0), 1e-12).unwrap();
        assert_abs_diff_eq!(z.re, -1.460_354_508_809_586_8, epsilon = 1e-9);
        assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn zeta_em_errors() {
        assert!(matches!(
            zeta_em(Complex64::new(1.0, 0.0), 1e-10),
            Err(Error::Pole { .. })
        ));
        assert!(zeta_em(Complex64::new(1.0, 2e-6), 1e-10).is_ok());
        assert!(matches!(
            zeta_em(Complex64::new(4.0, 0.0), 1e-10),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            zeta_em(Complex64::new(0.5, 2e5), 1e-10),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            zeta_em(Complex64::new(0.5, 10.0), 0.0),
            Err(Error::AccuracyUnreachable { .. })
        ));
    }

    #[test]
    fn z_rs_matches_em_at_100() {
        let em = zeta_em(Complex64::new(0.5, 100.0), 1e-12).unwrap();
        let z = (Complex64::from_polar(1.0, theta_raw(100.0)) * em).re;
        assert_abs_diff_eq!(z_rs(100.0).unwrap(), z, epsilon = 1e-6);
    }

    #[test]
    fn z_rs_matches_em_at_oracle_edge() {
        let t = 1e4 + 0.5;
        let em = zeta_em(Complex64::new(0.5, t), 1e-12).unwrap();
        let z = (Complex64::from_polar(1.0, theta_raw(t)) * em).re;
        assert_abs_diff_eq!(z_rs(t).unwrap(), z, epsilon = 1e-4);
    }

    #[test]
    fn z_rs_reference_values() {
        // mpmath.siegelz
        assert_abs_diff_eq!(z_rs(30.0).unwrap(), 0.596_028_519_239_885, epsilon = 2e-6);
        assert_abs_diff_eq!(
            z_rs(1000.0).unwrap(),
            0.997_794_637_521_586_6,
            epsilon = 1e-9
        );
        assert!(z_rs(29.9).is_err());
    }

    #[test]
    fn first_zero_small_t_path() {
        let z = hardy_z(14.134_725_141_734_694).unwrap();
        assert_abs_diff_eq!(z, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn critical_point_at_origin() {
        let p = critical_point(0.0).unwrap();
        assert_abs_diff_eq!(p.zeta.re, -1.460_354_508_809_586_8, epsilon = 1e-9);
        assert_eq!(p.theta, 0.0);
        assert_abs_diff_eq!(p.z, p.zeta.re, epsilon = 1e-15);
    }

    #[test]
    fn critical_point_at_first_gram_point_is_real() {
        let p = critical_point(17.845_599_540_410_86).unwrap();
        assert!(p.zeta.im.abs() <= 1e-6 * (1.0 + p.zeta.norm()));
    }

    #[test]
    fn critical_point_bundle_consistent() {
        for t in [5.0, 29.99, 30.0, 250.0, 7777.7] {
            let p = critical_point(t).unwrap();
            assert_abs_diff_eq!(p.z.abs(), p.zeta.norm(), epsilon = p.accuracy.max(1e-12));
            let back = Complex64::from_polar(1.0, -p.theta) * p.z;
            assert_abs_diff_eq!((back - p.zeta).norm(), 0.0, epsilon = p.accuracy.max(1e-11));
        }
    }

    #[test]
    fn phi_fn_identities() {
        let at_zero = phi_fn(14.134_725_141_734_694, LineAngle::new(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(at_zero.norm(), 0.0, epsilon = 1e-6);

        let zeta = critical_point(20.0).unwrap().zeta;
        let v = phi_fn(20.0, LineAngle::REAL).unwrap();
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 2.0 * zeta.im, epsilon = 1e-14);
    }
}
