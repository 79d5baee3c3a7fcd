//! Riemann–Siegel correction terms.
//!
//! `C_k(p)` are the standard combinations of derivatives of
//! `Ψ(p) = cos(2π(p² − p − 1/16)) / cos(2πp)`, expanded in Taylor series about
//! `p = 1/2`. Ψ is entire, so the series converge on the whole unit interval.
//! Even-indexed terms are even in `x = p − 1/2` and odd-indexed ones odd; the
//! tables hold coefficients of `x^{2j}` (times `x` for odd k). They were
//! generated at 80 digits and truncated once `|c_j|·2^{-2j}` fell below 1e-22.

#![allow(clippy::excessive_precision, clippy::unreadable_literal)]

include!("tables.rs");

#[inline]
fn even_poly(coeffs: &[f64], x2: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x2 + c)
}

/// `Σ_k C_k(p) w^k` with `x = p − 1/2` and `w = (t/2π)^{-1/2}`.
pub(super) fn correction(x: f64, w: f64) -> f64 {
    let x2 = x * x;
    let c0 = even_poly(&C0, x2);
    let c1 = x * even_poly(&C1, x2);
    let c2 = even_poly(&C2, x2);
    let c3 = x * even_poly(&C3, x2);
    let c4 = even_poly(&C4, x2);
    c0 + w * (c1 + w * (c2 + w * (c3 + w * c4)))
}
