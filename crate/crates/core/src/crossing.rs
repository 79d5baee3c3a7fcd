//! Generalized Gram points: the roots `t_n^φ` of `Δ(1/2+it) = e^{2iφ}`.
//!
//! Since `Δ(1/2+it) = e^{-2iϑ(t)}`, the roots are the solutions of
//! `ϑ(t) = πn − φ`. ϑ is strictly increasing for `t >= 10`, so above that
//! height every integer `n` with `πn − φ >= ϑ(10)` yields exactly one root and
//! counting reduces to index arithmetic. On `(0, 10)` ϑ dips to about −3.53
//! near `t = 2π` and is not monotone; roots there come from a grid scan.
//!
//! Indexing: `n` is the phase index, so for `φ = 0` it coincides with the
//! classical Gram index (`t_0 ≈ 17.8456`). Low-region roots carry the phase
//! index of the level they cross, which for `φ = 0` means two points with
//! `n = −1`. Output lists are ordered by `t`; their 1-based position is the
//! ascending ordinal.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::angle::LineAngle;
use crate::error::{domain, Error, Result};
use crate::special_fn::{theta_derivative_raw, theta_raw};
use crate::zeros::n_main_term_raw;
use crate::zeta_eval::critical_point;

/// Upper end of the non-monotone region handled by [`scan_low`].
pub const LOW_REGION_END: f64 = 10.0;

/// Grid spacing of the low-region scan.
pub const LOW_SCAN_STEP: f64 = 1e-3;

/// Target residual `|ϑ(t) − (πn − φ)|` for solved roots.
pub const ROOT_TOLERANCE: f64 = 1e-10;

const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingPoint {
    pub n: i64,
    pub phi: LineAngle,
    pub t: f64,
    /// ζ(1/2 + it).
    pub zeta: Complex64,
    /// `Re(e^{-iφ} ζ(1/2+it))`, the signed position on the line `e^{iφ}ℝ`.
    pub directed_value: f64,
}

impl CrossingPoint {
    fn evaluate(n: i64, phi: LineAngle, t: f64) -> Result<Self> {
        let zeta = critical_point(t)?.zeta;
        Ok(CrossingPoint {
            n,
            phi,
            t,
            zeta,
            directed_value: (phi.direction().conj() * zeta).re,
        })
    }
}

/// `N_φ^Δ(T)` against the main term `(T/2π) log(T/2πe)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountReport {
    pub phi: LineAngle,
    pub t_max: f64,
    pub count: usize,
    pub main_term: f64,
    pub deviation: f64,
}

fn initial_guess(target: f64) -> f64 {
    // invert ϑ(t) ≈ (t/2) log(t/2πe) − π/8 through u log u = a, u = t/2πe
    let a = (target + PI / 8.0) / (PI * std::f64::consts::E);
    if a <= std::f64::consts::E {
        return 15.0;
    }
    let mut u = a / a.ln();
    for _ in 0..3 {
        u = a / u.ln();
    }
    2.0 * PI * std::f64::consts::E * u
}

/// Solve `ϑ(t) = target` on `t >= 10` by Newton's method inside a maintained
/// bracket, bisecting whenever a Newton step leaves it.
pub(crate) fn solve_phase(target: f64) -> Result<f64> {
    if !(target >= theta_raw(LOW_REGION_END)) || !target.is_finite() {
        return Err(domain("solve_phase", target, "target >= theta(10)"));
    }
    let mut lo = LOW_REGION_END;
    let mut hi = (2.0 * initial_guess(target)).max(20.0);
    while theta_raw(hi) < target {
        lo = hi;
        hi *= 2.0;
    }
    let mut t = initial_guess(target).clamp(lo, hi);
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        residual = theta_raw(t) - target;
        if residual.abs() <= ROOT_TOLERANCE {
            return Ok(t);
        }
        if residual < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let mut next = t - residual / theta_derivative_raw(t);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 2.0 * f64::EPSILON * t {
            // at large heights ϑ itself is only good to a few ulps
            return Ok(next);
        }
        t = next;
    }
    Err(Error::Convergence {
        func: "solve_phase",
        iterations: MAX_ITERATIONS,
        residual,
    })
}

/// The root `t_n^φ >= 10` of `ϑ(t) = πn − φ`.
pub fn solve_crossing(n: i64, phi: LineAngle) -> Result<CrossingPoint> {
    let target = PI * n as f64 - phi.radians();
    if target < theta_raw(LOW_REGION_END) {
        return Err(domain(
            "solve_crossing",
            n as f64,
            "index with pi*n - phi >= theta(10); use scan_low below",
        ));
    }
    let t = solve_phase(target)?;
    CrossingPoint::evaluate(n, phi, t)
}

#[inline]
fn phase_level(t: f64, phi: LineAngle) -> f64 {
    (theta_raw(t) + phi.radians()) / PI
}

/// Roots in `(0, 10)` found by a grid scan of the continuous phase, each
/// refined by bisection. Pairs of roots closer than the grid step (a tangency
/// of ϑ with a level) are not resolved.
pub fn scan_low(phi: LineAngle) -> Vec<CrossingPoint> {
    let steps = (LOW_REGION_END / LOW_SCAN_STEP).round() as usize;
    // at φ = 0 the level-0 root sits at t = 0 itself, which is excluded
    let start = usize::from(phi.radians() == 0.0);
    let mut out = Vec::new();
    let mut a = start as f64 * LOW_SCAN_STEP;
    let mut ga = phase_level(a, phi);
    for i in start + 1..steps {
        let b = i as f64 * LOW_SCAN_STEP;
        let gb = phase_level(b, phi);
        if ga.floor() != gb.floor() {
            let level = ga.floor().max(gb.floor());
            let t = bisect_level(a, b, level, phi);
            let point = CrossingPoint::evaluate(level as i64, phi, t)
                .expect("critical_point is defined on (0, 10)");
            out.push(point);
        }
        a = b;
        ga = gb;
    }
    out
}

fn bisect_level(mut a: f64, mut b: f64, level: f64, phi: LineAngle) -> f64 {
    let f = |t: f64| theta_raw(t) + phi.radians() - level * PI;
    let mut fa = f(a);
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || b - a <= 4.0 * f64::EPSILON * b {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Phase indices of all roots with `10 <= t <= t_max`.
pub fn index_range(phi: LineAngle, t_max: f64) -> std::ops::RangeInclusive<i64> {
    let first = ((theta_raw(LOW_REGION_END) + phi.radians()) / PI).ceil() as i64;
    let last = ((theta_raw(t_max) + phi.radians()) / PI).floor() as i64;
    first..=last
}

fn solve_indices(
    range: std::ops::RangeInclusive<i64>,
    phi: LineAngle,
) -> Result<Vec<CrossingPoint>> {
    range
        .into_par_iter()
        .map(|n| solve_crossing(n, phi))
        .collect()
}

/// Every root with `0 < t <= t_max`, ascending in t.
pub fn enumerate_crossings(phi: LineAngle, t_max: f64) -> Result<Vec<CrossingPoint>> {
    if !(t_max >= LOW_REGION_END) || !t_max.is_finite() {
        return Err(domain("enumerate_crossings", t_max, "t_max >= 10"));
    }
    let mut out = scan_low(phi);
    out.extend(solve_indices(index_range(phi, t_max), phi)?);
    Ok(out)
}

/// Roots with `t_lo < t <= t_hi`, for `10 <= t_lo < t_hi`.
pub fn enumerate_window(phi: LineAngle, t_lo: f64, t_hi: f64) -> Result<Vec<CrossingPoint>> {
    if !(t_lo >= LOW_REGION_END && t_hi > t_lo) || !t_hi.is_finite() {
        return Err(domain("enumerate_window", t_lo, "10 <= t_lo < t_hi"));
    }
    let first = ((theta_raw(t_lo) + phi.radians()) / PI).floor() as i64 + 1;
    let last = ((theta_raw(t_hi) + phi.radians()) / PI).floor() as i64;
    solve_indices(first..=last, phi)
}

/// `N_φ^Δ(T)` by index arithmetic above t = 10 plus the low-region scan.
pub fn count_crossings(phi: LineAngle, t_max: f64) -> Result<CountReport> {
    if !(t_max >= LOW_REGION_END) || !t_max.is_finite() {
        return Err(domain("count_crossings", t_max, "T >= 10"));
    }
    let low = scan_low(phi).len();
    let range = index_range(phi, t_max);
    let high = (range.end() - range.start() + 1).max(0) as usize;
    let count = low + high;
    let main_term = n_main_term_raw(t_max);
    Ok(CountReport {
        phi,
        t_max,
        count,
        main_term,
        deviation: count as f64 - main_term,
    })
}
