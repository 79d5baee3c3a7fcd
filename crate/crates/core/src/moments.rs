//! Discrete moments of ζ(1/2+it) over the crossings of the critical-line
//! curve with a line `e^{iφ}ℝ`, and the related sums over Gram points.
//!
//! Zeta zeros lie on every line but contribute nothing to the sums, so the
//! sums run over crossing points only; zeros enter through `N_φ(T)`, the
//! normalization of mean values.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::angle::LineAngle;
use crate::crossing::{enumerate_crossings, enumerate_window, solve_phase, CrossingPoint};
use crate::error::{domain, Result};
use crate::summation::{chunked_complex_sum, chunked_sum};
use crate::zeros::{count_zeros, n_main_term_raw, AmbiguousBlock};
use crate::zeta_eval::z_raw;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Crossings with `|ζ|` at or below this are treated as coinciding with a zero.
pub const ZERO_THRESHOLD: f64 = 1e-4;

/// Moments of the crossing values for one line and height.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub phi: LineAngle,
    pub t_max: f64,
    /// `N_φ^Δ(T)`.
    pub count_delta: usize,
    /// `N₀(T)`.
    pub count_zeros: usize,
    /// Crossings with `|ζ| <= ZERO_THRESHOLD`, counted once in `count_total`.
    pub coincidences: usize,
    /// `N_φ(T) = N₀(T) + N_φ^Δ(T) − coincidences`.
    pub count_total: usize,
    /// Crossings with `|ζ| > ZERO_THRESHOLD`.
    pub count_nonzero: usize,
    pub sum1: Complex64,
    pub sum2: f64,
    pub mean: Complex64,
    /// `2e^{iφ}cos φ · (T/2π) log(T/2πe)`.
    pub main1: Complex64,
    /// `(T/2π) log²(T/2πe) + (2c + 2cos 2φ)(T/2π) log(T/2πe) + T/2π`.
    pub main2: f64,
    /// `|sum1 − main1| / |main1|`; `None` when `|main1| <= √T`, i.e. when
    /// the main term vanishes or drowns in the error term (φ near π/2).
    pub rel_dev1: Option<f64>,
    pub rel_dev2: f64,
    pub zero_scan_ambiguous: Vec<AmbiguousBlock>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramRatios {
    /// `sum_z / 2N`
    pub first: f64,
    /// `sum_z2 / (N log N)`
    pub second: f64,
    /// `sum_pair / (−2(c+1)N)`
    pub pair: f64,
    /// `sum_z4 / (N log² N)`
    pub fourth: f64,
}

/// Sums over classical Gram points `t_1, …, t_N`.
///
/// `sum_z` is the sum of the values ζ(1/2+it_n) = (−1)^n Z(t_n), which are
/// real; the signed sum of Z itself nearly cancels since Z alternates at
/// consecutive Gram points. The pair sum uses Z and runs over `n = 1..=N`
/// with `t_{N+1}` as the last partner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramSumReport {
    pub n: usize,
    pub sum_z: f64,
    pub sum_z2: f64,
    pub sum_z4: f64,
    pub sum_pair: f64,
    pub ratios: GramRatios,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueSign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeValue {
    pub t: f64,
    pub directed_value: f64,
    pub sign: ValueSign,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingBound {
    pub count: usize,
    pub bound: f64,
    pub satisfied: bool,
}

/// `2e^{iφ}cos φ · (T/2π) log(T/2πe)`.
pub fn first_main_term(phi: LineAngle, t_max: f64) -> Complex64 {
    phi.direction() * (2.0 * phi.cos() * n_main_term_raw(t_max))
}

/// Three-term main expression of the second moment.
pub fn second_main_term(phi: LineAngle, t_max: f64) -> f64 {
    let l = (t_max / (2.0 * PI * std::f64::consts::E)).ln();
    let scale = t_max / (2.0 * PI);
    let coeff = 2.0 * EULER_GAMMA + 2.0 * (2.0 * phi.radians()).cos();
    scale * l * l + coeff * scale * l + scale
}

fn check_height(func: &'static str, t_max: f64) -> Result<()> {
    if (100.0..=1e6).contains(&t_max) {
        Ok(())
    } else {
        Err(domain(func, t_max, "100 <= T <= 1e6"))
    }
}

/// Moment computations at a fixed height `T`, sharing the zero count across
/// angles.
#[derive(Debug)]
pub struct MomentEngine {
    t_max: f64,
    zeros: OnceLock<Result<(usize, Vec<AmbiguousBlock>)>>,
}

impl MomentEngine {
    pub fn new(t_max: f64) -> Result<Self> {
        check_height("MomentEngine::new", t_max)?;
        Ok(MomentEngine {
            t_max,
            zeros: OnceLock::new(),
        })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// `N₀(T)` and any ambiguous Gram blocks met on the way.
    pub fn zero_count(&self) -> Result<(usize, Vec<AmbiguousBlock>)> {
        self.zeros
            .get_or_init(|| count_zeros(self.t_max).map(|c| (c.count, c.ambiguous)))
            .clone()
    }

    pub fn report(&self, phi: LineAngle) -> Result<MomentReport> {
        let t_max = self.t_max;
        let points = enumerate_crossings(phi, t_max)?;
        let (count_zeros, zero_scan_ambiguous) = self.zero_count()?;
        let sum1 = chunked_complex_sum(&points, |p| p.zeta);
        let sum2 = chunked_sum(&points, |p| p.zeta.norm_sqr());
        let coincidences = points
            .iter()
            .filter(|p| p.zeta.norm() <= ZERO_THRESHOLD)
            .count();
        let count_delta = points.len();
        let count_total = count_zeros + count_delta - coincidences;
        let main1 = first_main_term(phi, t_max);
        let main2 = second_main_term(phi, t_max);
        // below the √T scale of the error term the main term carries no signal
        let rel_dev1 = (main1.norm() > t_max.sqrt()).then(|| (sum1 - main1).norm() / main1.norm());
        Ok(MomentReport {
            phi,
            t_max,
            count_delta,
            count_zeros,
            coincidences,
            count_total,
            count_nonzero: count_delta - coincidences,
            sum1,
            sum2,
            mean: sum1 / count_total as f64,
            main1,
            main2,
            rel_dev1,
            rel_dev2: (sum2 - main2).abs() / main2,
            zero_scan_ambiguous,
        })
    }

    pub fn mean_value(&self, phi: LineAngle) -> Result<Complex64> {
        Ok(self.report(phi)?.mean)
    }

    /// Average of [`mean_value`](Self::mean_value) over `φ_j = πj/grid`.
    pub fn mean_of_means(&self, grid: usize) -> Result<Complex64> {
        if grid < 8 {
            return Err(domain("mean_of_means", grid as f64, "grid >= 8"));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..grid {
            let phi = LineAngle::new(PI * j as f64 / grid as f64)?;
            acc += self.mean_value(phi)?;
        }
        Ok(acc / grid as f64)
    }
}

/// Moment report with the first-moment fields of interest.
pub fn first_moment(phi: LineAngle, t_max: f64) -> Result<MomentReport> {
    MomentEngine::new(t_max)?.report(phi)
}

/// Moment report with the second-moment fields of interest.
pub fn second_moment(phi: LineAngle, t_max: f64) -> Result<MomentReport> {
    MomentEngine::new(t_max)?.report(phi)
}

/// `sum1 / N_φ(T)`.
pub fn mean_value(phi: LineAngle, t_max: f64) -> Result<Complex64> {
    MomentEngine::new(t_max)?.mean_value(phi)
}

pub fn mean_of_means(t_max: f64, grid: usize) -> Result<Complex64> {
    MomentEngine::new(t_max)?.mean_of_means(grid)
}

/// Uniform-grid average of the limiting means `e^{iφ}cos φ`.
pub fn limiting_mean_of_means(grid: usize) -> Complex64 {
    let sum: Complex64 = (0..grid)
        .map(|j| {
            let phi = PI * j as f64 / grid as f64;
            Complex64::from_polar(phi.cos(), phi)
        })
        .sum();
    sum / grid as f64
}

pub fn gram_sums(n: usize) -> Result<GramSumReport> {
    if !(100..=100_000).contains(&n) {
        return Err(domain("gram_sums", n as f64, "100 <= N <= 1e5"));
    }
    let z: Vec<f64> = (1..=n as i64 + 1)
        .into_par_iter()
        .map(|k| z_raw(solve_phase(PI * k as f64).expect("Gram points above t = 10")))
        .collect();
    let indexed: Vec<(usize, f64)> = z[..n].iter().copied().enumerate().collect();
    // position i holds index i + 1, so ζ = (−1)^{i+1} Z
    let sum_z = chunked_sum(&indexed, |&(i, z)| if i % 2 == 0 { -z } else { z });
    let sum_z2 = chunked_sum(&indexed, |&(_, z)| z * z);
    let sum_z4 = chunked_sum(&indexed, |&(_, z)| z * z * z * z);
    let sum_pair = chunked_sum(&indexed, |&(i, zi)| zi * z[i + 1]);
    let nf = n as f64;
    let ln = nf.ln();
    Ok(GramSumReport {
        n,
        sum_z,
        sum_z2,
        sum_z4,
        sum_pair,
        ratios: GramRatios {
            first: sum_z / (2.0 * nf),
            second: sum_z2 / (nf * ln),
            pair: sum_pair / (-2.0 * (EULER_GAMMA + 1.0) * nf),
            fourth: sum_z4 / (nf * ln * ln),
        },
    })
}

/// Crossings in `(T, 2T]` whose directed value reaches `√(log t)`; on the
/// imaginary axis also those reaching `−√(log t)`, i.e. `iζ >= √(log t)`.
pub fn large_value_search(phi: LineAngle, t_max: f64) -> Result<Vec<LargeValue>> {
    large_value_window(phi, t_max, 2.0 * t_max)
}

/// [`large_value_search`] over an explicit window `(t_lo, t_hi]`.
pub fn large_value_window(phi: LineAngle, t_lo: f64, t_hi: f64) -> Result<Vec<LargeValue>> {
    if !(t_lo >= 100.0) {
        return Err(domain("large_value_search", t_lo, "T >= 100"));
    }
    let both_signs = phi == LineAngle::imaginary();
    let points = enumerate_window(phi, t_lo, t_hi)?;
    Ok(points
        .iter()
        .filter_map(|p: &CrossingPoint| {
            let threshold = p.t.ln().sqrt();
            if p.directed_value >= threshold {
                Some(ValueSign::Positive)
            } else if both_signs && p.directed_value <= -threshold {
                Some(ValueSign::Negative)
            } else {
                None
            }
            .map(|sign| LargeValue {
                t: p.t,
                directed_value: p.directed_value,
                sign,
            })
        })
        .collect())
}

/// Count of crossings up to T away from zeta zeros, against `2cos²φ/π · T`.
pub fn nonzero_crossing_bound(phi: LineAngle, t_max: f64) -> Result<CrossingBound> {
    if !(t_max >= 100.0) {
        return Err(domain("nonzero_crossing_bound", t_max, "T >= 100"));
    }
    let count = enumerate_crossings(phi, t_max)?
        .iter()
        .filter(|p| p.zeta.norm() > ZERO_THRESHOLD)
        .count();
    let c = phi.cos();
    let bound = 2.0 * c * c / PI * t_max;
    Ok(CrossingBound {
        count,
        bound,
        satisfied: count as f64 >= bound,
    })
}
