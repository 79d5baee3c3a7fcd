//! Critical-line zeros from sign changes of Z(t) over Gram blocks.
//!
//! A Gram point `t_n` is good when `(−1)^n Z(t_n) > 0`. Between consecutive
//! good Gram points `t_j < t_k` Z must change sign an odd number of times per
//! interval on average, and in the verified range each such block holds
//! exactly `k − j` zeros. Blocks whose endpoint samples do not show that many
//! sign changes are subdivided (doubling, up to 64 samples per Gram
//! interval); blocks still short after that are reported as ambiguous, never
//! dropped. The stretch `(0, t_{−1})` is treated as a block with index −1 at
//! `t = 0`, which expects no zeros.

use std::f64::consts::{E, PI};

use rayon::prelude::*;

use crate::angle::LineAngle;
use crate::crossing::{index_range, scan_low, solve_phase};
use crate::error::{domain, Result};
use crate::zeta_eval::z_raw;

/// Subdivision depth: 2^6 = 64 samples per Gram interval.
pub const MAX_SUBDIVISION_LEVEL: u32 = 6;

/// Final bracket width after bisection.
pub const BRACKET_WIDTH: f64 = 1e-9;

pub const MIN_SCAN_T: f64 = 15.0;
pub const MAX_SCAN_T: f64 = 1e5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    /// 1-based ordinal.
    pub k: usize,
    pub gamma: f64,
    pub bracket: (f64, f64),
    pub refined_accuracy: f64,
}

/// A Gram block whose sign changes did not reach the expected count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbiguousBlock {
    pub first_index: i64,
    pub last_index: i64,
    pub t_start: f64,
    pub t_end: f64,
    pub expected: usize,
    pub found: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroScan {
    pub t_max: f64,
    pub zeros: Vec<ZeroRecord>,
    pub ambiguous: Vec<AmbiguousBlock>,
}

/// `N₀(T)` without refining individual zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCount {
    pub t_max: f64,
    pub count: usize,
    pub ambiguous: Vec<AmbiguousBlock>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramViolation {
    pub n: i64,
    pub t: f64,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramAudit {
    pub n_max: i64,
    pub violations: Vec<GramViolation>,
    /// Violations over the number of audited points `n = 0..=n_max`.
    pub proportion: f64,
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    index: i64,
    t: f64,
    z: f64,
}

impl Sample {
    fn good(&self) -> bool {
        if self.index.rem_euclid(2) == 0 {
            self.z > 0.0
        } else {
            self.z < 0.0
        }
    }
}

pub(crate) fn n_main_term_raw(t: f64) -> f64 {
    t / (2.0 * PI) * (t / (2.0 * PI * E)).ln()
}

/// Riemann–von Mangoldt main term `(T/2π) log(T/2πe)`.
pub fn n_main_term(t: f64) -> Result<f64> {
    if !(t > 2.0 * PI * E) || !t.is_finite() {
        return Err(domain("n_main_term", t, "T > 2*pi*e"));
    }
    Ok(n_main_term_raw(t))
}

fn gram_sample(n: i64) -> Sample {
    let t = solve_phase(PI * n as f64).expect("Gram points with n >= 0 lie above t = 10");
    Sample {
        index: n,
        t,
        z: z_raw(t),
    }
}

/// Breakpoints `0, t_{−1}, t_0, …` continuing past `t_max` up to the next good
/// Gram point.
fn breakpoints(t_max: f64) -> Vec<Sample> {
    let low = scan_low(LineAngle::REAL);
    let g_minus_1 = low.last().expect("t_{-1} lies in (0, 10)").t;
    let mut points = vec![
        Sample {
            index: -1,
            t: 0.0,
            z: z_raw(0.0),
        },
        Sample {
            index: -1,
            t: g_minus_1,
            z: z_raw(g_minus_1),
        },
    ];
    let last = *index_range(LineAngle::REAL, t_max).end();
    points.par_extend((0..=last + 1).into_par_iter().map(gram_sample));
    let mut n = last + 2;
    while !points.last().expect("non-empty").good() {
        points.push(gram_sample(n));
        n += 1;
    }
    points
}

struct BlockResult {
    brackets: Vec<(Sample, Sample)>,
    ambiguous: Option<AmbiguousBlock>,
}

fn sign_changes(samples: &[Sample]) -> Vec<(Sample, Sample)> {
    samples
        .windows(2)
        .filter(|w| (w[0].z < 0.0) != (w[1].z < 0.0))
        .map(|w| (w[0], w[1]))
        .collect()
}

fn scan_block(block: &[Sample]) -> BlockResult {
    let first = block[0];
    let last = block[block.len() - 1];
    let expected = (last.index - first.index) as usize;
    let mut samples = block.to_vec();
    let mut changes = sign_changes(&samples);
    let mut level = 0;
    while changes.len() < expected && level < MAX_SUBDIVISION_LEVEL {
        let mut finer = Vec::with_capacity(2 * samples.len());
        for w in samples.windows(2) {
            finer.push(w[0]);
            let t = 0.5 * (w[0].t + w[1].t);
            finer.push(Sample {
                index: w[0].index,
                t,
                z: z_raw(t),
            });
        }
        finer.push(last);
        samples = finer;
        changes = sign_changes(&samples);
        level += 1;
    }
    let ambiguous = (changes.len() != expected).then_some(AmbiguousBlock {
        first_index: first.index,
        last_index: last.index,
        t_start: first.t,
        t_end: last.t,
        expected,
        found: changes.len(),
    });
    BlockResult {
        brackets: changes,
        ambiguous,
    }
}

fn scan_brackets(t_max: f64) -> (Vec<(Sample, Sample)>, Vec<AmbiguousBlock>) {
    let points = breakpoints(t_max);
    let good: Vec<usize> = (0..points.len())
        .filter(|&i| i == 0 || points[i].good())
        .collect();
    let results: Vec<BlockResult> = good
        .par_windows(2)
        .map(|w| scan_block(&points[w[0]..=w[1]]))
        .collect();
    let mut brackets = Vec::new();
    let mut ambiguous = Vec::new();
    for r in results {
        brackets.extend(r.brackets);
        ambiguous.extend(r.ambiguous);
    }
    (brackets, ambiguous)
}

fn check_range(func: &'static str, t_max: f64) -> Result<()> {
    if (MIN_SCAN_T..=MAX_SCAN_T).contains(&t_max) {
        Ok(())
    } else {
        Err(domain(func, t_max, "15 <= t_max <= 1e5"))
    }
}

fn bisect(a: Sample, b: Sample) -> (f64, f64) {
    let (mut lo, mut hi) = (a.t, b.t);
    let neg_lo = a.z < 0.0;
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if (z_raw(mid) < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Zeros of Z on `(0, t_max]`, each bracketed to [`BRACKET_WIDTH`].
pub fn scan_zeros(t_max: f64) -> Result<ZeroScan> {
    check_range("scan_zeros", t_max)?;
    let (brackets, ambiguous) = scan_brackets(t_max);
    let refined: Vec<(f64, f64)> = brackets
        .par_iter()
        .filter(|(a, _)| a.t <= t_max)
        .map(|&(a, b)| bisect(a, b))
        .collect();
    let zeros = refined
        .into_iter()
        .map(|(lo, hi)| (lo, hi, 0.5 * (lo + hi)))
        .filter(|&(_, _, gamma)| gamma <= t_max)
        .enumerate()
        .map(|(i, (lo, hi, gamma))| ZeroRecord {
            k: i + 1,
            gamma,
            bracket: (lo, hi),
            refined_accuracy: 0.5 * (hi - lo),
        })
        .collect();
    Ok(ZeroScan {
        t_max,
        zeros,
        ambiguous,
    })
}

/// `N₀(T)`: sign changes of Z on `(0, T]`.
pub fn count_zeros(t_max: f64) -> Result<ZeroCount> {
    check_range("count_zeros", t_max)?;
    let (brackets, ambiguous) = scan_brackets(t_max);
    let z_at_end = z_raw(t_max);
    let count = brackets
        .iter()
        .filter(|(a, b)| {
            if b.t <= t_max {
                true
            } else if a.t < t_max {
                // bracket straddles T: is the sign change left of it?
                (a.z < 0.0) != (z_at_end < 0.0) || z_at_end == 0.0
            } else {
                false
            }
        })
        .count();
    Ok(ZeroCount {
        t_max,
        count,
        ambiguous,
    })
}

/// Gram points `t_n`, `0 <= n <= n_max`, with `(−1)^n Z(t_n) <= 0`.
pub fn gram_law_audit(n_max: i64) -> Result<GramAudit> {
    if n_max < 1 {
        return Err(domain("gram_law_audit", n_max as f64, "n_max >= 1"));
    }
    let samples: Vec<Sample> = (0..=n_max).into_par_iter().map(gram_sample).collect();
    let violations: Vec<GramViolation> = samples
        .iter()
        .filter(|s| !s.good())
        .map(|s| GramViolation {
            n: s.index,
            t: s.t,
            z: s.z,
        })
        .collect();
    let proportion = violations.len() as f64 / (n_max + 1) as f64;
    Ok(GramAudit {
        n_max,
        violations,
        proportion,
    })
}
