//! Sweeps behind the subcommands: crossing and zero tables (optionally
//! cached) and the curve export.

use std::f64::consts::PI;
use std::path::PathBuf;

use anyhow::{bail, Result};
use critline_core::crossing::{index_range, LOW_REGION_END};
use critline_core::{
    critical_point, scan_low, scan_zeros, solve_crossing, theta, theta_derivative, zeta_em,
    CrossingPoint, LineAngle, ZeroRecord,
};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::cache::Cache;
use crate::records::{CurveRow, OutFormat};

/// Parameters shared by the sweeping subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub phi: LineAngle,
    pub t_min: f64,
    pub t_max: f64,
    /// Width in t of one batch of parallel work; the cache is flushed per batch.
    pub chunk: f64,
    pub workers: usize,
    pub out_format: OutFormat,
    pub cache_path: Option<PathBuf>,
    pub precision_target: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            phi: LineAngle::REAL,
            t_min: 0.0,
            t_max: 100.0,
            chunk: 1000.0,
            workers: 1,
            out_format: OutFormat::Csv,
            cache_path: None,
            precision_target: 1e-5,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_min < self.t_max) || !(self.t_min >= 0.0) {
            bail!(
                "need 0 <= t_min < t_max, got t_min = {}, t_max = {}",
                self.t_min,
                self.t_max
            );
        }
        if !(self.chunk > 0.0) {
            bail!("chunk must be positive, got {}", self.chunk);
        }
        if self.workers == 0 {
            bail!("workers must be at least 1");
        }
        if !(self.precision_target > 0.0) {
            bail!(
                "precision target must be positive, got {}",
                self.precision_target
            );
        }
        Ok(())
    }
}

/// How far a crossing sweep runs: up to a height, or a number of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extent {
    UpTo(f64),
    Count(usize),
}

fn first_index_above(phi: LineAngle, t: f64) -> Result<i64> {
    if t < LOW_REGION_END {
        return Ok(*index_range(phi, LOW_REGION_END).start());
    }
    let th = theta(t)?.theta;
    Ok(((th + phi.radians()) / PI).floor() as i64 + 1)
}

fn last_index_at_most(phi: LineAngle, t: f64) -> Result<i64> {
    let th = theta(t.max(LOW_REGION_END))?.theta;
    Ok(((th + phi.radians()) / PI).floor() as i64)
}

/// Crossings `t_min < t` up to the extent, ascending in t, served from the
/// cache where possible.
pub fn crossings(
    phi: LineAngle,
    t_min: f64,
    extent: Extent,
    chunk: f64,
    mut cache: Option<&mut Cache>,
) -> Result<Vec<CrossingPoint>> {
    if !(t_min >= 0.0) || !(chunk > 0.0) {
        bail!("need t_min >= 0 and chunk > 0");
    }
    if let Extent::UpTo(t_max) = extent {
        if !(t_max > t_min) || !t_max.is_finite() {
            bail!("need t_min < t_max, got {t_min} and {t_max}");
        }
    }
    let mut out = Vec::new();
    if t_min < LOW_REGION_END {
        let low = match cache.as_deref_mut().and_then(|c| c.low(phi)) {
            Some(low) => low,
            None => {
                let low = scan_low(phi);
                if let Some(c) = cache.as_deref_mut() {
                    c.insert_low(phi, &low);
                    c.flush()?;
                }
                low
            }
        };
        out.extend(low.into_iter().filter(|p| {
            p.t > t_min
                && match extent {
                    Extent::UpTo(t_max) => p.t <= t_max,
                    Extent::Count(_) => true,
                }
        }));
    }
    let first = first_index_above(phi, t_min)?;
    let last = match extent {
        Extent::UpTo(t_max) if t_max < LOW_REGION_END => first - 1,
        Extent::UpTo(t_max) => last_index_at_most(phi, t_max)?,
        Extent::Count(count) => {
            out.truncate(count);
            first + (count - out.len()) as i64 - 1
        }
    };
    let mut next = first;
    let mut t_here = t_min.max(LOW_REGION_END);
    while next <= last {
        let per_batch = (chunk * theta_derivative(t_here)? / PI).floor().max(1.0) as i64;
        let end = (next + per_batch - 1).min(last);
        let batch: Vec<i64> = (next..=end).collect();
        let cached: Vec<Option<CrossingPoint>> = match cache.as_deref_mut() {
            Some(c) => batch.iter().map(|&n| c.crossing(phi, n)).collect(),
            None => vec![None; batch.len()],
        };
        let points: Vec<CrossingPoint> = batch
            .par_iter()
            .zip(cached.par_iter())
            .map(|(&n, hit)| match hit {
                Some(p) => Ok(*p),
                None => solve_crossing(n, phi),
            })
            .collect::<critline_core::Result<_>>()?;
        if let Some(c) = cache.as_deref_mut() {
            for (p, hit) in points.iter().zip(&cached) {
                if hit.is_none() {
                    c.insert_crossing(*p);
                }
            }
            c.flush()?;
        }
        t_here = points.last().map_or(t_here, |p| p.t);
        log::debug!("crossings: indices {next}..={end} done, t = {t_here:.3}");
        out.extend(points);
        next = end + 1;
    }
    Ok(out)
}

/// Zeros `t_min < γ <= t_max`. Tables with ambiguous Gram blocks are
/// reported but never cached.
pub fn zeros(t_min: f64, t_max: f64, cache: Option<&mut Cache>) -> Result<Vec<ZeroRecord>> {
    let table = match cache {
        Some(c) => match c.zeros(t_max) {
            Some(z) => z,
            None => {
                let scan = scan_zeros(t_max)?;
                if scan.ambiguous.is_empty() {
                    c.insert_zeros(t_max, &scan.zeros);
                    c.flush()?;
                }
                warn_ambiguous(&scan.ambiguous);
                scan.zeros
            }
        },
        None => {
            let scan = scan_zeros(t_max)?;
            warn_ambiguous(&scan.ambiguous);
            scan.zeros
        }
    };
    Ok(table.into_iter().filter(|z| z.gamma > t_min).collect())
}

fn warn_ambiguous(blocks: &[critline_core::zeros::AmbiguousBlock]) {
    for b in blocks {
        log::warn!(
            "Gram block {}..{} on [{}, {}]: found {} of {} sign changes",
            b.first_index,
            b.last_index,
            b.t_start,
            b.t_end,
            b.found,
            b.expected
        );
    }
}

/// Number of samples of the mean-value circle.
pub const CIRCLE_SAMPLES: usize = 360;

/// ζ(1/2+it) on a grid, the circle `e^{iφ}cos φ` of limiting mean values, and
/// the line `e^{iφ}ℝ` clipped to the bounding box of both.
pub fn curve(
    t_min: f64,
    t_max: f64,
    step: f64,
    phi: LineAngle,
    precision: f64,
) -> Result<Vec<CurveRow>> {
    if !(step > 0.0) || !(t_min >= 0.0) || !(t_max >= t_min) || !t_max.is_finite() {
        bail!("need 0 <= t_min <= t_max and step > 0");
    }
    let n = ((t_max - t_min) / step + 1e-9).floor() as usize + 1;
    let samples: Vec<CurveRow> = (0..n)
        .into_par_iter()
        .map(|k| {
            let t = t_min + k as f64 * step;
            let p = critical_point(t)?;
            let zeta = if p.accuracy <= precision {
                p.zeta
            } else {
                zeta_em(Complex64::new(0.5, t), precision)?
            };
            Ok(CurveRow {
                set: "curve",
                param: t,
                re: zeta.re,
                im: zeta.im,
            })
        })
        .collect::<critline_core::Result<_>>()?;
    let circle: Vec<CurveRow> = (0..CIRCLE_SAMPLES)
        .map(|j| {
            let a = PI * j as f64 / CIRCLE_SAMPLES as f64;
            let c = a.cos();
            CurveRow {
                set: "circle",
                param: a,
                re: c * c,
                im: c * a.sin(),
            }
        })
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for r in samples.iter().chain(&circle) {
        x0 = x0.min(r.re);
        x1 = x1.max(r.re);
        y0 = y0.min(r.im);
        y1 = y1.max(r.im);
    }
    let (c, s) = (phi.cos(), phi.radians().sin());
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (d, a, b) in [(c, x0, x1), (s, y0, y1)] {
        if d.abs() > 1e-12 {
            let (u, v) = (a / d, b / d);
            lo = lo.max(u.min(v));
            hi = hi.min(u.max(v));
        }
    }
    let line = [lo, hi].into_iter().map(|r| CurveRow {
        set: "line",
        param: r,
        re: r * c,
        im: r * s,
    });
    Ok(samples.into_iter().chain(circle).chain(line).collect())
}
