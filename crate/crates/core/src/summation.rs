//! Neumaier-compensated accumulators.
//!
//! Parallel reductions in this crate sum fixed-size chunks independently and
//! then merge the per-chunk accumulators in chunk order. With the chunk size
//! fixed, the result does not depend on how many worker threads ran.

use std::ops::AddAssign;

use num_complex::Complex64;
use rayon::prelude::*;

/// Chunk length used by every parallel reduction.
pub const CHUNK: usize = 1024;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    /// Fold another accumulator in, keeping both its sum and its carry.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.carry);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, v: f64) {
        self.add(v);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    pub fn merge(&mut self, other: &CompensatedComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Deterministic parallel sum of `f` over `items`.
pub fn chunked_sum<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    let partials: Vec<CompensatedSum> = items
        .par_chunks(CHUNK)
        .map(|chunk| chunk.iter().map(&f).collect())
        .collect();
    let mut total = CompensatedSum::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}

/// Complex counterpart of [`chunked_sum`].
pub fn chunked_complex_sum<T, F>(items: &[T], f: F) -> Complex64
where
    T: Sync,
    F: Fn(&T) -> Complex64 + Sync,
{
    let partials: Vec<CompensatedComplexSum> = items
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = CompensatedComplexSum::new();
            for item in chunk {
                acc.add(f(item));
            }
            acc
        })
        .collect();
    let mut total = CompensatedComplexSum::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}
