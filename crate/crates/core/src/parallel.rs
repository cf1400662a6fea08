//! Deterministic parallel reductions.
//!
//! Work is split into fixed-size blocks whose boundaries depend only on the
//! problem size, never on the thread count. Block results are collected in
//! index order and combined by a fixed pairwise tree, so every reduction is
//! bit-identical for any number of workers.

use rayon::prelude::*;

/// Pairwise (cascade) summation in a fixed tree order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Reduces `values` with an associative `combine` over a balanced binary tree.
pub fn pairwise_reduce<T: Clone>(values: &[T], combine: &impl Fn(&T, &T) -> T) -> Option<T> {
    match values.len() {
        0 => None,
        1 => Some(values[0].clone()),
        n => {
            let mid = n / 2;
            let left = pairwise_reduce(&values[..mid], combine)?;
            let right = pairwise_reduce(&values[mid..], combine)?;
            Some(combine(&left, &right))
        }
    }
}

/// Maps each block `[start, end)` of `0..n` (blocks of `block` items) in
/// parallel, returning block results in block order.
pub fn map_blocks<T, F>(n: u64, block: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let block = block.max(1);
    let count = n.div_ceil(block);
    (0..count)
        .into_par_iter()
        .map(|b| {
            let start = b * block;
            f(start, (start + block).min(n))
        })
        .collect()
}

/// Running mean and centred second moment, mergeable in any fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeanVar {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl MeanVar {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&self, other: &MeanVar) -> MeanVar {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / n as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64 * other.count as f64) / n as f64;
        MeanVar { count: n, mean, m2 }
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn std_err(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Mean/variance of `f(i)` over `i in 0..n`, reproducible across thread counts.
pub fn deterministic_mean_var<F>(n: u64, block: u64, f: F) -> MeanVar
where
    F: Fn(u64) -> f64 + Sync,
{
    let parts = map_blocks(n, block, |start, end| {
        let mut acc = MeanVar::default();
        for i in start..end {
            acc.push(f(i));
        }
        acc
    });
    pairwise_reduce(&parts, &|a, b| a.merge(b)).unwrap_or_default()
}
