//! Seeded Monte-Carlo estimates of `kappa_q^J(alpha)`.
//!
//! Sample `i` draws from a ChaCha8 stream keyed by `(seed, i)`, so the
//! sample set does not depend on how the work is scheduled.

use std::f64::consts::TAU;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumeration::check_alpha;
use super::{
    cos_sin_turn, normalization_constant, series_weights, tuple_log_integral, BetaTuple,
    KappaEstimate, KappaMethod, TuplePoly, MAX_TUPLE_J,
};
use crate::error::{Error, Result};
use crate::parallel::{map_blocks, pairwise_reduce, MeanVar};
use crate::quadrature::{composite_gauss_legendre, QuadratureConfig};

const BLOCK: u64 = 1024;
/// Gauss-Legendre cells across `[0, 1]` for the `|G|^q` integral.
const X_PANELS: usize = 4;

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The tuple drawn by sample `index`.
pub fn sample_tuple(j: usize, seed: u64, index: u64) -> Result<BetaTuple> {
    let mut rng = stream(seed, index);
    let lo = rng.next_u64() as u128;
    let hi = rng.next_u64() as u128;
    let bits = 2 * j;
    let code = lo | hi << 64;
    let code = if bits >= 128 {
        code
    } else {
        code & ((1u128 << bits) - 1)
    };
    BetaTuple::new(j, code)
}

/// `n` Rademacher signs for sample `index`.
pub fn sample_signs(n: usize, seed: u64, index: u64) -> Vec<f64> {
    let mut rng = stream(seed, index);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let word = rng.next_u64();
        for b in 0..64.min(n - out.len()) {
            out.push(if word >> b & 1 == 1 { -1.0 } else { 1.0 });
        }
    }
    out
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    Ok(())
}

fn reduce(parts: Vec<Result<MeanVar>>) -> Result<MeanVar> {
    let parts: Vec<MeanVar> = parts.into_iter().collect::<Result<_>>()?;
    Ok(pairwise_reduce(&parts, &|a, b| a.merge(b)).unwrap_or_default())
}

/// `kappa_0^J(alpha)` from the mean log-integral over sampled tuples.
pub fn kappa0_mc(j: usize, alpha: f64, samples: u64, seed: u64) -> Result<KappaEstimate> {
    check_alpha(alpha)?;
    check_samples(samples)?;
    if j == 0 || j > MAX_TUPLE_J {
        return Err(Error::InvalidParameter(format!(
            "J must be in 1..={MAX_TUPLE_J}"
        )));
    }
    let parts = map_blocks(samples, BLOCK, |start, end| -> Result<MeanVar> {
        let mut acc = MeanVar::default();
        // roots of the previous sample seed the next one
        let mut warm = None;
        for i in start..end {
            let tp = TuplePoly::new(alpha, &sample_tuple(j, seed, i)?);
            acc.push(tuple_log_integral(&tp, &mut warm)?);
        }
        Ok(acc)
    });
    let mv = reduce(parts)?;
    let lambda = mv.mean - normalization_constant(j);
    let value = lambda.exp() / TAU;
    let se = mv.std_err();
    Ok(KappaEstimate {
        alpha,
        q: 0.0,
        j,
        method: KappaMethod::MonteCarlo,
        value,
        std_err: value * se,
        samples,
        seed,
        lambda: Some(lambda),
        lambda_std_err: Some(se),
    })
}

/// Coefficient table for `G^{(J)}` at fixed nodes: for each `k = -J..=J`
/// (outer) and node (inner), the real and imaginary parts of
/// `e(alpha k) sin(pi x) / (pi (k + x))`. The common factor `e(x/2)` of
/// all terms is dropped since only `|G|` is needed.
struct SeriesTable {
    re: Vec<f64>,
    im: Vec<f64>,
    nodes: usize,
    real_only: bool,
}

impl SeriesTable {
    fn new(j: usize, alpha: f64, xs: &[f64]) -> Self {
        let n = xs.len();
        let terms = 2 * j + 1;
        let mut re = vec![0.0; terms * n];
        let mut im = vec![0.0; terms * n];
        for (col, &x) in xs.iter().enumerate() {
            for (row, w) in series_weights(j, x).into_iter().enumerate() {
                let (c, s) = cos_sin_turn(alpha * (row as f64 - j as f64));
                re[row * n + col] = c * w;
                im[row * n + col] = s * w;
            }
        }
        let real_only = im.iter().all(|&v| v == 0.0);
        SeriesTable {
            re,
            im,
            nodes: n,
            real_only,
        }
    }

    /// `|G|^2` at every node for the given signs, written into `out`.
    fn abs_sq(&self, signs: &[f64], acc_re: &mut [f64], acc_im: &mut [f64], out: &mut [f64]) {
        let n = self.nodes;
        acc_re.fill(0.0);
        acc_im.fill(0.0);
        for (row, &s) in signs.iter().enumerate() {
            let r = &self.re[row * n..(row + 1) * n];
            for (a, &v) in acc_re.iter_mut().zip(r) {
                *a += s * v;
            }
            if !self.real_only {
                let r = &self.im[row * n..(row + 1) * n];
                for (a, &v) in acc_im.iter_mut().zip(r) {
                    *a += s * v;
                }
            }
        }
        for ((o, a), b) in out.iter_mut().zip(acc_re.iter()).zip(acc_im.iter()) {
            *o = a * a + b * b;
        }
    }
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "q must be positive, got {q}"
        )))
    }
}

/// Per-sample values `f(|G(x_n)|^2 for all nodes)` summarized by mean and variance.
fn sample_moments<F>(
    j: usize,
    alpha: f64,
    xs: &[f64],
    samples: u64,
    seed: u64,
    f: F,
) -> Result<MeanVar>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let table = SeriesTable::new(j, alpha, xs);
    let n = xs.len();
    let parts = map_blocks(samples, BLOCK, |start, end| -> Result<MeanVar> {
        let mut acc = MeanVar::default();
        let (mut re, mut im, mut sq) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
        for i in start..end {
            let signs = sample_signs(2 * j + 1, seed, i);
            table.abs_sq(&signs, &mut re, &mut im, &mut sq);
            acc.push(f(&sq));
        }
        Ok(acc)
    });
    reduce(parts)
}

/// `(int_0^1 E|G^{(J)}(x)|^q dx)^{1/q}`, with the `x` integral taken by a
/// composite Gauss-Legendre rule of order `cfg.base_rule_order` per cell.
pub fn kappaq_mc(
    j: usize,
    alpha: f64,
    q: f64,
    samples: u64,
    seed: u64,
    cfg: &QuadratureConfig,
) -> Result<KappaEstimate> {
    check_alpha(alpha)?;
    check_samples(samples)?;
    check_q(q)?;
    cfg.validate()?;
    let (xs, ws) = composite_gauss_legendre(cfg.base_rule_order, X_PANELS);
    let half_q = 0.5 * q;
    let mv = sample_moments(j, alpha, &xs, samples, seed, |sq| {
        sq.iter().zip(&ws).map(|(s, w)| w * s.powf(half_q)).sum()
    })?;
    let value = mv.mean.powf(1.0 / q);
    Ok(KappaEstimate {
        alpha,
        q,
        j,
        method: KappaMethod::MonteCarlo,
        value,
        std_err: value / (q * mv.mean) * mv.std_err(),
        samples,
        seed,
        lambda: None,
        lambda_std_err: None,
    })
}

/// Monte-Carlo `(mean, std_err)` of `|G^{(J)}(x)|^q` at one point.
pub fn pointwise_moment_mc(
    j: usize,
    alpha: f64,
    q: f64,
    x: f64,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    check_samples(samples)?;
    check_q(q)?;
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "x must lie in (0, 1), got {x}"
        )));
    }
    let mv = sample_moments(j, alpha, &[x], samples, seed, |sq| sq[0].powf(0.5 * q))?;
    Ok((mv.mean, mv.std_err()))
}
