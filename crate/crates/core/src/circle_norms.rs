//! Norms over the unit circle: Mahler measure by panel quadrature and by
//! roots, L_q norms, the sup norm, and the interpolation function `G`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number_theory::{legendre_symbol, OddPrime};
use crate::parallel::pairwise_sum;
use crate::polynomials::{
    build, build_companion, build_turyn, evaluate, evaluate_at, evaluate_at_roots, unit_point,
    CirclePoly, Sign, TurynSpec,
};
use crate::quadrature::{graded_breakpoints, integrate, QuadratureConfig};
use crate::roots::{polynomial_roots, AberthOptions, ComplexPoly};

/// Which computation produced a [`MeasureResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureMethod {
    Panels,
    Roots,
    LqQuadrature,
}

/// A measure or norm together with its logarithm. `err_estimate` is an
/// estimate of the absolute error in `log_value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureResult {
    pub value: f64,
    pub log_value: f64,
    pub err_estimate: f64,
    pub method: MeasureMethod,
    pub p: Option<u64>,
    pub t: Option<u64>,
    pub q: Option<f64>,
}

impl MeasureResult {
    fn from_log(log_value: f64, err_estimate: f64, method: MeasureMethod) -> Self {
        MeasureResult {
            value: log_value.exp(),
            log_value,
            err_estimate,
            method,
            p: None,
            t: None,
            q: None,
        }
    }

    fn with_spec(mut self, spec: &TurynSpec) -> Self {
        self.p = Some(spec.p.get());
        self.t = Some(spec.t);
        self
    }
}

/// `G_{p,t}(k, x)` from the interpolation sum
/// `((e(x)-1)/p) sum_{|j|<p/2} ((k-j)/p) zeta^{jt} / (zeta^{j+x} - 1)`.
pub fn interp_g(p: OddPrime, t: i64, k: i64, x: f64) -> Result<Complex64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "x must lie in (0, 1), got {x}"
        )));
    }
    let pf = p.as_f64();
    let half = (p.as_i64() - 1) / 2;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in -half..=half {
        let leg = legendre_symbol(k - j, p);
        if leg == 0 {
            continue;
        }
        let num = unit_point((j * t).rem_euclid(p.as_i64()) as f64 / pf);
        let den = unit_point((j as f64 + x) / pf) - 1.0;
        sum += num / den * leg as f64;
    }
    Ok((unit_point(x) - 1.0) / pf * sum)
}

/// `G_{p,t}(k, x)` from its definition `zeta^{(k-1)t} F(zeta^{k+x}) / F(zeta)`.
pub fn g_by_definition(f: &CirclePoly, p: OddPrime, t: i64, k: i64, x: f64) -> Complex64 {
    let pf = p.as_f64();
    let rot = unit_point(((k - 1) * t).rem_euclid(p.as_i64()) as f64 / pf);
    rot * evaluate(f, (k as f64 + x) / pf) / evaluate(f, 1.0 / pf)
}

/// Evaluates `|f(e(u))|` by plain Horner, switching to the compensated
/// evaluator where the plain result is small enough to be dominated by
/// rounding error.
struct CircleAbs {
    poly: CirclePoly,
    coeffs: Vec<f64>,
    threshold: f64,
}

impl CircleAbs {
    fn new(f: &CirclePoly) -> Self {
        let coeffs: Vec<f64> = f.coeffs().iter().map(|&c| c as f64).collect();
        let l1: f64 = coeffs.iter().map(|c| c.abs()).sum();
        CircleAbs {
            poly: f.clone(),
            coeffs,
            threshold: 1e-6 * l1,
        }
    }

    fn abs(&self, u: f64) -> f64 {
        let (zi, zr) = (TAU * u).sin_cos();
        let (mut sr, mut si) = (0.0f64, 0.0f64);
        for &a in self.coeffs.iter().rev() {
            let nr = sr.mul_add(zr, -si * zi) + a;
            si = sr.mul_add(zi, si * zr);
            sr = nr;
        }
        let plain = sr.hypot(si);
        if plain < self.threshold {
            evaluate(&self.poly, u).norm()
        } else {
            plain
        }
    }
}

/// Floor applied to `|f|` before taking logarithms, so an exact zero hit by
/// a quadrature node contributes a large but finite value.
const LOG_FLOOR: f64 = 1e-300;

const GRADED_LEVELS: u32 = 24;
const DIP_SAMPLES: usize = 8;
const DIP_RATIO: f64 = 1e-3;

/// Samples of `|f|` at equispaced interior points of panel `k`.
fn panel_samples(eval: &CircleAbs, k: usize, n: usize) -> Vec<(f64, f64)> {
    (0..DIP_SAMPLES)
        .map(|i| {
            let x = (i as f64 + 0.5) / DIP_SAMPLES as f64;
            (x, eval.abs((k as f64 + x) / n as f64))
        })
        .collect()
}

/// Breakpoints in panel coordinates `x in [0, 1]` for panel `k` of `n`.
fn panel_breakpoints(samples: &[(f64, f64)], k: usize, n: usize, zero_at_one: bool) -> Vec<f64> {
    let left = zero_at_one && k == 0;
    let right = zero_at_one && k + 1 == n;
    let mut pts = if left || right {
        graded_breakpoints(0.0, 1.0, left, right, GRADED_LEVELS)
    } else {
        vec![0.0, 1.0]
    };
    // split at an interior dip of |f|
    let mut mags: Vec<f64> = samples.iter().map(|s| s.1).collect();
    mags.sort_by(f64::total_cmp);
    let m = mags.len();
    let median = 0.5 * (mags[(m - 1) / 2] + mags[m / 2]);
    let (xmin, vmin) = samples
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    if vmin < DIP_RATIO * median && !pts.contains(&xmin) {
        pts.push(xmin);
        pts.sort_by(f64::total_cmp);
    }
    pts
}

/// A zero of `f` near the circle, written as `e(u0 + i delta)`.
#[derive(Debug, Clone, Copy)]
struct NearZero {
    u0: f64,
    delta: f64,
}

impl NearZero {
    /// `log |e(u) - z0| ~ log(2 pi) + (1/2) log((u - u0)^2 + delta^2)`; the
    /// second term, which carries the singularity.
    fn model(&self, u: f64) -> f64 {
        let v = u - self.u0;
        0.5 * (v * v + self.delta * self.delta).ln()
    }

    fn antiderivative(&self, u: f64) -> f64 {
        let v = u - self.u0;
        let d = self.delta;
        if d == 0.0 {
            if v == 0.0 {
                0.0
            } else {
                v * v.abs().ln() - v
            }
        } else {
            0.5 * v * (v * v + d * d).ln() - v + d * (v / d).atan()
        }
    }
}

/// Newton's method on `f` in the complex plane from `e(u)`.
fn newton_zero(coeffs: &[f64], u: f64) -> Option<Complex64> {
    let mut z = unit_point(u);
    for _ in 0..40 {
        let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &a in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        let step = p / dp;
        if !step.is_finite() {
            return None;
        }
        z -= step;
        if step.norm() <= 1e-15 * z.norm() {
            return Some(z);
        }
    }
    None
}

/// Zeros of `f` within about one panel width of panel `k`, found by Newton
/// from the local minima of the samples.
fn near_zeros(eval: &CircleAbs, samples: &[(f64, f64)], k: usize, n: usize) -> Vec<NearZero> {
    let width = 1.0 / n as f64;
    let centre = (k as f64 + 0.5) * width;
    let mut found: Vec<NearZero> = Vec::new();
    for i in 0..samples.len() {
        let here = samples[i].1;
        let left_ok = i == 0 || samples[i - 1].1 >= here;
        let right_ok = i + 1 == samples.len() || samples[i + 1].1 > here;
        if !(left_ok && right_ok) {
            continue;
        }
        let u = (k as f64 + samples[i].0) * width;
        let Some(z) = newton_zero(&eval.coeffs, u) else {
            continue;
        };
        if z.norm() == 0.0 {
            continue;
        }
        let mut u0 = z.arg() / TAU;
        u0 -= (u0 - centre).round();
        let delta = -z.norm().ln() / TAU;
        if (u0 - centre).abs() > 1.5 * width || delta.abs() > 0.5 * width {
            continue;
        }
        let delta = delta.abs();
        if found
            .iter()
            .any(|r| (r.u0 - u0).abs() < 1e-9 * width && (r.delta - delta).abs() < 1e-9 * width)
        {
            continue;
        }
        found.push(NearZero { u0, delta });
    }
    found
}

/// Integrates `h(|f(e(u))|)` over `[0, 1]` as `n` panels of width `1/n`,
/// returning `(integral, err_estimate)`. Panel results are summed pairwise
/// in panel order.
fn panel_integral<H>(f: &CirclePoly, h: H, cfg: &QuadratureConfig) -> Result<(f64, f64)>
where
    H: Fn(f64) -> f64 + Sync,
{
    cfg.validate()?;
    let eval = CircleAbs::new(f);
    let n = f.len().max(1);
    let zero_at_one = f.value_at_one() == 0;
    let parts: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|k| {
            let samples = panel_samples(&eval, k, n);
            let pts = panel_breakpoints(&samples, k, n, zero_at_one);
            let r = integrate(|x| h(eval.abs((k as f64 + x) / n as f64)), &pts, cfg)?;
            Ok((r.value, r.err_estimate))
        })
        .collect::<Result<_>>()?;
    reduce_panels(&parts, n)
}

fn reduce_panels(parts: &[(f64, f64)], n: usize) -> Result<(f64, f64)> {
    let values: Vec<f64> = parts.iter().map(|p| p.0).collect();
    let errs: Vec<f64> = parts.iter().map(|p| p.1).collect();
    let n = n as f64;
    Ok((pairwise_sum(&values) / n, pairwise_sum(&errs) / n))
}

/// `int_0^1 log|f(e(u))| du` panel by panel. The logarithmic singularity of
/// each zero on or next to the circle is subtracted in closed form, so the
/// rule only sees the smooth remainder.
fn log_panel_integral(f: &CirclePoly, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    let eval = CircleAbs::new(f);
    let n = f.len().max(1);
    let width = 1.0 / n as f64;
    let zero_at_one = f.value_at_one() == 0;
    let parts: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|k| {
            let samples = panel_samples(&eval, k, n);
            let pts = panel_breakpoints(&samples, k, n, zero_at_one);
            let zeros = near_zeros(&eval, &samples, k, n);
            let (a, b) = (k as f64 * width, (k + 1) as f64 * width);
            let integrand = |x: f64| {
                let mut u = (k as f64 + x) * width;
                if zeros.iter().any(|z| z.delta == 0.0 && u == z.u0) {
                    // the remainder is smooth; step off the removable point
                    u += 1e-12 * width;
                }
                let mut v = eval.abs(u).max(LOG_FLOOR).ln();
                for z in &zeros {
                    v -= z.model(u);
                }
                v
            };
            let r = integrate(integrand, &pts, cfg)?;
            let exact: f64 = zeros
                .iter()
                .map(|z| (z.antiderivative(b) - z.antiderivative(a)) * n as f64)
                .sum();
            Ok((r.value + exact, r.err_estimate))
        })
        .collect::<Result<_>>()?;
    reduce_panels(&parts, n)
}

fn reject_zero(f: &CirclePoly) -> Result<()> {
    if f.is_zero() {
        Err(Error::InvalidParameter(
            "the zero polynomial has no finite Mahler measure".into(),
        ))
    } else {
        Ok(())
    }
}

/// Mahler measure of any nonzero integer polynomial by panel quadrature of
/// `log|f(e(u))|`, one panel per coefficient.
pub fn mahler_measure_panels_poly(f: &CirclePoly, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    reject_zero(f)?;
    let (log_m, err) = log_panel_integral(f, cfg)?;
    Ok(MeasureResult::from_log(log_m, err, MeasureMethod::Panels))
}

/// Mahler measure of the polynomial selected by `spec`. For Turyn
/// polynomials this is `(1/2) log p + (1/p) sum_k int_0^1 log|G(k, x)| dx`,
/// since `|G(k, x)| = |F(e((k+x)/p))| / sqrt(p)`.
pub fn mahler_measure_panels(spec: &TurynSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    let f = build(spec)?;
    Ok(mahler_measure_panels_poly(&f, cfg)?.with_spec(spec))
}

/// Practical degree limit of the root-based measure.
pub const MAX_ROOT_DEGREE: usize = 4096;

/// Mahler measure `|a_n| prod max(1, |r|)` from certified roots.
pub fn mahler_measure_roots(f: &CirclePoly) -> Result<MeasureResult> {
    reject_zero(f)?;
    let deg = f.trimmed_degree().unwrap_or(0);
    if deg > MAX_ROOT_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "degree {deg} exceeds the root-finding limit {MAX_ROOT_DEGREE}"
        )));
    }
    let trimmed: Vec<f64> = f.coeffs()[..=deg].iter().map(|&c| c as f64).collect();
    let lead = trimmed[deg].abs().ln();
    let poly = ComplexPoly::from_real(&trimmed);
    let opts = AberthOptions::default();
    let roots = polynomial_roots(&poly, &opts)?;
    let logs: Vec<f64> = roots.iter().map(|r| r.norm().ln().max(0.0)).collect();
    let err = deg as f64 * opts.certify_tol;
    Ok(MeasureResult::from_log(
        lead + pairwise_sum(&logs),
        err,
        MeasureMethod::Roots,
    ))
}

/// `(int_0^1 |f(e(u))|^q du)^{1/q}` by panel quadrature. The integrand is
/// scaled by `||f||_2` to keep large `q` in range.
pub fn lq_norm(f: &CirclePoly, q: f64, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "q must be positive, got {q}"
        )));
    }
    reject_zero(f)?;
    let scale = crate::polynomials::l2_norm(f);
    let (integral, err) = panel_integral(f, |a| (a / scale).powf(q), cfg)?;
    if !(integral > 0.0) {
        return Err(Error::DivisionByZero("L_q integral vanished"));
    }
    let log_value = scale.ln() + integral.ln() / q;
    let mut r =
        MeasureResult::from_log(log_value, err / (q * integral), MeasureMethod::LqQuadrature);
    r.q = Some(q);
    Ok(r)
}

/// Minimizes `g` on `[a, b]` by Brent's golden-section/parabolic method.
fn brent_min<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const CGOLD: f64 = 0.381_966_011_250_105_1;
    let mut x = a + CGOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = g(x);
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let xm = 0.5 * (a + b);
        let tol1 = tol * x.abs() + 1e-18;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = g(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, fx)
}

/// Lower bound on `sup |f|` over the circle: the maximum over
/// `grid_factor * (deg + 1)` equispaced points, optionally refined around
/// the largest local maxima.
pub fn sup_norm(f: &CirclePoly, grid_factor: usize, refine: bool) -> Result<f64> {
    if grid_factor < 4 {
        return Err(Error::InvalidParameter(format!(
            "grid_factor must be at least 4, got {grid_factor}"
        )));
    }
    let n = grid_factor * f.len().max(1);
    let mags: Vec<f64> = evaluate_at_roots(f, n)?.iter().map(|z| z.norm()).collect();
    let grid_max = mags.iter().copied().fold(0.0, f64::max);
    if !refine || grid_max == 0.0 {
        return Ok(grid_max);
    }
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = mags[(i + n - 1) % n];
            let next = mags[(i + 1) % n];
            mags[i] >= prev && mags[i] >= next && mags[i] >= 0.9 * grid_max
        })
        .collect();
    peaks.sort_by(|&a, &b| mags[b].total_cmp(&mags[a]).then(a.cmp(&b)));
    peaks.truncate(16);
    let mut best = grid_max;
    for i in peaks {
        let lo = (i as f64 - 1.0) / n as f64;
        let hi = (i as f64 + 1.0) / n as f64;
        let (_, neg) = brent_min(|u| -evaluate(f, u).norm(), lo, hi, 1e-12);
        best = best.max(-neg);
    }
    Ok(best)
}

/// Normalized companion gaps `((M(F+) - M(F)) / sqrt p, (M(F-) - M(F)) / sqrt p)`
/// for `0 < t <= p`; `t = p` is the Fekete polynomial.
pub fn measure_gap_companions(p: OddPrime, t: i64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    if !(t > 0 && t <= p.as_i64()) {
        return Err(Error::InvalidParameter(format!(
            "t must satisfy 0 < t <= p, got {t}"
        )));
    }
    let spec = TurynSpec::new(p, t);
    let base = build_turyn(&spec)?;
    let plus = build_companion(&spec, Sign::Plus)?;
    let minus = build_companion(&spec, Sign::Minus)?;
    let m = mahler_measure_panels_poly(&base, cfg)?.value;
    let mp = mahler_measure_panels_poly(&plus, cfg)?.value;
    let mm = mahler_measure_panels_poly(&minus, cfg)?.value;
    let root_p = p.as_f64().sqrt();
    Ok(((mp - m) / root_p, (mm - m) / root_p))
}

/// `(1/p) sum_k |G(k, x) - G(k, y)|^2`, the quantity bounded by the
/// equicontinuity estimate.
pub fn g_increment_mean_square(f: &CirclePoly, p: OddPrime, x: f64, y: f64) -> f64 {
    let pf = p.as_f64();
    let terms: Vec<f64> = (0..p.as_usize())
        .map(|k| {
            let a = evaluate_at(f, unit_point((k as f64 + x) / pf));
            let b = evaluate_at(f, unit_point((k as f64 + y) / pf));
            (a - b).norm_sqr() / pf
        })
        .collect();
    pairwise_sum(&terms) / pf
}

/// `(2/pi) sqrt(p) log log p`, the asymptotic lower bound for the sup norm.
pub fn sup_norm_lower_reference(p: OddPrime) -> f64 {
    2.0 / PI * p.as_f64().sqrt() * p.as_f64().ln().ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::{l2k_norm_exact, TurynSpec};

    fn p(n: u64) -> OddPrime {
        OddPrime::new(n).unwrap()
    }

    #[test]
    fn interp_matches_definition() {
        let mut state = 12345u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let primes = crate::number_theory::primes_in_range(3, 199);
        for _ in 0..100 {
            let q = primes[(next() * primes.len() as f64) as usize];
            let t = (next() * q.as_f64()) as i64;
            let k = (next() * 3.0 * q.as_f64()) as i64 - q.as_i64();
            let x = 0.01 + 0.98 * next();
            let f = build_turyn(&TurynSpec::new(q, t)).unwrap();
            let a = interp_g(q, t, k, x).unwrap();
            let b = g_by_definition(&f, q, t, k, x);
            assert!((a - b).norm() < 1e-9, "p={q} t={t} k={k} x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn interp_rejects_endpoints() {
        assert!(interp_g(p(7), 1, 1, 0.0).is_err());
        assert!(interp_g(p(7), 1, 1, 1.0).is_err());
    }

    #[test]
    fn interp_mean_square_near_one() {
        let q = p(499);
        let mean: f64 = (0..499)
            .map(|k| interp_g(q, 125, k, 0.5).unwrap().norm_sqr())
            .sum::<f64>()
            / 499.0;
        let bound = q.as_f64().ln().powi(2) / q.as_f64().sqrt();
        assert!((mean - 1.0).abs() <= bound);
    }

    #[test]
    fn interp_near_panel_edge() {
        let q = p(31);
        for k in 1..5 {
            let g = interp_g(q, 3, k, 1e-7).unwrap();
            assert!((g.norm() - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn root_measure_examples() {
        let m = mahler_measure_roots(&CirclePoly::new(vec![2, 1])).unwrap();
        assert!((m.value - 2.0).abs() < 1e-12);
        let m = mahler_measure_roots(&CirclePoly::lehmer()).unwrap();
        assert!((m.value - 1.17628).abs() < 5e-5);
        let m = mahler_measure_roots(&CirclePoly::f_b()).unwrap();
        assert!((m.value / 13f64.sqrt() - 0.98636).abs() < 1e-4);
        assert!(mahler_measure_roots(&CirclePoly::new(vec![0, 0])).is_err());
        let m = mahler_measure_roots(&CirclePoly::new(vec![-3])).unwrap();
        assert!((m.value - 3.0).abs() < 1e-15);
    }

    #[test]
    fn panel_measure_examples() {
        let cfg = QuadratureConfig::default();
        for f in [
            CirclePoly::new(vec![2, 1]),
            CirclePoly::lehmer(),
            CirclePoly::f_b(),
        ] {
            let a = mahler_measure_panels_poly(&f, &cfg).unwrap();
            let b = mahler_measure_roots(&f).unwrap();
            assert!((a.value / b.value - 1.0).abs() < 1e-7, "{a:?} {b:?}");
        }
        // roots on the circle
        let m = mahler_measure_panels_poly(&CirclePoly::new(vec![1, 1]), &cfg).unwrap();
        assert!(m.log_value.abs() < 1e-8);
    }

    #[test]
    fn panels_match_roots_small_turyn() {
        let cfg = QuadratureConfig::default();
        for q in [5u64, 7, 11, 13, 29] {
            for t in [0i64, 1, (q / 4) as i64] {
                let spec = TurynSpec::new(p(q), t);
                let a = mahler_measure_panels(&spec, &cfg).unwrap();
                let b = mahler_measure_roots(&build_turyn(&spec).unwrap()).unwrap();
                assert!(
                    (a.value / b.value - 1.0).abs() < 1e-6,
                    "p={q} t={t} {a:?} {b:?}"
                );
                assert_eq!(a.p, Some(q));
            }
        }
    }

    #[test]
    fn lq_examples() {
        let cfg = QuadratureConfig::default();
        let f = build_companion(&TurynSpec::new(p(11), 3), Sign::Plus).unwrap();
        let l2 = lq_norm(&f, 2.0, &cfg).unwrap();
        assert!((l2.value - 11f64.sqrt()).abs() < 1e-8);
        let f = build_turyn(&TurynSpec::new(p(37), 9)).unwrap();
        let l4 = lq_norm(&f, 4.0, &cfg).unwrap();
        let exact = l2k_norm_exact(&f, 2).unwrap();
        assert!((l4.value / exact - 1.0).abs() < 1e-8);
        assert!(lq_norm(&f, 0.0, &cfg).is_err());
    }

    #[test]
    fn small_q_approaches_measure() {
        let cfg = QuadratureConfig::default();
        let f = CirclePoly::f_b();
        let m = mahler_measure_roots(&f).unwrap().value;
        let l = lq_norm(&f, 0.01, &cfg).unwrap().value;
        assert!(l >= m && l / m - 1.0 < 0.01);
    }

    #[test]
    fn sup_norm_examples() {
        assert!((sup_norm(&CirclePoly::new(vec![1, 1]), 16, true).unwrap() - 2.0).abs() < 1e-12);
        let ones = CirclePoly::new(vec![1; 9]);
        assert!((sup_norm(&ones, 16, true).unwrap() - 9.0).abs() < 1e-12);
        assert!(sup_norm(&ones, 3, true).is_err());
    }

    #[test]
    fn sup_norm_refinement_matches_dense_grid() {
        let f = CirclePoly::f_b();
        let refined = sup_norm(&f, 16, true).unwrap();
        let dense = evaluate_at_roots(&f, 1 << 20)
            .unwrap()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(refined >= dense * (1.0 - 1e-12));
        assert!((refined / dense - 1.0).abs() < 1e-6);
    }

    #[test]
    fn companion_gaps_small() {
        let cfg = QuadratureConfig::default();
        let (gp, gm) = measure_gap_companions(p(101), 25, &cfg).unwrap();
        assert!(gp.abs() < 0.2 && gm.abs() < 0.2);
        assert!(measure_gap_companions(p(101), 0, &cfg).is_err());
        let (a, b) = measure_gap_companions(p(13), 13, &cfg).unwrap();
        assert!(a.is_finite() && b.is_finite());
    }
}
