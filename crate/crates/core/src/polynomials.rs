//! Fekete, Turyn, companion Littlewood and generalized Turyn polynomials,
//! their values on the unit circle, and exact coefficient-side norms.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number_theory::{legendre_symbol, OddPrime};

/// An integer polynomial `sum_k coeffs[k] x^k`, examined on the unit circle.
///
/// The coefficient vector is kept at its construction length, so a Turyn
/// polynomial whose zero coefficient sits in the top slot still has `p`
/// coefficients. [`CirclePoly::trimmed_degree`] gives the algebraic degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CirclePoly {
    coeffs: Vec<i64>,
}

impl CirclePoly {
    pub fn new(coeffs: Vec<i64>) -> Self {
        CirclePoly { coeffs }
    }

    pub fn zero() -> Self {
        CirclePoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Formal degree, `len - 1` (0 for the empty polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Degree after dropping zero leading coefficients; `None` for the zero polynomial.
    pub fn trimmed_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_littlewood(&self) -> bool {
        !self.coeffs.is_empty() && self.coeffs.iter().all(|&c| c == 1 || c == -1)
    }

    /// `f(1)`, exactly.
    pub fn value_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// One coefficient per line, LF terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(3 * self.coeffs.len());
        for c in &self.coeffs {
            let _ = writeln!(out, "{c}");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let coeffs = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.parse::<i64>()
                    .map_err(|e| Error::InvalidParameter(format!("bad coefficient {l:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CirclePoly::new(coeffs))
    }

    /// Lehmer's degree-10 polynomial.
    pub fn lehmer() -> Self {
        CirclePoly::new(vec![1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    /// The degree-12 Littlewood polynomial with the largest known normalized
    /// Mahler measure, `x^12 + x^11 + ... - x + 1`.
    pub fn f_b() -> Self {
        // constant term first
        CirclePoly::new(vec![1, -1, 1, -1, 1, 1, -1, -1, 1, 1, 1, 1, 1])
    }
}

/// Selects a Turyn polynomial `F_{p,t}` or, with `d` set, the generalized
/// Turyn polynomial `F_{p,t,d}`. The shift is stored reduced into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurynSpec {
    pub p: OddPrime,
    pub t: u64,
    pub d: Option<u64>,
}

impl TurynSpec {
    pub fn new(p: OddPrime, t: i64) -> Self {
        TurynSpec {
            p,
            t: t.rem_euclid(p.as_i64()) as u64,
            d: None,
        }
    }

    pub fn fekete(p: OddPrime) -> Self {
        TurynSpec::new(p, 0)
    }

    /// `t = round(p/4)` (p odd, so `p/4` is never a half integer).
    pub fn quarter(p: OddPrime) -> Self {
        TurynSpec::new(p, nearest_shift(p, 0.25))
    }

    pub fn generalized(p: OddPrime, t: i64, d: u64) -> Self {
        TurynSpec {
            d: Some(d),
            ..TurynSpec::new(p, t)
        }
    }

    /// Relative shift `t / p`.
    pub fn alpha(&self) -> f64 {
        self.t as f64 / self.p.as_f64()
    }

    /// Exponent carrying the single zero coefficient of `F_{p,t}`.
    pub fn zero_exponent(&self) -> usize {
        ((self.p.get() - self.t) % self.p.get()) as usize
    }
}

/// `round(alpha * p)`, rounding half integers down.
pub fn nearest_shift(p: OddPrime, alpha: f64) -> i64 {
    let x = alpha * p.as_f64();
    let f = x.floor();
    if x - f > 0.5 {
        f as i64 + 1
    } else {
        f as i64
    }
}

/// Sign of the unit added to the zero slot of a companion Littlewood polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `F_{p,t}(x) = sum_{j<p} ((j+t)/p) x^j`.
pub fn build_turyn(spec: &TurynSpec) -> Result<CirclePoly> {
    if spec.d.is_some() {
        return Err(Error::InvalidParameter(
            "build_turyn takes a spec without a degree; use build_generalized".into(),
        ));
    }
    let p = spec.p;
    let t = spec.t as i64;
    Ok(CirclePoly::new(
        (0..p.as_i64())
            .map(|j| legendre_symbol(j + t, p) as i64)
            .collect(),
    ))
}

/// `F^{±}_{p,t} = F_{p,t} ± x^{(p-t) mod p}`. A stored shift of 0 stands for
/// `t = p`, the Fekete case, whose zero coefficient is the constant term.
pub fn build_companion(spec: &TurynSpec, sign: Sign) -> Result<CirclePoly> {
    let mut f = build_turyn(spec)?;
    let slot = spec.zero_exponent();
    debug_assert_eq!(f.coeffs[slot], 0);
    f.coeffs[slot] = sign.value();
    Ok(f)
}

/// `F_{p,t,d}(x) = sum_{j<=d} ((j+t)/p) x^j`: truncation for `d < p`,
/// periodic extension for `d >= p`.
pub fn build_generalized(spec: &TurynSpec) -> Result<CirclePoly> {
    let d = spec
        .d
        .ok_or_else(|| Error::InvalidParameter("generalized Turyn spec needs a degree d".into()))?;
    let p = spec.p;
    let t = spec.t as i64;
    Ok(CirclePoly::new(
        (0..=d as i64)
            .map(|j| legendre_symbol(j + t, p) as i64)
            .collect(),
    ))
}

/// Builds whichever family `spec` selects.
pub fn build(spec: &TurynSpec) -> Result<CirclePoly> {
    if spec.d.is_some() {
        build_generalized(spec)
    } else {
        build_turyn(spec)
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Compensated Horner evaluation of an integer polynomial at a complex
/// point. The product and sum rounding errors of every step are carried in
/// a second Horner recurrence and added back at the end.
pub fn evaluate_at(f: &CirclePoly, z: Complex64) -> Complex64 {
    let Some((&top, rest)) = f.coeffs.split_last() else {
        return Complex64::zero();
    };
    let (zr, zi) = (z.re, z.im);
    let mut sr = top as f64;
    let mut si = 0.0;
    let mut err = Complex64::zero();
    for &a in rest.iter().rev() {
        let (z1, h1) = two_prod(sr, zr);
        let (z2, h2) = two_prod(si, zi);
        let (z3, h3) = two_prod(sr, zi);
        let (z4, h4) = two_prod(si, zr);
        let (z5, h5) = two_sum(z1, -z2);
        let (z6, h6) = two_sum(z3, z4);
        let (re, h7) = two_sum(z5, a as f64);
        sr = re;
        si = z6;
        err = err * z + Complex64::new(h1 - h2 + h5 + h7, h3 + h4 + h6);
    }
    Complex64::new(sr, si) + err
}

/// `e(u) = exp(2 pi i u)` with the argument reduced to `[0, 1)` first.
#[inline]
pub fn unit_point(u: f64) -> Complex64 {
    let (s, c) = (TAU * u.rem_euclid(1.0)).sin_cos();
    Complex64::new(c, s)
}

/// `f(e(u))`.
pub fn evaluate(f: &CirclePoly, u: f64) -> Complex64 {
    evaluate_at(f, unit_point(u))
}

/// `f(e(k/n))` for `k = 0..n`, via an inverse FFT of the (folded) coefficients.
pub fn evaluate_at_roots(f: &CirclePoly, n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "number of points must be >= 1".into(),
        ));
    }
    let mut buf = vec![Complex64::zero(); n];
    for (j, &a) in f.coeffs.iter().enumerate() {
        buf[j % n].re += a as f64;
    }
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_inverse(n).process(&mut buf);
    Ok(buf)
}

/// `sqrt(sum a_k^2)`, which is the L_2 norm over the circle.
pub fn l2_norm(f: &CirclePoly) -> f64 {
    (f.coeffs.iter().map(|&a| (a * a) as f64).sum::<f64>()).sqrt()
}

/// Aperiodic autocorrelations `c_u = sum_k a_k a_{k+u}`, `u = 0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AutocorrelationVector(pub Vec<i64>);

impl AutocorrelationVector {
    /// `c_0^2 + 2 sum_{u>=1} c_u^2`, which equals `||f||_4^4`.
    pub fn l4_power(&self) -> i128 {
        self.0
            .iter()
            .enumerate()
            .map(|(u, &c)| if u == 0 { 1 } else { 2 } * (c as i128) * (c as i128))
            .sum()
    }
}

pub fn autocorrelation(f: &CirclePoly) -> AutocorrelationVector {
    let a = &f.coeffs;
    let n = a.len();
    AutocorrelationVector(
        (0..n)
            .map(|u| a[..n - u].iter().zip(&a[u..]).map(|(x, y)| x * y).sum())
            .collect(),
    )
}

fn convolve_i128(x: &[i128], y: &[i64]) -> Option<Vec<i128>> {
    let mut out = vec![0i128; x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            let term = a.checked_mul(b as i128)?;
            out[i + j] = out[i + j].checked_add(term)?;
        }
    }
    Some(out)
}

fn l2k_power_i128(f: &CirclePoly, k: u32) -> Option<i128> {
    let mut acc: Vec<i128> = f.coeffs.iter().map(|&c| c as i128).collect();
    for _ in 1..k {
        acc = convolve_i128(&acc, &f.coeffs)?;
    }
    acc.iter()
        .try_fold(0i128, |s, &c| s.checked_add(c.checked_mul(c)?))
}

fn l2k_power_big(f: &CirclePoly, k: u32) -> BigInt {
    let base: Vec<BigInt> = f.coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let mut acc = base.clone();
    for _ in 1..k {
        let mut out = vec![BigInt::zero(); acc.len() + base.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in base.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        acc = out;
    }
    acc.iter().map(|c| c * c).sum()
}

/// `||f||_{2k}^{2k}` exactly: the sum of squared coefficients of `f^k`.
/// Uses 128-bit arithmetic and promotes to big integers on overflow.
pub fn l2k_power_exact(f: &CirclePoly, k: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if f.is_empty() {
        return Ok(BigInt::zero());
    }
    Ok(match l2k_power_i128(f, k) {
        Some(v) => BigInt::from(v),
        None => l2k_power_big(f, k),
    })
}

/// `||f||_{2k}` from the exact power.
pub fn l2k_norm_exact(f: &CirclePoly, k: u32) -> Result<f64> {
    let power = l2k_power_exact(f, k)?;
    let value = power
        .to_f64()
        .filter(|v| v.is_finite())
        .ok_or(Error::Overflow("L_2k power exceeds the f64 range"))?;
    Ok(value.powf(1.0 / (2 * k) as f64))
}

/// Golay's merit factor `||f||_2^4 / (||f||_4^4 - ||f||_2^4)`.
pub fn merit_factor(f: &CirclePoly) -> Result<f64> {
    let l2sq: i128 = f.coeffs.iter().map(|&a| (a * a) as i128).sum();
    let l4 = autocorrelation(f).l4_power();
    let denom = l4 - l2sq * l2sq;
    if denom == 0 {
        return Err(Error::DivisionByZero("||f||_4^4 equals ||f||_2^4"));
    }
    Ok((l2sq * l2sq) as f64 / denom as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_theory::{gauss_unit, primes_in_range};

    fn p(n: u64) -> OddPrime {
        OddPrime::new(n).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn turyn_examples() {
        let f = build_turyn(&TurynSpec::new(p(5), 0)).unwrap();
        assert_eq!(f.coeffs(), &[0, 1, -1, -1, 1]);
        let f = build_turyn(&TurynSpec::new(p(5), 1)).unwrap();
        assert_eq!(f.coeffs(), &[1, -1, -1, 1, 0]);
        assert_eq!(f.trimmed_degree(), Some(3));
        assert_eq!(f.degree(), 4);
        for q in primes_in_range(3, 101) {
            for t in 0..q.get() as i64 {
                let spec = TurynSpec::new(q, t);
                let f = build_turyn(&spec).unwrap();
                assert_eq!(f.value_at_one(), 0);
                let zeros: Vec<usize> = (0..f.len()).filter(|&j| f.coeffs()[j] == 0).collect();
                assert_eq!(zeros, vec![spec.zero_exponent()]);
            }
        }
        assert!(build_turyn(&TurynSpec::generalized(p(5), 0, 3)).is_err());
    }

    #[test]
    fn shift_is_reduced() {
        assert_eq!(TurynSpec::new(p(7), 9).t, 2);
        assert_eq!(TurynSpec::new(p(7), -1).t, 6);
        assert_eq!(TurynSpec::new(p(7), 7).t, 0);
        assert_eq!(TurynSpec::quarter(p(1999)).t, 500);
        assert_eq!(TurynSpec::quarter(p(13)).t, 3);
        assert_eq!(TurynSpec::quarter(p(11)).t, 3);
    }

    #[test]
    fn companion_examples() {
        let spec = TurynSpec::new(p(5), 1);
        let plus = build_companion(&spec, Sign::Plus).unwrap();
        assert_eq!(plus.coeffs(), &[1, -1, -1, 1, 1]);
        let minus = build_companion(&spec, Sign::Minus).unwrap();
        assert!(minus.is_littlewood());
        let f = build_turyn(&spec).unwrap();
        let diff: Vec<i64> = plus
            .coeffs()
            .iter()
            .zip(f.coeffs())
            .map(|(a, b)| a - b)
            .collect();
        assert_eq!(diff.iter().filter(|&&d| d != 0).count(), 1);
        assert_eq!(diff.iter().map(|d| d.abs()).sum::<i64>(), 1);
        assert!((l2_norm(&plus) - 5f64.sqrt()).abs() < 1e-15);
        // t = p: the Fekete zero at the constant term
        let fek = build_companion(&TurynSpec::new(p(5), 5), Sign::Plus).unwrap();
        assert_eq!(fek.coeffs(), &[1, 1, -1, -1, 1]);
    }

    #[test]
    fn generalized_examples() {
        let f = build_generalized(&TurynSpec::generalized(p(5), 0, 2)).unwrap();
        assert_eq!(f.coeffs(), &[0, 1, -1]);
        let f = build_generalized(&TurynSpec::generalized(p(5), 0, 5)).unwrap();
        assert_eq!(f.coeffs(), &[0, 1, -1, -1, 1, 0]);
        for t in 0..11 {
            let g = build_generalized(&TurynSpec::generalized(p(11), t, 10)).unwrap();
            assert_eq!(g, build_turyn(&TurynSpec::new(p(11), t)).unwrap());
        }
    }

    #[test]
    fn evaluate_examples() {
        let f = CirclePoly::new(vec![1, 1]);
        assert!(evaluate(&f, 0.5).norm() < 1e-15);
        let f5 = build_turyn(&TurynSpec::new(p(5), 0)).unwrap();
        assert!(evaluate(&f5, 0.0).norm() < 1e-15);
        let f7 = build_turyn(&TurynSpec::new(p(7), 0)).unwrap();
        assert!((evaluate(&f7, 1.0 / 7.0).norm() - 7f64.sqrt()).abs() < 1e-14);
        assert_eq!(evaluate(&CirclePoly::zero(), 0.3), Complex64::zero());
    }

    #[test]
    fn evaluate_matches_direct_sum() {
        let f = build_turyn(&TurynSpec::new(p(499), 123)).unwrap();
        for &u in &[0.0, 0.1234, 0.5, 0.77777, 0.999] {
            let direct: Complex64 = f
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, &a)| a as f64 * unit_point(k as f64 * u))
                .sum();
            assert!(close(evaluate(&f, u), direct, 1e-11));
        }
    }

    #[test]
    fn roots_grid_examples() {
        let v = evaluate_at_roots(&CirclePoly::new(vec![0, 1]), 4).unwrap();
        let expect = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ];
        for (a, b) in v.iter().zip(expect) {
            assert!((a - b).norm() < 1e-15);
        }
        let ones = evaluate_at_roots(&CirclePoly::new(vec![1]), 7).unwrap();
        assert!(ones
            .iter()
            .all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        let f = build_turyn(&TurynSpec::fekete(p(11))).unwrap();
        let v = evaluate_at_roots(&f, 11).unwrap();
        for (k, z) in v.iter().enumerate().skip(1) {
            assert!(
                (z.norm() - 11f64.sqrt()).abs() < 1e-10 * 11f64.sqrt(),
                "k = {k}"
            );
        }
        assert!(evaluate_at_roots(&f, 0).is_err());
        // agreement with pointwise evaluation, including folding when n < len
        for n in [5, 11, 64] {
            let grid = evaluate_at_roots(&f, n).unwrap();
            for (k, z) in grid.iter().enumerate() {
                assert!(close(*z, evaluate(&f, k as f64 / n as f64), 1e-10));
            }
        }
    }

    #[test]
    fn gauss_identities() {
        for q in primes_in_range(3, 199) {
            let a = gauss_unit(q).to_complex();
            let sp = q.as_f64().sqrt();
            let zeta = |e: f64| unit_point(e / q.as_f64());
            for t in [0, 1, q.as_i64() / 3, q.as_i64() - 1] {
                let f = build_turyn(&TurynSpec::new(q, t)).unwrap();
                let at_zeta = evaluate(&f, 1.0 / q.as_f64());
                assert!(close(at_zeta, a * zeta(-(t as f64)) * sp, 1e-11));
                for k in 0..q.as_i64() {
                    let lhs = evaluate(&f, k as f64 / q.as_f64());
                    let leg = legendre_symbol(k, q) as f64;
                    let rhs = leg * zeta(-(((k - 1) * t) as f64)) * at_zeta;
                    assert!((lhs - rhs).norm() < 1e-10 * sp);
                }
            }
        }
    }

    #[test]
    fn norms_examples() {
        assert_eq!(l2_norm(&CirclePoly::zero()), 0.0);
        let lw = CirclePoly::new(vec![1, -1, 1, 1, -1, -1, 1]);
        assert!((l2_norm(&lw) - 7f64.sqrt()).abs() < 1e-15);
        let f = build_turyn(&TurynSpec::new(p(101), 25)).unwrap();
        assert!((l2_norm(&f) - 10.0).abs() < 1e-14);
    }

    #[test]
    fn autocorrelation_examples() {
        assert_eq!(autocorrelation(&CirclePoly::new(vec![1, 1])).0, vec![2, 1]);
        assert_eq!(
            autocorrelation(&CirclePoly::new(vec![1, 1, -1])).0,
            vec![3, 0, -1]
        );
        let f = build_turyn(&TurynSpec::new(p(53), 13)).unwrap();
        let c = autocorrelation(&f);
        assert_eq!(c.0[0], 52);
        assert!(c.0.iter().all(|x| x.abs() <= c.0[0]));
    }

    #[test]
    fn l2k_examples() {
        let f = CirclePoly::new(vec![1, 1]);
        assert_eq!(l2k_power_exact(&f, 2).unwrap(), BigInt::from(6));
        assert!((l2k_norm_exact(&f, 2).unwrap() - 6f64.powf(0.25)).abs() < 1e-15);
        assert!((merit_factor(&f).unwrap() - 2.0).abs() < 1e-15);
        assert!(l2k_power_exact(&f, 0).is_err());
        for t in [0, 7, 20] {
            let g = build_turyn(&TurynSpec::new(p(97), t)).unwrap();
            let exact = l2k_power_exact(&g, 2).unwrap();
            assert_eq!(exact, BigInt::from(autocorrelation(&g).l4_power()));
        }
        // (1 + x)^k has sum of squared coefficients C(2k, k)
        assert_eq!(l2k_power_exact(&f, 5).unwrap(), BigInt::from(252));
    }

    #[test]
    fn l2k_promotes_to_big_integers() {
        let f = CirclePoly::new(vec![1_000_000_000; 8]);
        // (sum_{j<8} 1e9 x^j)^3 has coefficients up to ~ 1e27 * 48 whose squares exceed i128
        assert!(l2k_power_i128(&f, 3).is_none());
        let exact = l2k_power_exact(&f, 3).unwrap();
        let unit = l2k_power_exact(&CirclePoly::new(vec![1; 8]), 3).unwrap();
        assert_eq!(exact, unit * BigInt::from(10).pow(54));
    }

    #[test]
    fn merit_factor_degenerate() {
        assert!(matches!(
            merit_factor(&CirclePoly::new(vec![1])),
            Err(Error::DivisionByZero(_))
        ));
    }

    #[test]
    fn csv_round_trip() {
        let f = build_turyn(&TurynSpec::new(p(13), 4)).unwrap();
        assert_eq!(CirclePoly::from_csv(&f.to_csv()).unwrap(), f);
        assert!(CirclePoly::from_csv("1\nx\n").is_err());
    }
}
