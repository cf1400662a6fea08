//! The random Rademacher series `G_{X,alpha}` and its limit constants
//! `kappa_q(alpha)`: exact enumeration of the `4^J` sign-pattern integrals
//! and seeded Monte-Carlo estimates.

mod enumeration;
mod monte_carlo;

pub use enumeration::{
    kappa0_exact, kappa0_exact_with_cap, lambda0_exact, lambda0_exact_with_cap, tuple_log_integral,
    DEFAULT_ENUMERATION_CAP,
};
pub use monte_carlo::{kappa0_mc, kappaq_mc, pointwise_moment_mc, sample_signs, sample_tuple};

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::pairwise_sum;
use crate::roots::{polynomial_roots, AberthOptions, ComplexPoly};

/// `(cos 2 pi u, sin 2 pi u)`, exact at multiples of 1/4.
pub(crate) fn cos_sin_turn(u: f64) -> (f64, f64) {
    let r = u.rem_euclid(1.0);
    let q = 4.0 * r;
    if q == q.round() {
        return match q as i64 {
            0 | 4 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
    }
    let (s, c) = (2.0 * PI * r).sin_cos();
    (c, s)
}

/// A linear form `a + b x` with complex coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearForm {
    pub a: Complex64,
    pub b: Complex64,
}

impl LinearForm {
    #[inline]
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.a + self.b * x
    }

    fn neg(self) -> Self {
        LinearForm {
            a: -self.a,
            b: -self.b,
        }
    }
}

/// The four admissible forms for index `j` and shift `alpha`:
/// `+-(x cos(2 pi alpha j) - i j sin(2 pi alpha j))` and
/// `+-(i x sin(2 pi alpha j) - j cos(2 pi alpha j))`.
///
/// Form `k` has sign bit `k & 1` (set means negated) and type bit `k >> 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaSet {
    pub j: usize,
    pub alpha: f64,
    pub forms: [LinearForm; 4],
}

pub fn beta_set(j: usize, alpha: f64) -> BetaSet {
    let (c, s) = cos_sin_turn(alpha * j as f64);
    let jf = j as f64;
    let type0 = LinearForm {
        a: Complex64::new(0.0, -jf * s),
        b: Complex64::new(c, 0.0),
    };
    let type1 = LinearForm {
        a: Complex64::new(-jf * c, 0.0),
        b: Complex64::new(0.0, s),
    };
    BetaSet {
        j,
        alpha,
        forms: [type0, type0.neg(), type1, type1.neg()],
    }
}

/// Largest truncation a [`BetaTuple`] can encode.
pub const MAX_TUPLE_J: usize = 64;

/// One form per index `j = 1..=J`, two bits per index; bits `2(j-1)` and
/// `2(j-1)+1` select the form of index `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BetaTuple {
    j: usize,
    code: u128,
}

impl BetaTuple {
    pub fn new(j: usize, code: u128) -> Result<Self> {
        if j == 0 || j > MAX_TUPLE_J {
            return Err(Error::InvalidParameter(format!(
                "J must be in 1..={MAX_TUPLE_J}, got {j}"
            )));
        }
        if j < MAX_TUPLE_J && code >> (2 * j) != 0 {
            return Err(Error::InvalidParameter(format!(
                "code {code} exceeds 4^{j}"
            )));
        }
        Ok(BetaTuple { j, code })
    }

    pub fn from_choices(choices: &[u8]) -> Result<Self> {
        if choices.iter().any(|&c| c > 3) {
            return Err(Error::InvalidParameter(
                "each choice must be in 0..4".into(),
            ));
        }
        let code = choices
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &c)| acc | (c as u128) << (2 * i));
        BetaTuple::new(choices.len(), code)
    }

    pub fn truncation(&self) -> usize {
        self.j
    }

    pub fn code(&self) -> u128 {
        self.code
    }

    /// Form index (0..4) chosen for `j` in `1..=J`.
    pub fn choice(&self, j: usize) -> u8 {
        debug_assert!(j >= 1 && j <= self.j);
        ((self.code >> (2 * (j - 1))) & 3) as u8
    }

    pub fn choices(&self) -> Vec<u8> {
        (1..=self.j).map(|j| self.choice(j)).collect()
    }
}

/// `P(x) = W(x) + 2x sum_j beta_j(x) W(x)/(x^2 - j^2)` with
/// `W(x) = prod_{l<=J} (x^2 - l^2)`, kept in product form.
///
/// Each factor is scaled to `(x^2 - l^2)/l^2`, so the scaled polynomial is
/// `P / prod l^2`; the roots are unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct TuplePoly {
    forms: Vec<LinearForm>,
    sets: Vec<BetaSet>,
}

/// Dual number `(value, derivative)`.
#[derive(Clone, Copy)]
struct Dual(Complex64, Complex64);

impl Dual {
    #[inline]
    fn mul(self, o: Dual) -> Dual {
        Dual(self.0 * o.0, self.1 * o.0 + self.0 * o.1)
    }
}

impl TuplePoly {
    pub fn new(alpha: f64, tuple: &BetaTuple) -> Self {
        let sets: Vec<BetaSet> = (1..=tuple.truncation())
            .map(|j| beta_set(j, alpha))
            .collect();
        let forms = sets
            .iter()
            .map(|s| s.forms[tuple.choice(s.j) as usize])
            .collect();
        TuplePoly { forms, sets }
    }

    pub fn truncation(&self) -> usize {
        self.forms.len()
    }

    /// Switches the form of index `j` to `choice`.
    pub fn set_choice(&mut self, j: usize, choice: u8) {
        self.forms[j - 1] = self.sets[j - 1].forms[choice as usize];
    }

    /// Leading coefficient `1 + 2 sum_j b_j` of the unscaled polynomial.
    pub fn leading(&self) -> Complex64 {
        self.forms
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, f| acc + 2.0 * f.b)
    }

    /// `log prod l^2`, the scale removed by the product form.
    pub fn log_scale(&self) -> f64 {
        (1..=self.forms.len()).map(|l| 2.0 * (l as f64).ln()).sum()
    }

    /// Scaled value and derivative at `z`, plus the absolute majorant.
    fn scaled_with_derivative(&self, z: Complex64) -> (Complex64, Complex64, f64) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut w = Dual(one, zero);
        let mut s = Dual(zero, zero);
        let (mut aw, mut as_) = (1.0f64, 0.0f64);
        let z2 = z * z;
        for (i, form) in self.forms.iter().enumerate() {
            let l2 = ((i + 1) * (i + 1)) as f64;
            let f = Dual((z2 - l2) / l2, 2.0 * z / l2);
            let beta = Dual(form.eval(z) / l2, form.b / l2);
            let af = f.0.norm();
            s = Dual(
                s.0 * f.0 + beta.0 * w.0,
                s.1 * f.0 + s.0 * f.1 + beta.1 * w.0 + beta.0 * w.1,
            );
            as_ = as_ * af + beta.0.norm() * aw;
            w = w.mul(f);
            aw *= af;
        }
        let two_z = Dual(2.0 * z, Complex64::new(2.0, 0.0));
        let zs = two_z.mul(s);
        let p = w.0 + zs.0;
        let dp = w.1 + zs.1;
        (p, dp, aw + 2.0 * z.norm() * as_)
    }

    /// `P(z)` of the unscaled polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (p, _, _) = self.scaled_with_derivative(z);
        p * self.log_scale().exp()
    }

    /// `log|P(x)|` for real `x`, without forming the unscaled value.
    pub fn log_abs(&self, x: f64) -> f64 {
        let (p, _, _) = self.scaled_with_derivative(Complex64::new(x, 0.0));
        p.norm().max(1e-300).ln() + self.log_scale()
    }

    /// Monomial coefficients of the unscaled polynomial (ascending).
    pub fn to_monomial(&self) -> ComplexPoly {
        let j = self.forms.len();
        let factor = |l: usize| ComplexPoly::from_real(&[-((l * l) as f64), 0.0, 1.0]);
        let mut w = ComplexPoly::from_real(&[1.0]);
        for l in 1..=j {
            w = w.mul(&factor(l));
        }
        let mut sum = ComplexPoly::new(vec![Complex64::new(0.0, 0.0)]);
        for (i, form) in self.forms.iter().enumerate() {
            let mut wj = ComplexPoly::from_real(&[1.0]);
            for l in (1..=j).filter(|&l| l != i + 1) {
                wj = wj.mul(&factor(l));
            }
            // 2 x (a + b x) = 2a x + 2b x^2
            let lin = ComplexPoly::new(vec![Complex64::new(0.0, 0.0), 2.0 * form.a, 2.0 * form.b]);
            sum = sum.add(&lin.mul(&wj));
        }
        w.add(&sum)
    }

    fn far_step(&self, z: Complex64) -> (Complex64, f64) {
        // P = W T with T = 1 + 2z sum beta_j/(z^2 - j^2)
        let z2 = z * z;
        let mut t = Complex64::new(1.0, 0.0);
        let mut dt = Complex64::new(0.0, 0.0);
        let mut dlog_w = Complex64::new(0.0, 0.0);
        let mut scale = 1.0;
        for (i, form) in self.forms.iter().enumerate() {
            let l2 = ((i + 1) * (i + 1)) as f64;
            let d = z2 - l2;
            let inv = d.inv();
            let beta = form.eval(z);
            t += 2.0 * z * beta * inv;
            dt += 2.0 * ((beta + z * form.b) * d - 2.0 * z2 * beta) * inv * inv;
            dlog_w += 2.0 * z * inv;
            scale += 2.0 * z.norm() * beta.norm() * inv.norm();
        }
        let dlog = dlog_w + dt / t;
        (dlog.inv(), t.norm() / scale)
    }
}

impl crate::roots::RootTarget for TuplePoly {
    fn degree(&self) -> usize {
        2 * self.forms.len()
    }

    fn newton_step(&self, z: Complex64) -> (Complex64, f64) {
        let j = self.forms.len() as f64;
        if z.norm() > 2.0 * j + 2.0 {
            self.far_step(z)
        } else {
            let (p, dp, scale) = self.scaled_with_derivative(z);
            (p / dp, p.norm() / scale.max(f64::MIN_POSITIVE))
        }
    }
}

/// Monomial coefficients of `P` for the given tuple.
pub fn assemble_poly(alpha: f64, tuple: &BetaTuple) -> ComplexPoly {
    TuplePoly::new(alpha, tuple).to_monomial()
}

/// `int_0^1 log|x - r| dx = Re[(1 - r) log(1 - r) + r log(-r)] - 1`, with the
/// terms at `r = 0, 1` taken as their limits and a cancellation-free form
/// for large `|r|`.
pub fn log_abs_linear_integral(r: Complex64) -> f64 {
    if r.norm() >= 2.0 {
        let w = (r - 1.0).inv();
        // principal log1p(w); -r and 1-r share an imaginary part, so no branch jump
        let l1p = Complex64::new(
            0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p(),
            w.im.atan2(1.0 + w.re),
        );
        return (1.0 - r).norm().ln() + (r * l1p).re - 1.0;
    }
    let one_minus = Complex64::new(1.0, 0.0) - r;
    let t1 = if one_minus.norm() == 0.0 {
        0.0
    } else {
        (one_minus * one_minus.ln()).re
    };
    let t2 = if r.norm() == 0.0 {
        0.0
    } else {
        (r * (-r).ln()).re
    };
    t1 + t2 - 1.0
}

/// `log|lead| + sum_r int_0^1 log|x - r| dx`.
pub fn log_integral_from_roots(lead: Complex64, roots: &[Complex64]) -> f64 {
    let terms: Vec<f64> = roots.iter().map(|&r| log_abs_linear_integral(r)).collect();
    lead.norm().ln() + pairwise_sum(&terms)
}

/// `int_0^1 log|P(x)| dx` from the roots of `P`.
pub fn log_integral_roots(p: &ComplexPoly) -> Result<f64> {
    let p = p.clone().trimmed();
    if p.coeffs.is_empty() {
        return Err(Error::InvalidParameter(
            "log-integral of the zero polynomial diverges".into(),
        ));
    }
    let roots = polynomial_roots(&p, &AberthOptions::default())?;
    Ok(log_integral_from_roots(p.leading(), &roots))
}

/// `J log J + (J+1) log(J+1) - 2J - 1 = int_0^1 (log x + sum_{j<=J} log(j^2 - x^2)) dx`.
pub fn normalization_constant(j: usize) -> f64 {
    let jf = j as f64;
    let a = if j == 0 { 0.0 } else { jf * jf.ln() };
    a + (jf + 1.0) * (jf + 1.0).ln() - 2.0 * jf - 1.0
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "x must lie in (0, 1), got {x}"
        )))
    }
}

/// Real weights `sin(pi x) / (pi (j + x))` for `j = -J..=J`; the coefficient
/// of `X(j)` in `G^{(J)}(x)` is `e(alpha j) e(x/2)` times this.
pub(crate) fn series_weights(j: usize, x: f64) -> Vec<f64> {
    let s = (PI * x).sin() / PI;
    (-(j as i64)..=j as i64)
        .map(|k| s / (k as f64 + x))
        .collect()
}

/// `E|G^{(J)}(x)|^2 = |e(x) - 1|^2 / (4 pi^2) sum_{|j|<=J} (j + x)^{-2}`,
/// which does not depend on `alpha`.
pub fn second_moment_exact(j: usize, _alpha: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let terms: Vec<f64> = series_weights(j, x).iter().map(|c| c * c).collect();
    Ok(pairwise_sum(&terms))
}

/// `E|G^{(J)}(x)|^4 = 2 (sum |c|^2)^2 + |sum c^2|^2 - 2 sum |c|^4` for
/// Rademacher coefficients `c_j`.
pub fn fourth_moment_exact(j: usize, alpha: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let w = series_weights(j, x);
    let (mut s2, mut s4) = (0.0, 0.0);
    let mut sq = Complex64::new(0.0, 0.0);
    for (i, c) in w.iter().enumerate() {
        let k = i as f64 - j as f64;
        let (co, si) = cos_sin_turn(2.0 * alpha * k);
        let c2 = c * c;
        s2 += c2;
        s4 += c2 * c2;
        sq += Complex64::new(co, si) * c2;
    }
    Ok(2.0 * s2 * s2 + sq.norm_sqr() - 2.0 * s4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaMethod {
    Enumeration,
    MonteCarlo,
}

impl KappaMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            KappaMethod::Enumeration => "enumeration",
            KappaMethod::MonteCarlo => "monte_carlo",
        }
    }
}

/// An estimate of `kappa_q^J(alpha)`; `q = 0` denotes the Mahler measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaEstimate {
    pub alpha: f64,
    pub q: f64,
    #[serde(rename = "J")]
    pub j: usize,
    pub method: KappaMethod,
    pub value: f64,
    pub std_err: f64,
    pub samples: u64,
    pub seed: u64,
    /// `lambda = log(2 pi kappa)` for `q = 0`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda_std_err: Option<f64>,
}

impl KappaEstimate {
    pub const CSV_HEADER: &'static str = "alpha,q,J,method,value,std_err,samples,seed";

    pub fn csv_row(&self, precision: usize) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "{},{},{},{},{:.prec$},{:.prec$e},{},{}",
            self.alpha,
            self.q,
            self.j,
            self.method.as_str(),
            self.value,
            self.std_err,
            self.samples,
            self.seed,
            prec = precision
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadratureConfig};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn beta_set_examples() {
        let s = beta_set(1, 0.0);
        assert_eq!(
            s.forms[0],
            LinearForm {
                a: c(0.0, 0.0),
                b: c(1.0, 0.0)
            }
        );
        assert_eq!(
            s.forms[2],
            LinearForm {
                a: c(-1.0, 0.0),
                b: c(0.0, 0.0)
            }
        );
        let s = beta_set(1, 0.25);
        assert_eq!(
            s.forms[0],
            LinearForm {
                a: c(0.0, -1.0),
                b: c(0.0, 0.0)
            }
        );
        assert_eq!(
            s.forms[2],
            LinearForm {
                a: c(0.0, 0.0),
                b: c(0.0, 1.0)
            }
        );
        let s = beta_set(2, 0.25);
        assert_eq!(
            s.forms[0],
            LinearForm {
                a: c(0.0, 0.0),
                b: c(-1.0, 0.0)
            }
        );
        assert_eq!(
            s.forms[2],
            LinearForm {
                a: c(2.0, 0.0),
                b: c(0.0, 0.0)
            }
        );
        for k in 0..4 {
            assert_eq!(s.forms[k ^ 1], s.forms[k].neg());
        }
    }

    #[test]
    fn tuple_round_trip() {
        let t = BetaTuple::from_choices(&[3, 0, 2, 1]).unwrap();
        assert_eq!(t.choices(), vec![3, 0, 2, 1]);
        assert_eq!(BetaTuple::new(4, t.code()).unwrap(), t);
        assert!(BetaTuple::new(2, 16).is_err());
        assert!(BetaTuple::new(0, 0).is_err());
        assert!(BetaTuple::from_choices(&[4]).is_err());
        assert!(BetaTuple::new(64, u128::MAX).is_ok());
    }

    #[test]
    fn assemble_example() {
        // beta_1 = -1 at alpha = 0 is form 2: constant -1
        let t = BetaTuple::from_choices(&[2]).unwrap();
        let p = assemble_poly(0.0, &t);
        let expect = [c(-1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)];
        assert_eq!(p.coeffs.len(), 3);
        for (a, b) in p.coeffs.iter().zip(expect) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn product_form_matches_monomial() {
        for code in [0u128, 5, 77, 200, 4095] {
            let t = BetaTuple::new(6, code).unwrap();
            let tp = TuplePoly::new(0.13, &t);
            let m = tp.to_monomial();
            assert!((m.leading() - tp.leading()).norm() < 1e-12);
            for z in [c(0.3, 0.1), c(2.5, -1.0), c(-7.0, 0.4)] {
                let a = tp.eval(z);
                let b = m.eval(z);
                assert!((a - b).norm() <= 1e-10 * b.norm().max(1.0));
            }
        }
    }

    #[test]
    fn linear_integral_examples() {
        assert!((log_abs_linear_integral(c(0.0, 0.0)) + 1.0).abs() < 1e-15);
        assert!((log_abs_linear_integral(c(1.0, 0.0)) + 1.0).abs() < 1e-15);
        assert!((log_abs_linear_integral(c(2.0, 0.0)) - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-15);
        let p = ComplexPoly::from_real(&[0.0, 1.0]);
        assert!((log_integral_roots(&p).unwrap() + 1.0).abs() < 1e-14);
        let p = ComplexPoly::from_real(&[-2.0, 1.0]);
        assert!((log_integral_roots(&p).unwrap() - 0.386294361119891).abs() < 1e-12);
        assert!(log_integral_roots(&ComplexPoly::from_real(&[0.0])).is_err());
    }

    #[test]
    fn linear_integral_branches_agree() {
        for r in [c(1.99, 0.5), c(-1.5, -1.3), c(0.5, 1.9), c(-1.99, 0.0)] {
            let direct = {
                let one_minus = c(1.0, 0.0) - r;
                (one_minus * one_minus.ln()).re + (r * (-r).ln()).re - 1.0
            };
            let cfg = QuadratureConfig::with_tolerances(1e-13, 1e-13);
            let q = integrate(|x| (c(x, 0.0) - r).norm().ln(), &[0.0, 0.5, 1.0], &cfg).unwrap();
            assert!((direct - q.value).abs() < 1e-11, "{r}");
        }
        for r in [c(2.0, 0.0), c(-3.0, 1e-9), c(1e6, -2e5), c(0.1, 2.5)] {
            let cfg = QuadratureConfig::with_tolerances(1e-13, 1e-13);
            let q = integrate(|x| (c(x, 0.0) - r).norm().ln(), &[0.0, 1.0], &cfg).unwrap();
            assert!((log_abs_linear_integral(r) - q.value).abs() < 1e-11, "{r}");
        }
    }

    #[test]
    fn normalization_examples() {
        assert!((normalization_constant(1) - (2.0 * 2f64.ln() - 3.0)).abs() < 1e-15);
        assert!(
            (normalization_constant(2) - (2.0 * 2f64.ln() + 3.0 * 3f64.ln() - 5.0)).abs() < 1e-14
        );
        let cfg = QuadratureConfig::with_tolerances(1e-13, 1e-12);
        for j in 1..=10usize {
            let f = |x: f64| {
                let x = x.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0);
                x.ln()
                    + (1..=j)
                        .map(|l| ((l as f64 - x) * (l as f64 + x)).ln())
                        .sum::<f64>()
            };
            let pts = crate::quadrature::graded_breakpoints(0.0, 1.0, true, true, 30);
            let q = integrate(f, &pts, &cfg).unwrap();
            assert!(
                (q.value - normalization_constant(j)).abs() < 1e-10,
                "J = {j}: {} {}",
                q.value,
                normalization_constant(j)
            );
        }
    }

    #[test]
    fn second_moment_limit_and_alpha_invariance() {
        let v = second_moment_exact(100_000, 0.0, 0.5).unwrap();
        assert!((v - 1.0).abs() < 1e-4);
        let a = second_moment_exact(10, 0.0, 0.3).unwrap();
        let b = second_moment_exact(10, 0.17, 0.3).unwrap();
        assert_eq!(a, b);
        assert!(second_moment_exact(10, 0.0, 0.0).is_err());
    }

    #[test]
    fn fourth_moment_brute_force() {
        // exhaustive over all sign vectors for J = 3
        let (j, alpha, x) = (3usize, 0.21, 0.37);
        let w = series_weights(j, x);
        let n = 2 * j + 1;
        let mut acc = 0.0;
        for mask in 0..(1u32 << n) {
            let mut g = c(0.0, 0.0);
            for (i, wi) in w.iter().enumerate() {
                let sign = if mask >> i & 1 == 1 { -1.0 } else { 1.0 };
                let (co, si) = cos_sin_turn(alpha * (i as f64 - j as f64));
                g += c(co, si) * wi * sign;
            }
            acc += g.norm_sqr().powi(2);
        }
        acc /= (1u32 << n) as f64;
        assert!((acc - fourth_moment_exact(j, alpha, x).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn csv_row_format() {
        let k = KappaEstimate {
            alpha: 0.25,
            q: 0.0,
            j: 1,
            method: KappaMethod::Enumeration,
            value: 0.950735461,
            std_err: 0.0,
            samples: 4,
            seed: 0,
            lambda: None,
            lambda_std_err: None,
        };
        assert_eq!(
            k.csv_row(8),
            "0.25,0,1,enumeration,0.95073546,0.00000000e0,4,0"
        );
    }
}
