//! Simultaneous polynomial root finding (Aberth-Ehrlich iteration).
//!
//! The iteration only needs Newton corrections `p(z)/p'(z)`, supplied by a
//! [`RootTarget`]. That lets structured polynomials (products of known
//! factors) be iterated without ever expanding them in the monomial basis.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A polynomial whose roots can be refined by Newton corrections.
pub trait RootTarget {
    fn degree(&self) -> usize;

    /// Returns `(p(z)/p'(z), residual)` where `residual` is the relative
    /// backward error `|p(z)| / (sum of |terms| of p at z)`.
    fn newton_step(&self, z: Complex64) -> (Complex64, f64);
}

/// Complex polynomial in the monomial basis, coefficients in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly {
    pub coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        ComplexPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        ComplexPoly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Drops exactly-zero leading coefficients.
    pub fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_else(Complex64::zero)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    pub fn mul(&self, other: &ComplexPoly) -> ComplexPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return ComplexPoly::new(Vec::new());
        }
        let mut out = vec![Complex64::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }

    pub fn add(&self, other: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ComplexPoly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or_default()
                        + other.coeffs.get(k).copied().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> ComplexPoly {
        ComplexPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Number of zero coefficients at the bottom (multiplicity of the root 0).
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

/// Horner for `p`, `p'`, and the absolute-value majorant, at `z`.
fn horner_with_derivative<'a, I>(coeffs: I, z: Complex64) -> (Complex64, Complex64, f64)
where
    I: DoubleEndedIterator<Item = &'a Complex64>,
{
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    let mut scale = 0.0;
    let az = z.norm();
    for &c in coeffs.rev() {
        dp = dp * z + p;
        p = p * z + c;
        scale = scale * az + c.norm();
    }
    (p, dp, scale)
}

impl RootTarget for ComplexPoly {
    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn newton_step(&self, z: Complex64) -> (Complex64, f64) {
        let n = self.degree();
        if z.norm() <= 1.0 {
            let (p, dp, scale) = horner_with_derivative(self.coeffs.iter(), z);
            (p / dp, p.norm() / scale.max(f64::MIN_POSITIVE))
        } else {
            // p(z) = z^n q(1/z) with q the reversed polynomial
            let w = z.inv();
            let (q, dq, scale) = horner_with_derivative(self.coeffs.iter().rev(), w);
            let ratio = z / (n as f64 - w * dq / q);
            (ratio, q.norm() / scale.max(f64::MIN_POSITIVE))
        }
    }
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(k, log|a_k|)`, one circle per hull edge.
pub fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let logs: Vec<f64> = coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                f64::NEG_INFINITY
            } else {
                c.norm().ln()
            }
        })
        .collect();
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..=n {
        if logs[k] == f64::NEG_INFINITY {
            continue;
        }
        while hull.len() >= 2 {
            let (i, j) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (j - i) as f64 * (logs[k] - logs[i]) - (k - i) as f64 * (logs[j] - logs[i]);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut guesses = Vec::with_capacity(n);
    // roots at the origin are handled by callers; start them near zero anyway
    for _ in 0..hull.first().copied().unwrap_or(0) {
        guesses.push(Complex64::new(1e-3, 1e-3));
    }
    const OFFSET: f64 = 0.4;
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let m = j - i;
        let r = ((logs[i] - logs[j]) / m as f64).exp();
        for k in 0..m {
            let theta = std::f64::consts::TAU * (k as f64 + OFFSET) / m as f64
                + std::f64::consts::TAU * guesses.len() as f64 / n as f64;
            guesses.push(Complex64::from_polar(r, theta));
        }
    }
    guesses
}

/// Tuning for [`aberth`].
#[derive(Debug, Clone, Copy)]
pub struct AberthOptions {
    pub max_iter: usize,
    /// Required relative backward error for certification.
    pub certify_tol: f64,
}

impl Default for AberthOptions {
    fn default() -> Self {
        AberthOptions {
            max_iter: 800,
            certify_tol: 1e-12,
        }
    }
}

/// Aberth-Ehrlich iteration from `start`, followed by a Newton polish and a
/// residual certification of every root.
pub fn aberth<T: RootTarget>(
    target: &T,
    start: Vec<Complex64>,
    opts: &AberthOptions,
) -> Result<Vec<Complex64>> {
    let n = target.degree();
    if start.len() != n {
        return Err(Error::RootFinding(format!(
            "expected {n} starting points, got {}",
            start.len()
        )));
    }
    let mut z = start;
    if n == 0 {
        return Ok(z);
    }
    let floor = 8.0 * n as f64 * f64::EPSILON;
    let mut done = vec![false; n];
    let mut remaining = n;
    for iter in 0..opts.max_iter {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (ratio, resid) = target.newton_step(z[i]);
            if resid <= floor * 0.125 {
                done[i] = true;
                remaining -= 1;
                continue;
            }
            let mut s = Complex64::zero();
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    s += (z[i] - zj).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                // coincident iterates or a vanishing derivative: nudge and retry
                let bump = 1e-7 * (1.0 + z[i].norm());
                z[i] += Complex64::from_polar(bump, 1.0 + (i + iter) as f64);
                continue;
            }
            z[i] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * z[i].norm() || resid <= floor {
                done[i] = true;
                remaining -= 1;
            }
        }
        if remaining == 0 {
            break;
        }
    }
    // Newton polish, kept only where it lowers the residual
    for zi in z.iter_mut() {
        let (ratio, resid) = target.newton_step(*zi);
        if ratio.is_finite() {
            let cand = *zi - ratio;
            let (_, resid2) = target.newton_step(cand);
            if resid2 < resid {
                *zi = cand;
            }
        }
    }
    let tol = opts.certify_tol.max(4.0 * floor);
    let worst = z
        .iter()
        .map(|&zi| target.newton_step(zi).1)
        .fold(0.0, f64::max);
    if !(worst <= tol) || z.iter().any(|zi| !zi.is_finite()) {
        return Err(Error::RootFinding(format!(
            "max relative residual {worst:e} exceeds {tol:e}"
        )));
    }
    Ok(z)
}

/// All roots of a monomial-basis polynomial (zero leading coefficients are
/// trimmed first). Exact zero roots are returned as `0`.
pub fn polynomial_roots(poly: &ComplexPoly, opts: &AberthOptions) -> Result<Vec<Complex64>> {
    let poly = poly.clone().trimmed();
    if poly.coeffs.is_empty() {
        return Err(Error::RootFinding(
            "zero polynomial has no finite root set".into(),
        ));
    }
    let m = poly.zero_root_multiplicity();
    let reduced = ComplexPoly::new(poly.coeffs[m..].to_vec());
    let mut roots = vec![Complex64::zero(); m];
    if reduced.degree() > 0 {
        let start = initial_guesses(&reduced.coeffs);
        match aberth(&reduced, start, opts) {
            Ok(r) => roots.extend(r),
            Err(_) => {
                // retry from a uniform circle
                let n = reduced.degree();
                let r0 = (reduced.coeffs[0].norm() / reduced.leading().norm()).powf(1.0 / n as f64);
                let start = (0..n)
                    .map(|k| {
                        Complex64::from_polar(
                            r0,
                            std::f64::consts::TAU * (k as f64 + 0.25) / n as f64,
                        )
                    })
                    .collect();
                roots.extend(aberth(&reduced, start, opts)?);
            }
        }
    }
    Ok(roots)
}
