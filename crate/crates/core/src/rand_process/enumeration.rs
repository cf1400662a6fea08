//! Exact `lambda_0^J(alpha)` by summing all `4^J` tuple integrals.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{
    log_integral_from_roots, normalization_constant, BetaTuple, KappaEstimate, KappaMethod,
    TuplePoly,
};
use crate::error::{Error, Result};
use crate::parallel::{map_blocks, pairwise_sum};
use crate::quadrature::{graded_breakpoints, integrate, QuadratureConfig};
use crate::roots::{aberth, initial_guesses, AberthOptions};

pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Below this leading-coefficient magnitude one root runs off toward
/// infinity and the integral is taken by quadrature instead.
const LEAD_FLOOR: f64 = 1e-9;

const BLOCK: u64 = 4096;

fn quadrature_log_integral(tp: &TuplePoly) -> Result<f64> {
    let cfg = QuadratureConfig {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_depth: 60,
        ..Default::default()
    };
    let pts = graded_breakpoints(0.0, 1.0, true, true, 8);
    Ok(integrate(|x| tp.log_abs(x), &pts, &cfg)?.value)
}

/// `int_0^1 log|P(x)| dx` for the tuple polynomial `tp`. `warm` carries
/// roots between calls: it seeds the iteration when present and receives
/// the new roots.
pub fn tuple_log_integral(tp: &TuplePoly, warm: &mut Option<Vec<Complex64>>) -> Result<f64> {
    let lead = tp.leading();
    if lead.norm() < LEAD_FLOOR {
        *warm = None;
        return quadrature_log_integral(tp);
    }
    let opts = AberthOptions::default();
    let cold = || initial_guesses(&tp.to_monomial().coeffs);
    let mut result = match warm.take() {
        Some(start) if start.len() == 2 * tp.truncation() => aberth(tp, start, &opts),
        _ => aberth(tp, cold(), &opts),
    };
    if result.is_err() {
        result = aberth(tp, cold(), &opts);
    }
    match result {
        Ok(roots) => {
            let v = log_integral_from_roots(lead, &roots);
            *warm = Some(roots);
            Ok(v)
        }
        Err(_) => quadrature_log_integral(tp),
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )))
    }
}

#[inline]
fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// `lambda_0^J(alpha)` with the default enumeration cap.
pub fn lambda0_exact(j: usize, alpha: f64) -> Result<f64> {
    lambda0_exact_with_cap(j, alpha, DEFAULT_ENUMERATION_CAP)
}

/// `4^{-J} sum_tuples int_0^1 log|P| dx - N(J)`. Tuples are visited in
/// Gray-code order inside fixed blocks so each step changes one form and
/// the previous roots are a close starting point.
pub fn lambda0_exact_with_cap(j: usize, alpha: f64, cap: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if j == 0 {
        return Err(Error::InvalidParameter("J must be at least 1".into()));
    }
    if j > cap || j > 31 {
        return Err(Error::EnumerationCapExceeded { j, cap });
    }
    let n = 1u64 << (2 * j);
    let sums = map_blocks(n, BLOCK, |start, end| -> Result<f64> {
        let mut tp = TuplePoly::new(alpha, &BetaTuple::new(j, gray(start) as u128)?);
        let mut warm = None;
        let mut vals = Vec::with_capacity((end - start) as usize);
        for i in start..end {
            if i > start {
                let bit = i.trailing_zeros() as usize;
                let idx = bit / 2 + 1;
                let choice = ((gray(i) >> (2 * (idx - 1))) & 3) as u8;
                tp.set_choice(idx, choice);
            }
            vals.push(tuple_log_integral(&tp, &mut warm)?);
        }
        Ok(pairwise_sum(&vals))
    });
    let sums: Vec<f64> = sums.into_iter().collect::<Result<_>>()?;
    Ok(pairwise_sum(&sums) / n as f64 - normalization_constant(j))
}

/// `kappa_0^J(alpha) = exp(lambda_0^J(alpha)) / (2 pi)` by enumeration.
pub fn kappa0_exact(j: usize, alpha: f64) -> Result<KappaEstimate> {
    kappa0_exact_with_cap(j, alpha, DEFAULT_ENUMERATION_CAP)
}

pub fn kappa0_exact_with_cap(j: usize, alpha: f64, cap: usize) -> Result<KappaEstimate> {
    let lambda = lambda0_exact_with_cap(j, alpha, cap)?;
    Ok(KappaEstimate {
        alpha,
        q: 0.0,
        j,
        method: KappaMethod::Enumeration,
        value: lambda.exp() / TAU,
        std_err: 0.0,
        samples: 1u64 << (2 * j),
        seed: 0,
        lambda: Some(lambda),
        lambda_std_err: Some(0.0),
    })
}
