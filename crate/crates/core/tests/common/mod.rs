use std::f64::consts::TAU;

use num_complex::Complex64;
use turyn_core::quadrature::{integrate, QuadratureConfig};

/// Mean over all `2^{2J+1}` sign vectors of
/// `int_0^1 log|sum_{|j|<=J} d_j e(alpha j) / (j + x)| dx`, by adaptive quadrature.
pub fn brute_force_lambda(j: usize, alpha: f64) -> f64 {
    let ji = j as i64;
    let phases: Vec<Complex64> = (-ji..=ji)
        .map(|k| Complex64::from_polar(1.0, TAU * alpha * k as f64))
        .collect();
    let n = 2 * j + 1;
    let cfg = QuadratureConfig {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_depth: 60,
        ..Default::default()
    };
    let mut total = 0.0;
    for mask in 0u32..1 << n {
        // x(x-1) times the sum is smooth at both ends; int_0^1 log(x(1-x)) = -2
        let f = |x: f64| {
            let mut s = Complex64::new(0.0, 0.0);
            for (i, ph) in phases.iter().enumerate() {
                let k = i as i64 - ji;
                let d = if mask >> i & 1 == 1 { -1.0 } else { 1.0 };
                let w = match k {
                    0 => 1.0 - x,
                    -1 => -x,
                    _ => x * (1.0 - x) / (k as f64 + x),
                };
                s += ph * d * w;
            }
            s.norm().max(1e-300).ln()
        };
        total += integrate(f, &[0.0, 0.5, 1.0], &cfg).unwrap().value + 2.0;
    }
    total / (1u64 << n) as f64
}
