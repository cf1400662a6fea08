//! Gauss-Kronrod adaptive quadrature and fixed Gauss-Legendre rules.
//!
//! The adaptive driver keeps every interval in a max-heap keyed by its error
//! estimate and bisects the worst one until the summed estimate meets the
//! tolerance. Integrable logarithmic endpoint singularities are handled by
//! seeding the interval list with a geometrically graded mesh, see
//! [`graded_breakpoints`].

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::pairwise_sum;

/// Tolerances and rule selection for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum bisection depth of any interval below its seed interval.
    pub max_depth: u32,
    /// Kronrod points per interval: 15 or 21. Also the Gauss-Legendre order
    /// used by the fixed-node random-process integrals.
    pub base_rule_order: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-9,
            rel_tol: 1e-8,
            max_depth: 50,
            base_rule_order: 21,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "tolerances must be positive".into(),
            ));
        }
        if self.max_depth < 1 {
            return Err(Error::InvalidParameter("max_depth must be >= 1".into()));
        }
        if !matches!(self.base_rule_order, 15 | 21) {
            return Err(Error::InvalidParameter(
                "base_rule_order must be 15 or 21".into(),
            ));
        }
        Ok(())
    }

    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }
}

/// An embedded Gauss/Kronrod pair on `[-1, 1]`.
struct KronrodRule {
    /// Kronrod abscissae, descending, ending with the centre 0.
    xgk: &'static [f64],
    wgk: &'static [f64],
    /// Gauss weights for the abscissae at odd positions of `xgk` (and the
    /// centre when the Gauss rule has odd order).
    wg: &'static [f64],
}

#[allow(clippy::excessive_precision)]
static GK15: KronrodRule = KronrodRule {
    xgk: &[
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ],
    wgk: &[
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ],
    wg: &[
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ],
};

#[allow(clippy::excessive_precision)]
static GK21: KronrodRule = KronrodRule {
    xgk: &[
        0.995657163025808080735527280689003,
        0.973906528517171720077964012084452,
        0.930157491355708226001207180059508,
        0.865063366688984510732096688423493,
        0.780817726586416897063717578345042,
        0.679409568299024406234327365114874,
        0.562757134668604683339000099272694,
        0.433395394129247190799265943165784,
        0.294392862701460198131126603103866,
        0.148874338981631210884826001129720,
        0.000000000000000000000000000000000,
    ],
    wgk: &[
        0.011694638867371874278064396062192,
        0.032558162307964727478818972459390,
        0.054755896574351996031381300244580,
        0.075039674810919952767043140916190,
        0.093125454583697605535065465083366,
        0.109387158802297641899210590325805,
        0.123491976262065851077958109831074,
        0.134709217311473325928054001771707,
        0.142775938577060080797094273138717,
        0.147739104901338491374841515972068,
        0.149445554002916905664936468389821,
    ],
    wg: &[
        0.066671344308688137593568809893332,
        0.149451349150580593145776339657697,
        0.219086362515982043995534934228163,
        0.269266719309996355091226921569469,
        0.295524224714752870173892994651338,
    ],
};

fn rule_for(order: usize) -> &'static KronrodRule {
    if order == 15 {
        &GK15
    } else {
        &GK21
    }
}

/// One Gauss-Kronrod application: (Kronrod estimate, error estimate).
fn apply_rule<F: Fn(f64) -> f64>(rule: &KronrodRule, f: &F, a: f64, b: f64) -> (f64, f64) {
    let n = rule.xgk.len();
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_centre = f(centre);
    let mut res_k = f_centre * rule.wgk[n - 1];
    let mut res_g = if n % 2 == 0 {
        f_centre * rule.wg[n / 2 - 1]
    } else {
        0.0
    };
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0f64; 11];
    let mut fv2 = [0.0f64; 11];
    for i in 0..n - 1 {
        let dx = half * rule.xgk[i];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[i] = f1;
        fv2[i] = f2;
        res_k += rule.wgk[i] * (f1 + f2);
        res_abs += rule.wgk[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            res_g += rule.wg[i / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = rule.wgk[n - 1] * (f_centre - mean).abs();
    for i in 0..n - 1 {
        res_asc += rule.wgk[i] * ((fv1[i] - mean).abs() + (fv2[i] - mean).abs());
    }
    let abs_half = half.abs();
    let integral = res_k * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !integral.is_finite() || !err.is_finite() {
        return (integral, f64::INFINITY);
    }
    (integral, err)
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub intervals: usize,
}

const MAX_INTERVALS: usize = 1 << 16;

/// Adaptive Gauss-Kronrod integration of `f` over the partition given by
/// `breakpoints` (strictly increasing, first and last are the limits).
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    cfg.validate()?;
    if breakpoints.len() < 2 || breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter(
            "breakpoints must be strictly increasing with at least two entries".into(),
        ));
    }
    let rule = rule_for(cfg.base_rule_order);
    let mut heap = BinaryHeap::with_capacity(breakpoints.len() * 4);
    for w in breakpoints.windows(2) {
        let (value, err) = apply_rule(rule, &f, w[0], w[1]);
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value,
            err,
            depth: 0,
        });
    }
    let mut frozen: Vec<Segment> = Vec::new();
    let mut total: f64 = heap.iter().map(|s| s.value).sum();
    let mut err: f64 = heap.iter().map(|s| s.err).sum();
    loop {
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if err <= tol {
            break;
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::QuadratureNonConvergence {
                err_estimate: err,
                tolerance: tol,
            });
        };
        if worst.depth >= cfg.max_depth || heap.len() + frozen.len() >= MAX_INTERVALS {
            frozen.push(worst);
            continue;
        }
        total -= worst.value;
        err -= worst.err;
        let mid = 0.5 * (worst.a + worst.b);
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, e) = apply_rule(rule, &f, a, b);
            total += value;
            err += e;
            heap.push(Segment {
                a,
                b,
                value,
                err: e,
                depth: worst.depth + 1,
            });
        }
        if !err.is_finite() {
            // an infinite estimate poisons the running sum; rebuild it
            err = heap.iter().chain(&frozen).map(|s| s.err).sum();
            total = heap.iter().chain(&frozen).map(|s| s.value).sum();
        }
    }
    let mut all: Vec<Segment> = heap.into_vec();
    all.extend(frozen);
    all.sort_by(|x, y| x.a.total_cmp(&y.a));
    let values: Vec<f64> = all.iter().map(|s| s.value).collect();
    let errs: Vec<f64> = all.iter().map(|s| s.err).collect();
    Ok(QuadResult {
        value: pairwise_sum(&values),
        err_estimate: pairwise_sum(&errs),
        intervals: all.len(),
    })
}

/// Breakpoints for `[a, b]` refined geometrically (ratio 1/2, `levels` cells)
/// toward the endpoints flagged singular.
pub fn graded_breakpoints(a: f64, b: f64, left: bool, right: bool, levels: u32) -> Vec<f64> {
    let len = b - a;
    let mut pts = vec![a, b];
    let half = if left && right { 0.5 } else { 1.0 };
    for m in 1..=levels {
        let h = len * half * 0.5f64.powi(m as i32);
        if left {
            pts.push(a + h);
        }
        if right {
            pts.push(b - h);
        }
    }
    if left && right {
        pts.push(a + 0.5 * len);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // three-term recurrence for P_n and its derivative
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre rule on `[0, 1]`: `panels` equal cells of order `n`.
pub fn composite_gauss_legendre(n: usize, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre_unit(n);
    let h = 1.0 / panels as f64;
    let mut nodes = Vec::with_capacity(n * panels);
    let mut weights = Vec::with_capacity(n * panels);
    for c in 0..panels {
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(h * (c as f64 + xi));
            weights.push(h * wi);
        }
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_rules_integrate_polynomials_exactly() {
        for (order, deg) in [(15usize, 22), (21, 31)] {
            let rule = rule_for(order);
            let (v, _) = apply_rule(rule, &|x: f64| x.powi(deg) + x.powi(deg - 1), 0.0, 1.0);
            let exact = 1.0 / (deg + 1) as f64 + 1.0 / deg as f64;
            assert!((v - exact).abs() < 1e-14, "order {order}");
        }
    }

    #[test]
    fn log_endpoint_singularity() {
        let cfg = QuadratureConfig::with_tolerances(1e-13, 1e-13);
        let r = integrate(|x: f64| x.ln(), &[0.0, 1.0], &cfg).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12, "{}", r.value);
        let g = graded_breakpoints(0.0, 1.0, true, false, 30);
        let r = integrate(|x: f64| x.ln(), &g, &cfg).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_interior_singularity() {
        let cfg = QuadratureConfig::with_tolerances(1e-12, 1e-12);
        let r = integrate(|x: f64| (x - 0.3).abs().ln(), &[0.0, 1.0], &cfg).unwrap();
        let exact = 0.3 * 0.3f64.ln() + 0.7 * 0.7f64.ln() - 1.0;
        assert!((r.value - exact).abs() < 1e-11);
    }

    #[test]
    fn graded_mesh_shape() {
        let g = graded_breakpoints(0.0, 1.0, true, true, 3);
        assert_eq!(
            g,
            vec![0.0, 0.0625, 0.125, 0.25, 0.5, 0.75, 0.875, 0.9375, 1.0]
        );
        let g = graded_breakpoints(2.0, 3.0, false, true, 2);
        assert_eq!(g, vec![2.0, 2.5, 2.75, 3.0]);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let cfg = QuadratureConfig {
            max_depth: 2,
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            ..Default::default()
        };
        let r = integrate(|x: f64| (x - 0.3).abs().ln(), &[0.0, 1.0], &cfg);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = QuadratureConfig {
            base_rule_order: 7,
            ..Default::default()
        };
        assert!(integrate(|x| x, &[0.0, 1.0], &cfg).is_err());
        assert!(integrate(|x| x, &[1.0, 0.0], &QuadratureConfig::default()).is_err());
    }

    #[test]
    fn gauss_legendre_exactness() {
        for n in [1usize, 2, 5, 16, 33] {
            let (x, w) = gauss_legendre_unit(n);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            let deg = 2 * n - 1;
            let v: f64 = x
                .iter()
                .zip(&w)
                .map(|(xi, wi)| wi * xi.powi(deg as i32))
                .sum();
            assert!((v - 1.0 / (deg + 1) as f64).abs() < 1e-14, "n = {n}");
        }
        let (x, w) = composite_gauss_legendre(8, 4);
        assert_eq!(x.len(), 32);
        let v: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * (3.0 * xi).exp()).sum();
        assert!((v - (3f64.exp() - 1.0) / 3.0).abs() < 1e-14);
    }
}
