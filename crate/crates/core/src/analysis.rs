//! Inverse-polynomial fits, alpha sweeps and convergence tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::rand_process::{
    kappa0_exact, kappa0_exact_with_cap, kappa0_mc, kappaq_mc, KappaEstimate,
    DEFAULT_ENUMERATION_CAP,
};

/// Least-squares coefficients of `r + s/J + t/J^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitCoefficients {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub residual_rms: f64,
    pub j_min: usize,
    pub j_max: usize,
    pub points: usize,
}

/// Solves a 3x3 system by Gaussian elimination with partial pivoting.
fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    let scale = m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &k| m[i][col].abs().total_cmp(&m[k][col].abs()))?;
        if m[piv][col].abs() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// Fits `r + s/J + t/J^2` by absolute least squares. Columns are
/// equilibrated before forming the normal equations, and the solution gets
/// two steps of iterative refinement against the original residual.
pub fn fit_inverse_quadratic(points: &[(usize, f64)]) -> Result<FitCoefficients> {
    if points.iter().any(|&(j, v)| j == 0 || !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "fit points need J >= 1 and finite values".into(),
        ));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut distinct = pts.iter().map(|p| p.0).collect::<Vec<_>>();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::RankDeficient(format!(
            "need at least 3 distinct J values, got {}",
            distinct.len()
        )));
    }
    let rows: Vec<[f64; 3]> = pts
        .iter()
        .map(|&(j, _)| {
            let inv = 1.0 / j as f64;
            [1.0, inv, inv * inv]
        })
        .collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let mut norms = [0.0f64; 3];
    for row in &rows {
        for k in 0..3 {
            norms[k] += row[k] * row[k];
        }
    }
    let norms = norms.map(f64::sqrt);
    let mut ata = [[0.0; 3]; 3];
    for row in &rows {
        for a in 0..3 {
            for b in 0..3 {
                ata[a][b] += row[a] / norms[a] * row[b] / norms[b];
            }
        }
    }
    let solve_rhs = |resid: &[f64]| -> Result<[f64; 3]> {
        let mut atb = [0.0; 3];
        for (row, r) in rows.iter().zip(resid) {
            for k in 0..3 {
                atb[k] += row[k] / norms[k] * r;
            }
        }
        solve3(ata, atb)
            .map(|z| [z[0] / norms[0], z[1] / norms[1], z[2] / norms[2]])
            .ok_or_else(|| Error::RankDeficient("normal equations are singular".into()))
    };
    let residual = |c: &[f64; 3]| -> Vec<f64> {
        rows.iter()
            .zip(&ys)
            .map(|(row, y)| y - (c[0] * row[0] + c[1] * row[1] + c[2] * row[2]))
            .collect()
    };
    let mut coef = solve_rhs(&ys)?;
    for _ in 0..2 {
        let d = solve_rhs(&residual(&coef))?;
        for k in 0..3 {
            coef[k] += d[k];
        }
    }
    let res = residual(&coef);
    let rms = (res.iter().map(|r| r * r).sum::<f64>() / res.len() as f64).sqrt();
    Ok(FitCoefficients {
        r: coef[0],
        s: coef[1],
        t: coef[2],
        residual_rms: rms,
        j_min: distinct[0],
        j_max: *distinct.last().unwrap(),
        points: pts.len(),
    })
}

/// The `J -> infinity` limit of the fitted model.
pub fn extrapolate(fit: &FitCoefficients) -> f64 {
    fit.r
}

/// Reference values of `kappa_0^J(0)` and `kappa_0^J(1/4)` for `J = 1..=18`.
pub const TABLE1_CSV: &str = include_str!("../data/table1.csv");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    #[serde(rename = "J")]
    pub j: usize,
    pub fekete: f64,
    pub quarter: f64,
}

/// Column selector for the reference table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table1Column {
    Fekete,
    Quarter,
}

impl Table1Column {
    pub fn alpha(self) -> f64 {
        match self {
            Table1Column::Fekete => 0.0,
            Table1Column::Quarter => 0.25,
        }
    }
}

pub fn table1_fixture() -> Vec<Table1Row> {
    TABLE1_CSV
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('J') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            Table1Row {
                j: f[0].trim().parse().expect("fixture J"),
                fekete: f[1].trim().parse().expect("fixture value"),
                quarter: f[2].trim().parse().expect("fixture value"),
            }
        })
        .collect()
}

/// `(J, value)` pairs of one fixture column for `j_min <= J <= j_max`.
pub fn table1_points(column: Table1Column, j_min: usize, j_max: usize) -> Vec<(usize, f64)> {
    table1_fixture()
        .into_iter()
        .filter(|r| r.j >= j_min && r.j <= j_max)
        .map(|r| {
            let v = match column {
                Table1Column::Fekete => r.fekete,
                Table1Column::Quarter => r.quarter,
            };
            (r.j, v)
        })
        .collect()
}

/// One entry of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    #[serde(rename = "J")]
    pub j: usize,
    pub q: f64,
    pub method: String,
    pub value: f64,
    pub std_err: f64,
}

impl SweepRow {
    pub fn from_estimate(k: &KappaEstimate) -> Self {
        SweepRow {
            alpha: k.alpha,
            j: k.j,
            q: k.q,
            method: k.method.as_str().to_string(),
            value: k.value,
            std_err: k.std_err,
        }
    }
}

/// Rows of `(alpha, J, value)`, sorted by `alpha` then `J`, unique per pair.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// `(alpha, J, message)` for rows whose estimator failed.
    pub failures: Vec<(f64, usize, String)>,
}

impl SweepTable {
    pub const CSV_HEADER: &'static str = "alpha,J,q,method,value,std_err";

    /// Inserts in sorted position; an existing `(alpha, J)` row is replaced.
    pub fn insert(&mut self, row: SweepRow) {
        let key = |r: &SweepRow| (r.alpha, r.j);
        match self
            .rows
            .binary_search_by(|r| key(r).0.total_cmp(&row.alpha).then(key(r).1.cmp(&row.j)))
        {
            Ok(i) => self.rows[i] = row,
            Err(i) => self.rows.insert(i, row),
        }
    }

    pub fn contains(&self, alpha: f64, j: usize) -> bool {
        self.rows.iter().any(|r| r.alpha == alpha && r.j == j)
    }

    /// Values of the rows with truncation `j`, in alpha order.
    pub fn series(&self, j: usize) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.j == j)
            .map(|r| (r.alpha, r.value))
            .collect()
    }

    pub fn value(&self, alpha: f64, j: usize) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.alpha == alpha && r.j == j)
            .map(|r| r.value)
    }

    pub fn csv_row(row: &SweepRow, precision: usize) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "{},{},{},{},{:.prec$},{:.prec$e}",
            row.alpha,
            row.j,
            row.q,
            row.method,
            row.value,
            row.std_err,
            prec = precision
        );
        s
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&Self::csv_row(r, precision));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut table = SweepTable::default();
        for (n, line) in text.lines().enumerate() {
            if n == 0 || line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            let bad = || Error::InvalidParameter(format!("malformed sweep row {}: {line}", n + 1));
            if f.len() != 6 {
                return Err(bad());
            }
            table.insert(SweepRow {
                alpha: f[0].parse().map_err(|_| bad())?,
                j: f[1].parse().map_err(|_| bad())?,
                q: f[2].parse().map_err(|_| bad())?,
                method: f[3].to_string(),
                value: f[4].parse().map_err(|_| bad())?,
                std_err: f[5].parse().map_err(|_| bad())?,
            });
        }
        Ok(table)
    }
}

/// Monte-Carlo parameters for rows beyond the enumeration cap or with `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McParams {
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub cap: usize,
    pub mc: Option<McParams>,
    pub quad: QuadratureConfig,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            cap: DEFAULT_ENUMERATION_CAP,
            mc: None,
            quad: QuadratureConfig::default(),
        }
    }
}

/// `alpha = a / 1600` for `a = 0..=400`.
pub fn default_alpha_grid() -> Vec<f64> {
    (0..=400).map(|a| a as f64 / 1600.0).collect()
}

/// One `kappa_q^J(alpha)` estimate, choosing enumeration or sampling.
pub fn estimate_kappa(j: usize, alpha: f64, q: f64, opts: &SweepOptions) -> Result<KappaEstimate> {
    if q == 0.0 {
        if j <= opts.cap {
            return kappa0_exact_with_cap(j, alpha, opts.cap);
        }
        return match opts.mc {
            Some(mc) => kappa0_mc(j, alpha, mc.samples, mc.seed),
            None => Err(Error::EnumerationCapExceeded { j, cap: opts.cap }),
        };
    }
    let mc = opts.mc.ok_or_else(|| {
        Error::InvalidParameter("q > 0 needs Monte-Carlo parameters (samples, seed)".into())
    })?;
    kappaq_mc(j, alpha, q, mc.samples, mc.seed, &opts.quad)
}

/// Estimates at every alpha. `on_row` sees each row as soon as it is done;
/// rows already in `resume` are kept and not recomputed.
pub fn sweep_alpha_with<F: FnMut(&SweepRow)>(
    j: usize,
    alphas: &[f64],
    q: f64,
    opts: &SweepOptions,
    resume: Option<SweepTable>,
    mut on_row: F,
) -> Result<SweepTable> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("the alpha grid is empty".into()));
    }
    let mut table = resume.unwrap_or_default();
    let mut grid = alphas.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    for alpha in grid {
        if table.contains(alpha, j) {
            continue;
        }
        match estimate_kappa(j, alpha, q, opts) {
            Ok(k) => {
                let row = SweepRow::from_estimate(&k);
                on_row(&row);
                table.insert(row);
            }
            Err(e) => table.failures.push((alpha, j, e.to_string())),
        }
    }
    Ok(table)
}

pub fn sweep_alpha(j: usize, alphas: &[f64], q: f64) -> Result<SweepTable> {
    sweep_alpha_with(j, alphas, q, &SweepOptions::default(), None, |_| {})
}

/// `kappa_0^J(0)` and `kappa_0^J(1/4)` for `J = 1..=j_max` by enumeration.
pub fn convergence_table(j_max: usize) -> Result<SweepTable> {
    if j_max > DEFAULT_ENUMERATION_CAP {
        return Err(Error::EnumerationCapExceeded {
            j: j_max,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let mut table = SweepTable::default();
    for j in 1..=j_max {
        for alpha in [0.0, 0.25] {
            table.insert(SweepRow::from_estimate(&kappa0_exact(j, alpha)?));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_model_recovered() {
        let (a, b, c) = (0.7391, -0.0152, 0.0041);
        let pts: Vec<(usize, f64)> = (7..=18)
            .map(|j| (j, a + b / j as f64 + c / (j * j) as f64))
            .collect();
        let fit = fit_inverse_quadratic(&pts).unwrap();
        assert!((fit.r - a).abs() < 1e-12);
        assert!((fit.s - b).abs() < 1e-12);
        assert!((fit.t - c).abs() < 1e-12);
        assert!((extrapolate(&fit) - a).abs() < 1e-12);
        assert_eq!((fit.j_min, fit.j_max, fit.points), (7, 18, 12));
    }

    #[test]
    fn constant_data() {
        let pts: Vec<(usize, f64)> = (1..=6).map(|j| (j, 0.5)).collect();
        let fit = fit_inverse_quadratic(&pts).unwrap();
        assert!((fit.r - 0.5).abs() < 1e-12 && fit.s.abs() < 1e-12 && fit.t.abs() < 1e-12);
    }

    #[test]
    fn rank_deficient() {
        assert!(matches!(
            fit_inverse_quadratic(&[(3, 1.0), (4, 1.0)]),
            Err(Error::RankDeficient(_))
        ));
        assert!(matches!(
            fit_inverse_quadratic(&[(3, 1.0), (4, 1.0), (4, 2.0), (3, 0.0)]),
            Err(Error::RankDeficient(_))
        ));
    }

    #[test]
    fn fixture_parses() {
        let rows = table1_fixture();
        assert_eq!(rows.len(), 18);
        assert_eq!(rows[0].j, 1);
        assert_eq!(rows[17].quarter, 0.95110053);
        assert_eq!(table1_points(Table1Column::Fekete, 7, 18).len(), 12);
    }

    #[test]
    fn fixture_fits() {
        let f = fit_inverse_quadratic(&table1_points(Table1Column::Fekete, 7, 18)).unwrap();
        assert!(
            (f.r - 0.73990).abs() < 5e-4
                && (f.s + 0.01502).abs() < 5e-4
                && (f.t + 0.00453).abs() < 5e-4
        );
        assert!(f.residual_rms <= 1e-4);
        let f = fit_inverse_quadratic(&table1_points(Table1Column::Quarter, 7, 18)).unwrap();
        assert!(
            (f.r - 0.95114).abs() < 5e-4
                && (f.s + 0.000926).abs() < 5e-5
                && (f.t - 0.00272).abs() < 5e-4
        );
        assert!(f.residual_rms <= 1e-4);
    }

    #[test]
    fn sweep_table_sorted_unique_and_round_trips() {
        let mut t = SweepTable::default();
        for (a, j) in [(0.2, 3), (0.1, 3), (0.1, 2), (0.2, 3)] {
            t.insert(SweepRow {
                alpha: a,
                j,
                q: 0.0,
                method: "enumeration".into(),
                value: a + j as f64,
                std_err: 0.0,
            });
        }
        assert_eq!(t.rows.len(), 3);
        assert_eq!((t.rows[0].alpha, t.rows[0].j), (0.1, 2));
        let csv = t.to_csv(8);
        assert!(csv.starts_with("alpha,J,q,method,value,std_err\n"));
        assert_eq!(SweepTable::from_csv(&csv).unwrap().to_csv(8), csv);
    }

    #[test]
    fn sweep_reports_rows_and_failures() {
        let mut seen = 0;
        let opts = SweepOptions {
            cap: 2,
            ..Default::default()
        };
        let t = sweep_alpha_with(2, &[0.25, 0.0, 0.25], 0.0, &opts, None, |_| seen += 1).unwrap();
        assert_eq!(seen, 2);
        assert_eq!(t.rows.len(), 2);
        let t = sweep_alpha_with(3, &[0.0], 0.0, &opts, None, |_| {}).unwrap();
        assert!(t.rows.is_empty() && t.failures.len() == 1);
        assert!(sweep_alpha(2, &[], 0.0).is_err());
    }

    #[test]
    fn convergence_rows() {
        let t = convergence_table(3).unwrap();
        assert!((t.value(0.0, 3).unwrap() - 0.73437217).abs() < 1e-6);
        assert!((t.value(0.25, 3).unwrap() - 0.95105638).abs() < 1e-6);
        assert!(convergence_table(13).is_err());
    }
}
