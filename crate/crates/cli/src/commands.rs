use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use serde_json::{json, Value};

use turyn_core::analysis::{
    extrapolate, fit_inverse_quadratic, sweep_alpha_with, table1_fixture, table1_points, McParams,
    SweepOptions, SweepRow, SweepTable, Table1Column,
};
use turyn_core::circle_norms::{
    lq_norm, mahler_measure_panels_poly, mahler_measure_roots, measure_gap_companions, sup_norm,
    MeasureResult,
};
use turyn_core::number_theory::{primes_in_range, OddPrime};
use turyn_core::polynomials::{
    build, build_companion, l2_norm, l2k_norm_exact, merit_factor, nearest_shift, CirclePoly, Sign,
    TurynSpec,
};
use turyn_core::quadrature::QuadratureConfig;
use turyn_core::rand_process::{
    kappa0_exact_with_cap, kappa0_mc, kappaq_mc, KappaEstimate, DEFAULT_ENUMERATION_CAP,
};

use crate::svg::{self, PlotSpec, Series, Style};
use crate::{Companion, Global, Method, PolySelect};

const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<turyn_core::Error> for CliError {
    fn from(e: turyn_core::Error) -> Self {
        if e.is_numeric() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("i/o: {e}"))
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn schema(name: &str) -> String {
    format!("turyn.{name}/{SCHEMA_VERSION}")
}

fn emit(g: &Global, text: &str) -> Result<(), CliError> {
    match &g.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn emit_json(g: &Global, v: &Value) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| usage(e.to_string()))?;
    s.push('\n');
    emit(g, &s)
}

fn quad_config(g: &Global) -> Result<QuadratureConfig, CliError> {
    let d = QuadratureConfig::default();
    let cfg = QuadratureConfig::with_tolerances(
        g.abs_tol.unwrap_or(d.abs_tol),
        g.rel_tol.unwrap_or(d.rel_tol),
    );
    cfg.validate()?;
    Ok(cfg)
}

/// A selected polynomial and the scale used to normalize its measure.
struct Selected {
    poly: CirclePoly,
    label: String,
    p: Option<u64>,
    t: Option<u64>,
    norm_scale: f64,
}

fn select(s: &PolySelect) -> Result<Selected, CliError> {
    if s.lehmer {
        let poly = CirclePoly::lehmer();
        return Ok(Selected {
            poly,
            label: "lehmer".into(),
            p: None,
            t: None,
            norm_scale: 1.0,
        });
    }
    if s.fb {
        let poly = CirclePoly::f_b();
        let scale = l2_norm(&poly);
        return Ok(Selected {
            poly,
            label: "f_b".into(),
            p: None,
            t: None,
            norm_scale: scale,
        });
    }
    if let Some(path) = &s.coeffs {
        let poly = CirclePoly::from_csv(&fs::read_to_string(path)?)?;
        let scale = l2_norm(&poly);
        if scale == 0.0 {
            return Err(usage("the coefficient file describes the zero polynomial"));
        }
        return Ok(Selected {
            poly,
            label: path.display().to_string(),
            p: None,
            t: None,
            norm_scale: scale,
        });
    }
    let p =
        s.p.ok_or_else(|| usage("select a polynomial with --p, --coeffs, --lehmer or --fb"))?;
    let p = OddPrime::new(p)?;
    let t = if s.quarter {
        nearest_shift(p, 0.25)
    } else {
        s.t
    };
    let spec = match s.d {
        Some(d) => TurynSpec::generalized(p, t, d),
        None => TurynSpec::new(p, t),
    };
    let poly = match s.companion {
        Some(Companion::Plus) => build_companion(&spec, Sign::Plus)?,
        Some(Companion::Minus) => build_companion(&spec, Sign::Minus)?,
        None => build(&spec)?,
    };
    let label = match (s.companion, s.d) {
        (Some(Companion::Plus), _) => format!("F+_{{{},{}}}", p, spec.t),
        (Some(Companion::Minus), _) => format!("F-_{{{},{}}}", p, spec.t),
        (None, Some(d)) => format!("F_{{{},{},{}}}", p, spec.t, d),
        (None, None) => format!("F_{{{},{}}}", p, spec.t),
    };
    Ok(Selected {
        poly,
        label,
        p: Some(p.get()),
        t: Some(spec.t),
        norm_scale: p.as_f64().sqrt(),
    })
}

pub fn poly(g: &Global, s: &PolySelect, coeffs_only: bool) -> Result<(), CliError> {
    let sel = select(s)?;
    let f = &sel.poly;
    if coeffs_only && !g.json {
        return emit(g, &f.to_csv());
    }
    let l2 = l2_norm(f);
    let l4 = l2k_norm_exact(f, 2)?;
    let l6 = l2k_norm_exact(f, 3)?;
    let l8 = l2k_norm_exact(f, 4)?;
    let merit = merit_factor(f).ok();
    let sup = sup_norm(f, 8, true)?;
    if g.json {
        return emit_json(
            g,
            &json!({
                "schema": schema("poly"),
                "polynomial": sel.label,
                "p": sel.p,
                "t": sel.t,
                "d": s.d,
                "coefficients": f.coeffs(),
                "l2": l2,
                "l4": l4,
                "l6": l6,
                "l8": l8,
                "merit_factor": merit,
                "sup_norm": sup,
            }),
        );
    }
    let prec = g.precision;
    let coeffs: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
    let mut out = format!("polynomial: {}\n", sel.label);
    out += &format!("coefficients: {}\n", coeffs.join(","));
    out += &format!("l2: {l2:.prec$}\nl4: {l4:.prec$}\nl6: {l6:.prec$}\nl8: {l8:.prec$}\n");
    match merit {
        Some(m) => out += &format!("merit_factor: {m:.prec$}\n"),
        None => out += "merit_factor: inf\n",
    }
    out += &format!("sup_norm: {sup:.prec$}\n");
    emit(g, &out)
}

fn measure_json(r: &MeasureResult, scale: f64) -> Value {
    json!({
        "method": r.method,
        "value": r.value,
        "normalized": r.value / scale,
        "log_value": r.log_value,
        "err_estimate": r.err_estimate,
    })
}

pub fn measure(g: &Global, s: &PolySelect, method: Method, q: Option<f64>) -> Result<(), CliError> {
    let sel = select(s)?;
    let cfg = quad_config(g)?;
    let prec = g.precision;
    let mut results = Vec::new();
    if let Some(q) = q {
        if method != Method::Panels {
            return Err(usage("--q uses quadrature only; drop --method"));
        }
        results.push(lq_norm(&sel.poly, q, &cfg)?);
    } else {
        if method != Method::Roots {
            results.push(mahler_measure_panels_poly(&sel.poly, &cfg)?);
        }
        if method != Method::Panels {
            results.push(mahler_measure_roots(&sel.poly)?);
        }
    }
    let delta = (results.len() == 2).then(|| results[0].value - results[1].value);
    if g.json {
        return emit_json(
            g,
            &json!({
                "schema": schema("measure"),
                "polynomial": sel.label,
                "p": sel.p,
                "t": sel.t,
                "q": q,
                "normalization": sel.norm_scale,
                "results": results.iter().map(|r| measure_json(r, sel.norm_scale)).collect::<Vec<_>>(),
                "delta": delta,
            }),
        );
    }
    let name = if q.is_some() {
        "lq_norm"
    } else {
        "mahler_measure"
    };
    let mut out = format!("polynomial: {}\n", sel.label);
    for r in &results {
        let m = serde_json::to_value(r.method).map_err(|e| usage(e.to_string()))?;
        let m = m.as_str().unwrap_or_default().to_string();
        out += &format!(
            "{m}: {name} {:.prec$} normalized {:.prec$} log {:.prec$} err_estimate {:.2e}\n",
            r.value,
            r.value / sel.norm_scale,
            r.log_value,
            r.err_estimate
        );
    }
    if let Some(d) = delta {
        out += &format!("delta: {d:.3e}\n");
    }
    emit(g, &out)
}

#[derive(Debug, Args)]
pub struct KappaArgs {
    #[arg(long, required_unless_present = "table1")]
    alpha: Option<f64>,
    /// Truncation J
    #[arg(long = "J", short = 'J', required_unless_present = "table1")]
    j: Option<usize>,
    /// Exponent q (0 for the Mahler measure)
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    /// Sample instead of enumerating
    #[arg(long)]
    mc: bool,
    #[arg(long, default_value_t = 1 << 20)]
    samples: u64,
    /// Largest J enumerated exactly
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    /// Recompute the reference table for J = 1..=jmax
    #[arg(long, conflicts_with_all = ["alpha", "j", "mc"])]
    table1: bool,
    #[arg(long, default_value_t = 8, requires = "table1")]
    jmax: usize,
}

fn estimate(
    g: &Global,
    j: usize,
    alpha: f64,
    q: f64,
    mc: bool,
    samples: u64,
    cap: usize,
) -> Result<KappaEstimate, CliError> {
    if mc {
        return Ok(if q == 0.0 {
            kappa0_mc(j, alpha, samples, g.seed)?
        } else {
            kappaq_mc(j, alpha, q, samples, g.seed, &quad_config(g)?)?
        });
    }
    if q != 0.0 {
        return Err(usage(
            "q > 0 is only available by sampling; add --mc (with --samples and --seed)",
        ));
    }
    if j > cap {
        return Err(usage(format!(
            "J = {j} needs 4^{j} exact integrals, above the enumeration cap {cap}; add --mc to sample instead or raise --cap"
        )));
    }
    Ok(kappa0_exact_with_cap(j, alpha, cap)?)
}

pub fn kappa(g: &Global, a: &KappaArgs) -> Result<(), CliError> {
    let prec = g.precision;
    if a.table1 {
        if a.jmax == 0 || a.jmax > a.cap {
            return Err(usage(format!("--jmax must lie in 1..={}", a.cap)));
        }
        let reference = table1_fixture();
        let mut rows = Vec::new();
        for j in 1..=a.jmax {
            let fekete = kappa0_exact_with_cap(j, 0.0, a.cap)?.value;
            let quarter = kappa0_exact_with_cap(j, 0.25, a.cap)?.value;
            let r = reference.iter().find(|r| r.j == j);
            rows.push((
                j,
                fekete,
                quarter,
                r.map(|r| r.fekete),
                r.map(|r| r.quarter),
            ));
        }
        if g.json {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(j, f, qv, rf, rq)| {
                    json!({"J": j, "fekete": f, "quarter": qv, "fekete_ref": rf, "quarter_ref": rq})
                })
                .collect();
            return emit_json(g, &json!({"schema": schema("table1"), "rows": rows}));
        }
        let fmt_opt = |v: Option<f64>| v.map(|v| format!("{v:.prec$}")).unwrap_or_default();
        let mut out = String::from("J,fekete,quarter,fekete_ref,quarter_ref\n");
        for (j, f, qv, rf, rq) in rows {
            out += &format!(
                "{j},{f:.prec$},{qv:.prec$},{},{}\n",
                fmt_opt(rf),
                fmt_opt(rq)
            );
        }
        return emit(g, &out);
    }
    let (alpha, j) = (a.alpha.unwrap_or_default(), a.j.unwrap_or_default());
    let k = estimate(g, j, alpha, a.q, a.mc, a.samples, a.cap)?;
    if g.json {
        return emit_json(g, &json!({"schema": schema("kappa"), "rows": [k]}));
    }
    emit(
        g,
        &format!("{}\n{}\n", KappaEstimate::CSV_HEADER, k.csv_row(prec)),
    )
}

fn parse_number(s: &str) -> Result<f64, String> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
            let d: f64 = d.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
            if d == 0.0 {
                return Err(format!("{s:?}: zero denominator"));
            }
            Ok(n / d)
        }
        None => s.trim().parse().map_err(|e| format!("{s:?}: {e}")),
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Truncations to sweep, e.g. 5,8
    #[arg(long = "J", short = 'J', value_delimiter = ',')]
    j: Vec<usize>,
    /// Explicit alpha values (fractions like 1/64 allowed)
    #[arg(long, value_delimiter = ',', value_parser = parse_number)]
    alphas: Vec<f64>,
    /// Grid step; without --step or --alphas the grid is a/1600 on [0, 1/4]
    #[arg(long, value_parser = parse_number)]
    step: Option<f64>,
    #[arg(long, default_value = "0", value_parser = parse_number)]
    alpha_min: f64,
    #[arg(long, default_value = "1/4", value_parser = parse_number)]
    alpha_max: f64,
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    #[arg(long)]
    mc: bool,
    #[arg(long, default_value_t = 1 << 16)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    /// Companion-gap mode over primes up to this bound
    #[arg(long, conflicts_with_all = ["j", "alphas", "step", "q", "mc"])]
    pmax: Option<u64>,
    #[arg(long, default_value_t = 5, requires = "pmax")]
    pmin: u64,
    /// Continue the CSV given by --out, skipping finished rows
    #[arg(long, requires = "out")]
    resume: bool,
    /// SVG output path
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn alpha_grid(a: &SweepArgs) -> Result<Vec<f64>, CliError> {
    let grid: Vec<f64> = if !a.alphas.is_empty() {
        a.alphas.clone()
    } else if let Some(step) = a.step {
        if !(step > 0.0) {
            return Err(usage("--step must be positive"));
        }
        let n = ((a.alpha_max - a.alpha_min) / step + 1e-9).floor();
        if n >= 0.0 {
            (0..=n as u64)
                .map(|k| a.alpha_min + k as f64 * step)
                .collect()
        } else {
            Vec::new()
        }
    } else {
        turyn_core::analysis::default_alpha_grid()
            .into_iter()
            .filter(|&x| x >= a.alpha_min && x <= a.alpha_max)
            .collect()
    };
    if grid.is_empty() {
        return Err(usage("the alpha grid is empty"));
    }
    if let Some(bad) = grid.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(usage(format!("alpha must lie in [0, 1], got {bad}")));
    }
    Ok(grid)
}

/// Appends one line to `path` and flushes, so finished rows survive an interrupt.
struct RowLog {
    file: Option<File>,
}

impl RowLog {
    fn open(path: Option<&Path>, header: &str, resume: bool) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(RowLog { file: None });
        };
        let fresh = !resume || !path.exists() || fs::metadata(path)?.len() == 0;
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .truncate(false)
            .open(path)?;
        if fresh {
            file.set_len(0)?;
            writeln!(file, "{header}")?;
            file.flush()?;
        }
        Ok(RowLog { file: Some(file) })
    }

    fn push(&mut self, line: &str) -> io::Result<()> {
        if let Some(f) = &mut self.file {
            writeln!(f, "{line}")?;
            f.flush()?;
        }
        Ok(())
    }
}

fn kappa_plot(table: &SweepTable, q: f64) -> PlotSpec {
    let mut js: Vec<usize> = table.rows.iter().map(|r| r.j).collect();
    js.sort_unstable();
    js.dedup();
    let name = if q == 0.0 {
        "kappa_0".to_string()
    } else {
        format!("kappa_{q}")
    };
    PlotSpec {
        title: format!("{name}^J(alpha)"),
        x_label: "alpha".into(),
        y_label: format!("{name}^J"),
        series: js
            .into_iter()
            .map(|j| {
                let (xs, ys) = table.series(j).into_iter().unzip();
                Series {
                    label: format!("J = {j}"),
                    xs,
                    ys,
                    style: Style::Line,
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct GapRow {
    p: u64,
    t: u64,
    plus: f64,
    minus: f64,
}

const GAP_HEADER: &str = "p,t,gap_plus,gap_minus";

fn gap_plot(rows: &[GapRow]) -> PlotSpec {
    let xs: Vec<f64> = rows.iter().map(|r| r.p as f64).collect();
    PlotSpec {
        title: "companion measure gaps, t = round(p/4)".into(),
        x_label: "p".into(),
        y_label: "(M(F±) - M(F)) / sqrt(p)".into(),
        series: vec![
            Series {
                label: "F+ gap".into(),
                xs: xs.clone(),
                ys: rows.iter().map(|r| r.plus).collect(),
                style: Style::Markers,
            },
            Series {
                label: "F- gap".into(),
                xs,
                ys: rows.iter().map(|r| r.minus).collect(),
                style: Style::Markers,
            },
        ],
    }
}

fn read_gaps(text: &str) -> Result<Vec<GapRow>, CliError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| usage(format!("gap csv: {e}")))?;
        let field = |i: usize| rec.get(i).ok_or_else(|| usage("gap csv: short row"));
        let bad = |e: String| usage(format!("gap csv: {e}"));
        rows.push(GapRow {
            p: field(0)?.parse().map_err(|e| bad(format!("{e}")))?,
            t: field(1)?.parse().map_err(|e| bad(format!("{e}")))?,
            plus: field(2)?.parse().map_err(|e| bad(format!("{e}")))?,
            minus: field(3)?.parse().map_err(|e| bad(format!("{e}")))?,
        });
    }
    rows.sort_by_key(|r| r.p);
    rows.dedup_by_key(|r| r.p);
    Ok(rows)
}

fn gaps_csv(rows: &[GapRow], prec: usize) -> String {
    let mut out = format!("{GAP_HEADER}\n");
    for r in rows {
        out += &gap_line(r, prec);
        out.push('\n');
    }
    out
}

fn gap_line(r: &GapRow, prec: usize) -> String {
    format!("{},{},{:.prec$},{:.prec$}", r.p, r.t, r.plus, r.minus)
}

fn write_svg(path: Option<&Path>, spec: &PlotSpec) -> Result<(), CliError> {
    if let Some(path) = path {
        fs::write(path, svg::render(spec).map_err(usage)?)?;
    }
    Ok(())
}

fn sweep_gaps(g: &Global, a: &SweepArgs, pmax: u64) -> Result<(), CliError> {
    let prec = g.precision;
    let cfg = quad_config(g)?;
    let primes = primes_in_range(a.pmin.max(5), pmax);
    if primes.is_empty() {
        return Err(usage("no primes in the requested range"));
    }
    let mut rows = match (&g.out, a.resume) {
        (Some(path), true) if path.exists() => read_gaps(&fs::read_to_string(path)?)?,
        _ => Vec::new(),
    };
    let mut log = RowLog::open(g.out.as_deref(), GAP_HEADER, a.resume)?;
    let mut failures = Vec::new();
    for p in primes {
        if rows.iter().any(|r| r.p == p.get()) {
            continue;
        }
        let t = nearest_shift(p, 0.25);
        match measure_gap_companions(p, t, &cfg) {
            Ok((plus, minus)) => {
                let row = GapRow {
                    p: p.get(),
                    t: t as u64,
                    plus,
                    minus,
                };
                log.push(&gap_line(&row, prec))?;
                rows.push(row);
            }
            Err(e) => failures.push(format!("p = {p}: {e}")),
        }
    }
    rows.sort_by_key(|r| r.p);
    // round-trip through the CSV text so a later `plot` reproduces the SVG exactly
    let text = gaps_csv(&rows, prec);
    let rows = read_gaps(&text)?;
    let rows_json = rows
        .iter()
        .map(|r| json!({"p": r.p, "t": r.t, "gap_plus": r.plus, "gap_minus": r.minus}))
        .collect();
    let doc = json!({"schema": schema("gaps"), "rows": Value::Array(rows_json)});
    finish(g, &text, a.svg.as_deref(), &gap_plot(&rows), &failures, doc)
}

fn finish(
    g: &Global,
    csv_text: &str,
    svg_path: Option<&Path>,
    plot: &PlotSpec,
    failures: &[String],
    mut doc: Value,
) -> Result<(), CliError> {
    if g.json {
        // with --out the CSV stays in the file and the JSON goes to stdout
        doc["failures"] = json!(failures);
        if let Some(path) = &g.out {
            fs::write(path, csv_text)?;
        }
        let s = serde_json::to_string_pretty(&doc).map_err(|e| usage(e.to_string()))?;
        println!("{s}");
    } else {
        emit(g, csv_text)?;
    }
    if plot.validate().is_ok() {
        write_svg(svg_path, plot)?;
    }
    if failures.is_empty() {
        Ok(())
    } else {
        for f in failures {
            eprintln!("failed: {f}");
        }
        Err(CliError::Numeric(format!("{} rows failed", failures.len())))
    }
}

pub fn sweep(g: &Global, a: &SweepArgs) -> Result<(), CliError> {
    if let Some(pmax) = a.pmax {
        return sweep_gaps(g, a, pmax);
    }
    if a.j.is_empty() {
        return Err(usage("give at least one truncation with --J"));
    }
    let grid = alpha_grid(a)?;
    for &j in &a.j {
        if j == 0 {
            return Err(usage("J must be at least 1"));
        }
        if !a.mc && a.q != 0.0 {
            return Err(usage("q > 0 is only available by sampling; add --mc"));
        }
        if !a.mc && j > a.cap {
            return Err(usage(format!(
                "J = {j} is above the enumeration cap {}; add --mc to sample instead",
                a.cap
            )));
        }
    }
    let prec = g.precision;
    let mut opts = SweepOptions {
        cap: a.cap,
        mc: None,
        quad: quad_config(g)?,
    };
    if a.mc {
        opts.mc = Some(McParams {
            samples: a.samples,
            seed: g.seed,
        });
        opts.cap = 0;
    }
    let mut table = match (&g.out, a.resume) {
        (Some(path), true) if path.exists() => SweepTable::from_csv(&fs::read_to_string(path)?)?,
        _ => SweepTable::default(),
    };
    let mut log = RowLog::open(g.out.as_deref(), SweepTable::CSV_HEADER, a.resume)?;
    let mut io_err = None;
    for &j in &a.j {
        table = sweep_alpha_with(j, &grid, a.q, &opts, Some(table), |row: &SweepRow| {
            if let Err(e) = log.push(&SweepTable::csv_row(row, prec)) {
                io_err.get_or_insert(e);
            }
        })?;
    }
    if let Some(e) = io_err {
        return Err(e.into());
    }
    let failures: Vec<String> = table
        .failures
        .iter()
        .map(|(al, j, m)| format!("alpha = {al}, J = {j}: {m}"))
        .collect();
    let text = table.to_csv(prec);
    let reread = SweepTable::from_csv(&text)?;
    let doc = json!({"schema": schema("sweep"), "rows": reread.rows});
    finish(
        g,
        &text,
        a.svg.as_deref(),
        &kappa_plot(&reread, a.q),
        &failures,
        doc,
    )
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Sweep or gap CSV written by `sweep`
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    svg: PathBuf,
}

pub fn plot(_g: &Global, a: &PlotArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&a.input)?;
    let header = text.lines().next().unwrap_or_default();
    let spec = if header == GAP_HEADER {
        gap_plot(&read_gaps(&text)?)
    } else if header == SweepTable::CSV_HEADER {
        let table = SweepTable::from_csv(&text)?;
        let q = table.rows.first().map(|r| r.q).unwrap_or(0.0);
        kappa_plot(&table, q)
    } else {
        return Err(usage(format!("unrecognized CSV header {header:?}")));
    };
    write_svg(Some(&a.svg), &spec)
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// table1:fekete or table1:quarter
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
    /// CSV with columns J and value (and optionally alpha)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Keep only rows with this alpha
    #[arg(long, value_parser = parse_number)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 1)]
    jmin: usize,
    #[arg(long, default_value_t = usize::MAX)]
    jmax: usize,
}

fn fixture_column(name: &str) -> Result<Table1Column, CliError> {
    let col = name.strip_prefix("table1:").ok_or_else(|| {
        usage(format!(
            "unknown fixture {name:?}; use table1:fekete or table1:quarter"
        ))
    })?;
    match col
        .trim()
        .to_ascii_lowercase()
        .replace(['_', '-'], " ")
        .as_str()
    {
        "fekete" | "0" => Ok(Table1Column::Fekete),
        "quarter" | "turyn" | "turyn quarter" | "1/4" | "0.25" => Ok(Table1Column::Quarter),
        other => Err(usage(format!(
            "unknown table1 column {other:?}; use fekete or quarter"
        ))),
    }
}

fn read_points(path: &Path, alpha: Option<f64>) -> Result<Vec<(usize, f64)>, CliError> {
    let mut rdr =
        csv::Reader::from_path(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let headers = rdr.headers().map_err(|e| usage(e.to_string()))?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let jc = col("J").ok_or_else(|| usage("fit input needs a J column"))?;
    let vc = col("value").ok_or_else(|| usage("fit input needs a value column"))?;
    let ac = col("alpha");
    let mut pts = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| usage(e.to_string()))?;
        let get = |i: usize| rec.get(i).unwrap_or_default().trim();
        if let (Some(want), Some(ac)) = (alpha, ac) {
            let a: f64 = get(ac).parse().map_err(|e| usage(format!("alpha: {e}")))?;
            if a != want {
                continue;
            }
        }
        let j = get(jc).parse().map_err(|e| usage(format!("J: {e}")))?;
        let v = get(vc).parse().map_err(|e| usage(format!("value: {e}")))?;
        pts.push((j, v));
    }
    Ok(pts)
}

pub fn fit(g: &Global, a: &FitArgs) -> Result<(), CliError> {
    let pts = match (&a.fixture, &a.input) {
        (Some(name), _) => table1_points(fixture_column(name)?, a.jmin, a.jmax),
        (None, Some(path)) => read_points(path, a.alpha)?
            .into_iter()
            .filter(|&(j, _)| j >= a.jmin && j <= a.jmax)
            .collect(),
        (None, None) => return Err(usage("give --fixture or --input")),
    };
    let fit = fit_inverse_quadratic(&pts).map_err(|e| usage(e.to_string()))?;
    let limit = extrapolate(&fit);
    if g.json {
        return emit_json(
            g,
            &json!({"schema": schema("fit"), "fit": fit, "limit": limit}),
        );
    }
    let prec = g.precision;
    emit(
        g,
        &format!(
            "r: {:.prec$}\ns: {:.prec$}\nt: {:.prec$}\nresidual_rms: {:.3e}\nlimit: {limit:.prec$}\npoints: {} (J = {}..{})\n",
            fit.r, fit.s, fit.t, fit.residual_rms, fit.points, fit.j_min, fit.j_max
        ),
    )
}
