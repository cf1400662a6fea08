mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "turyn",
    version,
    about = "Mahler measures and L_q norms of Turyn polynomials"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Global {
    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Decimal places in text and CSV output
    #[arg(long, global = true, default_value_t = 8)]
    precision: usize,
    /// Emit one JSON object instead of text or CSV
    #[arg(long, global = true)]
    json: bool,
    /// Write the primary output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Monte-Carlo seed
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Absolute quadrature tolerance
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    /// Relative quadrature tolerance
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Companion {
    Plus,
    Minus,
}

#[derive(Debug, Args, Clone)]
pub struct PolySelect {
    /// Odd prime p
    #[arg(long)]
    p: Option<u64>,
    /// Shift t (reduced mod p)
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    t: i64,
    /// Degree of the generalized polynomial (truncation or periodic extension)
    #[arg(long)]
    d: Option<u64>,
    /// Replace the zero coefficient by +1 or -1
    #[arg(long, conflicts_with = "d")]
    companion: Option<Companion>,
    /// Use t = round(p/4)
    #[arg(long, conflicts_with = "t")]
    quarter: bool,
    /// Coefficients from a file, one integer per line, constant term first
    #[arg(long, conflicts_with_all = ["p", "lehmer", "fb"])]
    coeffs: Option<PathBuf>,
    /// Lehmer's polynomial
    #[arg(long, conflicts_with_all = ["p", "fb"])]
    lehmer: bool,
    /// The degree-12 Littlewood polynomial of largest known normalized measure
    #[arg(long, conflicts_with = "p")]
    fb: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Panels,
    Roots,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients and exact norms of one polynomial
    Poly {
        #[command(flatten)]
        select: PolySelect,
        /// Print only the coefficients, one per line
        #[arg(long)]
        coeffs_only: bool,
    },
    /// Mahler measure by panel quadrature, roots, or both
    Measure {
        #[command(flatten)]
        select: PolySelect,
        #[arg(long, value_enum, default_value_t = Method::Panels)]
        method: Method,
        /// Compute the L_q norm instead (q > 0)
        #[arg(long)]
        q: Option<f64>,
    },
    /// kappa_q^J(alpha) by enumeration or Monte Carlo
    Kappa(commands::KappaArgs),
    /// Alpha sweeps (kappa curves) or companion gaps, with CSV and SVG output
    #[command(alias = "plot-sweep")]
    Sweep(commands::SweepArgs),
    /// Re-render an SVG from a sweep or gap CSV
    Plot(commands::PlotArgs),
    /// Fit r + s/J + t/J^2
    Fit(commands::FitArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let g = &cli.global;
    match cli.command {
        Command::Poly {
            select,
            coeffs_only,
        } => commands::poly(g, &select, coeffs_only),
        Command::Measure { select, method, q } => commands::measure(g, &select, method, q),
        Command::Kappa(a) => commands::kappa(g, &a),
        Command::Sweep(a) => commands::sweep(g, &a),
        Command::Plot(a) => commands::plot(g, &a),
        Command::Fit(a) => commands::fit(g, &a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
