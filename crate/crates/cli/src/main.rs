use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lglbound_core::experiments::{self, RungeMode};
use lglbound_core::lobatto::{GglParams, DEFAULT_ELLIPSE_GRID};
use lglbound_core::{verify, CsvTable, Error, FunctionSpec};

/// Reproduce the LGL bound figures as CSV tables and run the acceptance suite.
#[derive(Parser)]
#[command(name = "lglbound", version)]
struct Cli {
    /// Directory for relative output paths.
    #[arg(long, global = true, env = "LGL_OUT_DIR")]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// max |phi_n| with both bounds, one row per degree.
    PhiMax {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 5000)]
        n_max: usize,
        #[command(flatten)]
        out: Out,
    },
    /// |phi_n(x)| sqrt(2 pi n) / 4 on a grid.
    PhiScaled {
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 10_001)]
        grid: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Exact Legendre coefficients against the coefficient bounds.
    CoeffBounds {
        #[command(flatten)]
        f: Family,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        out: Out,
    },
    /// L2 projection errors against the L2 bounds.
    L2Bounds {
        #[command(flatten)]
        f: Family,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        out: Out,
    },
    /// Max projection errors against the uniform and interior bounds.
    LinfBounds {
        #[command(flatten)]
        f: Family,
        #[command(flatten)]
        range: Range,
        #[arg(long, default_value_t = 10_001)]
        grid: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Grid max of |phi_n^GGL| against its bound.
    GglMax {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [0.3, 1.0, 2.5])]
        lambda: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        #[arg(long, default_value_t = 10_001)]
        grid: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Where |phi_n| is smallest on Bernstein ellipses.
    EllipseMin {
        /// A single degree; overrides --n-min/--n-max.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [1.05, 1.25, 1.5])]
        rho: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_ELLIPSE_GRID)]
        grid: usize,
        #[command(flatten)]
        out: Out,
    },
    /// LGL interpolation errors for 1/(1 + (ax)^2).
    InterpRunge {
        #[command(flatten)]
        runge: Runge,
        #[command(flatten)]
        out: Out,
    },
    /// LGL spectral differentiation errors for 1/(1 + (ax)^2).
    DiffRunge {
        #[command(flatten)]
        runge: Runge,
        #[command(flatten)]
        out: Out,
    },
    /// Run every acceptance criterion; exits 1 if any fails.
    VerifyAll {
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Out {
    /// Output CSV; relative paths are placed under --out-dir.
    #[arg(long)]
    out_path: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// |x - theta|
    Abs,
    /// (x - theta)_+^2
    Trunc,
}

#[derive(Args)]
struct Family {
    #[arg(long, value_enum, default_value_t = Kind::Abs)]
    function: Kind,
    /// Breakpoints; the default depends on the command and function.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    theta: Vec<f64>,
}

#[derive(Args)]
struct Range {
    /// Defaults to the smallest admissible degree.
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long, default_value_t = 200)]
    n_max: usize,
}

#[derive(Args)]
struct Runge {
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [5.0, 6.0])]
    a: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 200)]
    n_max: usize,
}

enum Failure {
    Config(String),
    Numerical(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Config(e.to_string())
        }
    }
}

fn specs(f: &Family, defaults: (&[f64], &[f64])) -> Result<Vec<FunctionSpec>, Failure> {
    let thetas = match (f.theta.is_empty(), f.function) {
        (false, _) => f.theta.as_slice(),
        (true, Kind::Abs) => defaults.0,
        (true, Kind::Trunc) => defaults.1,
    };
    Ok(thetas
        .iter()
        .map(|&t| match f.function {
            Kind::Abs => FunctionSpec::abs_shift(t),
            Kind::Trunc => FunctionSpec::trunc_pow2(t),
        })
        .collect::<Result<_, _>>()?)
}

fn range(r: &Range, fs: &[FunctionSpec]) -> Result<(usize, usize), Failure> {
    let m = fs.first().map_or(0, |f| f.m());
    let n_min = r.n_min.unwrap_or(m + 1);
    check_range(n_min, r.n_max, m + 1)?;
    Ok((n_min, r.n_max))
}

fn check_range(n_min: usize, n_max: usize, min: usize) -> Result<(), Failure> {
    if n_min < min {
        return Err(Failure::Config(format!("n-min = {n_min} is below the smallest valid degree {min}")));
    }
    if n_max < n_min {
        return Err(Failure::Config(format!("n-max = {n_max} is below n-min = {n_min}")));
    }
    Ok(())
}

fn check_grid(grid: usize, min: usize) -> Result<(), Failure> {
    if grid < min {
        return Err(Failure::Config(format!("grid = {grid} must be at least {min}")));
    }
    Ok(())
}

fn output_path(dir: Option<&Path>, out: &Out, default: &str) -> PathBuf {
    let path = out.out_path.clone().unwrap_or_else(|| PathBuf::from(default));
    match dir {
        Some(d) if path.is_relative() => d.join(path),
        _ => path,
    }
}

fn write(path: &Path, table: &CsvTable) -> Result<(), Failure> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .map_err(|e| Failure::Config(format!("cannot create {}: {e}", parent.display())))?;
    }
    std::fs::write(path, table.render())
        .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {} rows to {}", table.len(), path.display());
    Ok(())
}

fn runge(mode: RungeMode, r: &Runge, path: &Path) -> Result<(), Failure> {
    for &a in &r.a {
        FunctionSpec::runge(a)?;
    }
    check_range(r.n_min, r.n_max, 1)?;
    let (table, runs) = experiments::runge_table(mode, &r.a, r.n_min, r.n_max)?;
    for run in &runs {
        println!(
            "{}: fitted rho {:.6}, rho_max {:.6}, K {:.3e}",
            run.report.label, run.fitted_rho, run.rho_max, run.fitted_k
        );
    }
    write(path, &table)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let dir = cli.out_dir.as_deref();
    match cli.command {
        Command::PhiMax { n_min, n_max, out } => {
            check_range(n_min, n_max, 1)?;
            let t = experiments::phi_max_table(n_min, n_max)?;
            write(&output_path(dir, &out, "phi-max.csv"), &t)
        }
        Command::PhiScaled { n, grid, out } => {
            check_range(n, n, 1)?;
            check_grid(grid, 2)?;
            let t = experiments::phi_scaled_table(n, grid)?;
            write(&output_path(dir, &out, "phi-scaled.csv"), &t)
        }
        Command::CoeffBounds { f, range: r, out } => {
            let fs = specs(&f, (&[0.3, 0.6, 0.9], &[0.2, 0.4, 0.8]))?;
            let (lo, hi) = range(&r, &fs)?;
            let t = experiments::coeff_bounds_table(&fs, lo, hi)?;
            write(&output_path(dir, &out, "coeff-bounds.csv"), &t)
        }
        Command::L2Bounds { f, range: r, out } => {
            let fs = specs(&f, (&[0.5], &[0.5]))?;
            let (lo, hi) = range(&r, &fs)?;
            let t = experiments::l2_bounds_table(&fs, lo, hi)?;
            write(&output_path(dir, &out, "l2-bounds.csv"), &t)
        }
        Command::LinfBounds { f, range: r, grid, out } => {
            let fs = specs(&f, (&[0.2], &[0.5]))?;
            let (lo, hi) = range(&r, &fs)?;
            check_grid(grid, 10_001)?;
            let t = experiments::linf_bounds_table(&fs, lo, hi, grid)?;
            write(&output_path(dir, &out, "linf-bounds.csv"), &t)
        }
        Command::GglMax { lambda, n_min, n_max, grid, out } => {
            for &l in &lambda {
                GglParams::new(l)?;
                if l <= 0.0 {
                    return Err(Failure::Config(format!("the GGL bound needs lambda > 0, got {l}")));
                }
            }
            check_range(n_min, n_max, 1)?;
            check_grid(grid, 2)?;
            let t = experiments::ggl_max_table(&lambda, n_min, n_max, grid)?;
            write(&output_path(dir, &out, "ggl-max.csv"), &t)
        }
        Command::EllipseMin { n, n_min, n_max, rho, grid, out } => {
            let (lo, hi) = n.map_or((n_min, n_max), |n| (n, n));
            check_range(lo, hi, 1)?;
            if let Some(&r) = rho.iter().find(|&&r| !(r > 1.0 && r.is_finite())) {
                return Err(Failure::Config(format!("rho must exceed 1, got {r}")));
            }
            check_grid(grid, 64)?;
            let degrees: Vec<usize> = (lo..=hi).collect();
            let t = experiments::ellipse_min_table(&degrees, &rho, grid)?;
            write(&output_path(dir, &out, "ellipse-min.csv"), &t)
        }
        Command::InterpRunge { runge: r, out } => {
            runge(RungeMode::Interp, &r, &output_path(dir, &out, "interp-runge.csv"))
        }
        Command::DiffRunge { runge: r, out } => {
            runge(RungeMode::Diff, &r, &output_path(dir, &out, "diff-runge.csv"))
        }
        Command::VerifyAll { out } => {
            let path = output_path(dir, &out, "verify-all.csv");
            let mut outcomes = Vec::new();
            for &(id, ..) in &verify::CRITERIA {
                let o = verify::run(id);
                println!("{}", o.line());
                outcomes.push(o);
            }
            write(&path, &verify::outcomes_table(&outcomes))?;
            if outcomes.iter().all(|o| o.passed) {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
