//! Command-line front end: `compute` evaluates one mean of the matrices in a
//! JSON file, `verify` runs the inequality suite and writes a JSON report.

pub mod compute;
pub mod input;
pub mod json;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use opmeans_core::verify::{check_ids, run_suite, SuiteConfig};
use opmeans_core::{Error, ToleranceConfig};

use compute::{ComputeError, MeanName};
use input::MatrixFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

pub const DEFAULT_REPORT: &str = "verify-report.json";

#[derive(Debug, Parser)]
#[command(name = "opmeans", version, about = "Means of positive definite matrices and a checker for their inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one mean of the matrices in a JSON file and print it as JSON.
    Compute(ComputeArgs),
    /// Check the registered inequalities on seeded random instances.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Stopping tolerance of the iterative solvers (Thompson metric).
    #[arg(long)]
    pub tol_fixed_point: Option<f64>,
    /// Loewner-order slack relative to the operator norm.
    #[arg(long)]
    pub tol_margin: Option<f64>,
    /// Relative slack for scalar trace and norm predicates.
    #[arg(long)]
    pub tol_scalar: Option<f64>,
    /// Iteration cap of the iterative solvers.
    #[arg(long)]
    pub max_iterations: Option<usize>,
}

impl TolArgs {
    fn apply(&self, tol: &mut ToleranceConfig) {
        if let Some(x) = self.tol_fixed_point {
            tol.fixed_point_tol = x;
        }
        if let Some(x) = self.tol_margin {
            tol.margin_tol = x;
        }
        if let Some(x) = self.tol_scalar {
            tol.scalar_tol = x;
        }
        if let Some(x) = self.max_iterations {
            tol.max_iterations = x;
        }
    }

    fn validate(tol: &ToleranceConfig) -> Result<(), String> {
        let positive = [
            ("tol-fixed-point", tol.fixed_point_tol),
            ("tol-margin", tol.margin_tol),
            ("tol-scalar", tol.scalar_tol),
        ];
        match positive.iter().find(|(_, v)| !(v.is_finite() && *v > 0.0)) {
            Some((name, v)) => Err(format!("--{name} must be positive, got {v}")),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Which mean to compute.
    #[arg(value_enum)]
    pub mean: MeanName,
    /// Matrix file; `-` reads standard input.
    pub input: PathBuf,
    /// Order `t`; overrides the file. Defaults to 1/2 for geo2, power and lawson_lim.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Comma-separated weights; override the file.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated check ids, or `all`.
    #[arg(long, default_value = "all")]
    pub checks: String,
    /// Instances per check.
    #[arg(long)]
    pub count: Option<usize>,
    /// Matrix dimensions, `LO..HI` inclusive.
    #[arg(long)]
    pub dims: Option<String>,
    /// Operand counts, `LO..HI` inclusive.
    #[arg(long)]
    pub n_operands: Option<String>,
    /// Lower spectral bound.
    #[arg(long)]
    pub m: Option<f64>,
    /// Upper spectral bound.
    #[arg(long = "M")]
    pub big_m: Option<f64>,
    /// Comma-separated orders `t ∈ (0, 1)` cycled over instances.
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    /// Base seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Suite configuration file (JSON); flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Report path.
    #[arg(long, default_value = DEFAULT_REPORT)]
    pub out: PathBuf,
    #[command(flatten)]
    pub tol: TolArgs,
}

impl VerifyArgs {
    pub fn suite_config(&self) -> Result<SuiteConfig, String> {
        let mut c = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?
            }
            None => SuiteConfig::default(),
        };
        if self.config.is_none() || self.checks != "all" {
            c.checks = verify::parse_checks(&self.checks);
        }
        if let Some(x) = self.count {
            c.count = x;
        }
        if let Some(x) = &self.dims {
            c.dims = verify::parse_range(x)?;
        }
        if let Some(x) = &self.n_operands {
            c.n_operands = verify::parse_range(x)?;
        }
        if let Some(x) = self.m {
            c.m = x;
        }
        if let Some(x) = self.big_m {
            c.big_m = x;
        }
        if let Some(x) = &self.t {
            c.t_grid = x.clone();
        }
        if let Some(x) = self.seed {
            c.seed = x;
        }
        self.tol.apply(&mut c.tolerances);
        TolArgs::validate(&c.tolerances)?;
        Ok(c)
    }
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| format!("stdin: {e}"))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_compute(args: &ComputeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut tol = ToleranceConfig::default();
    args.tol.apply(&mut tol);
    let prepared = TolArgs::validate(&tol)
        .and_then(|_| read_input(&args.input))
        .and_then(|text| MatrixFile::parse(&text))
        .and_then(|mut file| {
            if args.t.is_some() {
                file.t = args.t;
            }
            if args.weights.is_some() {
                file.weights = args.weights.clone();
            }
            file.validate(&tol)
        });
    let ops = match prepared {
        Ok(ops) => ops,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    match compute::compute(args.mean, &ops, &tol) {
        Ok(result) => {
            let _ = out.write_all(json::to_string(&result).expect("serializable").as_bytes());
            EXIT_OK
        }
        Err(ComputeError::Invalid(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
        Err(ComputeError::NoConvergence(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_NO_CONVERGENCE
        }
    }
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let config = match args.suite_config() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let report = match run_suite(&config) {
        Ok(r) => r,
        Err(e @ Error::UnknownCheck(_)) => {
            let _ = writeln!(err, "error: {e}\nvalid check ids: {}", check_ids().join(", "));
            return EXIT_INVALID;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let text = json::to_string(&report).expect("serializable");
    if let Err(e) = std::fs::write(&args.out, text) {
        let _ = writeln!(err, "error: cannot write {}: {e}", args.out.display());
        return EXIT_INVALID;
    }
    let _ = write!(out, "{}", verify::summary_table(&report));
    let _ = writeln!(out, "report written to {}", args.out.display());
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Parses `argv` and runs the command, returning the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match &cli.command {
        Command::Compute(args) => run_compute(args, out, err),
        Command::Verify(args) => run_verify(args, out, err),
    }
}
