//! `udode`: build, certify and inspect piecewise solutions of the universal
//! fourth-order equation.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod approximate;
mod certify;
mod elliptic;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "udode", version, about = "Universal ODE approximation toolkit")]
struct Cli {
    /// More progress output on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Approximate φ within ε by a pasted solution and report the error.
    Approximate(ApproximateArgs),
    /// Check a solution file against the universal equation.
    Certify(CertifyArgs),
    /// Tabulate sn, cn, dn and print K(m).
    Elliptic(EllipticArgs),
    /// Exactly verify the cnⁿ solution table and the large-n limit.
    VerifyIdentity(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct ApproximateArgs {
    /// Target function of x, e.g. "sin(x)".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "phi_csv", conflicts_with = "phi_csv")]
    phi: Option<String>,
    /// Target given as a two-column CSV (x,y), linearly interpolated.
    #[arg(long, value_name = "FILE")]
    phi_csv: Option<PathBuf>,
    /// Tolerance: a positive constant or an expression in x.
    #[arg(long, allow_hyphen_values = true, default_value = "0.01")]
    eps: String,
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    /// Exponent of the bump cnⁿ.
    #[arg(long, default_value_t = udode_core::smodule::DEFAULT_EXPONENT)]
    n: u32,
    /// Size of the uniform grid used to measure the error.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Probes per subinterval during knot planning.
    #[arg(long, default_value_t = udode_core::approx::DEFAULT_PROBES)]
    probes: usize,
    /// Where to write the solution JSON.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Where to write the sample table (x,y,phi,abs_err).
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    /// Format of the report on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(long, value_name = "FILE")]
    solution: PathBuf,
    /// Interior points per segment.
    #[arg(long, default_value_t = 1000)]
    points: usize,
    /// Include every point's residual in the JSON report.
    #[arg(long)]
    per_point: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct EllipticArgs {
    /// Parameter m in [0, 1).
    #[arg(long, allow_hyphen_values = true)]
    m: f64,
    /// Arguments; a trailing K means a multiple of K(m), e.g. "0.5K".
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', num_args = 1.., required = true)]
    x: Vec<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Adds this rational to every row's b before checking.
    #[arg(long, hide = true, allow_hyphen_values = true)]
    perturb_b: Option<String>,
}

/// Why a command did not succeed, mapped onto the exit code.
#[derive(Debug)]
pub enum Failure {
    /// A check ran and did not pass (exit 1).
    Check,
    /// A computation could not be completed (exit 1).
    Runtime(String),
    /// Bad input (exit 2).
    Usage(String),
}

impl Failure {
    fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Check | Failure::Runtime(_) => ExitCode::from(1),
            Failure::Usage(_) => ExitCode::from(2),
        }
    }
}

pub type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Approximate(a) => approximate::run(a, cli.verbose),
        Command::Certify(a) => certify::run(a, cli.verbose),
        Command::Elliptic(a) => elliptic::run(a),
        Command::VerifyIdentity(a) => verify::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Check => {}
                Failure::Runtime(msg) => eprintln!("error: {msg}"),
                Failure::Usage(msg) => eprintln!("error: {msg}"),
            }
            f.exit_code()
        }
    }
}
