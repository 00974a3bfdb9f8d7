use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use frel::cli::{self, Command, OutputFormat, RunRequest, EXIT_ERROR};
use frel::system::DEFAULT_TOLERANCE;
use frel::TNormKind;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CommandArg {
    /// Consistency verdict, potential greatest solution and residual
    Check,
    /// Greatest solution of a consistent system
    Solve,
    /// Chebyshev distance of the second member and per-row distances
    Distance,
    /// Full report including the greatest Chebyshev approximation
    Approx,
    /// Bisection (and, for n <= 3, grid) ground truth
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TNormArg {
    Minimum,
    Product,
    Lukasiewicz,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Max-T fuzzy relational equations: consistency, greatest solutions and
/// Chebyshev approximation of the second member.
#[derive(Debug, Parser)]
#[command(name = "frel", version)]
struct Args {
    #[arg(value_enum)]
    command: CommandArg,

    /// Matrix file: comma-separated rows, `#` comments
    #[arg(short = 'A', value_name = "MATRIX.csv")]
    matrix: PathBuf,

    /// Second member: one value per line
    #[arg(short = 'b', value_name = "RHS.csv")]
    rhs: PathBuf,

    #[arg(long, value_enum)]
    tnorm: TNormArg,

    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,

    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,

    /// Seed for the oracle's randomized monotonicity probes
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl From<Args> for RunRequest {
    fn from(args: Args) -> Self {
        RunRequest {
            command: match args.command {
                CommandArg::Check => Command::Check,
                CommandArg::Solve => Command::Solve,
                CommandArg::Distance => Command::Distance,
                CommandArg::Approx => Command::Approx,
                CommandArg::Oracle => Command::Oracle,
            },
            matrix_path: args.matrix,
            rhs_path: args.rhs,
            kind: match args.tnorm {
                TNormArg::Minimum => TNormKind::Minimum,
                TNormArg::Product => TNormKind::Product,
                TNormArg::Lukasiewicz => TNormKind::Lukasiewicz,
            },
            tolerance: args.tolerance,
            output_format: match args.format {
                FormatArg::Text => OutputFormat::Text,
                FormatArg::Json => OutputFormat::Json,
            },
            seed: args.seed,
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ERROR as u8) } else { ExitCode::SUCCESS };
        }
    };
    let report = cli::run(&RunRequest::from(args));
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(report.payload.as_bytes());
    let _ = stdout.flush();
    for line in &report.diagnostics {
        eprintln!("{line}");
    }
    ExitCode::from(report.exit_code as u8)
}
