use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qschubert::batch::{parse_source, read_source};
use qschubert::commands::{self, Suite};
use qschubert::report::{OutputFormat, Report};
use qschubert::CliError;
use qschubert_core::critical::DEFAULT_PRECISION_BITS;
use qschubert_core::{Backend, GrassmannSpec};

/// Quantum and classical Schubert calculus on the Grassmannian G(r, k).
#[derive(Debug, Parser)]
#[command(name = "qschubert", version)]
struct Cli {
    /// Dimension of the subspaces.
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Dimension of the ambient space.
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    /// Working precision of the float backend (at least 64).
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_BITS)]
    precision_bits: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputArg {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Presentation of the cohomology ring and the quantum potential.
    Ring,
    /// Classical intersection number, by the Schur basis and by residues.
    Classical {
        /// Polynomial in X1..Xr, or @file with one per line.
        #[arg(short = 'P', allow_hyphen_values = true)]
        polynomial: String,
    },
    /// Genus-g, degree-d invariant of P.
    Gromov {
        #[arg(long)]
        genus: u32,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// Polynomial in X1..Xr, or @file with one per line.
        #[arg(short = 'P', allow_hyphen_values = true)]
        polynomial: String,
    },
    /// The critical points and their X-values in both backends.
    CriticalPoints,
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let (Some(r), Some(k)) = (cli.r, cli.k) else {
        return Err(CliError::Usage("both --r and --k are required".into()));
    };
    let spec = GrassmannSpec::new(r, k)?;
    if cli.precision_bits < 64 {
        return Err(CliError::Usage(format!(
            "--precision-bits must be at least 64, got {}",
            cli.precision_bits
        )));
    }
    let backend = match cli.backend {
        BackendArg::Exact => Backend::Exact,
        BackendArg::Float => Backend::Float {
            precision_bits: cli.precision_bits,
        },
    };
    match &cli.command {
        Command::Ring => commands::ring(spec),
        Command::Classical { polynomial } => {
            let source = read_source(polynomial)?;
            let polys = parse_source(&source, r)?;
            commands::classical(spec, backend, &polys, source.batch)
        }
        Command::Gromov {
            genus,
            degree,
            polynomial,
        } => {
            let source = read_source(polynomial)?;
            let polys = parse_source(&source, r)?;
            commands::gromov(spec, backend, *genus, *degree, &polys, source.batch)
        }
        Command::CriticalPoints => commands::critical_points(spec, cli.precision_bits),
        Command::Verify { suite } => commands::verify(spec, backend, *suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.output {
        OutputArg::Json => OutputFormat::Json,
        OutputArg::Text => OutputFormat::Text,
    };
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(format).as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
