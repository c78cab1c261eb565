use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qosc_core::{DeformParam, RootOfUnity};

mod commands;


/// Gauss polynomials and q-deformed oscillators at real q and roots of unity.
#[derive(Debug, Parser)]
#[command(name = "qosc", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Pass threshold for residual checks.
    #[arg(long, default_value_t = 1e-10, global = true)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Algebra,
    Brackets,
    Polychronakos,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients of the Gauss polynomial [n over m].
    Gauss {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        m: i64,
    },
    /// The Q-number {n}_q, optionally evaluated at a deformation parameter.
    Qnumber {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[command(flatten)]
        param: ParamArgs,
    },
    /// Primitivity and block decomposition of the root exp(2 pi i j / m).
    Classify { m: u64, j: u64 },
    /// Spectrum of the deformed oscillator Hamiltonian.
    Ham {
        #[command(flatten)]
        param: ParamArgs,
    },
    /// Residual sweeps over the algebra relations, bracket identities or the
    /// rescaled-operator realization.
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        #[command(flatten)]
        param: ParamArgs,
        /// Largest root order in sweeps.
        #[arg(long)]
        max_m: Option<u64>,
    },
    /// Ladder operators realized as rescaled undeformed ones.
    Polychronakos {
        #[command(flatten)]
        param: ParamArgs,
        /// Largest n in the F recurrence check.
        #[arg(long, default_value_t = 50)]
        n_max: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Root of unity exp(2 pi i j / m), written m:j.
    #[arg(long, value_name = "M:J", conflicts_with = "real")]
    root: Option<RootOfUnity>,
    /// Real deformation parameter q > 0.
    #[arg(long, value_name = "Q", allow_negative_numbers = true)]
    real: Option<f64>,
    /// Fock space dimension (defaults to m for roots).
    #[arg(long, value_name = "D")]
    dim: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad or inconsistent arguments: exit 2.
    Usage(String),
}

impl ParamArgs {
    /// `None` when neither flag is given.
    pub fn param(&self) -> Result<Option<DeformParam>, CliError> {
        match (self.root, self.real) {
            (Some(r), None) => Ok(Some(DeformParam::Root(r))),
            (None, Some(q)) => DeformParam::real(q)
                .map(Some)
                .map_err(|e| CliError::Usage(format!("unsupported regime: {e}"))),
            (None, None) => Ok(None),
            (Some(_), Some(_)) => Err(CliError::Usage("--root and --real are exclusive".into())),
        }
    }

    pub fn require_param(&self) -> Result<DeformParam, CliError> {
        self.param()?
            .ok_or_else(|| CliError::Usage("one of --root m:j or --real q is required".into()))
    }

    /// `--dim`, defaulting to `m` for roots; real `q` needs it explicitly.
    pub fn dim_for(&self, param: &DeformParam) -> Result<usize, CliError> {
        match (self.dim, param.natural_dim()) {
            (Some(d), _) => Ok(d),
            (None, Some(m)) => Ok(m),
            (None, None) => Err(CliError::Usage("--real requires --dim".into())),
        }
    }
}

/// What the process reports back once output has been written.
pub enum Status {
    Ok,
    CheckFailed,
    InternalFault,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if !(cli.tolerance.is_finite() && cli.tolerance > 0.0) {
        eprintln!("error: --tolerance must be a positive number");
        return ExitCode::from(2);
    }

    let tol = cli.tolerance;
    let outcome = match &cli.command {
        Command::Gauss { n, m } => commands::gauss(*n, *m),
        Command::Qnumber { n, param } => commands::qnumber(*n, param),
        Command::Classify { m, j } => commands::classify(*m, *j),
        Command::Ham { param } => commands::ham(param, tol),
        Command::Verify {
            scope,
            param,
            max_m,
        } => commands::verify(*scope, param, *max_m, tol),
        Command::Polychronakos { param, n_max } => commands::polychronakos(param, *n_max, tol),
    };

    let (envelope, table, status) = match outcome {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };

    let text = match cli.format {
        Format::Json => envelope.to_json(),
        Format::Table => table,
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(3);
    }

    match status {
        Status::Ok => ExitCode::SUCCESS,
        Status::CheckFailed => {
            eprintln!("one or more checks failed");
            ExitCode::from(1)
        }
        Status::InternalFault => {
            eprintln!("internal consistency check exceeded tolerance");
            ExitCode::from(3)
        }
    }
}
