//! Batch command-line interface to the `gindex` library.
//!
//! Exit status: 0 computed, 1 property violated, 2 input error, 3 budget exceeded.

mod commands;
pub mod formats;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "gindex",
    version,
    about = "Equivariant index computations and certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Write the result file here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct Budget {
    /// Maximum number of search leaves.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Join of two G-complexes with the diagonal action.
    BuildJoin {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// The n-fold join J^n(G) of a group file.
    BuildJg {
        group: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Barycentric subdivision of a complex file or an action file.
    Subdivide {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Orbit complex of a free action, subdividing until the action is regular.
    Quotient {
        action: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Camomile of a free G-subcomplex X0 of a complex X.
    Camomile {
        complex: PathBuf,
        x0: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// ind_p with a nonzero witness class.
    Index {
        action: PathBuf,
        #[arg(long)]
        prime: usize,
        /// Generator of the subgroup of order p (default: the first one).
        #[arg(long)]
        generator: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Certificate bracketing the index between ind_p and a labeling witness.
    Sandwich {
        action: PathBuf,
        /// Primes for the lower bound (repeatable; default: every prime divisor of |G|).
        #[arg(long = "prime")]
        primes: Vec<usize>,
        /// Largest class count scanned for the upper bound.
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Equivariance and complementary edges of a labeling.
    LabelingCheck {
        action: PathBuf,
        labeling: PathBuf,
        /// Ambient complex; the action then acts on a subcomplex of it.
        #[arg(long)]
        complex: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Search for an equivariant labeling with n classes and no complementary edge.
    LabelingSearch {
        action: PathBuf,
        #[arg(long)]
        n: usize,
        /// Ambient complex; equivariance is then required on the action's subcomplex only.
        #[arg(long)]
        complex: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Check that every labeling equivariant on X0 has a complementary edge.
    Tucker {
        complex: PathBuf,
        x0: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Search for an equivariant simplicial map between two actions.
    MapSearch {
        source: PathBuf,
        target: PathBuf,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Degree of a map between orientable pseudomanifolds.
    Degree {
        map: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Whether a map induces zero on degree-n cohomology.
    Nct {
        map: PathBuf,
        #[arg(long)]
        n: usize,
        /// Coefficient field F_p (default: the integers).
        #[arg(long)]
        prime: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a named check and emit a certificate.
    Verify {
        check: Check,
        /// Action file (X0 for `camomile`).
        #[arg(long)]
        action: PathBuf,
        /// Ambient complex (for `camomile`).
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Certificate to re-validate (for `certificate`).
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        prime: Option<usize>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    /// Re-validate a sandwich certificate against its action.
    Certificate,
    /// ind_p against labeling search for one class count.
    LabelingConsistency,
    /// ind_p of the camomile is one more than ind_p of X0.
    Camomile,
    /// Degrees of equivariant self-maps are 1 mod |G|.
    DegreeLaw,
    /// No equivariant map X * G -> X.
    NoJoinSelfmap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Computed,
    Violated,
    BudgetExceeded,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Computed => 0,
            Status::Violated => 1,
            Status::BudgetExceeded => 3,
        }
    }
}

/// Result of a subcommand: the file to emit and a one-line summary.
pub struct Outcome {
    pub status: Status,
    pub summary: String,
    pub artifact: String,
}

#[derive(Debug)]
pub struct CliError(String);

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError(msg.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

fn dispatch(command: Command) -> Result<(Outcome, Option<PathBuf>), CliError> {
    use commands as c;
    Ok(match command {
        Command::BuildJoin {
            left,
            right,
            output,
        } => (c::build_join(&left, &right)?, output.out),
        Command::BuildJg { group, n, output } => (c::build_jg(&group, n)?, output.out),
        Command::Subdivide { input, output } => (c::subdivide(&input)?, output.out),
        Command::Quotient { action, output } => (c::quotient(&action)?, output.out),
        Command::Camomile {
            complex,
            x0,
            output,
        } => (c::camomile(&complex, &x0)?, output.out),
        Command::Index {
            action,
            prime,
            generator,
            output,
        } => (c::index(&action, prime, generator)?, output.out),
        Command::Sandwich {
            action,
            primes,
            n,
            budget,
            output,
        } => (c::sandwich(&action, &primes, n, budget.budget)?, output.out),
        Command::LabelingCheck {
            action,
            labeling,
            complex,
            output,
        } => (
            c::labeling_check(&action, &labeling, complex.as_deref())?,
            output.out,
        ),
        Command::LabelingSearch {
            action,
            n,
            complex,
            budget,
            output,
        } => (
            c::labeling_search(&action, n, complex.as_deref(), budget.budget)?,
            output.out,
        ),
        Command::Tucker {
            complex,
            x0,
            n,
            budget,
            output,
        } => (c::tucker(&complex, &x0, n, budget.budget)?, output.out),
        Command::MapSearch {
            source,
            target,
            budget,
            output,
        } => (c::map_search(&source, &target, budget.budget)?, output.out),
        Command::Degree { map, output } => (c::degree(&map)?, output.out),
        Command::Nct {
            map,
            n,
            prime,
            output,
        } => (c::nct(&map, n, prime)?, output.out),
        Command::Verify {
            check,
            action,
            complex,
            certificate,
            n,
            prime,
            budget,
            output,
        } => {
            let req = c::VerifyRequest {
                action,
                complex,
                certificate,
                n,
                prime,
                budget: budget.budget,
            };
            let outcome = match check {
                Check::Certificate => c::verify_certificate(&req)?,
                Check::LabelingConsistency => c::verify_labeling_consistency(&req)?,
                Check::Camomile => c::verify_camomile(&req)?,
                Check::DegreeLaw => c::verify_degree_law(&req)?,
                Check::NoJoinSelfmap => c::verify_no_join_selfmap(&req)?,
            };
            (outcome, output.out)
        }
    })
}

/// Parses the process arguments, runs the subcommand and writes its output.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, out) = match dispatch(cli.command) {
        Ok(r) => r,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, &outcome.artifact) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            println!("{}", outcome.summary);
        }
        None => {
            eprintln!("{}", outcome.summary);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.artifact.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
        }
    }
    ExitCode::from(outcome.status.code())
}
