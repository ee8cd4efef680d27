//! `srlab`: build, check and catalog finite srl-monoids from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check fails
//! (the failing instance is printed), 2 on unreadable or malformed input.

mod commands;
mod target;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "srlab", version, about = "Finite subresiduated lattice-ordered commutative monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output layout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Skip runtime re-verification of results that hold by construction.
    #[arg(long, global = true)]
    fast: bool,

    /// Print membership certificates alongside results.
    #[arg(long, global = true)]
    witnesses: bool,

    /// Largest carrier size to enumerate or test.
    #[arg(long, global = true)]
    max_size: Option<usize>,

    /// Catalog directory to write or read.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Check the l-monoid laws, residuation and both equational bases.
    Check {
        /// `examples:<name>` or a path to an algebra file.
        target: String,
    },
    /// Compute the arrow table from `Q` and print the completed algebra file.
    Residuate {
        target: String,
        /// Elements of `Q`, comma separated (names or indices).
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<String>>,
    },
    /// List congruences and strongly convex subalgebras and check that they correspond.
    Congruences { target: String },
    /// List strongly convex subalgebras, or the one generated by `--gen`.
    Convex {
        target: String,
        /// Generators, comma separated; each must lie below the unit.
        #[arg(long = "gen", value_delimiter = ',')]
        generators: Option<Vec<String>>,
    },
    /// Describe the principal congruence of a pair.
    Principal { target: String, a: String, b: String },
    /// Test identities (all six by default).
    Identity {
        target: String,
        /// Identity tags, comma separated: C1, C2, E1, E2, LATDIST, PRODMEETDIST.
        #[arg(long = "id", value_delimiter = ',')]
        ids: Vec<String>,
    },
    /// Enumerate srl-monoids up to isomorphism and write a catalog.
    Enumerate,
    /// List the built-in algebras, or print one as an algebra file.
    Examples { name: Option<String> },
    /// Run a test suite.
    Suite {
        #[command(subcommand)]
        which: SuiteKind,
    },
}

#[derive(Subcommand)]
enum SuiteKind {
    /// Every check on the built-in algebras and on a catalog.
    Full,
}

/// Options shared by every command.
pub struct Options {
    pub format: OutputFormat,
    pub mode: srlab::Mode,
    pub witnesses: bool,
    pub max_size: Option<usize>,
    pub catalog: Option<PathBuf>,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// A check failed; the output already explains it.
    Math(String),
    /// The input could not be used.
    Input(String),
}

impl From<srlab::AlgebraError> for Failure {
    fn from(e: srlab::AlgebraError) -> Failure {
        use srlab::AlgebraError::*;
        match e {
            SizeBound { .. } | IndexOutOfRange { .. } | GeneratorNotNegative(_) | NotConvex | NotASubchain { .. } => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Math(format!("FAIL  {e}\n")),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        format: cli.format,
        mode: if cli.fast { srlab::Mode::Fast } else { srlab::Mode::Verify },
        witnesses: cli.witnesses,
        max_size: cli.max_size,
        catalog: cli.catalog,
    };
    let result = match cli.command {
        Command::Check { target } => commands::check(&opts, &target),
        Command::Residuate { target, q } => commands::residuate(&opts, &target, q.as_deref()),
        Command::Congruences { target } => commands::congruences(&opts, &target),
        Command::Convex { target, generators } => commands::convex(&opts, &target, generators.as_deref()),
        Command::Principal { target, a, b } => commands::principal(&opts, &target, &a, &b),
        Command::Identity { target, ids } => commands::identity(&opts, &target, &ids),
        Command::Enumerate => commands::enumerate(&opts),
        Command::Examples { name } => commands::examples(&opts, name.as_deref()),
        Command::Suite { which: SuiteKind::Full } => commands::suite_full(&opts),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Math(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
