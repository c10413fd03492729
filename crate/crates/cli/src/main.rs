//! `pring`: batch front end for the partial-ring library.

mod commands;
mod selfcheck;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pring::{Budget, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Doc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Ga,
    Gm,
    Gln,
}

#[derive(Debug, Parser)]
#[command(name = "pring", version, about = "Partial monoids and partial rings over finite carriers")]
struct Cli {
    /// Elements a saturation (associative closure, tensor) may create.
    #[arg(long, global = true, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
    budget_elems: u64,
    /// Words a single word-problem search may visit.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_states: u64,
    /// Search nodes the presentation solver may visit.
    #[arg(long, global = true, default_value_t = 200_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_nodes: u64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format; `doc` emits ring documents where a command produces a ring.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Extra directories searched for ring documents.
    #[arg(long = "path", global = true)]
    paths: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a ring or monoid document against the axioms.
    Validate { path: PathBuf },
    /// Prime spectrum, stalks, global sections and the Spec–Γ check.
    Spec { ring: String },
    /// Points of G_a, G_m or GL_n over a ring.
    Group {
        kind: Kind,
        ring: String,
        /// Matrix size for `gln`.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Point counts of projective n-space over a partial field.
    Points {
        ring: Option<String>,
        n: Option<usize>,
        #[arg(long = "field", conflicts_with = "ring")]
        field_flag: Option<String>,
        #[arg(long = "n", conflicts_with = "n")]
        n_flag: Option<usize>,
    },
    /// Quotient by the congruence generated by `a=b` pairs (and any `relate` entries of the document).
    Quotient { ring: String, relations: Vec<String> },
    /// Tensor product of two rings.
    Tensor { a: String, b: String },
    /// Seeded randomized cross-checks over the built-in corpus.
    Selfcheck {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

/// Caps and output settings shared by all commands.
#[derive(Debug, Clone)]
pub struct WorkspaceConfig {
    pub budget: Budget,
    pub format: Option<Format>,
    pub paths: Vec<PathBuf>,
    pub seed: u64,
}

impl WorkspaceConfig {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Structure(_) => 2,
        Error::BudgetExceeded { .. } => 3,
        Error::CrossCheck(_) => 4,
        Error::DegenerateCongruence => 5,
        Error::NotAdditive { .. } | Error::NotEffective | Error::NotPartialField | Error::Invalid(..) => 1,
    }
}

fn run(cli: Cli) -> pring::Result<u8> {
    let cfg = WorkspaceConfig {
        budget: Budget {
            max_elems: cli.budget_elems as usize,
            max_states: cli.budget_states as usize,
            max_solver_nodes: cli.budget_nodes,
            revalidate: true,
            ..Budget::default()
        },
        format: cli.format,
        paths: cli.paths,
        seed: cli.seed,
    };
    match cli.command {
        Command::Validate { path } => commands::validate(&cfg, &path),
        Command::Spec { ring } => commands::spectrum(&cfg, &ring),
        Command::Group { kind, ring, n } => commands::group(&cfg, kind, n, &ring),
        Command::Points { ring, n, field_flag, n_flag } => {
            let ring = ring.or(field_flag).ok_or_else(|| Error::Parse("points needs a ring".into()))?;
            let n = n.or(n_flag).ok_or_else(|| Error::Parse("points needs n".into()))?;
            commands::points(&cfg, &ring, n)
        }
        Command::Quotient { ring, relations } => commands::quotient(&cfg, &ring, &relations),
        Command::Tensor { a, b } => commands::tensor(&cfg, &a, &b),
        Command::Selfcheck { samples } => selfcheck::run(&cfg, samples),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
