//! Command-line driver over `omega-core`: a text document format for named
//! algebras, representations, diagrams and generating sets, and one report
//! per command.
//!
//! Exit codes: 0 success, 1 unreadable input or bad arguments, 2 semantic
//! failure (including a failed check), 3 search budget exceeded.

pub mod commands;
pub mod document;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use omega_core::search::{BUDGET_ENV, DEFAULT_BUDGET};
use thiserror::Error;

pub use document::{DocError, Document, Entry, GenSets, Object};

#[derive(Debug, Parser)]
#[command(name = "omega", version, about = "Finite Omega-algebras, their representations and diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a document and check every object in it.
    Validate { file: PathBuf },
    /// Effective, free and transitivity flags of a representation.
    Props {
        file: PathBuf,
        #[arg(short, long)]
        object: Option<String>,
    },
    /// Generated subrepresentation (or subdiagram) with a smallest word per element.
    Closure {
        file: PathBuf,
        #[arg(short, long)]
        object: Option<String>,
        /// Elements like `2,3`, a gens object name, or `VERTEX=2,3` per diagram vertex.
        #[arg(long)]
        gens: Vec<String>,
    },
    /// Minimal generating set reached by removing elements in descending order.
    Quasibasis {
        file: PathBuf,
        #[arg(short, long)]
        object: Option<String>,
        /// Starting set; the full carrier when omitted.
        #[arg(long)]
        gens: Vec<String>,
    },
    /// Orbits and stabilizers of a group action.
    Orbits {
        file: PathBuf,
        #[arg(short, long)]
        object: Option<String>,
        /// The actor operator that acts by composition.
        #[arg(long)]
        product: String,
    },
    /// Automorphisms of an algebra, representation or diagram.
    Autgroup {
        file: PathBuf,
        #[arg(short, long)]
        object: Option<String>,
    },
    /// Group, Omega-group and Omega-ring structure of an algebra.
    Classify {
        file: PathBuf,
        #[arg(short, long)]
        object: Option<String>,
        /// Addition to try; requires --mul.
        #[arg(long, requires = "mul")]
        add: Option<String>,
        /// Product to try; requires --add.
        #[arg(long, requires = "add")]
        mul: Option<String>,
    },
    /// Whether two operations of an algebra satisfy the interchange law.
    Interchange {
        file: PathBuf,
        op1: String,
        op2: String,
        #[arg(short, long)]
        object: Option<String>,
    },
    /// Tensor product of cyclic groups Z_m (x) Z_n [(x) Z_k].
    Tensor {
        #[arg(num_args = 2..=3, required = true, value_parser = clap::value_parser!(u64).range(1..))]
        moduli: Vec<u64>,
    },
    /// Layers and commutativity of a diagram.
    DiagramCheck {
        file: PathBuf,
        #[arg(short, long)]
        object: Option<String>,
    },
    /// Build a worked example; --check verifies its laws, --emit prints it as a document.
    Zoo {
        kind: String,
        params: Vec<usize>,
        #[arg(long, conflicts_with = "emit")]
        check: bool,
        #[arg(long)]
        emit: bool,
    },
    /// Print a document in canonical form.
    Format { file: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{context}: {message}")]
    Semantic { context: String, message: String },
    #[error("{context}: {message}")]
    Resource { context: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Semantic { .. } => 2,
            CliError::Resource { .. } => 3,
        }
    }

    pub fn semantic(context: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Semantic {
            context: context.into(),
            message: message.into(),
        }
    }

    /// Maps a library error, keeping budget failures apart.
    pub fn core(context: impl Into<String>, e: omega_core::Error) -> Self {
        let context = context.into();
        let message = e.to_string();
        if e.is_resource() {
            CliError::Resource { context, message }
        } else {
            CliError::Semantic { context, message }
        }
    }
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Search budget from the environment, `DEFAULT_BUDGET` when unset.
pub fn budget() -> Result<u64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Err(_) => Ok(DEFAULT_BUDGET),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{BUDGET_ENV} must be a nonnegative integer, found {v:?}"))),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok(report) => Outcome {
            code: report.code,
            stdout: report.text,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
