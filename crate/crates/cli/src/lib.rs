//! Command-line front end for fourdb: load `.4vl` files, compute semantics,
//! check safety, apply updates, synthesize formulas and run a REPL.

pub mod commands;
pub mod repl;
pub mod table;

use clap::{Parser, Subcommand};
use fourdb_core::Error;
use std::path::PathBuf;

pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 1;
    pub const UNSAFE_RULE: i32 = 2;
    pub const INCONSISTENT: i32 = 3;
    pub const RESOURCE_LIMIT: i32 = 4;
    /// A check ran to completion and found a violation (`laws`, `synth --verify`).
    pub const CHECK_FAILED: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(
    name = "fourdb",
    version,
    about = "Four-valued deductive database engine"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the least-fixpoint semantics of a database
    Semantics {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        /// Print every iteration before the fixpoint
        #[arg(long)]
        trace: bool,
        /// Ground over these constants as well as the active domain; unsafe rules are allowed
        #[arg(long, value_delimiter = ',')]
        universe: Option<Vec<String>>,
    },
    /// Evaluate a formula in the semantics of a database
    Query {
        file: PathBuf,
        #[arg(long)]
        formula: String,
        /// Also list bindings whose value is n
        #[arg(long)]
        all: bool,
    },
    /// Report whether every rule is safe
    CheckSafety { file: PathBuf },
    /// Print the disjunction/join normal form of a rule body
    Normalize {
        #[arg(long)]
        formula: String,
    },
    /// Overwrite stored values (n deletes); pairs apply left to right
    Update {
        file: PathBuf,
        #[arg(long = "set", required = true)]
        pairs: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Combine incoming values with the stored ones
    Integrate {
        file: PathBuf,
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
        /// oplus, otimes, odot, or, and, or expr:<formula over NEW and CUR>
        #[arg(long)]
        op: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a truth table (CSV) into a formula
    Synth {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        verify: bool,
    },
    /// Run the connector law suite
    Laws,
    /// Interactive session on a database
    Repl { file: PathBuf },
}

/// Maps an error to the process exit code.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return core_exit_code(e);
        }
        if let Some(e) = cause.downcast_ref::<fourdb_core::ParseError>() {
            return if e.is_inconsistent_extension() {
                exit::INCONSISTENT
            } else {
                exit::PARSE
            };
        }
    }
    exit::PARSE
}

fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(p) if p.is_inconsistent_extension() => exit::INCONSISTENT,
        Error::ConflictingFact { .. } => exit::INCONSISTENT,
        Error::UnsafeRule { .. } => exit::UNSAFE_RULE,
        e if e.is_resource_limit() => exit::RESOURCE_LIMIT,
        _ => exit::PARSE,
    }
}
