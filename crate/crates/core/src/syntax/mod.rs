//! Textual syntax for databases, formulas and v-pairs (`.4vl` files).
//!
//! ```text
//! % comments run to the end of the line
//! H2(202) = t.
//! rule Humid(?x) <- H1(?x) (+) H2(?x).
//! rule ~Store(?x) <- Humid(?x).
//! ```
//!
//! Variables are `?`-prefixed, constants are lowercase identifiers or
//! integers, predicates are capitalised. Connectors, tightest first:
//! unary (`~`, `conf`, `compl`, `T(..)`, `B(..)`, `N(..)`, `F(..)`, `inc(..)`),
//! `(x)`, `&`, `(+)` and `(o)`, `|`, then the right-associative implications
//! `->`, `=>`, `~>`, `*->`, `*~>`.

mod lexer;
mod parser;
mod print;

pub use parser::{parse_database, parse_formula, parse_vpair};
pub use print::{binary_token, serialize_database, serialize_vset, unary_token};

use crate::truth::TruthValue;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(String),
    Syntax(String),
    ReservedPredicate(String),
    ArityMismatch {
        predicate: String,
        expected: usize,
        found: usize,
    },
    HeadVariableNotInBody(String),
    ConnectorNotAllowed(String),
    UnknownInFact,
    ConflictingFact {
        fact: String,
        first: TruthValue,
        second: TruthValue,
    },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Lexical(m) => write!(f, "lexical error: {m}"),
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::ReservedPredicate(p) => {
                write!(f, "`{p}` is a connector and cannot name a predicate")
            }
            ParseErrorKind::ArityMismatch {
                predicate,
                expected,
                found,
            } => write!(
                f,
                "predicate {predicate} used with arity {found}, previously {expected}"
            ),
            ParseErrorKind::HeadVariableNotInBody(v) => {
                write!(f, "head variable ?{v} does not occur in the rule body")
            }
            ParseErrorKind::ConnectorNotAllowed(c) => {
                write!(f, "connector `{c}` is not allowed in a rule body")
            }
            ParseErrorKind::UnknownInFact => {
                write!(
                    f,
                    "facts cannot be declared `n`; unknown facts are not stored"
                )
            }
            ParseErrorKind::ConflictingFact {
                fact,
                first,
                second,
            } => write!(f, "conflicting values for {fact}: {first} and {second}"),
        }
    }
}

impl ParseError {
    /// True for a duplicate fact declaration with a different value.
    pub fn is_inconsistent_extension(&self) -> bool {
        matches!(self.kind, ParseErrorKind::ConflictingFact { .. })
    }
}
