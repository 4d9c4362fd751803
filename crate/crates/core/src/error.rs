use crate::formula::{Fact, Symbol};
use crate::syntax::ParseError;
use crate::truth::TruthValue;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("variable ?{0} is not bound")]
    UnboundVariable(Symbol),

    #[error("formula is not ground: it contains ?{0}")]
    NotGround(Symbol),

    #[error("connector `{connector}` is not allowed in a rule body")]
    ConnectorNotAllowed { connector: String },

    #[error("head variable ?{variable} does not occur in the rule body")]
    HeadVariableNotInBody { variable: Symbol },

    #[error("predicate {predicate} used with arity {found}, previously {expected}")]
    ArityMismatch {
        predicate: Symbol,
        expected: usize,
        found: usize,
    },

    #[error("conflicting values for {fact}: {first} and {second}")]
    ConflictingFact {
        fact: Fact,
        first: TruthValue,
        second: TruthValue,
    },

    #[error("unsafe rule `{rule}`: block `{block}` does not bind {}", fmt_vars(.missing))]
    UnsafeRule {
        rule: String,
        block: String,
        missing: Vec<Symbol>,
    },

    #[error("normal form exceeds the node budget of {budget}")]
    NodeBudgetExceeded { budget: usize },

    #[error("no fixpoint reached within {limit} iterations")]
    IterationLimit { limit: usize },

    #[error("active Herbrand base has {size} facts; brute-force limit is {limit}")]
    BaseTooLarge { size: usize, limit: usize },

    #[error("truth function arity {arity} exceeds the verification bound {bound}")]
    ArityBound { arity: usize, bound: usize },

    #[error("invalid truth function: {0}")]
    InvalidTruthFunction(String),

    #[error("invalid combinator: {0}")]
    InvalidCombinator(String),
}

fn fmt_vars(vars: &[Symbol]) -> String {
    vars.iter()
        .map(|v| format!("?{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// Errors caused by exceeding a configured size or iteration bound.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::NodeBudgetExceeded { .. }
                | Error::IterationLimit { .. }
                | Error::BaseTooLarge { .. }
                | Error::ArityBound { .. }
        )
    }
}
