//! Standard and integrative updates of a database extension. Rules are never
//! touched; every update returns a new database.

use crate::engine::Database;
use crate::error::{Error, Result};
use crate::formula::{Atom, Fact, Formula};
use crate::syntax;
use crate::truth::{BinaryConnector, TruthValue, UnaryConnector};
use std::fmt;
use std::str::FromStr;

/// A fact with the value it should take. `n` requests deletion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPair {
    pub fact: Fact,
    pub value: TruthValue,
}

impl VPair {
    pub fn new(fact: Fact, value: TruthValue) -> VPair {
        VPair { fact, value }
    }
}

impl FromStr for VPair {
    type Err = Error;

    /// `Fact = v`, with an optional trailing `.`.
    fn from_str(s: &str) -> Result<VPair> {
        let (fact, value) = syntax::parse_vpair(s)?;
        Ok(VPair { fact, value })
    }
}

impl fmt::Display for VPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.fact, self.value)
    }
}

pub const NEW: &str = "NEW";
pub const CUR: &str = "CUR";

/// A binary expression over the placeholders `NEW` (incoming value) and
/// `CUR` (stored value), built from `¬`, `∨`, `∧`, `⊕`, `⊗` and `⊙`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Combinator {
    expr: Formula,
}

impl Combinator {
    pub fn new(expr: Formula) -> Result<Combinator> {
        let (mut new, mut cur) = (false, false);
        check_combinator(&expr, &mut new, &mut cur)?;
        if !(new && cur) {
            return Err(Error::InvalidCombinator(format!(
                "`{expr}` must mention both {NEW} and {CUR}"
            )));
        }
        Ok(Combinator { expr })
    }

    fn placeholders(conn: BinaryConnector) -> Combinator {
        Combinator {
            expr: Formula::binary(
                conn,
                Formula::from(Atom::prop(NEW)),
                Formula::from(Atom::prop(CUR)),
            ),
        }
    }

    pub fn oplus() -> Combinator {
        Combinator::placeholders(BinaryConnector::KJoin)
    }

    pub fn otimes() -> Combinator {
        Combinator::placeholders(BinaryConnector::KMeet)
    }

    pub fn odot() -> Combinator {
        Combinator::placeholders(BinaryConnector::Odot)
    }

    pub fn or() -> Combinator {
        Combinator::placeholders(BinaryConnector::Or)
    }

    pub fn and() -> Combinator {
        Combinator::placeholders(BinaryConnector::And)
    }

    /// Named combinators (`oplus`, `otimes`, `odot`, `or`, `and`) or
    /// `expr:<formula>` over `NEW` and `CUR`.
    pub fn from_spec(spec: &str) -> Result<Combinator> {
        match spec.trim() {
            "oplus" => Ok(Combinator::oplus()),
            "otimes" => Ok(Combinator::otimes()),
            "odot" => Ok(Combinator::odot()),
            "or" => Ok(Combinator::or()),
            "and" => Ok(Combinator::and()),
            other => match other.strip_prefix("expr:") {
                Some(src) => Combinator::new(syntax::parse_formula(src)?),
                None => Err(Error::InvalidCombinator(format!(
                    "unknown combinator `{other}`"
                ))),
            },
        }
    }

    pub fn expr(&self) -> &Formula {
        &self.expr
    }

    pub fn apply(&self, new: TruthValue, cur: TruthValue) -> TruthValue {
        self.expr
            .eval_with(&mut |atom: &Atom| {
                Ok(if atom.predicate.as_str() == NEW {
                    new
                } else {
                    cur
                })
            })
            .expect("validated combinator")
    }
}

impl fmt::Display for Combinator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

fn check_combinator(f: &Formula, new: &mut bool, cur: &mut bool) -> Result<()> {
    match f {
        Formula::Atom(a) if a.arity() == 0 && a.predicate.as_str() == NEW => *new = true,
        Formula::Atom(a) if a.arity() == 0 && a.predicate.as_str() == CUR => *cur = true,
        Formula::Atom(a) => {
            return Err(Error::InvalidCombinator(format!(
                "unexpected atom `{a}`; only {NEW} and {CUR} may occur"
            )))
        }
        Formula::Unary(UnaryConnector::Neg, a) => check_combinator(a, new, cur)?,
        Formula::Unary(conn, _) => {
            return Err(Error::InvalidCombinator(format!(
                "connector `{}` is not allowed",
                syntax::unary_token(*conn).trim()
            )))
        }
        Formula::Binary(conn, a, b) => {
            use BinaryConnector::*;
            if !matches!(conn, Or | And | KJoin | KMeet | Odot) {
                return Err(Error::InvalidCombinator(format!(
                    "connector `{}` is not allowed",
                    syntax::binary_token(*conn)
                )));
            }
            check_combinator(a, new, cur)?;
            check_combinator(b, new, cur)?;
        }
    }
    Ok(())
}

/// Replaces the stored value of the fact, or deletes it when the value is `n`.
pub fn standard_update(db: &Database, pair: &VPair) -> Database {
    let mut extension = db.extension().clone();
    extension.set(pair.fact.clone(), pair.value);
    db.with_extension(extension)
}

/// Stores `combinator(new, current)`; a result of `n` deletes the entry.
pub fn integrative_update(db: &Database, pair: &VPair, combinator: &Combinator) -> Database {
    let current = db.extension().get(&pair.fact);
    let value = combinator.apply(pair.value, current);
    standard_update(db, &VPair::new(pair.fact.clone(), value))
}

/// Applies the pairs left to right, each seeing the previous result.
pub fn standard_batch<'a, I>(db: &Database, pairs: I) -> Database
where
    I: IntoIterator<Item = &'a VPair>,
{
    pairs
        .into_iter()
        .fold(db.clone(), |acc, pair| standard_update(&acc, pair))
}

pub fn integrative_batch<'a, I>(db: &Database, pairs: I, combinator: &Combinator) -> Database
where
    I: IntoIterator<Item = &'a VPair>,
{
    pairs.into_iter().fold(db.clone(), |acc, pair| {
        integrative_update(&acc, pair, combinator)
    })
}
