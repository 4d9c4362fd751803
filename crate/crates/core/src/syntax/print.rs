use crate::engine::Database;
use crate::formula::{Atom, Fact, Formula, Rule, Sign, Term, VSet};
use crate::truth::{BinaryConnector, UnaryConnector};
use std::fmt::{self, Write};

pub fn unary_token(c: UnaryConnector) -> &'static str {
    match c {
        UnaryConnector::Neg => "~",
        UnaryConnector::Conf => "conf ",
        UnaryConnector::Compl => "compl ",
        UnaryConnector::IsTrue => "T",
        UnaryConnector::IsBoth => "B",
        UnaryConnector::IsNone => "N",
        UnaryConnector::IsFalse => "F",
        UnaryConnector::NonValid => "inc",
    }
}

pub fn binary_token(c: BinaryConnector) -> &'static str {
    match c {
        BinaryConnector::Or => "|",
        BinaryConnector::And => "&",
        BinaryConnector::KJoin => "(+)",
        BinaryConnector::KMeet => "(x)",
        BinaryConnector::Odot => "(o)",
        BinaryConnector::ImpMaterial => "=>",
        BinaryConnector::ImpFde => "->",
        BinaryConnector::ImpHook => "~>",
        BinaryConnector::ImpFdeStar => "*->",
        BinaryConnector::ImpHookStar => "*~>",
    }
}

const IMP: u8 = 1;
const UNARY: u8 = 6;
const ATOM: u8 = 7;

fn precedence(c: BinaryConnector) -> u8 {
    match c {
        BinaryConnector::Or => 2,
        BinaryConnector::KJoin | BinaryConnector::Odot => 3,
        BinaryConnector::And => 4,
        BinaryConnector::KMeet => 5,
        _ => IMP,
    }
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Atom(_) => ATOM,
        Formula::Unary(..) => UNARY,
        Formula::Binary(c, ..) => precedence(*c),
    }
}

fn write_formula(out: &mut impl Write, f: &Formula, min: u8) -> fmt::Result {
    let parens = level(f) < min;
    if parens {
        out.write_char('(')?;
    }
    match f {
        Formula::Atom(a) => write_atom(out, a)?,
        Formula::Unary(c, x) => {
            out.write_str(unary_token(*c))?;
            match c {
                UnaryConnector::Neg | UnaryConnector::Conf | UnaryConnector::Compl => {
                    write_formula(out, x, UNARY)?
                }
                _ => {
                    out.write_char('(')?;
                    write_formula(out, x, 0)?;
                    out.write_char(')')?;
                }
            }
        }
        Formula::Binary(c, l, r) => {
            let p = precedence(*c);
            // implications associate to the right, everything else to the left
            let (lmin, rmin) = if p == IMP { (p + 1, p) } else { (p, p + 1) };
            write_formula(out, l, lmin)?;
            write!(out, " {} ", binary_token(*c))?;
            write_formula(out, r, rmin)?;
        }
    }
    if parens {
        out.write_char(')')?;
    }
    Ok(())
}

fn write_args<T: fmt::Display>(out: &mut impl Write, args: &[T]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    out.write_char('(')?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.write_str(", ")?;
        }
        write!(out, "{a}")?;
    }
    out.write_char(')')
}

fn write_atom(out: &mut impl Write, a: &Atom) -> fmt::Result {
    write!(out, "{}", a.predicate)?;
    write_args(out, &a.args)
}

pub(super) fn fact_to_string(f: &Fact) -> String {
    f.to_string()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => write!(f, "{c}"),
            Term::Var(v) => write!(f, "?{v}"),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_atom(f, self)
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        write_args(f, &self.args)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.head_sign() == Sign::Negative {
            f.write_char('~')?;
        }
        write!(f, "{} <- {}", self.head(), self.body())
    }
}

impl fmt::Display for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (fact, v) in self.iter() {
            writeln!(f, "{fact} = {v}.")?;
        }
        Ok(())
    }
}

impl fmt::Display for Database {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.extension())?;
        for r in self.rules() {
            writeln!(f, "rule {r}.")?;
        }
        Ok(())
    }
}

/// Sorted `Fact = v.` lines.
pub fn serialize_vset(s: &VSet) -> String {
    s.to_string()
}

/// Extension lines in fact order, then rules in declaration order.
pub fn serialize_database(db: &Database) -> String {
    db.to_string()
}
