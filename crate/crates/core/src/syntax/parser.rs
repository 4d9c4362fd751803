use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, ParseErrorKind};
use crate::engine::Database;
use crate::formula::{Atom, Fact, Formula, Rule, Sign, Symbol, Term, VSet};
use crate::truth::{BinaryConnector, TruthValue, UnaryConnector};
use std::collections::BTreeMap;

const RESERVED: [&str; 4] = ["T", "B", "N", "F"];

/// Parses a whole `.4vl` document.
pub fn parse_database(src: &str) -> Result<Database, ParseError> {
    let mut p = Parser::new(src)?;
    let mut extension = VSet::new();
    let mut rules = Vec::new();
    let mut arities: BTreeMap<Symbol, usize> = BTreeMap::new();

    while !p.at(&Tok::Eof) {
        let start = p.pos;
        if matches!(p.peek(), Tok::Lower(w) if w == "rule") {
            p.bump();
            let sign = if p.eat(&Tok::Tilde) {
                Sign::Negative
            } else {
                Sign::Positive
            };
            let head_pos = p.pos;
            let head = p.atom()?;
            p.expect(&Tok::LeftArrow, "`<-`")?;
            let body_pos = p.pos;
            let body = p.formula()?;
            p.expect(&Tok::Dot, "`.` after rule")?;

            check_arity(&p, head_pos, &head, &mut arities)?;
            for a in body.atoms() {
                check_arity(&p, body_pos, a, &mut arities)?;
            }
            if let Some(c) = body.first_non_body_connector() {
                return Err(p.error_at(body_pos, ParseErrorKind::ConnectorNotAllowed(c)));
            }
            let body_vars = body.free_vars();
            if let Some(v) = head.vars().find(|v| !body_vars.contains(*v)) {
                return Err(p.error_at(
                    head_pos,
                    ParseErrorKind::HeadVariableNotInBody(v.to_string()),
                ));
            }
            rules.push(Rule::new(sign, head, body).expect("rule invariants checked above"));
        } else {
            let atom = p.atom()?;
            let fact = atom
                .to_fact()
                .map_err(|_| p.error_at(start, syntax("facts must be ground")))?;
            p.expect(&Tok::Eq, "`=` after fact")?;
            let value_pos = p.pos;
            let value = p.truth_value()?;
            p.expect(&Tok::Dot, "`.` after fact")?;
            if value == TruthValue::None {
                return Err(p.error_at(value_pos, ParseErrorKind::UnknownInFact));
            }
            check_arity(&p, start, &atom, &mut arities)?;
            let old = extension.get(&fact);
            if old != TruthValue::None && old != value {
                return Err(p.error_at(
                    start,
                    ParseErrorKind::ConflictingFact {
                        fact: super::print::fact_to_string(&fact),
                        first: old,
                        second: value,
                    },
                ));
            }
            extension.set(fact, value);
        }
    }
    Ok(Database::from_parts(extension, rules))
}

/// Parses a single formula; any connector is accepted.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.expect(&Tok::Eof, "end of formula")?;
    Ok(f)
}

/// Parses `Fact=v` (an optional trailing `.` is accepted); `n` is allowed.
pub fn parse_vpair(src: &str) -> Result<(Fact, TruthValue), ParseError> {
    let mut p = Parser::new(src)?;
    let start = p.pos;
    let fact = p
        .atom()?
        .to_fact()
        .map_err(|_| p.error_at(start, syntax("facts must be ground")))?;
    p.expect(&Tok::Eq, "`=`")?;
    let v = p.truth_value()?;
    p.eat(&Tok::Dot);
    p.expect(&Tok::Eof, "end of input")?;
    Ok((fact, v))
}

fn syntax(msg: &str) -> ParseErrorKind {
    ParseErrorKind::Syntax(msg.to_string())
}

fn check_arity(
    p: &Parser,
    pos: usize,
    atom: &Atom,
    arities: &mut BTreeMap<Symbol, usize>,
) -> Result<(), ParseError> {
    match arities.get(&atom.predicate) {
        Some(&expected) if expected != atom.arity() => Err(p.error_at(
            pos,
            ParseErrorKind::ArityMismatch {
                predicate: atom.predicate.to_string(),
                expected,
                found: atom.arity(),
            },
        )),
        Some(_) => Ok(()),
        None => {
            arities.insert(atom.predicate.clone(), atom.arity());
            Ok(())
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[pos.min(self.toks.len() - 1)];
        ParseError {
            line: t.line,
            column: t.column,
            kind,
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let found = match self.peek() {
            Tok::Eof => "end of input".to_string(),
            t => describe(t),
        };
        self.error_at(
            self.pos,
            ParseErrorKind::Syntax(format!("expected {wanted}, found {found}")),
        )
    }

    fn expect(&mut self, t: &Tok, wanted: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn truth_value(&mut self) -> Result<TruthValue, ParseError> {
        match self.peek() {
            Tok::Lower(w) => match w.parse::<TruthValue>() {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => Err(self.unexpected("a truth value (t, b, n, f)")),
            },
            _ => Err(self.unexpected("a truth value (t, b, n, f)")),
        }
    }

    /// `(+)`, `(x)` or `(o)` starting at the current token.
    fn paren_op(&self) -> Option<BinaryConnector> {
        if *self.peek() != Tok::LParen || *self.peek_at(2) != Tok::RParen {
            return None;
        }
        match self.peek_at(1) {
            Tok::Plus => Some(BinaryConnector::KJoin),
            Tok::Lower(w) if w == "x" => Some(BinaryConnector::KMeet),
            Tok::Lower(w) if w == "o" => Some(BinaryConnector::Odot),
            _ => None,
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if let Tok::Imp(c) = *self.peek() {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::binary(c, lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.join()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.join()?;
            lhs = Formula::binary(BinaryConnector::Or, lhs, rhs);
        }
        Ok(lhs)
    }

    fn join(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while let Some(c @ (BinaryConnector::KJoin | BinaryConnector::Odot)) = self.paren_op() {
            self.pos += 3;
            let rhs = self.conjunction()?;
            lhs = Formula::binary(c, lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.meet()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.meet()?;
            lhs = Formula::binary(BinaryConnector::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn meet(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.paren_op() == Some(BinaryConnector::KMeet) {
            self.pos += 3;
            let rhs = self.unary()?;
            lhs = Formula::binary(BinaryConnector::KMeet, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::unary(UnaryConnector::Neg, self.unary()?))
            }
            Tok::Lower(w) if w == "conf" => {
                self.bump();
                Ok(Formula::unary(UnaryConnector::Conf, self.unary()?))
            }
            Tok::Lower(w) if w == "compl" => {
                self.bump();
                Ok(Formula::unary(UnaryConnector::Compl, self.unary()?))
            }
            Tok::Lower(w) if w == "inc" => {
                self.bump();
                self.applied(UnaryConnector::NonValid)
            }
            Tok::Upper(w) if RESERVED.contains(&w.as_str()) => {
                let conn = match w.as_str() {
                    "T" => UnaryConnector::IsTrue,
                    "B" => UnaryConnector::IsBoth,
                    "N" => UnaryConnector::IsNone,
                    _ => UnaryConnector::IsFalse,
                };
                if *self.peek_at(1) != Tok::LParen {
                    return Err(self.error_at(self.pos, ParseErrorKind::ReservedPredicate(w)));
                }
                self.bump();
                self.applied(conn)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Upper(_) => Ok(Formula::Atom(self.atom()?)),
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn applied(&mut self, conn: UnaryConnector) -> Result<Formula, ParseError> {
        self.expect(&Tok::LParen, "`(`")?;
        let f = self.formula()?;
        self.expect(&Tok::RParen, "`)`")?;
        Ok(Formula::unary(conn, f))
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let name = match self.peek() {
            Tok::Upper(w) => w.clone(),
            _ => return Err(self.unexpected("a predicate")),
        };
        if RESERVED.contains(&name.as_str()) {
            return Err(self.error_at(self.pos, ParseErrorKind::ReservedPredicate(name)));
        }
        self.bump();
        let mut args = Vec::new();
        // argument lists must hug the predicate name: `P(a)`, whereas `P (x) Q` is a meet
        if self.at(&Tok::LParen) && !self.toks[self.pos].spaced {
            self.bump();
            if !self.eat(&Tok::RParen) {
                loop {
                    args.push(self.term()?);
                    if self.eat(&Tok::RParen) {
                        break;
                    }
                    self.expect(&Tok::Comma, "`,` or `)`")?;
                }
            }
        }
        Ok(Atom::new(name.as_str(), args))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let t = match self.peek() {
            Tok::Lower(w) | Tok::Int(w) => Term::Const(Symbol::new(w)),
            Tok::Var(v) => Term::Var(Symbol::new(v)),
            _ => return Err(self.unexpected("a constant or ?variable")),
        };
        self.bump();
        Ok(t)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Upper(w) | Tok::Lower(w) | Tok::Int(w) => format!("`{w}`"),
        Tok::Var(v) => format!("`?{v}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Eq => "`=`".into(),
        Tok::LeftArrow => "`<-`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Imp(c) => format!("`{}`", super::binary_token(*c)),
        Tok::Eof => "end of input".into(),
    }
}
