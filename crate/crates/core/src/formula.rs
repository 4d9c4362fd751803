//! Terms, atoms, formulas, rules, and v-sets.

use crate::error::{Error, Result};
use crate::truth::{BinaryConnector, TruthValue, UnaryConnector};
use std::collections::btree_map::{self, BTreeMap};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Interned-by-refcount name of a constant, variable or predicate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(s: &str) -> Self {
        Symbol(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl From<String> for Symbol {
    fn from(s: String) -> Self {
        Symbol(Arc::from(s))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Variable assignment used when instantiating rules and queries.
pub type Binding = BTreeMap<Symbol, Symbol>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(Symbol),
    Var(Symbol),
}

impl Term {
    pub fn constant(name: &str) -> Self {
        Term::Const(Symbol::new(name))
    }

    pub fn var(name: &str) -> Self {
        Term::Var(Symbol::new(name))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: Symbol,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<Symbol>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    /// Atom with no arguments (a propositional variable).
    pub fn prop(predicate: &str) -> Self {
        Atom::new(predicate, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Symbol> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        })
    }

    pub fn constants(&self) -> impl Iterator<Item = &Symbol> {
        self.args.iter().filter_map(|t| match t {
            Term::Const(c) => Some(c),
            Term::Var(_) => None,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.vars().next().is_none()
    }

    /// The fact this atom denotes, if it is ground.
    pub fn to_fact(&self) -> Result<Fact> {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => Ok(c.clone()),
                Term::Var(v) => Err(Error::NotGround(v.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Fact {
            predicate: self.predicate.clone(),
            args,
        })
    }

    pub fn substitute(&self, binding: &Binding) -> Result<Atom> {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Const(_) => Ok(t.clone()),
                Term::Var(v) => binding
                    .get(v)
                    .map(|c| Term::Const(c.clone()))
                    .ok_or_else(|| Error::UnboundVariable(v.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Atom {
            predicate: self.predicate.clone(),
            args,
        })
    }

    /// Instantiates the atom straight into a fact.
    pub fn ground(&self, binding: &Binding) -> Result<Fact> {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => Ok(c.clone()),
                Term::Var(v) => binding
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::UnboundVariable(v.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Fact {
            predicate: self.predicate.clone(),
            args,
        })
    }
}

/// A ground atom. Ordered by predicate name, then argument sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fact {
    pub predicate: Symbol,
    pub args: Vec<Symbol>,
}

impl Fact {
    pub fn new(predicate: &str, args: &[&str]) -> Self {
        Fact {
            predicate: Symbol::new(predicate),
            args: args.iter().map(|a| Symbol::new(a)).collect(),
        }
    }

    pub fn to_atom(&self) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.iter().cloned().map(Term::Const).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Unary(UnaryConnector, Box<Formula>),
    Binary(BinaryConnector, Box<Formula>, Box<Formula>),
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Self {
        Formula::Atom(a)
    }
}

impl From<Fact> for Formula {
    fn from(f: Fact) -> Self {
        Formula::Atom(f.to_atom())
    }
}

impl Formula {
    pub fn unary(conn: UnaryConnector, operand: Formula) -> Formula {
        Formula::Unary(conn, Box::new(operand))
    }

    pub fn binary(conn: BinaryConnector, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Binary(conn, Box::new(lhs), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Formula {
        Formula::unary(UnaryConnector::Neg, self)
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::binary(BinaryConnector::Or, self, rhs)
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::binary(BinaryConnector::And, self, rhs)
    }

    pub fn kjoin(self, rhs: Formula) -> Formula {
        Formula::binary(BinaryConnector::KJoin, self, rhs)
    }

    pub fn kmeet(self, rhs: Formula) -> Formula {
        Formula::binary(BinaryConnector::KMeet, self, rhs)
    }

    /// Leaves in left-to-right order.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::Atom(a) => out.push(a),
            Formula::Unary(_, x) => x.collect_atoms(out),
            Formula::Binary(_, l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Symbol> {
        self.atoms()
            .into_iter()
            .flat_map(|a| a.vars().cloned())
            .collect()
    }

    pub fn constants(&self) -> BTreeSet<Symbol> {
        self.atoms()
            .into_iter()
            .flat_map(|a| a.constants().cloned())
            .collect()
    }

    pub fn is_ground(&self) -> bool {
        self.atoms().iter().all(|a| a.is_ground())
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Unary(_, x) => 1 + x.size(),
            Formula::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// First connector outside the rule-body fragment `{~, |, &, (+), (x)}`.
    pub fn first_non_body_connector(&self) -> Option<String> {
        match self {
            Formula::Atom(_) => None,
            Formula::Unary(c, x) => {
                if c.allowed_in_body() {
                    x.first_non_body_connector()
                } else {
                    Some(crate::syntax::unary_token(*c).trim().to_string())
                }
            }
            Formula::Binary(c, l, r) => {
                if c.allowed_in_body() {
                    l.first_non_body_connector()
                        .or_else(|| r.first_non_body_connector())
                } else {
                    Some(crate::syntax::binary_token(*c).to_string())
                }
            }
        }
    }

    /// Replaces every variable according to `binding`.
    pub fn substitute(&self, binding: &Binding) -> Result<Formula> {
        Ok(match self {
            Formula::Atom(a) => Formula::Atom(a.substitute(binding)?),
            Formula::Unary(c, x) => Formula::unary(*c, x.substitute(binding)?),
            Formula::Binary(c, l, r) => {
                Formula::binary(*c, l.substitute(binding)?, r.substitute(binding)?)
            }
        })
    }

    /// Bottom-up evaluation with leaf values supplied by `leaf`.
    pub fn eval_with<F>(&self, leaf: &mut F) -> Result<TruthValue>
    where
        F: FnMut(&Atom) -> Result<TruthValue>,
    {
        Ok(match self {
            Formula::Atom(a) => leaf(a)?,
            Formula::Unary(c, x) => c.apply(x.eval_with(leaf)?),
            Formula::Binary(c, l, r) => {
                let lv = l.eval_with(leaf)?;
                c.apply(lv, r.eval_with(leaf)?)
            }
        })
    }
}

/// Value of a ground formula in the valuation induced by `s`.
pub fn evaluate(s: &VSet, formula: &Formula) -> Result<TruthValue> {
    formula.eval_with(&mut |atom| Ok(s.get(&atom.to_fact()?)))
}

pub fn valuate(s: &VSet, fact: &Fact) -> TruthValue {
    s.get(fact)
}

pub fn substitute(formula: &Formula, binding: &Binding) -> Result<Formula> {
    formula.substitute(binding)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

/// `head <- body`, where the head is a positive or negative literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    head_sign: Sign,
    head: Atom,
    body: Formula,
}

impl Rule {
    /// Checks that the body stays inside the rule-body fragment and that every
    /// head variable occurs in the body.
    pub fn new(head_sign: Sign, head: Atom, body: Formula) -> Result<Rule> {
        if let Some(connector) = body.first_non_body_connector() {
            return Err(Error::ConnectorNotAllowed { connector });
        }
        let body_vars = body.free_vars();
        if let Some(v) = head.vars().find(|v| !body_vars.contains(*v)) {
            return Err(Error::HeadVariableNotInBody {
                variable: v.clone(),
            });
        }
        Ok(Rule {
            head_sign,
            head,
            body,
        })
    }

    pub fn positive(head: Atom, body: Formula) -> Result<Rule> {
        Rule::new(Sign::Positive, head, body)
    }

    pub fn negative(head: Atom, body: Formula) -> Result<Rule> {
        Rule::new(Sign::Negative, head, body)
    }

    pub fn head_sign(&self) -> Sign {
        self.head_sign
    }

    pub fn head(&self) -> &Atom {
        &self.head
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    pub fn head_vars(&self) -> BTreeSet<Symbol> {
        self.head.vars().cloned().collect()
    }

    /// All variables of the rule; equal to the body's variables.
    pub fn vars(&self) -> BTreeSet<Symbol> {
        self.body.free_vars()
    }

    /// The head as a formula (`~h` for negative heads).
    pub fn head_literal(&self) -> Formula {
        let h = Formula::Atom(self.head.clone());
        match self.head_sign {
            Sign::Positive => h,
            Sign::Negative => h.neg(),
        }
    }
}

/// A consistent finite set of v-pairs. Facts valued `n` are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct VSet {
    entries: BTreeMap<Fact, TruthValue>,
}

impl VSet {
    pub fn new() -> Self {
        VSet::default()
    }

    /// Builds a v-set, rejecting two different values for the same fact.
    /// Pairs valued `n` are dropped.
    pub fn from_pairs<I>(pairs: I) -> Result<VSet>
    where
        I: IntoIterator<Item = (Fact, TruthValue)>,
    {
        let mut s = VSet::new();
        for (fact, value) in pairs {
            if value == TruthValue::None {
                continue;
            }
            match s.entries.entry(fact) {
                btree_map::Entry::Vacant(e) => {
                    e.insert(value);
                }
                btree_map::Entry::Occupied(e) => {
                    if *e.get() != value {
                        return Err(Error::ConflictingFact {
                            fact: e.key().clone(),
                            first: *e.get(),
                            second: value,
                        });
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn get(&self, fact: &Fact) -> TruthValue {
        self.entries.get(fact).copied().unwrap_or(TruthValue::None)
    }

    /// Sets `fact` to `value`; setting `n` removes the entry.
    pub fn set(&mut self, fact: Fact, value: TruthValue) -> TruthValue {
        let old = if value == TruthValue::None {
            self.entries.remove(&fact)
        } else {
            self.entries.insert(fact, value)
        };
        old.unwrap_or(TruthValue::None)
    }

    pub fn remove(&mut self, fact: &Fact) -> TruthValue {
        self.entries.remove(fact).unwrap_or(TruthValue::None)
    }

    pub fn contains(&self, fact: &Fact) -> bool {
        self.entries.contains_key(fact)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in fact order.
    pub fn iter(&self) -> impl Iterator<Item = (&Fact, TruthValue)> {
        self.entries.iter().map(|(f, v)| (f, *v))
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.entries.keys()
    }

    /// Entry-wise inclusion.
    pub fn is_subset(&self, other: &VSet) -> bool {
        self.entries.len() <= other.entries.len()
            && self.iter().all(|(f, v)| other.entries.get(f) == Some(&v))
    }

    fn pointwise(&self, other: &VSet, leq: fn(TruthValue, TruthValue) -> bool) -> bool {
        // facts absent from both sides are n on both sides and cannot violate
        self.facts()
            .chain(other.facts())
            .all(|f| leq(self.get(f), other.get(f)))
    }

    pub fn leq_k(&self, other: &VSet) -> bool {
        self.pointwise(other, TruthValue::leq_k)
    }

    pub fn leq_t(&self, other: &VSet) -> bool {
        self.pointwise(other, TruthValue::leq_t)
    }

    pub fn constants(&self) -> BTreeSet<Symbol> {
        self.facts().flat_map(|f| f.args.iter().cloned()).collect()
    }
}

impl FromIterator<(Fact, TruthValue)> for VSet {
    /// Later pairs overwrite earlier ones; use [`VSet::from_pairs`] to reject conflicts.
    fn from_iter<I: IntoIterator<Item = (Fact, TruthValue)>>(iter: I) -> Self {
        let mut s = VSet::new();
        for (f, v) in iter {
            s.set(f, v);
        }
        s
    }
}

impl<'a> IntoIterator for &'a VSet {
    type Item = (&'a Fact, &'a TruthValue);
    type IntoIter = btree_map::Iter<'a, Fact, TruthValue>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

pub fn vset_leq_k(s1: &VSet, s2: &VSet) -> bool {
    s1.leq_k(s2)
}

pub fn vset_leq_t(s1: &VSet, s2: &VSet) -> bool {
    s1.leq_t(s2)
}
