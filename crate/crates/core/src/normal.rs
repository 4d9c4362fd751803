//! `|`/`(+)` normal form of rule bodies and the syntactic safety check.
//!
//! A body over `{~, |, &, (+), (x)}` is rewritten into a disjunction of
//! `(+)`-groups, each group a knowledge join of blocks, each block a
//! conjunction of `(x)`-clauses of literals. A rule is safe iff every block
//! mentions every head variable.

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Rule, Symbol};
use crate::syntax;
use crate::truth::{BinaryConnector, UnaryConnector};
use std::collections::BTreeSet;
use std::fmt;

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub negated: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn to_formula(&self) -> Formula {
        let f = Formula::Atom(self.atom.clone());
        if self.negated {
            f.neg()
        } else {
            f
        }
    }
}

/// Conjunction of `(x)`-clauses; free of `|` and `(+)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub clauses: Vec<Vec<Literal>>,
}

impl Block {
    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.clauses.iter().flatten()
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        self.literals()
            .flat_map(|l| l.atom.vars().cloned())
            .collect()
    }

    pub fn to_formula(&self) -> Formula {
        fold(
            self.clauses
                .iter()
                .map(|c| fold(c.iter().map(Literal::to_formula), BinaryConnector::KMeet)),
            BinaryConnector::And,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OplusGroup {
    pub blocks: Vec<Block>,
}

impl OplusGroup {
    pub fn to_formula(&self) -> Formula {
        fold(
            self.blocks.iter().map(Block::to_formula),
            BinaryConnector::KJoin,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub disjuncts: Vec<OplusGroup>,
}

impl NormalForm {
    pub fn to_formula(&self) -> Formula {
        fold(
            self.disjuncts.iter().map(OplusGroup::to_formula),
            BinaryConnector::Or,
        )
    }

    /// Blocks with their (disjunct, group) position.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, usize, &Block)> {
        self.disjuncts
            .iter()
            .enumerate()
            .flat_map(|(i, g)| g.blocks.iter().enumerate().map(move |(j, b)| (i, j, b)))
    }

    pub fn literal_count(&self) -> usize {
        self.blocks().map(|(_, _, b)| b.literals().count()).sum()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

fn fold(items: impl Iterator<Item = Formula>, conn: BinaryConnector) -> Formula {
    items
        .reduce(|acc, x| Formula::binary(conn, acc, x))
        .expect("normal-form components are never empty")
}

fn not_allowed(c: &str) -> Error {
    Error::ConnectorNotAllowed {
        connector: c.trim().to_string(),
    }
}

/// Pushes negations down to the atoms.
pub fn to_nnf(formula: &Formula) -> Result<Formula> {
    nnf(formula, false)
}

fn nnf(f: &Formula, negate: bool) -> Result<Formula> {
    match f {
        Formula::Atom(a) => {
            let leaf = Formula::Atom(a.clone());
            Ok(if negate { leaf.neg() } else { leaf })
        }
        Formula::Unary(UnaryConnector::Neg, x) => nnf(x, !negate),
        Formula::Unary(c, _) => Err(not_allowed(syntax::unary_token(*c))),
        Formula::Binary(c, l, r) => {
            let conn = match (c, negate) {
                (BinaryConnector::Or, true) => BinaryConnector::And,
                (BinaryConnector::And, true) => BinaryConnector::Or,
                (c, _) if c.allowed_in_body() => *c,
                (c, _) => return Err(not_allowed(syntax::binary_token(*c))),
            };
            Ok(Formula::binary(conn, nnf(l, negate)?, nnf(r, negate)?))
        }
    }
}

// disjunction > join-group > conjunction > meet-clause > literal
type Raw = Vec<Vec<Vec<Vec<Literal>>>>;

struct Budget {
    limit: usize,
}

impl Budget {
    fn check(&self, raw: &Raw) -> Result<()> {
        let mut nodes = 0usize;
        for g in raw {
            nodes += 1;
            for b in g {
                nodes += 1;
                for c in b {
                    nodes += 1 + c.len();
                }
            }
        }
        if nodes > self.limit {
            Err(Error::NodeBudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }

    fn reserve(&self, n: usize) -> Result<()> {
        if n > self.limit {
            Err(Error::NodeBudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

fn raw_of(f: &Formula, budget: &Budget) -> Result<Raw> {
    let raw = match f {
        Formula::Atom(a) => vec![vec![vec![vec![Literal {
            negated: false,
            atom: a.clone(),
        }]]]],
        Formula::Unary(UnaryConnector::Neg, x) => match &**x {
            Formula::Atom(a) => vec![vec![vec![vec![Literal {
                negated: true,
                atom: a.clone(),
            }]]]],
            _ => unreachable!("input is in negation normal form"),
        },
        Formula::Unary(c, _) => return Err(not_allowed(syntax::unary_token(*c))),
        Formula::Binary(c, l, r) => {
            let (l, r) = (raw_of(l, budget)?, raw_of(r, budget)?);
            match c {
                BinaryConnector::Or => l.into_iter().chain(r).collect(),
                BinaryConnector::KJoin => {
                    budget.reserve(l.len() * r.len())?;
                    let mut out = Vec::with_capacity(l.len() * r.len());
                    for gl in &l {
                        for gr in &r {
                            out.push(gl.iter().chain(gr).cloned().collect());
                        }
                    }
                    out
                }
                BinaryConnector::And => distribute(&l, &r, budget, |bl, br| {
                    Ok(bl.iter().chain(br).cloned().collect())
                })?,
                BinaryConnector::KMeet => distribute(&l, &r, budget, |bl, br| {
                    budget.reserve(bl.len() * br.len())?;
                    let mut clauses = Vec::with_capacity(bl.len() * br.len());
                    for cl in bl {
                        for cr in br {
                            clauses.push(cl.iter().chain(cr).cloned().collect());
                        }
                    }
                    Ok(clauses)
                })?,
                other => return Err(not_allowed(syntax::binary_token(*other))),
            }
        }
    };
    budget.check(&raw)?;
    Ok(raw)
}

/// Distributes a block-level combination over `|` and `(+)` on both sides.
fn distribute<F>(l: &Raw, r: &Raw, budget: &Budget, mut combine: F) -> Result<Raw>
where
    F: FnMut(&[Vec<Literal>], &[Vec<Literal>]) -> Result<Vec<Vec<Literal>>>,
{
    budget.reserve(l.len() * r.len())?;
    let mut out = Vec::with_capacity(l.len() * r.len());
    for gl in l {
        for gr in r {
            budget.reserve(gl.len() * gr.len())?;
            let mut group = Vec::with_capacity(gl.len() * gr.len());
            for bl in gl {
                for br in gr {
                    group.push(combine(bl, br)?);
                }
            }
            out.push(group);
        }
    }
    Ok(out)
}

pub fn normalize(formula: &Formula) -> Result<NormalForm> {
    normalize_with_budget(formula, DEFAULT_NODE_BUDGET)
}

pub fn normalize_with_budget(formula: &Formula, budget: usize) -> Result<NormalForm> {
    let nnf = to_nnf(formula)?;
    let raw = raw_of(&nnf, &Budget { limit: budget })?;
    Ok(NormalForm {
        disjuncts: raw
            .into_iter()
            .map(|g| OplusGroup {
                blocks: g.into_iter().map(|clauses| Block { clauses }).collect(),
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyViolation {
    pub disjunct: usize,
    pub group: usize,
    pub block: Block,
    pub missing: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyReport {
    pub safe: bool,
    pub normal_form: NormalForm,
    /// First block that misses a head variable.
    pub violation: Option<SafetyViolation>,
}

impl SafetyReport {
    pub fn into_error(self, rule: &Rule) -> Option<Error> {
        self.violation.map(|v| Error::UnsafeRule {
            rule: rule.to_string(),
            block: v.block.to_formula().to_string(),
            missing: v.missing,
        })
    }
}

pub fn is_safe(rule: &Rule) -> Result<SafetyReport> {
    is_safe_with_budget(rule, DEFAULT_NODE_BUDGET)
}

pub fn is_safe_with_budget(rule: &Rule, budget: usize) -> Result<SafetyReport> {
    let nf = normalize_with_budget(rule.body(), budget)?;
    let head_vars = rule.head_vars();
    let violation = nf.blocks().find_map(|(i, j, block)| {
        let vars = block.vars();
        let missing: Vec<Symbol> = head_vars.difference(&vars).cloned().collect();
        (!missing.is_empty()).then(|| SafetyViolation {
            disjunct: i,
            group: j,
            block: block.clone(),
            missing,
        })
    });
    Ok(SafetyReport {
        safe: violation.is_none(),
        normal_form: nf,
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_database, parse_formula};
    use crate::truth::TruthValue;
    use std::collections::BTreeMap;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn rule(src: &str) -> Rule {
        parse_database(src).unwrap().rules()[0].clone()
    }

    /// Brute-force equivalence oracle: same value under every assignment to the atoms.
    fn equivalent(a: &Formula, b: &Formula) -> bool {
        let atoms: BTreeSet<Atom> = a.atoms().into_iter().chain(b.atoms()).cloned().collect();
        let atoms: Vec<Atom> = atoms.into_iter().collect();
        let total = 4usize.pow(atoms.len() as u32);
        (0..total).all(|mut code| {
            let mut env = BTreeMap::new();
            for atom in &atoms {
                env.insert(atom.clone(), TruthValue::from_index(code % 4));
                code /= 4;
            }
            let mut leaf = |x: &Atom| Ok(env[x]);
            a.eval_with(&mut leaf).unwrap() == b.eval_with(&mut leaf).unwrap()
        })
    }

    #[test]
    fn nnf_examples() {
        assert_eq!(
            to_nnf(&f("~(P(?x) | Q(?x))")).unwrap(),
            f("~P(?x) & ~Q(?x)")
        );
        assert_eq!(
            to_nnf(&f("~(P(?x) (+) Q(?x))")).unwrap(),
            f("~P(?x) (+) ~Q(?x)")
        );
        assert_eq!(to_nnf(&f("~~P(?x)")).unwrap(), f("P(?x)"));
        assert_eq!(to_nnf(&f("~(P & Q (x) R)")).unwrap(), f("~P | ~Q (x) ~R"));
    }

    #[test]
    fn nnf_rejects_non_body_connectors() {
        assert!(matches!(
            to_nnf(&f("P -> Q")),
            Err(Error::ConnectorNotAllowed { .. })
        ));
        assert!(to_nnf(&f("conf P")).is_err());
        assert!(normalize(&f("P (o) Q")).is_err());
    }

    #[test]
    fn oplus_over_or() {
        let input = f("P(?x) (+) (Q(?x) | R(?x))");
        let nf = normalize(&input).unwrap();
        assert_eq!(nf.to_formula(), f("P(?x) (+) Q(?x) | P(?x) (+) R(?x)"));
        assert!(equivalent(&input, &nf.to_formula()));
    }

    #[test]
    fn and_over_or() {
        let input = f("(P(?x) | Q(?x)) & R(?x)");
        let nf = normalize(&input).unwrap();
        assert_eq!(nf.to_formula(), f("P(?x) & R(?x) | Q(?x) & R(?x)"));
        assert!(equivalent(&input, &nf.to_formula()));
    }

    #[test]
    fn single_literal() {
        let nf = normalize(&f("~P(?x)")).unwrap();
        assert_eq!(nf.disjuncts.len(), 1);
        assert_eq!(nf.disjuncts[0].blocks.len(), 1);
        assert_eq!(
            nf.disjuncts[0].blocks[0].clauses,
            vec![vec![Literal {
                negated: true,
                atom: Atom::new("P", vec![crate::formula::Term::var("x")]),
            }]]
        );
    }

    #[test]
    fn meet_over_everything() {
        let input = f("(A | K (+) C) (x) (D & E) | ~(G (x) (H | I))");
        let nf = normalize(&input).unwrap();
        assert!(equivalent(&input, &nf.to_formula()));
        for (_, _, b) in nf.blocks() {
            assert!(b.clauses.iter().all(|c| !c.is_empty()));
        }
    }

    #[test]
    fn budget_exceeded() {
        // (A1 | B1) & (A2 | B2) & ... doubles the disjuncts at every step
        let mut big = f("A0 | B0");
        for i in 1..24 {
            big = big.and(f(&format!("A{i} | B{i}")));
        }
        assert_eq!(
            normalize_with_budget(&big, 10_000),
            Err(Error::NodeBudgetExceeded { budget: 10_000 })
        );
        assert!(normalize_with_budget(&f("(A | K) & (C | D)"), 10_000).is_ok());
    }

    #[test]
    fn safety_examples() {
        let safe = is_safe(&rule("rule P(?x) <- P1(?x) (+) P2(?x, ?y).")).unwrap();
        assert!(safe.safe);
        assert!(safe.violation.is_none());

        let r = rule("rule Pp(?x, ?y) <- P1(?x) | P2(?x, ?y).");
        let unsafe_ = is_safe(&r).unwrap();
        assert!(!unsafe_.safe);
        let v = unsafe_.violation.clone().unwrap();
        assert_eq!(v.block.to_formula(), f("P1(?x)"));
        assert_eq!(v.missing, vec![Symbol::new("y")]);
        assert!(matches!(
            unsafe_.into_error(&r),
            Some(Error::UnsafeRule { .. })
        ));

        assert!(
            !is_safe(&rule("rule P(?x, ?y) <- Q(?x, ?y) | S(?x)."))
                .unwrap()
                .safe
        );
        // all blocks of a join must bind the head
        assert!(
            !is_safe(&rule("rule P(?x, ?y) <- Q(?x, ?y) (+) S(?x)."))
                .unwrap()
                .safe
        );
        // conjunctions and meets stay inside one block
        assert!(
            is_safe(&rule("rule P(?x, ?y) <- Q(?x) & ~S(?y)."))
                .unwrap()
                .safe
        );
        assert!(
            is_safe(&rule("rule P(?x, ?y) <- Q(?x) (x) S(?y)."))
                .unwrap()
                .safe
        );
        // a negated disjunction becomes a conjunction
        assert!(
            is_safe(&rule("rule P(?x, ?y) <- ~(Q(?x) | S(?y))."))
                .unwrap()
                .safe
        );
        assert!(
            !is_safe(&rule("rule P(?x, ?y) <- ~(Q(?x) & S(?y))."))
                .unwrap()
                .safe
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn body_formula() -> impl Strategy<Value = Formula> {
            let leaf = (0..6usize).prop_map(|i| Formula::Atom(Atom::prop(&format!("P{i}"))));
            leaf.prop_recursive(4, 24, 2, |inner| {
                prop_oneof![
                    inner.clone().prop_map(Formula::neg),
                    (inner.clone(), inner.clone(), 0..4usize).prop_map(|(l, r, c)| {
                        let conn = [
                            BinaryConnector::Or,
                            BinaryConnector::And,
                            BinaryConnector::KJoin,
                            BinaryConnector::KMeet,
                        ][c];
                        Formula::binary(conn, l, r)
                    }),
                ]
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn normal_form_preserves_truth_table(phi in body_formula()) {
                let nf = normalize(&phi).unwrap();
                prop_assert!(equivalent(&phi, &nf.to_formula()));
                prop_assert!(equivalent(&phi, &to_nnf(&phi).unwrap()));
            }

            #[test]
            fn normal_form_shape(phi in body_formula()) {
                let nf = normalize(&phi).unwrap();
                for (_, _, block) in nf.blocks() {
                    let body = block.to_formula();
                    prop_assert!(body.first_non_body_connector().is_none());
                    fn no_or_join(f: &Formula) -> bool {
                        match f {
                            Formula::Atom(_) => true,
                            Formula::Unary(_, x) => matches!(**x, Formula::Atom(_)),
                            Formula::Binary(c, l, r) => {
                                !matches!(c, BinaryConnector::Or | BinaryConnector::KJoin)
                                    && no_or_join(l)
                                    && no_or_join(r)
                            }
                        }
                    }
                    prop_assert!(no_or_join(&body));
                }
            }
        }
    }
}
