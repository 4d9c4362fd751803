//! Random databases, formulas and v-sets for property tests and benchmarks.

use crate::engine::Database;
use crate::formula::{Atom, Fact, Formula, Rule, Sign, Term, VSet};
use crate::normal;
use crate::truth::{BinaryConnector, TruthValue};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

const BODY_BINARY: [BinaryConnector; 4] = [
    BinaryConnector::Or,
    BinaryConnector::And,
    BinaryConnector::KJoin,
    BinaryConnector::KMeet,
];

const STORED: [TruthValue; 3] = [TruthValue::True, TruthValue::Both, TruthValue::False];

pub fn truth_value<R: Rng + ?Sized>(rng: &mut R) -> TruthValue {
    TruthValue::from_index(rng.gen_range(0..4))
}

fn stored_value<R: Rng + ?Sized>(rng: &mut R) -> TruthValue {
    *STORED.choose(rng).expect("non-empty")
}

/// Shape of the small databases used for fixpoint checks.
#[derive(Debug, Clone)]
pub struct SmallDbConfig {
    /// Upper bound on the active Herbrand base.
    pub max_base: usize,
    pub max_rules: usize,
    pub max_body_depth: usize,
}

impl Default for SmallDbConfig {
    fn default() -> Self {
        SmallDbConfig {
            max_base: 6,
            max_rules: 4,
            max_body_depth: 2,
        }
    }
}

/// A database over unary predicates whose active Herbrand base has at most
/// `max_base` facts. Every rule is safe.
pub fn small_database<R: Rng + ?Sized>(rng: &mut R, config: &SmallDbConfig) -> Database {
    let constants: Vec<String> = (0..rng.gen_range(1..=2)).map(|i| format!("c{i}")).collect();
    let max_preds = (config.max_base / constants.len()).clamp(1, 4);
    let predicates: Vec<String> = (0..rng.gen_range(1..=max_preds))
        .map(|i| format!("P{i}"))
        .collect();

    let mut extension = VSet::new();
    for p in &predicates {
        for c in &constants {
            if rng.gen_bool(0.4) {
                extension.set(Fact::new(p, &[c]), stored_value(rng));
            }
        }
    }

    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(0..=config.max_rules) {
        // retry until the drawn rule is safe
        for _ in 0..20 {
            let head = Atom::new(
                predicates.choose(rng).expect("non-empty").as_str(),
                vec![Term::var("x")],
            );
            let body = small_body(rng, &predicates, &constants, config.max_body_depth);
            if !body.free_vars().contains(&crate::Symbol::new("x")) {
                continue;
            }
            let sign = if rng.gen_bool(0.3) {
                Sign::Negative
            } else {
                Sign::Positive
            };
            let rule = Rule::new(sign, head, body).expect("head variable occurs in body");
            if normal::is_safe(&rule).map(|r| r.safe).unwrap_or(false) {
                rules.push(rule);
                break;
            }
        }
    }
    // constants that only occur in the extension still belong to the domain
    Database::new(extension, rules).expect("unary predicates only")
}

fn small_body<R: Rng + ?Sized>(
    rng: &mut R,
    predicates: &[String],
    constants: &[String],
    depth: usize,
) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        let p = predicates.choose(rng).expect("non-empty").as_str();
        let arg = if rng.gen_bool(0.8) {
            Term::var("x")
        } else {
            Term::constant(constants.choose(rng).expect("non-empty"))
        };
        let atom = Formula::from(Atom::new(p, vec![arg]));
        return if rng.gen_bool(0.3) { atom.neg() } else { atom };
    }
    if rng.gen_bool(0.15) {
        return small_body(rng, predicates, constants, depth - 1).neg();
    }
    let conn = *BODY_BINARY.choose(rng).expect("non-empty");
    Formula::binary(
        conn,
        small_body(rng, predicates, constants, depth - 1),
        small_body(rng, predicates, constants, depth - 1),
    )
}

/// A random v-set over `base`; each fact is stored with probability `density`.
pub fn vset_over<R: Rng + ?Sized>(rng: &mut R, base: &BTreeSet<Fact>, density: f64) -> VSet {
    let mut out = VSet::new();
    for f in base {
        if rng.gen_bool(density) {
            out.set(f.clone(), stored_value(rng));
        }
    }
    out
}

/// A pair `s1 <=k s2`, both over `base`.
pub fn ordered_vsets<R: Rng + ?Sized>(rng: &mut R, base: &BTreeSet<Fact>) -> (VSet, VSet) {
    let mut lo = VSet::new();
    let mut hi = VSet::new();
    for f in base {
        let top = truth_value(rng);
        let below: Vec<TruthValue> = TruthValue::ALL
            .into_iter()
            .filter(|v| v.leq_k(top))
            .collect();
        let bottom = *below.choose(rng).expect("top is below itself");
        hi.set(f.clone(), top);
        lo.set(f.clone(), bottom);
    }
    (lo, hi)
}

/// A syntactically varied database for parser checks: mixed arities,
/// integer and named constants, every body connector, negative heads.
pub fn varied_database<R: Rng + ?Sized>(rng: &mut R) -> Database {
    const NAMES: [&str; 6] = ["Humid", "White", "Store", "Edge", "Path", "Flag"];
    const CONSTS: [&str; 6] = ["a", "b2", "101", "303", "zeta", "0"];
    const VARS: [&str; 3] = ["x", "y", "z"];
    let arities: Vec<(&str, usize)> = NAMES.iter().map(|n| (*n, rng.gen_range(0..=2))).collect();

    let mut extension = VSet::new();
    for _ in 0..rng.gen_range(0..8) {
        let (p, k) = *arities.choose(rng).expect("non-empty");
        let args: Vec<&str> = (0..k)
            .map(|_| *CONSTS.choose(rng).expect("non-empty"))
            .collect();
        extension.set(Fact::new(p, &args), stored_value(rng));
    }

    let term = |rng: &mut R| {
        if rng.gen_bool(0.6) {
            Term::var(VARS.choose(rng).expect("non-empty"))
        } else {
            Term::constant(CONSTS.choose(rng).expect("non-empty"))
        }
    };
    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(0..5) {
        let body = varied_body(rng, &arities, &term, 3);
        let vars: Vec<_> = body.free_vars().into_iter().collect();
        let (p, k) = *arities.choose(rng).expect("non-empty");
        let args = (0..k)
            .map(|_| match vars.choose(rng) {
                Some(v) if rng.gen_bool(0.7) => Term::Var(v.clone()),
                _ => Term::constant(CONSTS.choose(rng).expect("non-empty")),
            })
            .collect();
        let sign = if rng.gen_bool(0.3) {
            Sign::Negative
        } else {
            Sign::Positive
        };
        rules.push(
            Rule::new(sign, Atom::new(p, args), body).expect("head variables come from the body"),
        );
    }
    Database::new(extension, rules).expect("arities are fixed per predicate")
}

fn varied_body<R: Rng + ?Sized, T: Fn(&mut R) -> Term>(
    rng: &mut R,
    arities: &[(&str, usize)],
    term: &T,
    depth: usize,
) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let (p, k) = *arities.choose(rng).expect("non-empty");
        let args = (0..k).map(|_| term(rng)).collect();
        return Formula::from(Atom::new(p, args));
    }
    if rng.gen_bool(0.2) {
        return varied_body(rng, arities, term, depth - 1).neg();
    }
    let conn = *BODY_BINARY.choose(rng).expect("non-empty");
    Formula::binary(
        conn,
        varied_body(rng, arities, term, depth - 1),
        varied_body(rng, arities, term, depth - 1),
    )
}
