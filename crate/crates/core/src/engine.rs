//! Databases, grounding, the semantic immediate consequence operator and its
//! least fixpoint, model checking, and a brute-force minimal-model oracle.

use crate::error::{Error, Result};
use crate::formula::{evaluate, Binding, Fact, Formula, Rule, Sign, Symbol, VSet};
use crate::normal;
use crate::truth::{BinaryConnector, TruthValue};
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// An extension (the stored v-set) plus a rule set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Database {
    extension: VSet,
    rules: Vec<Rule>,
}

impl Database {
    /// Fails when a predicate is used with two different arities.
    pub fn new(extension: VSet, rules: Vec<Rule>) -> Result<Database> {
        let db = Database { extension, rules };
        db.check_arities()?;
        Ok(db)
    }

    pub(crate) fn from_parts(extension: VSet, rules: Vec<Rule>) -> Database {
        Database { extension, rules }
    }

    pub fn extension(&self) -> &VSet {
        &self.extension
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn with_extension(&self, extension: VSet) -> Database {
        Database {
            extension,
            rules: self.rules.clone(),
        }
    }

    fn check_arities(&self) -> Result<()> {
        let mut seen: BTreeMap<&Symbol, usize> = BTreeMap::new();
        let fact_preds = self.extension.facts().map(|f| (&f.predicate, f.arity()));
        let rule_preds = self
            .rules
            .iter()
            .flat_map(|r| std::iter::once(r.head()).chain(r.body().atoms()))
            .map(|a| (&a.predicate, a.arity()));
        for (p, n) in fact_preds.chain(rule_preds) {
            match seen.get(p) {
                Some(&m) if m != n => {
                    return Err(Error::ArityMismatch {
                        predicate: p.clone(),
                        expected: m,
                        found: n,
                    })
                }
                Some(_) => {}
                None => {
                    seen.insert(p, n);
                }
            }
        }
        Ok(())
    }

    /// Every predicate mentioned in the extension or the rules, with its arity.
    pub fn predicates(&self) -> BTreeMap<Symbol, usize> {
        let mut out = BTreeMap::new();
        for f in self.extension.facts() {
            out.insert(f.predicate.clone(), f.arity());
        }
        for r in &self.rules {
            for a in std::iter::once(r.head()).chain(r.body().atoms()) {
                out.insert(a.predicate.clone(), a.arity());
            }
        }
        out
    }
}

/// Constants occurring in a database.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ActiveDomain {
    pub constants: BTreeSet<Symbol>,
}

pub fn active_domain(db: &Database) -> ActiveDomain {
    let mut constants = db.extension.constants();
    for r in &db.rules {
        constants.extend(r.head().constants().cloned());
        constants.extend(r.body().constants());
    }
    ActiveDomain { constants }
}

/// All facts over the database's predicates built from `domain`.
pub fn herbrand_base(
    predicates: &BTreeMap<Symbol, usize>,
    domain: &BTreeSet<Symbol>,
) -> BTreeSet<Fact> {
    let domain: Vec<&Symbol> = domain.iter().collect();
    let mut out = BTreeSet::new();
    for (p, &arity) in predicates {
        for_each_tuple(&domain, arity, |args| {
            out.insert(Fact {
                predicate: p.clone(),
                args: args.iter().map(|s| (*s).clone()).collect(),
            });
        });
    }
    out
}

pub fn active_herbrand_base(db: &Database) -> BTreeSet<Fact> {
    herbrand_base(&db.predicates(), &active_domain(db).constants)
}

fn for_each_tuple<'a, F: FnMut(&[&'a Symbol])>(domain: &[&'a Symbol], arity: usize, mut f: F) {
    if arity > 0 && domain.is_empty() {
        return;
    }
    let mut idx = vec![0usize; arity];
    let mut tuple: Vec<&Symbol> = idx.iter().map(|&i| domain[i]).collect();
    loop {
        f(&tuple);
        // odometer increment, last position fastest
        let mut k = arity;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < domain.len() {
                tuple[k] = domain[idx[k]];
                break;
            }
            idx[k] = 0;
            tuple[k] = domain[0];
        }
    }
}

/// A fully instantiated rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundRule {
    pub head_sign: Sign,
    pub head: Fact,
    pub body: Formula,
}

impl GroundRule {
    /// `body -> head` (FDE implication), with `~head` for negative heads.
    pub fn implication(&self) -> Formula {
        let h = Formula::from(self.head.clone());
        let head = match self.head_sign {
            Sign::Positive => h,
            Sign::Negative => h.neg(),
        };
        Formula::binary(BinaryConnector::ImpFde, self.body.clone(), head)
    }
}

/// Instances of `rule` over `domain`, skipping those whose head fact is stored in `extension`.
fn instantiate(
    rule: &Rule,
    domain: &[&Symbol],
    extension: &VSet,
    out: &mut Vec<GroundRule>,
) -> Result<()> {
    let vars: Vec<Symbol> = rule.vars().into_iter().collect();
    let mut failure = None;
    let mut binding = Binding::new();
    for_each_tuple(domain, vars.len(), |tuple| {
        if failure.is_some() {
            return;
        }
        for (v, c) in vars.iter().zip(tuple) {
            binding.insert(v.clone(), (*c).clone());
        }
        let step = || -> Result<Option<GroundRule>> {
            let head = rule.head().ground(&binding)?;
            if extension.contains(&head) {
                return Ok(None);
            }
            Ok(Some(GroundRule {
                head_sign: rule.head_sign(),
                head,
                body: rule.body().substitute(&binding)?,
            }))
        };
        match step() {
            Ok(Some(g)) => out.push(g),
            Ok(None) => {}
            Err(e) => failure = Some(e),
        }
    });
    failure.map_or(Ok(()), Err)
}

/// Knobs for grounding and fixpoint iteration.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Explicit grounding universe. When set, rules are grounded over this
    /// universe together with the active domain and unsafe rules are accepted.
    pub universe: Option<BTreeSet<Symbol>>,
    /// Maximum number of operator applications.
    pub max_iters: usize,
    pub trace: bool,
    pub node_budget: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            universe: None,
            max_iters: 10_000,
            trace: false,
            node_budget: normal::DEFAULT_NODE_BUDGET,
        }
    }
}

impl EngineConfig {
    pub fn with_universe<I, S>(mut self, constants: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        self.universe = Some(constants.into_iter().map(Into::into).collect());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticsResult {
    pub fixpoint: VSet,
    /// `n` such that `Σⁿ` is the first fixpoint of the sequence.
    pub iterations: usize,
    /// `Σ⁰ ..= Σⁿ` when tracing was requested.
    pub trace: Option<Vec<VSet>>,
}

/// A database whose rules have been instantiated over a finite domain.
#[derive(Debug, Clone)]
pub struct GroundProgram {
    extension: VSet,
    rules: Vec<GroundRule>,
    domain: BTreeSet<Symbol>,
    predicates: BTreeMap<Symbol, usize>,
}

impl GroundProgram {
    pub fn new(db: &Database, config: &EngineConfig) -> Result<GroundProgram> {
        let mut domain = active_domain(db).constants;
        match &config.universe {
            Some(universe) => domain.extend(universe.iter().cloned()),
            None => {
                for rule in &db.rules {
                    let report = normal::is_safe_with_budget(rule, config.node_budget)?;
                    if let Some(err) = report.into_error(rule) {
                        return Err(err);
                    }
                }
            }
        }
        let ordered: Vec<&Symbol> = domain.iter().collect();
        let mut rules = Vec::new();
        for rule in &db.rules {
            instantiate(rule, &ordered, &db.extension, &mut rules)?;
        }
        Ok(GroundProgram {
            extension: db.extension.clone(),
            rules,
            domain,
            predicates: db.predicates(),
        })
    }

    pub fn rules(&self) -> &[GroundRule] {
        &self.rules
    }

    pub fn extension(&self) -> &VSet {
        &self.extension
    }

    pub fn domain(&self) -> &BTreeSet<Symbol> {
        &self.domain
    }

    /// Herbrand base over the grounding domain.
    pub fn herbrand_base(&self) -> BTreeSet<Fact> {
        herbrand_base(&self.predicates, &self.domain)
    }

    /// The entries of `s` followed by one v-pair per applicable ground rule.
    pub fn gamma_step(&self, s: &VSet) -> Result<Vec<(Fact, TruthValue)>> {
        let mut out: Vec<(Fact, TruthValue)> = s.iter().map(|(f, v)| (f.clone(), v)).collect();
        for rule in &self.rules {
            let value = match (evaluate(s, &rule.body)?, rule.head_sign) {
                (TruthValue::True, Sign::Positive) => TruthValue::True,
                (TruthValue::True, Sign::Negative) => TruthValue::False,
                (TruthValue::Both, _) => TruthValue::Both,
                _ => continue,
            };
            out.push((rule.head.clone(), value));
        }
        Ok(out)
    }

    /// Integrates all of Γ's v-pairs per fact with `(+)`.
    pub fn sigma_step(&self, s: &VSet) -> Result<VSet> {
        let mut folded: BTreeMap<Fact, TruthValue> = BTreeMap::new();
        for (fact, v) in self.gamma_step(s)? {
            folded
                .entry(fact)
                .and_modify(|acc| *acc = acc.kjoin(v))
                .or_insert(v);
        }
        Ok(folded.into_iter().collect())
    }

    /// Iterates from the extension until the operator is the identity.
    pub fn semantics(&self, max_iters: usize, trace: bool) -> Result<SemanticsResult> {
        let mut current = self.extension.clone();
        let mut steps = trace.then(|| vec![current.clone()]);
        for applied in 1..=max_iters {
            let next = self.sigma_step(&current)?;
            if next == current {
                return Ok(SemanticsResult {
                    fixpoint: current,
                    iterations: applied - 1,
                    trace: steps,
                });
            }
            if let Some(steps) = steps.as_mut() {
                steps.push(next.clone());
            }
            current = next;
        }
        Err(Error::IterationLimit { limit: max_iters })
    }

    /// `E ⊆ m` and every ground rule's FDE implication is designated in `m`.
    pub fn is_model(&self, m: &VSet) -> Result<bool> {
        if !self.extension.is_subset(m) {
            return Ok(false);
        }
        for rule in &self.rules {
            let body = evaluate(m, &rule.body)?;
            let head = match rule.head_sign {
                Sign::Positive => m.get(&rule.head),
                Sign::Negative => m.get(&rule.head).neg(),
            };
            if !BinaryConnector::ImpFde.apply(body, head).is_designated() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All inclusion-minimal models over the Herbrand base of the grounding domain.
    pub fn minimal_models_bruteforce(&self, max_base: usize) -> Result<Vec<VSet>> {
        let base = self.herbrand_base();
        if base.len() > max_base {
            return Err(Error::BaseTooLarge {
                size: base.len(),
                limit: max_base,
            });
        }
        // extension facts are pinned: any other value violates `E ⊆ M`
        let free: Vec<&Fact> = base
            .iter()
            .filter(|f| !self.extension.contains(f))
            .collect();
        // digit 0 encodes "absent", 1..=3 a stored value
        const STORED: [TruthValue; 3] = [TruthValue::True, TruthValue::Both, TruthValue::False];
        let decode = |code: u64| -> VSet {
            let mut m = self.extension.clone();
            let mut c = code;
            for f in &free {
                let d = (c % 4) as usize;
                c /= 4;
                if d > 0 {
                    m.set((*f).clone(), STORED[d - 1]);
                }
            }
            m
        };

        let total = 4u64.pow(free.len() as u32);
        let mut models = Vec::new();
        for code in 0..total {
            if self.is_model(&decode(code))? {
                models.push(code);
            }
        }
        let model_set: HashSet<u64> = models.iter().copied().collect();

        let mut minimal = Vec::new();
        'candidate: for &code in &models {
            // positions holding a stored value
            let mut present = Vec::new();
            let mut c = code;
            for pos in 0..free.len() {
                if c % 4 != 0 {
                    present.push(pos);
                }
                c /= 4;
            }
            // every non-empty set of removed entries gives a proper subset
            for mask in 1u32..(1u32 << present.len()) {
                let mut sub = code;
                for (bit, &pos) in present.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        let digit = (code / 4u64.pow(pos as u32)) % 4;
                        sub -= digit * 4u64.pow(pos as u32);
                    }
                }
                if model_set.contains(&sub) {
                    continue 'candidate;
                }
            }
            minimal.push(decode(code));
        }
        Ok(minimal)
    }
}

pub fn ground_rules(db: &Database) -> Result<Vec<GroundRule>> {
    Ok(GroundProgram::new(db, &EngineConfig::default())?.rules)
}

pub fn gamma_step(db: &Database, s: &VSet) -> Result<Vec<(Fact, TruthValue)>> {
    GroundProgram::new(db, &EngineConfig::default())?.gamma_step(s)
}

pub fn sigma_step(db: &Database, s: &VSet) -> Result<VSet> {
    GroundProgram::new(db, &EngineConfig::default())?.sigma_step(s)
}

pub fn semantics(db: &Database, max_iters: usize) -> Result<SemanticsResult> {
    GroundProgram::new(db, &EngineConfig::default())?.semantics(max_iters, false)
}

pub fn semantics_with(db: &Database, config: &EngineConfig) -> Result<SemanticsResult> {
    GroundProgram::new(db, config)?.semantics(config.max_iters, config.trace)
}

pub fn is_model(db: &Database, m: &VSet) -> Result<bool> {
    GroundProgram::new(db, &EngineConfig::default())?.is_model(m)
}

pub fn minimal_models_bruteforce(db: &Database, max_base: usize) -> Result<Vec<VSet>> {
    GroundProgram::new(db, &EngineConfig::default())?.minimal_models_bruteforce(max_base)
}

pub const DEFAULT_MAX_BASE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryRow {
    pub binding: Binding,
    pub value: TruthValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryAnswer {
    /// Value of a ground query.
    Value(TruthValue),
    /// One row per binding of the free variables.
    Table {
        vars: Vec<Symbol>,
        rows: Vec<QueryRow>,
    },
}

/// Evaluates `formula` in a computed semantics. Open formulas range over
/// `domain` together with the formula's own constants.
pub fn query_fixpoint(
    fixpoint: &VSet,
    domain: &BTreeSet<Symbol>,
    formula: &Formula,
    include_unknown: bool,
) -> Result<QueryAnswer> {
    let vars: Vec<Symbol> = formula.free_vars().into_iter().collect();
    if vars.is_empty() {
        return Ok(QueryAnswer::Value(evaluate(fixpoint, formula)?));
    }
    let mut domain = domain.clone();
    domain.extend(formula.constants());
    let ordered: Vec<&Symbol> = domain.iter().collect();
    let mut rows = Vec::new();
    let mut failure = None;
    for_each_tuple(&ordered, vars.len(), |tuple| {
        if failure.is_some() {
            return;
        }
        let binding: Binding = vars
            .iter()
            .cloned()
            .zip(tuple.iter().map(|c| (*c).clone()))
            .collect();
        match formula
            .substitute(&binding)
            .and_then(|g| evaluate(fixpoint, &g))
        {
            Ok(value) if include_unknown || value != TruthValue::None => {
                rows.push(QueryRow { binding, value })
            }
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(QueryAnswer::Table { vars, rows }),
    }
}

/// Evaluates `formula` in the semantics of `db`; open formulas omit `n` rows.
pub fn query(db: &Database, formula: &Formula) -> Result<QueryAnswer> {
    let config = EngineConfig::default();
    let program = GroundProgram::new(db, &config)?;
    let sem = program.semantics(config.max_iters, false)?;
    query_fixpoint(&sem.fixpoint, program.domain(), formula, false)
}

#[cfg(test)]
mod tests;
