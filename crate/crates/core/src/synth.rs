//! Compiling an arbitrary truth function into a formula over `¬`, `∨`, `∧`,
//! `⊕`, `⊗`, `≁`, `∼` and the selectors `T`, `B`, `N`, `F`.
//!
//! For every input tuple `V` the formula `φ_V` is `t` on `V` and `f`
//! elsewhere. Grouping the tuples by output value gives four two-valued
//! formulas `Φ_t`, `Φ_b`, `Φ_n`, `Φ_f`, which are combined as
//! `((Φ_t ∨ ¬Φ_f) ⊗ ∼≁Φ_n) ⊕ ≁Φ_b`.

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula};
use crate::truth::{BinaryConnector, TruthValue, UnaryConnector};

/// Default largest arity accepted by [`verify_synthesis`].
pub const DEFAULT_VERIFY_BOUND: usize = 3;

/// A total function `{t,b,n,f}^k -> {t,b,n,f}`, `k >= 1`.
///
/// `table` is indexed in base 4 with the first argument most significant and
/// digits following the `t, b, n, f` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthFunction {
    arity: usize,
    table: Vec<TruthValue>,
}

impl TruthFunction {
    pub fn new(arity: usize, table: Vec<TruthValue>) -> Result<TruthFunction> {
        if arity == 0 {
            return Err(Error::InvalidTruthFunction(
                "arity must be at least 1".into(),
            ));
        }
        let expected = 4usize
            .checked_pow(arity as u32)
            .ok_or_else(|| Error::InvalidTruthFunction(format!("arity {arity} is too large")))?;
        if table.len() != expected {
            return Err(Error::InvalidTruthFunction(format!(
                "arity {arity} needs {expected} entries, got {}",
                table.len()
            )));
        }
        Ok(TruthFunction { arity, table })
    }

    pub fn from_fn<F>(arity: usize, mut f: F) -> Result<TruthFunction>
    where
        F: FnMut(&[TruthValue]) -> TruthValue,
    {
        if arity == 0 {
            return TruthFunction::new(0, Vec::new());
        }
        let table = tuples(arity).map(|v| f(&v)).collect();
        TruthFunction::new(arity, table)
    }

    pub fn unary(conn: UnaryConnector) -> TruthFunction {
        TruthFunction::from_fn(1, |v| conn.apply(v[0])).expect("arity 1")
    }

    pub fn binary(conn: BinaryConnector) -> TruthFunction {
        TruthFunction::from_fn(2, |v| conn.apply(v[0], v[1])).expect("arity 2")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[TruthValue] {
        &self.table
    }

    /// Panics if `args.len()` differs from the arity.
    pub fn apply(&self, args: &[TruthValue]) -> TruthValue {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        self.table[tuple_index(args)]
    }

    /// `(tuple, value)` for every input, in table order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<TruthValue>, TruthValue)> + '_ {
        tuples(self.arity).zip(self.table.iter().copied())
    }
}

fn tuple_index(args: &[TruthValue]) -> usize {
    args.iter().fold(0, |acc, v| acc * 4 + v.index())
}

/// All `4^k` tuples in table order.
pub fn tuples(arity: usize) -> impl Iterator<Item = Vec<TruthValue>> {
    let count = 4usize.pow(arity as u32);
    (0..count).map(move |mut code| {
        let mut tuple = vec![TruthValue::True; arity];
        for slot in tuple.iter_mut().rev() {
            *slot = TruthValue::from_index(code % 4);
            code /= 4;
        }
        tuple
    })
}

/// The propositional variable `P{i}` (1-based).
pub fn variable(i: usize) -> Formula {
    Formula::from(Atom::prop(&format!("P{i}")))
}

/// `⋀ sel(V_i)(P_i)`: `t` exactly when every `P_i` has value `V_i`, else `f`.
pub fn phi_for_tuple(tuple: &[TruthValue]) -> Formula {
    assert!(!tuple.is_empty(), "tuples have at least one component");
    tuple
        .iter()
        .enumerate()
        .map(|(i, &v)| Formula::unary(UnaryConnector::selector(v), variable(i + 1)))
        .reduce(Formula::and)
        .expect("non-empty")
}

/// `T(P1) & F(P1)`: the stand-in for an empty disjunction; `f` everywhere.
fn always_false() -> Formula {
    Formula::unary(UnaryConnector::IsTrue, variable(1))
        .and(Formula::unary(UnaryConnector::IsFalse, variable(1)))
}

fn preimage_formula(w: &TruthFunction, value: TruthValue) -> Formula {
    w.entries()
        .filter(|(_, out)| *out == value)
        .map(|(tuple, _)| phi_for_tuple(&tuple))
        .reduce(Formula::or)
        .unwrap_or_else(always_false)
}

pub fn synthesize(w: &TruthFunction) -> Formula {
    let [phi_t, phi_b, phi_n, phi_f] = TruthValue::ALL.map(|v| preimage_formula(w, v));
    let conf = |f: Formula| Formula::unary(UnaryConnector::Conf, f);
    let compl = |f: Formula| Formula::unary(UnaryConnector::Compl, f);
    phi_t
        .or(phi_f.neg())
        .kmeet(compl(conf(phi_n)))
        .kjoin(conf(phi_b))
}

/// Evaluates a formula over `P1..Pk` at `args`.
pub fn eval_at(formula: &Formula, args: &[TruthValue]) -> Result<TruthValue> {
    formula.eval_with(&mut |atom: &Atom| {
        let index = atom
            .predicate
            .as_str()
            .strip_prefix('P')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| atom.arity() == 0 && (1..=args.len()).contains(&n));
        match index {
            Some(n) => Ok(args[n - 1]),
            None => Err(Error::InvalidTruthFunction(format!(
                "unexpected atom {atom} over {} variables",
                args.len()
            ))),
        }
    })
}

/// Whether `synthesize(w)` agrees with `w` on every input.
pub fn verify_synthesis(w: &TruthFunction, bound: usize) -> Result<bool> {
    if w.arity() > bound {
        return Err(Error::ArityBound {
            arity: w.arity(),
            bound,
        });
    }
    let formula = synthesize(w);
    for (tuple, expected) in w.entries() {
        if eval_at(&formula, &tuple)? != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
