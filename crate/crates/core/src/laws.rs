//! Exhaustive checks of the algebraic identities relating the connector
//! tables. Every law is decided by enumerating at most 64 cases.

use crate::truth::{BinaryConnector, TruthValue, UnaryConnector};
use std::fmt;

use BinaryConnector::{
    And, ImpFde, ImpFdeStar, ImpHook, ImpHookStar, ImpMaterial, KJoin, KMeet, Odot, Or,
};
use TruthValue::{False as F, None as N};
use UnaryConnector::{Compl, Conf, IsBoth, IsFalse, IsNone, IsTrue, Neg, NonValid};

const V: [TruthValue; 4] = TruthValue::ALL;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub name: String,
    pub cases: usize,
    /// Descriptions of the counterexamples found.
    pub failures: Vec<String>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for LawResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases)", self.name, self.cases)?;
        for failure in &self.failures {
            write!(f, "\n    counterexample: {failure}")?;
        }
        Ok(())
    }
}

fn u(c: UnaryConnector, a: TruthValue) -> TruthValue {
    c.apply(a)
}

fn b(c: BinaryConnector, x: TruthValue, y: TruthValue) -> TruthValue {
    c.apply(x, y)
}

fn law1(name: impl Into<String>, holds: impl Fn(TruthValue) -> bool) -> LawResult {
    let failures = V
        .iter()
        .filter(|&&a| !holds(a))
        .map(|a| format!("a={a}"))
        .collect();
    LawResult {
        name: name.into(),
        cases: 4,
        failures,
    }
}

fn law2(name: impl Into<String>, holds: impl Fn(TruthValue, TruthValue) -> bool) -> LawResult {
    let mut failures = Vec::new();
    for x in V {
        for y in V {
            if !holds(x, y) {
                failures.push(format!("a={x} b={y}"));
            }
        }
    }
    LawResult {
        name: name.into(),
        cases: 16,
        failures,
    }
}

fn law3(
    name: impl Into<String>,
    holds: impl Fn(TruthValue, TruthValue, TruthValue) -> bool,
) -> LawResult {
    let mut failures = Vec::new();
    for x in V {
        for y in V {
            for z in V {
                if !holds(x, y, z) {
                    failures.push(format!("a={x} b={y} c={z}"));
                }
            }
        }
    }
    LawResult {
        name: name.into(),
        cases: 64,
        failures,
    }
}

/// Reflexive-transitive closure of the covering pairs, as a 4x4 relation.
fn closure(covers: &[(TruthValue, TruthValue)]) -> [[bool; 4]; 4] {
    let mut r = [[false; 4]; 4];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(x, y) in covers {
        r[x.index()][y.index()] = true;
    }
    for k in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                r[i][j] |= r[i][k] && r[k][j];
            }
        }
    }
    r
}

fn order_laws(
    name: &str,
    leq: fn(TruthValue, TruthValue) -> bool,
    covers: &[(TruthValue, TruthValue)],
) -> Vec<LawResult> {
    let generated = closure(covers);
    vec![
        law2(
            format!("{name} is generated by its covering pairs"),
            |x, y| leq(x, y) == generated[x.index()][y.index()],
        ),
        law3(format!("{name} is a partial order"), |x, y, z| {
            leq(x, x)
                && (!(leq(x, y) && leq(y, x)) || x == y)
                && (!(leq(x, y) && leq(y, z)) || leq(x, z))
        }),
    ]
}

fn lub(name: &str, op: BinaryConnector, leq: fn(TruthValue, TruthValue) -> bool) -> LawResult {
    law3(
        format!("{name} is the least upper bound"),
        move |x, y, z| {
            let j = b(op, x, y);
            leq(x, j) && leq(y, j) && (!(leq(x, z) && leq(y, z)) || leq(j, z))
        },
    )
}

fn glb(name: &str, op: BinaryConnector, leq: fn(TruthValue, TruthValue) -> bool) -> LawResult {
    law3(
        format!("{name} is the greatest lower bound"),
        move |x, y, z| {
            let m = b(op, x, y);
            leq(m, x) && leq(m, y) && (!(leq(z, x) && leq(z, y)) || leq(z, m))
        },
    )
}

fn token(c: BinaryConnector) -> &'static str {
    crate::syntax::binary_token(c)
}

/// Runs every law and reports each outcome.
pub fn run_all() -> Vec<LawResult> {
    let mut out = Vec::new();
    let (t, bb) = (TruthValue::True, TruthValue::Both);
    let leq_k = |x: TruthValue, y: TruthValue| x.leq_k(y);
    let leq_t = |x: TruthValue, y: TruthValue| x.leq_t(y);

    out.extend(order_laws(
        "knowledge order",
        leq_k,
        &[(N, t), (t, bb), (N, F), (F, bb)],
    ));
    out.extend(order_laws(
        "truth order",
        leq_t,
        &[(F, N), (N, t), (F, bb), (bb, t)],
    ));
    out.push(lub("(+) under the knowledge order", KJoin, leq_k));
    out.push(glb("(x) under the knowledge order", KMeet, leq_k));
    out.push(lub("| under the truth order", Or, leq_t));
    out.push(glb("& under the truth order", And, leq_t));

    out.push(law1("compl a = ~conf ~conf a = conf ~conf ~a", |a| {
        let c = u(Compl, a);
        c == u(Neg, u(Conf, u(Neg, u(Conf, a)))) && c == u(Conf, u(Neg, u(Conf, u(Neg, a))))
    }));
    out.push(law1("T(a) = a & compl ~a", |a| {
        u(IsTrue, a) == a.and(u(Compl, a.neg()))
    }));
    out.push(law1("B(a) = conf a & conf ~a", |a| {
        u(IsBoth, a) == u(Conf, a).and(u(Conf, a.neg()))
    }));
    out.push(law1("N(a) = compl conf a & ~conf a", |a| {
        u(IsNone, a) == u(Compl, u(Conf, a)).and(u(Conf, a).neg())
    }));
    out.push(law1("F(a) = compl a & ~a", |a| {
        u(IsFalse, a) == u(Compl, a).and(a.neg())
    }));
    out.push(law1("selectors are two-valued", |a| {
        [IsTrue, IsBoth, IsNone, IsFalse]
            .iter()
            .all(|&c| matches!(u(c, a), TruthValue::True | TruthValue::False))
    }));
    out.push(law1("inc(a) = N(a) | F(a)", |a| {
        u(NonValid, a) == u(IsNone, a).or(u(IsFalse, a))
    }));

    out.push(law2("a -> b = inc(a) | b", |x, y| {
        b(ImpFde, x, y) == u(NonValid, x).or(y)
    }));
    out.push(law2("a ~> b = compl a | b", |x, y| {
        b(ImpHook, x, y) == u(Compl, x).or(y)
    }));
    out.push(law2("a *-> b = (a -> b) & (~b -> ~a)", |x, y| {
        b(ImpFdeStar, x, y) == b(ImpFde, x, y).and(b(ImpFde, y.neg(), x.neg()))
    }));
    out.push(law2("a *~> b = (a ~> b) & (~b ~> ~a)", |x, y| {
        b(ImpHookStar, x, y) == b(ImpHook, x, y).and(b(ImpHook, y.neg(), x.neg()))
    }));

    for imp in [ImpFde, ImpHook, ImpFdeStar, ImpHookStar] {
        let op = token(imp);
        out.push(law2(
            format!("modus ponens (a & (a {op} b)) {op} b is designated"),
            move |x, y| b(imp, x.and(b(imp, x, y)), y).is_designated(),
        ));
    }
    out.push(LawResult {
        name: "(a & (a => b)) => b is n at a=n b=f".into(),
        cases: 1,
        failures: match b(ImpMaterial, N.and(b(ImpMaterial, N, F)), F) {
            N => vec![],
            other => vec![format!("a=n b=f gives {other}")],
        },
    });

    let h = |v: TruthValue| v.is_designated();
    for imp in [ImpFde, ImpHook] {
        out.push(law2(
            format!("{} collapses to classical implication", token(imp)),
            move |x, y| h(b(imp, x, y)) == (!h(x) || h(y)),
        ));
    }
    for imp in [ImpMaterial, ImpFdeStar, ImpHookStar] {
        let counterexamples = V
            .iter()
            .flat_map(|&x| V.iter().map(move |&y| (x, y)))
            .filter(|&(x, y)| h(b(imp, x, y)) != (!h(x) || h(y)))
            .count();
        out.push(LawResult {
            name: format!("{} does not collapse to classical implication", token(imp)),
            cases: 16,
            failures: if counterexamples > 0 {
                vec![]
            } else {
                vec!["agrees with classical implication on every pair".into()]
            },
        });
    }

    out.push(law2("~(a | b) = ~a & ~b", |x, y| {
        x.or(y).neg() == x.neg().and(y.neg())
    }));
    out.push(law2("~(a & b) = ~a | ~b", |x, y| {
        x.and(y).neg() == x.neg().or(y.neg())
    }));
    out.push(law2("~(a (+) b) = ~a (+) ~b", |x, y| {
        x.kjoin(y).neg() == x.neg().kjoin(y.neg())
    }));
    out.push(law2("~(a (x) b) = ~a (x) ~b", |x, y| {
        x.kmeet(y).neg() == x.neg().kmeet(y.neg())
    }));

    let lattice = [Or, And, KJoin, KMeet];
    for outer in lattice {
        for inner in lattice {
            if outer == inner {
                continue;
            }
            let (o, i) = (token(outer), token(inner));
            out.push(law3(format!("{o} distributes over {i}"), move |x, y, z| {
                b(outer, x, b(inner, y, z)) == b(inner, b(outer, x, y), b(outer, x, z))
            }));
        }
    }

    out.push(law3(
        "(a | b) -> c = (a (+) b) -> c = (a -> c) & (b -> c)",
        |x, y, z| {
            let r = b(ImpFde, x, z).and(b(ImpFde, y, z));
            b(ImpFde, x.or(y), z) == r && b(ImpFde, x.kjoin(y), z) == r
        },
    ));
    out.push(law3(
        "(a & b) -> c = (a (x) b) -> c = (a -> c) | (b -> c)",
        |x, y, z| {
            let r = b(ImpFde, x, z).or(b(ImpFde, y, z));
            b(ImpFde, x.and(y), z) == r && b(ImpFde, x.kmeet(y), z) == r
        },
    ));

    out.push(law2(
        "a (o) b = (a (x) b) (+) (a (x) ~a) (+) (b (x) ~b)",
        |x, y| b(Odot, x, y) == x.kmeet(y).kjoin(x.kmeet(x.neg())).kjoin(y.kmeet(y.neg())),
    ));

    out.push(law2("~ is monotone in the knowledge order", |x, y| {
        !x.leq_k(y) || x.neg().leq_k(y.neg())
    }));
    for op in [Or, And, KJoin, KMeet] {
        out.push(law3(
            format!("{} is monotone in the knowledge order", token(op)),
            move |x, y, z| {
                !x.leq_k(y) || (b(op, x, z).leq_k(b(op, y, z)) && b(op, z, x).leq_k(b(op, z, y)))
            },
        ));
    }
    out
}
