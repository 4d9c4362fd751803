//! Belnap's four truth values, the connectors over them, and the two
//! bilattice orderings.
//!
//! Every connector is a constant lookup table. The identities relating the
//! connectors to each other (FDE implication as `inc(a) | b`, the De Morgan
//! laws, the `T/B/N/F` characterisations, ...) are checked in [`crate::laws`],
//! never used to compute a table.

use std::fmt;
use std::str::FromStr;

/// One of the four truth values `t`, `b`, `n`, `f`.
///
/// `b` ("both") is inconsistent information, `n` ("none") is unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    True,
    Both,
    None,
    False,
}

use TruthValue::{Both as B, False as F, None as N, True as T};

impl TruthValue {
    /// All four values, in the row/column order used by every table here.
    pub const ALL: [TruthValue; 4] = [T, B, N, F];

    #[inline]
    pub const fn index(self) -> usize {
        match self {
            T => 0,
            B => 1,
            N => 2,
            F => 3,
        }
    }

    #[inline]
    pub const fn from_index(i: usize) -> TruthValue {
        Self::ALL[i]
    }

    pub const fn symbol(self) -> char {
        match self {
            T => 't',
            B => 'b',
            N => 'n',
            F => 'f',
        }
    }

    /// `t` and `b` are designated: a formula holds when its value is one of them.
    #[inline]
    pub const fn is_designated(self) -> bool {
        matches!(self, T | B)
    }

    /// Knowledge ordering: `n <= t <= b` and `n <= f <= b`.
    #[inline]
    pub const fn leq_k(self, other: TruthValue) -> bool {
        matches!((self, other), (N, _) | (_, B) | (T, T) | (F, F))
    }

    /// Truth ordering: `f <= n <= t` and `f <= b <= t`.
    #[inline]
    pub const fn leq_t(self, other: TruthValue) -> bool {
        matches!((self, other), (F, _) | (_, T) | (N, N) | (B, B))
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> TruthValue {
        UnaryConnector::Neg.apply(self)
    }

    #[inline]
    pub fn or(self, other: TruthValue) -> TruthValue {
        BinaryConnector::Or.apply(self, other)
    }

    #[inline]
    pub fn and(self, other: TruthValue) -> TruthValue {
        BinaryConnector::And.apply(self, other)
    }

    /// Knowledge join (`(+)`), the integration of two sources.
    #[inline]
    pub fn kjoin(self, other: TruthValue) -> TruthValue {
        BinaryConnector::KJoin.apply(self, other)
    }

    /// Knowledge meet (`(x)`), the common knowledge of two sources.
    #[inline]
    pub fn kmeet(self, other: TruthValue) -> TruthValue {
        BinaryConnector::KMeet.apply(self, other)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a truth value (expected one of t, b, n, f)")]
pub struct InvalidTruthValue(pub String);

impl FromStr for TruthValue {
    type Err = InvalidTruthValue;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "t" => Ok(T),
            "b" => Ok(B),
            "n" => Ok(N),
            "f" => Ok(F),
            other => Err(InvalidTruthValue(other.to_string())),
        }
    }
}

type Column = [TruthValue; 4];
type Table = [[TruthValue; 4]; 4];

const NEG: Column = [F, B, N, T];
const CONF: Column = [B, T, F, N];
const COMPL: Column = [F, N, B, T];
const IS_T: Column = [T, F, F, F];
const IS_B: Column = [F, T, F, F];
const IS_N: Column = [F, F, T, F];
const IS_F: Column = [F, F, F, T];
const NONVALID: Column = [F, F, T, T];

// Rows are the left operand, columns the right operand, both in t, b, n, f order.
const OR: Table = [[T, T, T, T], [T, B, T, B], [T, T, N, N], [T, B, N, F]];
const AND: Table = [[T, B, N, F], [B, B, F, F], [N, F, N, F], [F, F, F, F]];
const KJOIN: Table = [[T, B, T, B], [B, B, B, B], [T, B, N, F], [B, B, F, F]];
const KMEET: Table = [[T, T, N, N], [T, B, N, F], [N, N, N, N], [N, F, N, F]];
const ODOT: Table = [[T, B, N, N], [B, B, B, B], [N, B, N, N], [N, B, N, F]];
const IMP_MAT: Table = [[T, B, N, F], [T, B, T, B], [T, T, N, N], [T, T, T, T]];
const IMP_FDE: Table = [[T, B, N, F], [T, B, N, F], [T, T, T, T], [T, T, T, T]];
const IMP_HOOK: Table = [[T, B, N, F], [T, T, N, N], [T, B, T, B], [T, T, T, T]];
const IMP_FDE_STAR: Table = [[T, F, N, F], [T, B, N, F], [T, N, T, N], [T, T, T, T]];
const IMP_HOOK_STAR: Table = [[T, F, F, F], [T, T, F, F], [T, F, T, F], [T, T, T, T]];

/// Unary connectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnaryConnector {
    /// Negation `~`: swaps `t` and `f`, fixes `b` and `n`.
    Neg,
    /// Conflation `conf`.
    Conf,
    /// Complement `compl`.
    Compl,
    /// `T(..)`: true exactly when the argument is `t`.
    IsTrue,
    /// `B(..)`: true exactly when the argument is `b`.
    IsBoth,
    /// `N(..)`: true exactly when the argument is `n`.
    IsNone,
    /// `F(..)`: true exactly when the argument is `f`.
    IsFalse,
    /// `inc(..)`: true exactly when the argument is not designated.
    NonValid,
}

impl UnaryConnector {
    pub const ALL: [UnaryConnector; 8] = [
        UnaryConnector::Neg,
        UnaryConnector::Conf,
        UnaryConnector::Compl,
        UnaryConnector::IsTrue,
        UnaryConnector::IsBoth,
        UnaryConnector::IsNone,
        UnaryConnector::IsFalse,
        UnaryConnector::NonValid,
    ];

    fn column(self) -> &'static Column {
        match self {
            UnaryConnector::Neg => &NEG,
            UnaryConnector::Conf => &CONF,
            UnaryConnector::Compl => &COMPL,
            UnaryConnector::IsTrue => &IS_T,
            UnaryConnector::IsBoth => &IS_B,
            UnaryConnector::IsNone => &IS_N,
            UnaryConnector::IsFalse => &IS_F,
            UnaryConnector::NonValid => &NONVALID,
        }
    }

    #[inline]
    pub fn apply(self, v: TruthValue) -> TruthValue {
        self.column()[v.index()]
    }

    /// Selector connector (`T`, `B`, `N` or `F`) characterising `v`.
    pub const fn selector(v: TruthValue) -> UnaryConnector {
        match v {
            T => UnaryConnector::IsTrue,
            B => UnaryConnector::IsBoth,
            N => UnaryConnector::IsNone,
            F => UnaryConnector::IsFalse,
        }
    }

    /// Connectors permitted in rule bodies.
    pub const fn allowed_in_body(self) -> bool {
        matches!(self, UnaryConnector::Neg)
    }
}

/// Binary connectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryConnector {
    Or,
    And,
    /// Knowledge join `(+)`.
    KJoin,
    /// Knowledge meet `(x)`.
    KMeet,
    /// Inconsistency-preserving integration `(o)`.
    Odot,
    /// Material implication `=>`, i.e. `~a | b`.
    ImpMaterial,
    /// First-degree-entailment implication `->`.
    ImpFde,
    /// `~>`, i.e. `compl a | b`.
    ImpHook,
    /// `*->`: `(a -> b) & (~b -> ~a)`.
    ImpFdeStar,
    /// `*~>`: `(a ~> b) & (~b ~> ~a)`.
    ImpHookStar,
}

impl BinaryConnector {
    pub const ALL: [BinaryConnector; 10] = [
        BinaryConnector::Or,
        BinaryConnector::And,
        BinaryConnector::KJoin,
        BinaryConnector::KMeet,
        BinaryConnector::Odot,
        BinaryConnector::ImpMaterial,
        BinaryConnector::ImpFde,
        BinaryConnector::ImpHook,
        BinaryConnector::ImpFdeStar,
        BinaryConnector::ImpHookStar,
    ];

    fn table(self) -> &'static Table {
        match self {
            BinaryConnector::Or => &OR,
            BinaryConnector::And => &AND,
            BinaryConnector::KJoin => &KJOIN,
            BinaryConnector::KMeet => &KMEET,
            BinaryConnector::Odot => &ODOT,
            BinaryConnector::ImpMaterial => &IMP_MAT,
            BinaryConnector::ImpFde => &IMP_FDE,
            BinaryConnector::ImpHook => &IMP_HOOK,
            BinaryConnector::ImpFdeStar => &IMP_FDE_STAR,
            BinaryConnector::ImpHookStar => &IMP_HOOK_STAR,
        }
    }

    #[inline]
    pub fn apply(self, a: TruthValue, b: TruthValue) -> TruthValue {
        self.table()[a.index()][b.index()]
    }

    pub const fn is_implication(self) -> bool {
        matches!(
            self,
            BinaryConnector::ImpMaterial
                | BinaryConnector::ImpFde
                | BinaryConnector::ImpHook
                | BinaryConnector::ImpFdeStar
                | BinaryConnector::ImpHookStar
        )
    }

    /// Connectors permitted in rule bodies.
    pub const fn allowed_in_body(self) -> bool {
        matches!(
            self,
            BinaryConnector::Or
                | BinaryConnector::And
                | BinaryConnector::KJoin
                | BinaryConnector::KMeet
        )
    }
}

pub fn eval_unary(conn: UnaryConnector, v: TruthValue) -> TruthValue {
    conn.apply(v)
}

pub fn eval_binary(conn: BinaryConnector, a: TruthValue, b: TruthValue) -> TruthValue {
    conn.apply(a, b)
}

pub fn leq_k(a: TruthValue, b: TruthValue) -> bool {
    a.leq_k(b)
}

pub fn leq_t(a: TruthValue, b: TruthValue) -> bool {
    a.leq_t(b)
}

pub fn is_designated(v: TruthValue) -> bool {
    v.is_designated()
}
