//! Deductive databases over Belnap's four-valued logic.
//!
//! Stored facts carry one of the values `t`, `b`, `n`, `f`; rules derive
//! further values through a monotone consequence operator whose least
//! fixpoint is the database semantics.

pub mod engine;
pub mod error;
pub mod formula;
pub mod gen;
pub mod laws;
pub mod normal;
pub mod syntax;
pub mod synth;
pub mod truth;
pub mod update;

pub use engine::{
    active_domain, active_herbrand_base, is_model, minimal_models_bruteforce, query, semantics,
    semantics_with, ActiveDomain, Database, EngineConfig, GroundProgram, GroundRule, QueryAnswer,
    QueryRow, SemanticsResult,
};
pub use error::{Error, Result};
pub use formula::{evaluate, Atom, Binding, Fact, Formula, Rule, Sign, Symbol, Term, VSet};
pub use normal::{is_safe, normalize, NormalForm, SafetyReport};
pub use syntax::{parse_database, parse_formula, parse_vpair, ParseError};
pub use synth::{synthesize, verify_synthesis, TruthFunction};
pub use truth::{BinaryConnector, TruthValue, UnaryConnector};
pub use update::{integrative_update, standard_update, Combinator, VPair};
