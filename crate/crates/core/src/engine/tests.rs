use super::*;
use crate::formula::{Atom, Term};
use crate::syntax::{parse_database, parse_formula};
use crate::truth::TruthValue::{Both as B, False as F, None as N, True as T};

const STORAGE: &str = "
H1(101) = f. H2(101) = f. W1(101) = t.
H2(202) = t. W1(202) = f. W2(202) = t.
W1(303) = f.
rule Humid(?x) <- H1(?x) (+) H2(?x).
rule White(?x) <- W1(?x) (+) W2(?x).
rule Store(?x) <- ~Humid(?x) & White(?x).
rule ~Store(?x) <- Humid(?x).
rule Cure(?x) <- Humid(?x).
rule ~Store(?x) <- ~White(?x).
rule New_test(?x) <- ~White(?x).
";

fn db(src: &str) -> Database {
    parse_database(src).unwrap()
}

fn vs(pairs: &[(&str, &str, TruthValue)]) -> VSet {
    pairs
        .iter()
        .map(|(p, c, v)| (Fact::new(p, &[c]), *v))
        .collect()
}

fn storage_extension() -> VSet {
    vs(&[
        ("H1", "101", F),
        ("H2", "101", F),
        ("W1", "101", T),
        ("H2", "202", T),
        ("W1", "202", F),
        ("W2", "202", T),
        ("W1", "303", F),
    ])
}

#[test]
fn storage_first_step() {
    let d = db(STORAGE);
    let mut want = storage_extension();
    want.set(Fact::new("Humid", &["202"]), T);
    want.set(Fact::new("White", &["101"]), T);
    want.set(Fact::new("White", &["202"]), B);
    assert_eq!(sigma_step(&d, d.extension()).unwrap(), want);
}

#[test]
fn storage_semantics() {
    let d = db(STORAGE);
    let sem = semantics(&d, 100).unwrap();
    let mut want = storage_extension();
    for (p, v) in [
        ("Humid", T),
        ("White", B),
        ("Store", B),
        ("Cure", T),
        ("New_test", B),
    ] {
        want.set(Fact::new(p, &["202"]), v);
    }
    want.set(Fact::new("White", &["101"]), T);
    assert_eq!(sem.fixpoint, want);
    assert_eq!(sem.fixpoint.len(), 13);
    assert_eq!(sem.iterations, 2);
    assert!(is_model(&d, &sem.fixpoint).unwrap());
}

#[test]
fn trace_records_every_step() {
    let d = db(STORAGE);
    let config = EngineConfig {
        trace: true,
        ..EngineConfig::default()
    };
    let sem = semantics_with(&d, &config).unwrap();
    let trace = sem.trace.unwrap();
    assert_eq!(trace.len(), 3);
    assert_eq!(trace[0], *d.extension());
    assert_eq!(trace[2], sem.fixpoint);
}

#[test]
fn iteration_limit() {
    let d = db(STORAGE);
    assert_eq!(semantics(&d, 2), Err(Error::IterationLimit { limit: 2 }));
    assert!(semantics(&d, 3).is_ok());
}

#[test]
fn gamma_contributions() {
    let d =
        db("P(a) = t. Q(a) = b. rule R(?x) <- P(?x). rule ~R(?x) <- Q(?x). rule S(?x) <- ~P(?x).");
    let mut got = gamma_step(&d, d.extension()).unwrap();
    got.sort();
    let mut want = vec![
        (Fact::new("P", &["a"]), T),
        (Fact::new("Q", &["a"]), B),
        (Fact::new("R", &["a"]), T),
        (Fact::new("R", &["a"]), B),
    ];
    want.sort();
    assert_eq!(got, want);
    let s = sigma_step(&d, d.extension()).unwrap();
    assert_eq!(s.get(&Fact::new("R", &["a"])), B);
    assert_eq!(s.get(&Fact::new("S", &["a"])), N);
}

#[test]
fn negative_head_true_body_gives_false() {
    let d = db("P(a) = t. rule ~R(?x) <- P(?x).");
    let sem = semantics(&d, 10).unwrap();
    assert_eq!(sem.fixpoint.get(&Fact::new("R", &["a"])), F);
}

#[test]
fn stored_heads_are_not_derived() {
    let d = db("P(a) = t. P(b) = t. R(a) = f. rule R(?x) <- P(?x).");
    let rules = ground_rules(&d).unwrap();
    assert_eq!(rules.len(), 1);
    assert_eq!(rules[0].head, Fact::new("R", &["b"]));
    let sem = semantics(&d, 10).unwrap();
    assert_eq!(sem.fixpoint.get(&Fact::new("R", &["a"])), F);
    assert_eq!(sem.fixpoint.get(&Fact::new("R", &["b"])), T);
}

#[test]
fn unsafe_rules_need_a_universe() {
    let d = db("P(a) = t. rule R(?x) <- P(a) | Q(?x).");
    assert!(matches!(semantics(&d, 10), Err(Error::UnsafeRule { .. })));
    let config = EngineConfig::default().with_universe(["c"]);
    let sem = semantics_with(&d, &config).unwrap();
    assert_eq!(sem.fixpoint.get(&Fact::new("R", &["a"])), T);
    assert_eq!(sem.fixpoint.get(&Fact::new("R", &["c"])), T);
}

#[test]
fn propositional_rules() {
    let d = db("A = t. rule C <- A & D. rule D <- A.");
    let sem = semantics(&d, 10).unwrap();
    assert_eq!(sem.fixpoint.get(&Fact::new("C", &[])), T);
    assert_eq!(sem.iterations, 2);
}

#[test]
fn herbrand_base_sizes() {
    let d = db("E(a, b) = t. P(c) = f.");
    assert_eq!(active_domain(&d).constants.len(), 3);
    assert_eq!(active_herbrand_base(&d).len(), 9 + 3);
}

#[test]
fn model_checks() {
    let d = db("P(a) = t. rule Q(?x) <- P(?x).");
    let q = Fact::new("Q", &["a"]);
    let mut m = d.extension().clone();
    assert!(!is_model(&d, &m).unwrap());
    m.set(q.clone(), B);
    assert!(is_model(&d, &m).unwrap());
    m.set(q, F);
    assert!(!is_model(&d, &m).unwrap());
    assert!(!is_model(&d, &VSet::new()).unwrap());
}

#[test]
fn bruteforce_minimal_models() {
    let d = db("P(a) = t. rule Q(?x) <- P(?x).");
    let mut got = minimal_models_bruteforce(&d, DEFAULT_MAX_BASE).unwrap();
    got.sort_by_key(|m| m.get(&Fact::new("Q", &["a"])));
    let want: Vec<VSet> = [T, B]
        .iter()
        .map(|&v| vs(&[("P", "a", T), ("Q", "a", v)]))
        .collect();
    assert_eq!(got, want);
    let sem = semantics(&d, 10).unwrap();
    assert!(got.contains(&sem.fixpoint));
}

#[test]
fn bruteforce_refuses_big_bases() {
    let d = db(STORAGE);
    assert!(matches!(
        minimal_models_bruteforce(&d, 8),
        Err(Error::BaseTooLarge { limit: 8, .. })
    ));
}

#[test]
fn queries() {
    let d = db(STORAGE);
    let ground = parse_formula("Store(202) & Cure(202)").unwrap();
    assert_eq!(query(&d, &ground).unwrap(), QueryAnswer::Value(B));
    let open = parse_formula("White(?x)").unwrap();
    match query(&d, &open).unwrap() {
        QueryAnswer::Table { vars, rows } => {
            assert_eq!(vars, vec![Symbol::new("x")]);
            let values: Vec<_> = rows
                .iter()
                .map(|r| (r.binding[&Symbol::new("x")].to_string(), r.value))
                .collect();
            assert_eq!(values, vec![("101".to_string(), T), ("202".to_string(), B)]);
        }
        other => panic!("unexpected answer {other:?}"),
    }
}

#[test]
fn open_queries_include_their_constants() {
    let d = db("P(a) = t.");
    let q = parse_formula("~P(?x) | P(zz)").unwrap();
    let sem = semantics(&d, 10).unwrap();
    let domain = active_domain(&d).constants;
    match query_fixpoint(&sem.fixpoint, &domain, &q, true).unwrap() {
        QueryAnswer::Table { rows, .. } => assert_eq!(rows.len(), 2),
        other => panic!("unexpected answer {other:?}"),
    }
}

#[test]
fn arity_checked_on_construction() {
    let e = vs(&[("P", "a", T)]);
    let r = Rule::positive(
        Atom::new("Q", vec![]),
        Formula::from(Atom::new(
            "P",
            vec![Term::constant("a"), Term::constant("b")],
        )),
    )
    .unwrap();
    assert!(matches!(
        Database::new(e, vec![r]),
        Err(Error::ArityMismatch { .. })
    ));
}
