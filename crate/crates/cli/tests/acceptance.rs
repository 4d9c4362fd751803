//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its runtime; the process fails if any criterion fails.

use fourdb_core::engine::{active_herbrand_base, EngineConfig, GroundProgram, DEFAULT_MAX_BASE};
use fourdb_core::gen::{ordered_vsets, small_database, varied_database, SmallDbConfig};
use fourdb_core::synth::{verify_synthesis, TruthFunction, DEFAULT_VERIFY_BOUND};
use fourdb_core::update::{
    integrative_batch, integrative_update, standard_batch, standard_update, Combinator, VPair,
};
use fourdb_core::{
    is_safe, minimal_models_bruteforce, parse_database, semantics, BinaryConnector, Database, Fact,
    TruthValue, VSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};
use TruthValue::{Both as B, False as F, None as N, True as T};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn load(name: &str) -> Database {
    parse_database(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn fourdb(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fourdb"))
        .args(args)
        .output()
        .unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn running_example() -> Outcome {
    let o = fourdb(&["semantics", fixture("storage.4vl").to_str().unwrap()]);
    ensure(o.status.success(), || {
        format!("exit status {:?}", o.status.code())
    })?;
    let got = String::from_utf8(o.stdout).unwrap();
    let golden = std::fs::read_to_string(fixture("storage_semantics.golden")).unwrap();
    let stderr = String::from_utf8(o.stderr).unwrap();
    let at_two = stderr.contains("after 2 iterations");
    if got == golden && at_two {
        return Ok("18 pairs byte-exact, fixpoint at step 2".into());
    }
    let got_lines: Vec<&str> = got.lines().collect();
    let missing: Vec<&str> = golden.lines().filter(|l| !got_lines.contains(l)).collect();
    let extra: Vec<&str> = got_lines
        .iter()
        .copied()
        .filter(|l| !golden.lines().any(|g| g == *l))
        .collect();
    Err(format!(
        "{} pairs computed, golden has {}; missing {:?}; unexpected {:?}; fixpoint at step 2: {at_two}",
        got_lines.len(),
        golden.lines().count(),
        missing,
        extra
    ))
}

const GRID_RULES: [&str; 3] = [
    "rule S(?x) <- P(?x) | Q(?x).",
    "rule S(?x) <- P(?x) (+) Q(?x).",
    "rule S(?x) <- P(?x). rule S(?x) <- Q(?x).",
];

const GRID: [[[TruthValue; 4]; 4]; 3] = [
    [[T, T, T, T], [T, B, T, B], [T, T, N, N], [T, B, N, N]],
    [[T, B, T, B], [B, B, B, B], [T, B, N, N], [B, B, N, N]],
    [[T, B, T, T], [B, B, B, B], [T, B, N, N], [T, B, N, N]],
];

fn rule_set_grid() -> Outcome {
    let s = Fact::new("S", &["a"]);
    let mut cells = 0;
    for (rules, grid) in GRID_RULES.iter().zip(GRID) {
        for p in TruthValue::ALL {
            for q in TruthValue::ALL {
                let mut src = String::new();
                for (name, v) in [("P", p), ("Q", q)] {
                    if v != N {
                        src.push_str(&format!("{name}(a) = {v}.\n"));
                    }
                }
                src.push_str(rules);
                let got = semantics(&parse_database(&src).unwrap(), 100)
                    .unwrap()
                    .fixpoint
                    .get(&s);
                let want = grid[p.index()][q.index()];
                ensure(got == want, || {
                    format!("{rules} at P(a)={p} Q(a)={q}: got {got}, want {want}")
                })?;
                cells += 1;
            }
        }
    }
    let store = Fact::new("Store", &["202"]);
    let separate = semantics(&load("storage.4vl"), 100)
        .unwrap()
        .fixpoint
        .get(&store);
    let merged = semantics(&load("storage_merged.4vl"), 100)
        .unwrap()
        .fixpoint
        .get(&store);
    ensure((separate, merged) == (B, F), || {
        format!("Store(202): separate {separate}, merged {merged}")
    })?;
    Ok(format!(
        "{cells} cells match; Store(202) b with separate rules, f merged"
    ))
}

fn law_suite() -> Outcome {
    let o = fourdb(&["laws"]);
    let out = String::from_utf8(o.stdout).unwrap();
    let failed: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL ")).collect();
    let passed = out.lines().filter(|l| l.starts_with("PASS ")).count();
    ensure(failed.is_empty() && o.status.success(), || {
        format!(
            "{} of {} laws fail: {:?}",
            failed.len(),
            failed.len() + passed,
            failed
        )
    })?;
    Ok(format!("{passed} laws hold"))
}

fn functional_completeness() -> Outcome {
    let mut checked = 0;
    for code in 0..256usize {
        let table = (0..4)
            .map(|i| TruthValue::from_index((code >> (2 * (3 - i))) & 3))
            .collect();
        let w = TruthFunction::new(1, table).unwrap();
        ensure(verify_synthesis(&w, DEFAULT_VERIFY_BOUND).unwrap(), || {
            format!("unary function {code}")
        })?;
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..200 {
        let table = (0..16)
            .map(|_| TruthValue::from_index(rng.gen_range(0..4)))
            .collect();
        let w = TruthFunction::new(2, table).unwrap();
        ensure(verify_synthesis(&w, DEFAULT_VERIFY_BOUND).unwrap(), || {
            format!("random binary function {i}")
        })?;
        checked += 1;
    }
    for conn in BinaryConnector::ALL {
        let w = TruthFunction::binary(conn);
        ensure(verify_synthesis(&w, DEFAULT_VERIFY_BOUND).unwrap(), || {
            format!("{conn:?}")
        })?;
        checked += 1;
    }
    Ok(format!(
        "{checked} truth functions synthesized and verified"
    ))
}

fn fixpoint_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let config = SmallDbConfig::default();
    let mut with_rules = 0;
    for i in 0..60 {
        let db = small_database(&mut rng, &config);
        ensure(
            active_herbrand_base(&db).len() <= 6 && db.rules().len() <= 4,
            || format!("database {i} too large"),
        )?;
        let program = GroundProgram::new(&db, &EngineConfig::default()).unwrap();
        let sem = program.semantics(1000, true).unwrap();
        ensure(program.is_model(&sem.fixpoint).unwrap(), || {
            format!("database {i}: fixpoint is not a model")
        })?;
        let minimal = program.minimal_models_bruteforce(DEFAULT_MAX_BASE).unwrap();
        ensure(minimal.contains(&sem.fixpoint), || {
            format!("database {i}: a proper subset of the fixpoint is a model")
        })?;
        let trace = sem.trace.unwrap();
        for (k, w) in trace.windows(2).enumerate() {
            ensure(w[0].leq_k(&w[1]), || {
                format!("database {i}: step {k} to {} descends", k + 1)
            })?;
        }
        with_rules += usize::from(!db.rules().is_empty());
    }
    let two = load("two_models.4vl");
    let mut models: Vec<String> = minimal_models_bruteforce(&two, DEFAULT_MAX_BASE)
        .unwrap()
        .iter()
        .map(VSet::to_string)
        .collect();
    models.sort();
    let want = ["P(a) = t.\nQ(b) = b.\n", "P(a) = t.\nQ(b) = t.\n"];
    ensure(models == want, || {
        format!("two-model example gave {models:?}")
    })?;
    Ok(format!(
        "60 databases ({with_rules} with rules); two-model example exact"
    ))
}

fn monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut trials = 0;
    while trials < 1000 {
        let db = small_database(&mut rng, &SmallDbConfig::default());
        let program = GroundProgram::new(&db, &EngineConfig::default()).unwrap();
        let base = program.herbrand_base();
        for _ in 0..10 {
            let (lo, hi) = ordered_vsets(&mut rng, &base);
            let (a, b) = (
                program.sigma_step(&lo).unwrap(),
                program.sigma_step(&hi).unwrap(),
            );
            ensure(a.leq_k(&b), || {
                format!("{db}: step of {lo} is not below step of {hi}")
            })?;
            trials += 1;
        }
    }
    Ok(format!("{trials} ordered pairs"))
}

fn semantics_size(file: &str, universe: usize) -> Result<(usize, VSet), String> {
    let constants: Vec<String> = (1..=universe).map(|i| format!("u{i}")).collect();
    let o = fourdb(&[
        "semantics",
        fixture(file).to_str().unwrap(),
        "--universe",
        &constants.join(","),
    ]);
    ensure(o.status.success(), || {
        format!("{file}: exit status {:?}", o.status.code())
    })?;
    let sem = parse_database(&String::from_utf8(o.stdout).unwrap()).map_err(|e| e.to_string())?;
    Ok((sem.extension().len(), sem.extension().clone()))
}

fn safety() -> Outcome {
    for (file, safe) in [
        ("safe_oplus.4vl", true),
        ("unsafe_or.4vl", false),
        ("unsafe_or_unary.4vl", false),
    ] {
        let db = load(file);
        let verdict = is_safe(&db.rules()[0]).unwrap().safe;
        ensure(verdict == safe, || {
            format!("{file}: classified safe={verdict}")
        })?;
        let o = fourdb(&["check-safety", fixture(file).to_str().unwrap()]);
        ensure(o.status.code() == Some(if safe { 0 } else { 2 }), || {
            format!("{file}: check-safety exit {:?}", o.status.code())
        })?;

        let domain = fourdb_core::active_domain(&db).constants;
        let mut previous = None;
        for n in 2..=5 {
            let (size, sem) = semantics_size(file, n)?;
            if safe {
                ensure(sem.constants().is_subset(&domain), || {
                    format!("{file}: universe of {n} leaks constants")
                })?;
            } else if let Some(prev) = previous {
                ensure(size > prev, || {
                    format!("{file}: universe of {n} gives {size} pairs, not more than {prev}")
                })?;
            }
            previous = Some(size);
        }
    }
    Ok("safe, unsafe, unsafe; unsafe semantics grow with universes of 2..5".into())
}

fn pairs(items: &[&str]) -> Vec<VPair> {
    items.iter().map(|s| s.parse().unwrap()).collect()
}

fn updates() -> Outcome {
    let db = load("storage.4vl");
    let updated = standard_batch(&db, &pairs(&["H1(202)=t", "H2(202)=t", "W1(202)=t"]));
    let want = load("storage_updated.4vl");
    ensure(updated.extension() == want.extension(), || {
        format!("updated extension:\n{}", updated.extension())
    })?;
    ensure(updated.rules() == db.rules(), || "rules changed".into())?;

    let readings = pairs(&["H2(101)=f", "H2(202)=b", "H2(303)=t"]);
    for (name, combinator, want) in [
        ("oplus", Combinator::oplus(), [F, B, T]),
        ("otimes", Combinator::otimes(), [F, T, N]),
        ("odot", Combinator::odot(), [F, B, N]),
    ] {
        let got = integrative_batch(&updated, &readings, &combinator);
        let values = ["101", "202", "303"].map(|c| got.extension().get(&Fact::new("H2", &[c])));
        ensure(values == want, || {
            format!("{name}: got {values:?}, want {want:?}")
        })?;
    }

    let phi = Fact::new("P", &["a"]);
    let mut checks = 0;
    for (value, combinator) in [
        (T, Combinator::or()),
        (B, Combinator::oplus()),
        (N, Combinator::otimes()),
        (F, Combinator::and()),
    ] {
        for current in TruthValue::ALL {
            let mut e = VSet::new();
            e.set(phi.clone(), current);
            let base = Database::new(e, vec![]).unwrap();
            let nu = VPair::new(phi.clone(), value);
            let a = integrative_update(&base, &nu, &combinator);
            ensure(
                a == standard_update(&base, &nu) && a.extension().get(&phi) == value,
                || format!("{value} with {combinator} at {current}"),
            )?;
            checks += 1;
        }
    }
    Ok(format!(
        "corrections and three integrations exact; {checks} equivalences"
    ))
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..1000 {
        let db = varied_database(&mut rng);
        let text = db.to_string();
        let back = parse_database(&text).map_err(|e| format!("database {i}: {e}\n{text}"))?;
        ensure(back == db, || format!("database {i} changed:\n{text}"))?;
    }
    let mut files = 0;
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "4vl") {
            let src = std::fs::read_to_string(&path).unwrap();
            parse_database(&src).map_err(|e| format!("{}: {e}", path.display()))?;
            files += 1;
        }
    }
    Ok(format!(
        "1000 generated databases; {files} example files parse"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("running example semantics", 1, running_example),
        ("rule-set grid and merged-rule divergence", 1, rule_set_grid),
        ("connector law suite", 1, law_suite),
        ("functional completeness", 10, functional_completeness),
        ("fixpoint properties", 60, fixpoint_properties),
        ("monotonicity of the consequence operator", 10, monotonicity),
        ("rule safety", 5, safety),
        ("updates", 1, updates),
        ("parser round-trip", 10, round_trip),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(budget) => Err(format!(
                "{detail}, but took {elapsed:.2?} (budget {budget}s)"
            )),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} [{elapsed:.2?}] {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {name} [{elapsed:.2?}] {why}", i + 1);
            }
        }
    }
    println!("{} of 9 criteria pass", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
