use crate::{exit, repl, table, Cli, Command};
use anyhow::{Context, Result};
use fourdb_core::engine::{query_fixpoint, EngineConfig, GroundProgram};
use fourdb_core::synth::{self, DEFAULT_VERIFY_BOUND};
use fourdb_core::update::{integrative_batch, standard_batch, Combinator, VPair};
use fourdb_core::{laws, normalize, parse_database, parse_formula, Database, QueryAnswer};
use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::Path;

pub fn load(path: &Path) -> Result<Database> {
    let src =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_database(&src).with_context(|| path.display().to_string())
}

/// Runs one command; `out` receives results and `err` diagnostics.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Semantics {
            file,
            max_iters,
            trace,
            universe,
        } => {
            let db = load(&file)?;
            let config = EngineConfig {
                universe: universe.map(|cs| cs.into_iter().map(Into::into).collect()),
                max_iters,
                trace,
                ..EngineConfig::default()
            };
            let program = GroundProgram::new(&db, &config)?;
            let sem = program.semantics(config.max_iters, config.trace)?;
            if let Some(steps) = &sem.trace {
                for (i, s) in steps.iter().enumerate() {
                    writeln!(out, "% step {i}")?;
                    write!(out, "{s}")?;
                }
                writeln!(out, "% fixpoint")?;
            }
            write!(out, "{}", sem.fixpoint)?;
            writeln!(
                err,
                "% fixpoint reached after {} iterations",
                sem.iterations
            )?;
            Ok(exit::OK)
        }
        Command::Query { file, formula, all } => {
            let db = load(&file)?;
            let formula = parse_formula(&formula)?;
            let config = EngineConfig::default();
            let program = GroundProgram::new(&db, &config)?;
            let sem = program.semantics(config.max_iters, false)?;
            let answer = query_fixpoint(&sem.fixpoint, program.domain(), &formula, all)?;
            write_answer(out, &answer)?;
            Ok(exit::OK)
        }
        Command::CheckSafety { file } => {
            let db = load(&file)?;
            let mut code = exit::OK;
            for rule in db.rules() {
                let report = fourdb_core::is_safe(rule)?;
                match &report.violation {
                    None => writeln!(out, "safe    rule {rule}.")?,
                    Some(v) => {
                        code = exit::UNSAFE_RULE;
                        let missing: Vec<String> =
                            v.missing.iter().map(|s| format!("?{s}")).collect();
                        writeln!(
                            out,
                            "unsafe  rule {rule}.  % block `{}` does not bind {}",
                            v.block.to_formula(),
                            missing.join(", ")
                        )?;
                    }
                }
            }
            Ok(code)
        }
        Command::Normalize { formula } => {
            let nf = normalize(&parse_formula(&formula)?)?;
            writeln!(out, "{nf}")?;
            Ok(exit::OK)
        }
        Command::Update {
            file,
            pairs,
            out: target,
        } => {
            let db = load(&file)?;
            let pairs = parse_pairs(&pairs)?;
            emit(&standard_batch(&db, &pairs), target.as_deref(), out)?;
            Ok(exit::OK)
        }
        Command::Integrate {
            file,
            pairs,
            op,
            out: target,
        } => {
            let db = load(&file)?;
            let pairs = parse_pairs(&pairs)?;
            let combinator = Combinator::from_spec(&op)?;
            emit(
                &integrative_batch(&db, &pairs, &combinator),
                target.as_deref(),
                out,
            )?;
            Ok(exit::OK)
        }
        Command::Synth {
            table: path,
            verify,
        } => {
            let file =
                fs::File::open(&path).with_context(|| format!("cannot read {}", path.display()))?;
            let w = table::read_truth_function(file).with_context(|| path.display().to_string())?;
            writeln!(out, "{}", synth::synthesize(&w))?;
            if verify {
                if synth::verify_synthesis(&w, DEFAULT_VERIFY_BOUND)? {
                    writeln!(err, "% verified on all {} inputs", w.table().len())?;
                } else {
                    writeln!(err, "% verification failed")?;
                    return Ok(exit::CHECK_FAILED);
                }
            }
            Ok(exit::OK)
        }
        Command::Laws => {
            let results = laws::run_all();
            for r in &results {
                writeln!(out, "{r}")?;
            }
            let passed = results.iter().filter(|r| r.passed()).count();
            writeln!(out, "{passed}/{} laws hold", results.len())?;
            Ok(if passed == results.len() {
                exit::OK
            } else {
                exit::CHECK_FAILED
            })
        }
        Command::Repl { file } => {
            let db = load(&file)?;
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            repl::Session::new(db).run(stdin.lock(), out, prompt)?;
            Ok(exit::OK)
        }
    }
}

fn parse_pairs(pairs: &[String]) -> Result<Vec<VPair>> {
    pairs
        .iter()
        .map(|p| p.parse().with_context(|| format!("bad v-pair `{p}`")))
        .collect()
}

fn emit(db: &Database, target: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match target {
        Some(path) => fs::write(path, db.to_string())
            .with_context(|| format!("cannot write {}", path.display())),
        None => Ok(write!(out, "{db}")?),
    }
}

pub fn write_answer(out: &mut dyn Write, answer: &QueryAnswer) -> io::Result<()> {
    match answer {
        QueryAnswer::Value(v) => writeln!(out, "{v}"),
        QueryAnswer::Table { vars, rows } => {
            for row in rows {
                let bindings: Vec<String> = vars
                    .iter()
                    .map(|v| format!("?{v}={}", row.binding[v]))
                    .collect();
                writeln!(out, "{}: {}", bindings.join(", "), row.value)?;
            }
            Ok(())
        }
    }
}
