//! Line-oriented interactive session over one database.

use crate::commands::write_answer;
use anyhow::{anyhow, bail, Context, Result};
use fourdb_core::engine::{query_fixpoint, EngineConfig, GroundProgram};
use fourdb_core::update::{integrative_update, standard_update, Combinator, VPair};
use fourdb_core::{is_safe, parse_formula, Database, Symbol, VSet};
use std::collections::BTreeSet;
use std::io::{BufRead, Write};

const HELP: &str = "\
commands:
  query <formula>                  evaluate in the current semantics
  set <Fact>=<v>                   overwrite a stored value (n deletes)
  integrate <Fact>=<v> with <op>   combine with the stored value (oplus, otimes, odot, or, and, expr:...)
  semantics                        print the current semantics
  safety                           check every rule
  save <path>                      write the database
  quit                             leave the session";

pub struct Session {
    db: Database,
    /// Semantics and grounding domain of `db`, dropped on every mutation.
    cached: Option<(VSet, BTreeSet<Symbol>)>,
}

enum Flow {
    Continue,
    Quit,
}

impl Session {
    pub fn new(db: Database) -> Session {
        Session { db, cached: None }
    }

    pub fn database(&self) -> &Database {
        &self.db
    }

    pub fn run<R: BufRead, W: Write + ?Sized>(
        &mut self,
        input: R,
        out: &mut W,
        prompt: bool,
    ) -> std::io::Result<()> {
        let mut lines = input.lines();
        loop {
            if prompt {
                write!(out, "> ")?;
                out.flush()?;
            }
            let Some(line) = lines.next() else {
                return Ok(());
            };
            let mut buf = Vec::new();
            match self.execute(line?.trim(), &mut buf) {
                Ok(Flow::Continue) => out.write_all(&buf)?,
                Ok(Flow::Quit) => {
                    out.write_all(&buf)?;
                    return Ok(());
                }
                Err(e) => {
                    out.write_all(&buf)?;
                    writeln!(out, "error: {e:#}")?;
                }
            }
        }
    }

    fn semantics(&mut self) -> Result<&(VSet, BTreeSet<Symbol>)> {
        if self.cached.is_none() {
            let config = EngineConfig::default();
            let program = GroundProgram::new(&self.db, &config)?;
            let sem = program.semantics(config.max_iters, false)?;
            self.cached = Some((sem.fixpoint, program.domain().clone()));
        }
        Ok(self.cached.as_ref().expect("just computed"))
    }

    fn replace(&mut self, db: Database) {
        self.db = db;
        self.cached = None;
    }

    fn execute(&mut self, line: &str, out: &mut Vec<u8>) -> Result<Flow> {
        if line.is_empty() || line.starts_with('%') {
            return Ok(Flow::Continue);
        }
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match cmd {
            "query" => {
                let formula = parse_formula(rest)?;
                let (fixpoint, domain) = self.semantics()?;
                let answer = query_fixpoint(fixpoint, domain, &formula, false)?;
                write_answer(out, &answer)?;
            }
            "set" => {
                let pair: VPair = rest.parse()?;
                let db = standard_update(&self.db, &pair);
                self.replace(db);
            }
            "integrate" => {
                let (pair, op) = rest
                    .rsplit_once(" with ")
                    .ok_or_else(|| anyhow!("usage: integrate <Fact>=<v> with <op>"))?;
                let pair: VPair = pair.parse()?;
                let combinator = Combinator::from_spec(op)?;
                let db = integrative_update(&self.db, &pair, &combinator);
                self.replace(db);
            }
            "semantics" => {
                let (fixpoint, _) = self.semantics()?;
                write!(out, "{fixpoint}")?;
            }
            "safety" => {
                for rule in self.db.rules() {
                    let verdict = if is_safe(rule)?.safe {
                        "safe"
                    } else {
                        "unsafe"
                    };
                    writeln!(out, "{verdict}: rule {rule}.")?;
                }
            }
            "save" => {
                if rest.is_empty() {
                    bail!("usage: save <path>");
                }
                std::fs::write(rest, self.db.to_string())
                    .with_context(|| format!("cannot write {rest}"))?;
                writeln!(out, "saved {rest}")?;
            }
            "help" => writeln!(out, "{HELP}")?,
            "quit" | "exit" => return Ok(Flow::Quit),
            other => bail!("unknown command `{other}`; try `help`"),
        }
        Ok(Flow::Continue)
    }
}
