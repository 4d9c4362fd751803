//! Workload builders shared by the criterion benchmarks under `benches/`.

use fourdb_core::{parse_database, Database};
use std::fmt::Write;

/// `width` constants, and a chain of `depth` predicates where each level
/// joins the previous level with a per-constant sensor reading.
pub fn layered_database(width: usize, depth: usize) -> Database {
    let mut src = String::new();
    for c in 0..width {
        let v = ["t", "b", "f"][c % 3];
        writeln!(src, "L0(c{c}) = {v}.").unwrap();
        writeln!(src, "Sensor(c{c}) = {}.", ["f", "t"][c % 2]).unwrap();
    }
    for level in 1..=depth {
        let prev = level - 1;
        writeln!(src, "rule L{level}(?x) <- L{prev}(?x) (+) Sensor(?x).").unwrap();
        writeln!(src, "rule ~L{level}(?x) <- ~L{prev}(?x) & Sensor(?x).").unwrap();
    }
    parse_database(&src).expect("generated source is well formed")
}

/// A body with `n` two-literal disjunctions joined by conjunction; its
/// normal form has `2^n` blocks.
pub fn conjunction_of_disjunctions(n: usize) -> String {
    (0..n)
        .map(|i| format!("(A{i} | C{i})"))
        .collect::<Vec<_>>()
        .join(" & ")
}
