//! Truth tables read from CSV: `k` input columns and one output column.

use anyhow::{bail, Context, Result};
use fourdb_core::synth::TruthFunction;
use fourdb_core::TruthValue;
use std::io::Read;

pub fn read_truth_function<R: Read>(input: R) -> Result<TruthFunction> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .comment(Some(b'%'))
        .from_reader(input);

    let mut rows: Vec<Vec<TruthValue>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.context("malformed CSV")?;
        let parsed: Result<Vec<TruthValue>, _> = record.iter().map(str::parse).collect();
        match parsed {
            Ok(row) => rows.push(row),
            // a leading header row is skipped
            Err(_) if i == 0 => continue,
            Err(e) => bail!("row {}: {e}", i + 1),
        }
    }

    let Some(width) = rows.first().map(Vec::len) else {
        bail!("the table is empty");
    };
    if width < 2 {
        bail!("a table needs at least one input column and an output column");
    }
    let arity = width - 1;
    let mut table: Vec<Option<TruthValue>> = vec![None; 4usize.pow(arity as u32)];
    for (n, row) in rows.iter().enumerate() {
        if row.len() != width {
            bail!("row {} has {} columns, expected {width}", n + 1, row.len());
        }
        let index = row[..arity].iter().fold(0, |acc, v| acc * 4 + v.index());
        let out = row[arity];
        match table[index] {
            Some(prev) if prev != out => {
                bail!("conflicting outputs {prev} and {out} for one input tuple")
            }
            _ => table[index] = Some(out),
        }
    }
    let missing = table.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        bail!(
            "incomplete table: {missing} of {} input tuples have no row",
            table.len()
        );
    }
    Ok(TruthFunction::new(
        arity,
        table.into_iter().flatten().collect(),
    )?)
}
