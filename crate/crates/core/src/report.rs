//! CSV rows for experiment output.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::hopcroft::{Minimization, TiePolicy};
use crate::oracle::CyclicRow;
use crate::worklist::Strategy;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StatsRow {
    pub input: String,
    pub states: usize,
    pub alphabet: usize,
    pub strategy: String,
    pub policy: String,
    pub total_splitter_mass: usize,
    pub insertions: usize,
    pub extractions: usize,
    pub in_list_replacements: usize,
    pub splits: usize,
    pub max_worklist_size: usize,
    pub blocks_final: usize,
}

impl StatsRow {
    pub fn new(
        input: &str,
        states: usize,
        alphabet: usize,
        strategy: Strategy,
        policy: TiePolicy,
        run: &Minimization,
    ) -> Self {
        let s = &run.stats;
        StatsRow {
            input: input.to_string(),
            states,
            alphabet,
            strategy: strategy.to_string(),
            policy: policy.to_string(),
            total_splitter_mass: s.total_splitter_mass,
            insertions: s.insertions,
            extractions: s.extractions,
            in_list_replacements: s.in_list_replacements,
            splits: s.splits,
            max_worklist_size: s.max_worklist_size,
            blocks_final: run.partition.num_blocks(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CyclicCsvRow {
    pub pattern: String,
    pub is_de_bruijn: bool,
    pub strategy: String,
    pub max_mass: usize,
    pub branch_count: u64,
}

impl From<&CyclicRow> for CyclicCsvRow {
    fn from(r: &CyclicRow) -> Self {
        CyclicCsvRow {
            pattern: r.pattern.to_string(),
            is_de_bruijn: r.is_de_bruijn,
            strategy: r.strategy.to_string(),
            max_mass: r.max_mass,
            branch_count: r.branch_count,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CoverRow {
    pub input: String,
    pub l: usize,
    pub states_in: usize,
    pub states_out: usize,
    pub blocks: usize,
    pub total_splitter_mass: usize,
    pub minimal: bool,
}

/// Writes `rows` with a header line.
pub fn write_csv<W: Write, R: Serialize>(out: W, rows: &[R]) -> Result<()> {
    write_csv_rows(out, rows, true)
}

/// Writes `rows`, with a header line only if `header` is set (for appending).
pub fn write_csv_rows<W: Write, R: Serialize>(out: W, rows: &[R], header: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(header).from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Appends `rows` to the file at `path`, writing the header only when the file
/// is new or empty.
pub fn append_csv<R: Serialize>(path: &Path, rows: &[R]) -> Result<()> {
    let fresh = fs::metadata(path).map_or(true, |m| m.len() == 0);
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    write_csv_rows(file, rows, fresh)
}
