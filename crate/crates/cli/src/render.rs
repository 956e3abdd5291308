//! Output-format plumbing shared by the subcommands.

use clap::ValueEnum;
use std::fmt::Display;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// How many leading/trailing items survive elision.
pub const ELIDE_EDGE: usize = 5;

/// Whether a list of this length gets its middle elided.
pub fn elide(len: usize, full: bool) -> bool {
    !full && len > 2 * ELIDE_EDGE + 2
}

/// Indices to print: all of them, or the first and last few.
pub fn visible_indices(len: usize, full: bool) -> Vec<usize> {
    if elide(len, full) {
        (0..ELIDE_EDGE).chain(len - ELIDE_EDGE..len).collect()
    } else {
        (0..len).collect()
    }
}

/// Shortest-roundtrip float text: identical across runs and thread
/// counts, parses back to the same bits.
pub fn float_text(x: f64) -> String {
    format!("{x}")
}

/// Fixed six-decimal float for human tables.
pub fn float_human(x: f64) -> String {
    format!("{x:.6}")
}

/// Join displayable items with one space (CSV-safe sub-list field).
pub fn join_space<T: Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// One CSV row (fields are known comma-free: integers, floats, decimal
/// strings, space-joined lists, single letters, booleans).
pub fn csv_row<T: Display>(fields: &[T]) -> String {
    fields
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
