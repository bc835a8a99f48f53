//! Diagram output: `d <dim> <mult> <a1> <a2> <b1> <b2>` per interval, or the
//! same fields as JSON lines.

use std::io::Write;

use bigraded_pd::parse::Parsed;
use bigraded_pd::SignedDiagram;
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Serialize)]
struct Row<'a> {
    dim: usize,
    mult: i64,
    a1: &'a str,
    a2: &'a str,
    b1: &'a str,
    b2: &'a str,
}

/// Intervals in dimension order, then lexicographic; grades use the input
/// spelling of each coordinate.
pub fn write_diagram(
    out: &mut impl Write,
    parsed: &Parsed,
    d: &SignedDiagram,
    format: Format,
) -> std::io::Result<()> {
    for (dim, iv, mult) in d.iter() {
        let (a1, a2) = parsed.label(iv.lo);
        let (b1, b2) = parsed.label(iv.hi);
        match format {
            Format::Text => writeln!(out, "d {dim} {mult} {a1} {a2} {b1} {b2}")?,
            Format::Jsonl => {
                let row = Row { dim, mult, a1: &a1, a2: &a2, b1: &b1, b2: &b2 };
                serde_json::to_writer(&mut *out, &row)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
