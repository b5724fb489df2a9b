//! File formats: OEIS-style b-files and plain set files.
//!
//! A b-file holds one `index value` pair per line, indices starting at 0
//! (a_0 = 0 is included; published sequences often start elsewhere, so the
//! offset is stated explicitly in the JSON/CSV report headers). Emitting
//! and re-reading a b-file is bit-exact. A set file holds one nonnegative
//! decimal per line, with `#` starting a comment.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::greedy::SequenceRecord;

/// Render a record as b-file text: `k a_k` per line, trailing newline,
/// nothing else.
pub fn emit_bfile(record: &SequenceRecord) -> String {
    let mut out = String::new();
    for (k, term) in record.terms.iter().enumerate() {
        out.push_str(&format!("{k} {term}\n"));
    }
    out
}

pub fn write_bfile(record: &SequenceRecord, path: &Path) -> Result<()> {
    fs::write(path, emit_bfile(record))
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

/// Parse b-file text into (index, value) pairs. Blank lines and `#`
/// comments are skipped; anything else must be exactly two decimals.
pub fn parse_bfile(text: &str) -> Result<Vec<(u64, u64)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(k), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad_line("b-file", lineno, raw));
        };
        let k = k.parse().map_err(|_| bad_line("b-file", lineno, raw))?;
        let v = v.parse().map_err(|_| bad_line("b-file", lineno, raw))?;
        pairs.push((k, v));
    }
    Ok(pairs)
}

pub fn read_bfile(path: &Path) -> Result<Vec<(u64, u64)>> {
    parse_bfile(&read_text(path)?)
}

/// Extract the terms from b-file pairs, insisting on consecutive indices
/// from 0.
pub fn terms_from_bfile(pairs: &[(u64, u64)]) -> Result<Vec<u64>> {
    for (expected, (k, _)) in pairs.iter().enumerate() {
        if *k != expected as u64 {
            return Err(Error::InvalidInput(format!(
                "b-file indices must run 0, 1, 2, ...; found {k} in position {expected}"
            )));
        }
    }
    Ok(pairs.iter().map(|(_, v)| *v).collect())
}

/// Parse set-file text: one nonnegative decimal per line, `#` comments.
/// Duplicate detection happens later, at set construction.
pub fn parse_set_file(text: &str) -> Result<Vec<u64>> {
    let mut values = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let v = line
            .parse()
            .map_err(|_| bad_line("set file", lineno, raw))?;
        values.push(v);
    }
    Ok(values)
}

pub fn read_set_file(path: &Path) -> Result<Vec<u64>> {
    parse_set_file(&read_text(path)?)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

fn bad_line(what: &str, lineno: usize, raw: &str) -> Error {
    Error::InvalidInput(format!("malformed {what} line {}: {raw:?}", lineno + 1))
}
