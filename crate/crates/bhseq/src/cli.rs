//! Command model and dispatcher behind the `bhseq` binary.
//!
//! Commands are plain data so the whole surface is callable (and testable)
//! without spawning a process; the binary is a thin argument-parsing shim.
//! Exit codes: 0 success, 1 a verification or cross-check failed, 2 bad
//! usage or unparseable input, 3 overflow or resource exhaustion.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bfile::{emit_bfile, read_set_file};
use crate::error::{Error, Result};
use crate::formulas::closed_form_term;
use crate::greedy::{greedy_sequence_with, GreedyState, SequenceRecord};
use crate::interval::IntegerInterval;
use crate::set::{find_collision, join_sum, normalize};
use crate::table::{binomial, build_support_table, verify_by_cardinality};
use crate::witness::{blocked_interval_family, collision_witness, family_within_blocked_set, min_unblocked};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Enumeration-route budget for `verify`: sets whose multiset count
/// exceeds this fall back to the cardinality route alone.
const ENUM_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceFormat {
    BFile,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub enum Command {
    /// Construct a greedy B_h prefix and emit it.
    Generate {
        h: u32,
        terms: u32,
        format: SequenceFormat,
        output: Option<PathBuf>,
        parallel: usize,
    },
    /// Check the B_h property of a set read from a file.
    Verify { h: u32, set: PathBuf },
    /// Cross-check the fourth term over a range of h by three routes.
    Theorem {
        h_min: u32,
        h_max: u32,
        format: ReportFormat,
        parallel: usize,
    },
    /// Search for a collision witness against one candidate.
    Witness { h: u32, c: u64 },
    /// Print the blocked-candidate interval family and its checks.
    Lemma1 { h: u32 },
    /// Time the candidate scan and report table memory.
    Bench { h: u32, terms: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { exit_code: EXIT_OK, stdout, stderr: String::new() }
    }
}

pub fn dispatch(cmd: &Command) -> Outcome {
    match run(cmd) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            exit_code: exit_code_for(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Range(_) => EXIT_USAGE,
        Error::Overflow(_) | Error::Internal(_) => EXIT_RESOURCE,
    }
}

fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Generate { h, terms, format, output, parallel } => {
            let record = greedy_sequence_with(*h, *terms, *parallel)?;
            let content = match format {
                SequenceFormat::BFile => emit_bfile(&record),
                SequenceFormat::Json => sequence_json(&record),
                SequenceFormat::Csv => sequence_csv(&record),
            };
            match output {
                Some(path) => {
                    fs::write(path, &content).map_err(|e| {
                        Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(Outcome {
                        exit_code: EXIT_OK,
                        stdout: String::new(),
                        stderr: format!("wrote {}\n", path.display()),
                    })
                }
                None => Ok(Outcome::ok(content)),
            }
        }
        Command::Verify { h, set } => verify(*h, set),
        Command::Theorem { h_min, h_max, format, parallel } => {
            theorem(*h_min, *h_max, *format, *parallel)
        }
        Command::Witness { h, c } => {
            let out = match collision_witness(*h, *c)? {
                Some(w) => format!(
                    "{w}  (x0={}, x1={}, x2={}, x3={}; y1={}, y2={}, y3={})\n",
                    w.x0, w.x1, w.x2, w.x3, w.y1, w.y2, w.y3
                ),
                None => "none\n".to_string(),
            };
            Ok(Outcome::ok(out))
        }
        Command::Lemma1 { h } => lemma1(*h),
        Command::Bench { h, terms } => bench(*h, *terms),
    }
}

/// JSON report for a generated sequence. Field set is stable; `offset`
/// records that indexing starts at 0.
#[derive(Serialize)]
struct SequenceReport<'a> {
    h: u32,
    k: u32,
    offset: u32,
    terms: &'a [u64],
    cap: u64,
    elapsed_ms: Vec<f64>,
}

fn sequence_json(record: &SequenceRecord) -> String {
    let report = SequenceReport {
        h: record.h,
        k: record.k_max,
        offset: 0,
        terms: &record.terms,
        cap: record.scan_cap,
        elapsed_ms: record.elapsed.iter().map(|d| d.as_secs_f64() * 1e3).collect(),
    };
    let mut s = serde_json::to_string_pretty(&report).expect("report serialization is infallible");
    s.push('\n');
    s
}

fn sequence_csv(record: &SequenceRecord) -> String {
    let mut out = String::from("# offset=0\nindex,term\n");
    for (k, term) in record.terms.iter().enumerate() {
        let _ = writeln!(out, "{k},{term}");
    }
    out
}

fn verify(h: u32, set: &Path) -> Result<Outcome> {
    let values = normalize(&read_set_file(set)?)?;
    if h == 0 {
        return Err(Error::InvalidInput("h must be at least 1".into()));
    }
    let m = values.len() as u64;
    let multisets = binomial(m + h as u64 - 1, h as u64);
    let enum_feasible = matches!(multisets, Ok(n) if n <= ENUM_BUDGET);
    let has_zero = values[0] == 0;

    let collision = if enum_feasible {
        Some(find_collision(&values, h)?)
    } else {
        None
    };
    let cardinality = if has_zero {
        let table = build_support_table(&values, h)?;
        let got = table.support(h).len() as u64;
        Some((verify_by_cardinality(&table)?, got))
    } else {
        None
    };

    let verdict = match (&collision, &cardinality) {
        (Some(c), Some((ok, _))) => {
            if c.is_none() != *ok {
                return Err(Error::Internal(format!(
                    "verification routes disagree on {} at h={h}",
                    set.display()
                )));
            }
            c.is_none()
        }
        (Some(c), None) => c.is_none(),
        (None, Some((ok, _))) => *ok,
        (None, None) => {
            return Err(Error::Overflow(
                "the set is too large for both verification routes (no 0 for the cardinality route)",
            ))
        }
    };

    let mut out = String::new();
    if verdict {
        let _ = writeln!(out, "B_{h}: OK ({m} elements)");
    } else if let Some(Some((lhs, rhs))) = &collision {
        let _ = writeln!(out, "NOT B_{h}: {} = {}", join_sum(lhs), join_sum(rhs));
    } else {
        let _ = writeln!(out, "NOT B_{h}");
    }
    match &collision {
        Some(_) => {
            let _ = writeln!(out, "  enumeration: checked {} multisets", multisets?);
        }
        None => {
            let _ = writeln!(out, "  enumeration: skipped (over budget)");
        }
    }
    match &cardinality {
        Some((_, got)) => {
            let expected = binomial(m + h as u64 - 1, h as u64)?;
            let n = m + h as u64 - 1;
            if *got == expected {
                let _ = writeln!(out, "  cardinality: |D_{h}| = {got} = C({n}, {h})");
            } else {
                let _ = writeln!(out, "  cardinality: |D_{h}| = {got} < {expected} = C({n}, {h})");
            }
        }
        None => {
            let _ = writeln!(out, "  cardinality: skipped (0 not in set)");
        }
    }
    Ok(Outcome {
        exit_code: if verdict { EXIT_OK } else { EXIT_VERIFICATION },
        stdout: out,
        stderr: String::new(),
    })
}

/// One row of the fourth-term cross-check. Field order is the column order.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremRow {
    pub h: u32,
    pub a4_greedy: u64,
    pub a4_formula: u64,
    pub a4_witness: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Compute one cross-check row: the greedy engine, the closed form, and
/// the witness scan must all land on the same fourth term.
pub fn theorem_row(h: u32) -> Result<TheoremRow> {
    let a4_greedy = *greedy_sequence_with(h, 4, 1)?
        .terms
        .last()
        .expect("five terms were requested");
    let a4_formula = closed_form_term(h, 4)?;
    let a4_witness = min_unblocked(h)?;
    Ok(TheoremRow {
        h,
        a4_greedy,
        a4_formula,
        a4_witness,
        matches: a4_greedy == a4_formula && a4_formula == a4_witness,
    })
}

fn theorem(h_min: u32, h_max: u32, format: ReportFormat, parallel: usize) -> Result<Outcome> {
    if h_min < 1 || h_min > h_max {
        return Err(Error::InvalidInput(format!(
            "need 1 <= h-min <= h-max, got {h_min}..={h_max}"
        )));
    }
    let hs: Vec<u32> = (h_min..=h_max).collect();
    let rows: Vec<TheoremRow> = if parallel > 1 {
        hs.par_iter().map(|&h| theorem_row(h)).collect::<Result<_>>()?
    } else {
        hs.iter().map(|&h| theorem_row(h)).collect::<Result<_>>()?
    };

    let all_match = rows.iter().all(|r| r.matches);
    let monotone = rows.windows(2).all(|w| w[0].a4_greedy < w[1].a4_greedy);
    let monotone_note = format!(
        "fourth term strictly increasing over h={h_min}..={h_max}: {}\n",
        if monotone { "yes" } else { "NO" }
    );

    let mut stdout = String::new();
    let mut stderr = String::new();
    match format {
        ReportFormat::Text => {
            for r in &rows {
                let _ = writeln!(
                    stdout,
                    "h={:<3} a4_greedy={:<10} a4_formula={:<10} a4_witness={:<10} {}",
                    r.h,
                    r.a4_greedy,
                    r.a4_formula,
                    r.a4_witness,
                    if r.matches { "MATCH" } else { "MISMATCH" }
                );
            }
            stdout.push_str(&monotone_note);
        }
        ReportFormat::Json => {
            stdout = serde_json::to_string_pretty(&rows).expect("report serialization is infallible");
            stdout.push('\n');
            stderr = monotone_note;
        }
        ReportFormat::Csv => {
            stdout.push_str("h,a4_greedy,a4_formula,a4_witness,match\n");
            for r in &rows {
                let _ = writeln!(
                    stdout,
                    "{},{},{},{},{}",
                    r.h,
                    r.a4_greedy,
                    r.a4_formula,
                    r.a4_witness,
                    if r.matches { "MATCH" } else { "MISMATCH" }
                );
            }
            stderr = monotone_note;
        }
    }
    Ok(Outcome {
        exit_code: if all_match { EXIT_OK } else { EXIT_VERIFICATION },
        stdout,
        stderr,
    })
}

fn lemma1(h: u32) -> Result<Outcome> {
    let fam = blocked_interval_family(h)?;
    let mut out = format!(
        "h = {h} ({}), overlap threshold {}\n",
        fam.parity, fam.overlap_threshold
    );
    for (label, iv) in &fam.labeled {
        let _ = writeln!(out, "  {label:<14} {iv}");
    }
    let merged = fam
        .merged
        .iter()
        .map(|iv| iv.to_string())
        .collect::<Vec<_>>()
        .join(" u ");
    let _ = writeln!(out, "merged union: {merged}");

    let a4 = closed_form_term(h, 4)?;
    let expected = IntegerInterval::new(h as i64 + 2, a4 as i64 - 1)?;
    let union_ok = fam.merged == vec![expected];
    let _ = writeln!(
        out,
        "union equals [h+2, a4-1] = {expected}: {}",
        if union_ok { "OK" } else { "FAIL" }
    );
    let contained = family_within_blocked_set(h)?;
    let _ = writeln!(
        out,
        "every interval within the blocked set: {}",
        if contained { "OK" } else { "FAIL" }
    );
    Ok(Outcome {
        exit_code: if union_ok && contained { EXIT_OK } else { EXIT_VERIFICATION },
        stdout: out,
        stderr: String::new(),
    })
}

fn bench(h: u32, terms: u32) -> Result<Outcome> {
    if terms == 0 {
        return Err(Error::InvalidInput("bench needs at least one term".into()));
    }
    let t0 = Instant::now();
    let mut state = GreedyState::new(h)?;
    for _ in 0..terms {
        state.next_term()?;
    }
    let dt = t0.elapsed();
    // The scan is contiguous from 1 up to the last accepted term, so the
    // final term doubles as the number of candidates examined.
    let candidates = *state.terms().last().expect("at least one step ran");
    let rate = candidates as f64 / dt.as_secs_f64();
    let out = format!(
        "h={h} terms={terms}: {:?}\ncandidates examined: {candidates}\nelapsed: {:.3} ms\nthroughput: {rate:.0} candidates/s\ntable memory: {} bytes\n",
        state.terms(),
        dt.as_secs_f64() * 1e3,
        state.table().memory_bytes(),
    );
    Ok(Outcome::ok(out))
}
