//! Greedy construction of B_h sets.
//!
//! Starting from {0}, each step appends the least positive integer that
//! keeps the set B_h. The engine drives the incremental support tables of
//! [`crate::table`]; an enumeration-based twin built on
//! [`crate::set::is_bh_set_bruteforce`] provides the independent slow route
//! the engine is cross-checked against.
//!
//! For h = 2 the construction reproduces the classical Mian-Chowla sequence
//! shifted down by one: computing both shows term-for-term that the n-th
//! greedy term here is exactly the n-th Mian-Chowla term minus 1 (the shift
//! carries the greedy choice across, since translating a set preserves
//! pairwise sums being distinct). A test pins this observed relation.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formulas::upper_bound_sum;
use crate::set::{is_bh_set_bruteforce, Element};
use crate::table::{admissible, build_support_table, insert_element, SumSupportTable};

/// A computed greedy prefix: terms a_0..a_{k_max} plus the scan bound and
/// per-term timings. `terms.len() == k_max + 1` and `elapsed.len() == k_max`
/// always hold.
#[derive(Debug, Clone)]
pub struct SequenceRecord {
    pub h: u32,
    pub k_max: u32,
    pub terms: Vec<Element>,
    /// Geometric-sum cap applied while scanning for the final term
    /// (0 when no term beyond a_0 was requested).
    pub scan_cap: u64,
    /// Wall-clock time spent finding each term after a_0.
    pub elapsed: Vec<Duration>,
}

/// Greedy construction state: the terms found so far and the support table
/// that makes the next admissibility scan cheap.
#[derive(Debug, Clone)]
pub struct GreedyState {
    terms: Vec<Element>,
    table: SumSupportTable,
}

impl GreedyState {
    /// The canonical start: a_0 = 0.
    pub fn new(h: u32) -> Result<Self> {
        let table = build_support_table(&[0], h)?;
        Ok(Self { terms: vec![0], table })
    }

    pub fn h(&self) -> u32 {
        self.table.h()
    }

    pub fn terms(&self) -> &[Element] {
        &self.terms
    }

    pub fn table(&self) -> &SumSupportTable {
        &self.table
    }

    /// Find and append the next greedy term by sequential scan.
    pub fn next_term(&mut self) -> Result<Element> {
        self.next_term_windowed(1)
    }

    /// Find and append the next greedy term. `parallelism` > 1 checks
    /// candidate windows concurrently against the read-only table and takes
    /// the least admissible candidate per window, which keeps the result
    /// bit-identical to the sequential scan.
    ///
    /// The scan starts right above the current maximum: terms increase
    /// strictly, and any smaller candidate was already rejected against a
    /// subset of the current set, whose collisions persist in supersets.
    /// The scan is capped by the geometric bound 1 + h + ... + h^k (the cap
    /// itself is attainable, e.g. a_3 = h^2 + h + 1); overrunning it means
    /// the engine is broken, not that the input is bad.
    pub fn next_term_windowed(&mut self, parallelism: usize) -> Result<Element> {
        let k_next = self.terms.len() as u32;
        let cap = upper_bound_sum(self.h(), k_next)?;
        let start = self.terms.last().expect("never empty") + 1;
        let found = if parallelism > 1 {
            self.scan_windowed(start, cap, parallelism)?
        } else {
            self.scan_sequential(start, cap)?
        };
        match found {
            Some(b) => {
                self.table = insert_element(&self.table, b)?;
                self.terms.push(b);
                Ok(b)
            }
            None => Err(Error::Internal(format!(
                "no admissible candidate in [{start}, {cap}] for term {k_next} at h={}; \
                 the scan bound should be attainable",
                self.h()
            ))),
        }
    }

    fn scan_sequential(&self, start: u64, cap: u64) -> Result<Option<Element>> {
        for b in start..=cap {
            if admissible(&self.table, b)? {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    fn scan_windowed(&self, start: u64, cap: u64, parallelism: usize) -> Result<Option<Element>> {
        let window = (parallelism.max(2) * 64) as u64;
        let mut lo = start;
        while lo <= cap {
            let hi = cap.min(lo + window - 1);
            let hit = (lo..=hi)
                .into_par_iter()
                .map(|b| Ok(admissible(&self.table, b)?.then_some(b)))
                .try_reduce(
                    || None,
                    |x, y| {
                        Ok(match (x, y) {
                            (Some(a), Some(b)) => Some(a.min(b)),
                            (a, None) => a,
                            (None, b) => b,
                        })
                    },
                )?;
            if hit.is_some() {
                return Ok(hit);
            }
            lo = hi + 1;
        }
        Ok(None)
    }
}

/// Compute a_0..a_k for the greedy B_h sequence via the support-table
/// engine, with per-term timings.
pub fn greedy_sequence(h: u32, k: u32) -> Result<SequenceRecord> {
    greedy_sequence_with(h, k, 1)
}

/// As [`greedy_sequence`], with a parallelism degree for the candidate
/// scans (1 = sequential).
pub fn greedy_sequence_with(h: u32, k: u32, parallelism: usize) -> Result<SequenceRecord> {
    let mut state = GreedyState::new(h)?;
    let mut elapsed = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let t0 = Instant::now();
        state.next_term_windowed(parallelism)?;
        elapsed.push(t0.elapsed());
    }
    let scan_cap = if k == 0 { 0 } else { upper_bound_sum(h, k)? };
    Ok(SequenceRecord {
        h,
        k_max: k,
        terms: state.terms,
        scan_cap,
        elapsed,
    })
}

/// The same construction driven purely by multiset enumeration: every
/// candidate extension is re-verified from scratch with
/// [`is_bh_set_bruteforce`]. Exponentially slower than the engine (each
/// check enumerates C(|A|+h-1, h) multisets); intended as the independent
/// cross-check for small h and k.
pub fn greedy_bruteforce_oracle(h: u32, k: u32) -> Result<Vec<Element>> {
    if h == 0 {
        return Err(Error::InvalidInput("h must be at least 1".into()));
    }
    let mut terms: Vec<Element> = vec![0];
    for step in 1..=k {
        let cap = upper_bound_sum(h, step)?;
        let start = terms.last().unwrap() + 1;
        let mut accepted = None;
        for b in start..=cap {
            let mut candidate = terms.clone();
            candidate.push(b);
            if is_bh_set_bruteforce(&candidate, h)? {
                accepted = Some(b);
                break;
            }
        }
        match accepted {
            Some(b) => terms.push(b),
            None => {
                return Err(Error::Internal(format!(
                    "no admissible candidate in [{start}, {cap}] for term {step} at h={h}"
                )))
            }
        }
    }
    Ok(terms)
}
