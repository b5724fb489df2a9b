//! Incremental sum-support tables: the fast verification and construction
//! backend.
//!
//! For a ground set A with 0 in A and a bound h, the table stores
//! D_0, ..., D_h where D_j is the set of sums realised by size-j multisets
//! of A. Because 0 is a member, padding with zeros embeds D_j into D_{j+1},
//! and extension checks reduce to interval-free membership queries against
//! these supports.

use crate::error::{add, mul, Error, Result};
use crate::set::{normalize, Element};

/// Membership sets switch to a dense bit vector when the value universe is
/// at most this many bits (16 MiB); beyond that a sorted array with binary
/// search keeps memory proportional to the set, not the range.
const DENSE_LIMIT_BITS: u64 = 1 << 27;

/// A set of u64 values supporting O(1)/O(log n) membership, ascending
/// iteration, and cardinality. Two sets compare equal by content, whatever
/// their representations.
#[derive(Clone)]
pub enum MembershipSet {
    Dense { words: Vec<u64>, count: usize },
    Sparse { values: Vec<Element> },
}

impl MembershipSet {
    pub fn contains(&self, v: u64) -> bool {
        match self {
            MembershipSet::Dense { words, .. } => {
                let w = (v / 64) as usize;
                w < words.len() && words[w] >> (v % 64) & 1 == 1
            }
            MembershipSet::Sparse { values } => values.binary_search(&v).is_ok(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            MembershipSet::Dense { count, .. } => *count,
            MembershipSet::Sparse { values } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Ascending iteration over the stored values.
    pub fn iter(&self) -> MembershipIter<'_> {
        match self {
            MembershipSet::Dense { words, .. } => MembershipIter::Dense {
                words,
                word_idx: 0,
                current: words.first().copied().unwrap_or(0),
            },
            MembershipSet::Sparse { values } => MembershipIter::Sparse(values.iter()),
        }
    }

    /// Approximate heap footprint of the backing storage.
    pub fn memory_bytes(&self) -> usize {
        match self {
            MembershipSet::Dense { words, .. } => words.len() * 8,
            MembershipSet::Sparse { values } => values.len() * 8,
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, MembershipSet::Dense { .. })
    }
}

impl PartialEq for MembershipSet {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().eq(other.iter())
    }
}

impl Eq for MembershipSet {}

impl std::fmt::Debug for MembershipSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub enum MembershipIter<'a> {
    Dense {
        words: &'a [u64],
        word_idx: usize,
        current: u64,
    },
    Sparse(std::slice::Iter<'a, u64>),
}

impl Iterator for MembershipIter<'_> {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        match self {
            MembershipIter::Dense {
                words,
                word_idx,
                current,
            } => {
                while *current == 0 {
                    *word_idx += 1;
                    if *word_idx >= words.len() {
                        return None;
                    }
                    *current = words[*word_idx];
                }
                let bit = current.trailing_zeros() as u64;
                *current &= *current - 1;
                Some(*word_idx as u64 * 64 + bit)
            }
            MembershipIter::Sparse(it) => it.next().copied(),
        }
    }
}

/// Accumulates values below a known universe bound, then freezes into the
/// representation the bound calls for.
struct SetBuilder {
    repr: BuilderRepr,
}

enum BuilderRepr {
    Dense { words: Vec<u64>, count: usize },
    Sparse { values: Vec<u64> },
}

impl SetBuilder {
    /// `universe` is an exclusive upper bound on inserted values.
    fn new(universe: u64, dense_limit: u64) -> Self {
        let repr = if universe <= dense_limit {
            BuilderRepr::Dense {
                words: vec![0; (universe as usize).div_ceil(64)],
                count: 0,
            }
        } else {
            BuilderRepr::Sparse { values: Vec::new() }
        };
        Self { repr }
    }

    #[inline]
    fn insert(&mut self, v: u64) {
        match &mut self.repr {
            BuilderRepr::Dense { words, count } => {
                let w = (v / 64) as usize;
                let bit = 1u64 << (v % 64);
                if words[w] & bit == 0 {
                    words[w] |= bit;
                    *count += 1;
                }
            }
            BuilderRepr::Sparse { values } => values.push(v),
        }
    }

    fn finish(self) -> MembershipSet {
        match self.repr {
            BuilderRepr::Dense { words, count } => MembershipSet::Dense { words, count },
            BuilderRepr::Sparse { mut values } => {
                values.sort_unstable();
                values.dedup();
                MembershipSet::Sparse { values }
            }
        }
    }
}

/// Sum supports D_0..D_h for a ground set containing 0.
///
/// Invariants: supports.len() == h+1; D_0 == {0}; D_j is a subset of
/// D_{j+1} (zero padding); every value in D_j is at most j * max_element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSupportTable {
    h: u32,
    ground_size: usize,
    max_element: Element,
    contains_zero: bool,
    supports: Vec<MembershipSet>,
}

impl SumSupportTable {
    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn max_element(&self) -> Element {
        self.max_element
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_zero
    }

    /// The support D_j. Panics if `j > h`.
    pub fn support(&self, j: u32) -> &MembershipSet {
        &self.supports[j as usize]
    }

    pub fn memory_bytes(&self) -> usize {
        self.supports.iter().map(MembershipSet::memory_bytes).sum()
    }
}

/// Build D_0..D_h for `a` by level-by-level convolution:
/// D_j = union over e in a of (e + D_{j-1}).
///
/// Requires 0 in `a`: the zero-padding embedding D_j into D_{j+1} is what
/// the extension check below relies on.
pub fn build_support_table(a: &[Element], h: u32) -> Result<SumSupportTable> {
    build_with_dense_limit(a, h, DENSE_LIMIT_BITS)
}

fn build_with_dense_limit(a: &[Element], h: u32, dense_limit: u64) -> Result<SumSupportTable> {
    if h == 0 {
        return Err(Error::InvalidInput("h must be at least 1".into()));
    }
    let a = normalize(a)?;
    if a[0] != 0 {
        return Err(Error::InvalidInput(
            "support tables require 0 in the ground set".into(),
        ));
    }
    let max = *a.last().expect("nonempty after normalize");
    let mut supports = Vec::with_capacity(h as usize + 1);
    let mut d0 = SetBuilder::new(1, dense_limit);
    d0.insert(0);
    supports.push(d0.finish());
    for j in 1..=h as u64 {
        // Overflow-check the level universe once; element sums below it
        // then fit without further checks.
        let universe = add(mul(j, max, "sizing a support level")?, 1, "sizing a support level")?;
        let mut builder = SetBuilder::new(universe, dense_limit);
        for s in supports[j as usize - 1].iter() {
            for &e in &a {
                builder.insert(s + e);
            }
        }
        supports.push(builder.finish());
    }
    Ok(SumSupportTable {
        h,
        ground_size: a.len(),
        max_element: max,
        contains_zero: true,
        supports,
    })
}

/// Decide whether A u {b} stays B_h, given the table for A and b > max(A).
///
/// Why this check is complete: suppose A u {b} has two distinct size-h
/// multisets with equal sums. Cancel the copies of b they share; if none
/// remain on either side, the two multisets live in A and pad with zeros to
/// a collision inside A, contradicting A being B_h (this is where 0 in A is
/// used). Otherwise one side keeps d in [1, h] copies of b and the other
/// none, so d*b + s = t with s in D_{h-d} and t in D_h. Conversely any such
/// (d, s, t) yields two distinct multisets because b exceeds max(A) and so
/// cannot occur on the t side. Hence:
///
///   admissible(A, b)  iff  for every d in [1, h],
///                          (d*b + D_{h-d}) does not meet D_h.
pub fn admissible(table: &SumSupportTable, b: Element) -> Result<bool> {
    if b <= table.max_element {
        return Err(Error::InvalidInput(format!(
            "candidate {b} does not exceed the current maximum {}",
            table.max_element
        )));
    }
    let h = table.h;
    let dh = table.support(h);
    for d in 1..=h {
        let shift = mul(d as u64, b, "shifting by d copies of the candidate")?;
        for s in table.support(h - d).iter() {
            let v = add(shift, s, "forming a candidate collision value")?;
            if dh.contains(v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Extend the table for A to the table for A u {b} without rebuilding:
/// splitting a size-j multiset of A u {b} by its count m of copies of b
/// gives D'_j = union over m in [0, j] of (m*b + D_{j-m}).
///
/// `b` must be admissible; the result is checked against that precondition.
pub fn insert_element(table: &SumSupportTable, b: Element) -> Result<SumSupportTable> {
    if !admissible(table, b)? {
        return Err(Error::InvalidInput(format!(
            "inserting {b} would break the B_{} property",
            table.h
        )));
    }
    let h = table.h;
    let mut supports = Vec::with_capacity(h as usize + 1);
    for j in 0..=h as u64 {
        let universe = add(mul(j, b, "sizing a support level")?, 1, "sizing a support level")?;
        let mut builder = SetBuilder::new(universe, DENSE_LIMIT_BITS);
        for m in 0..=j {
            let offset = m * b; // at most j*b, covered by the universe check
            for s in table.supports[(j - m) as usize].iter() {
                builder.insert(offset + s);
            }
        }
        supports.push(builder.finish());
    }
    Ok(SumSupportTable {
        h,
        ground_size: table.ground_size + 1,
        max_element: b,
        contains_zero: table.contains_zero,
        supports,
    })
}

/// B_h verdict from one cardinality: with m ground elements, all
/// C(m+h-1, h) size-h multisets have distinct sums exactly when
/// |D_h| == C(m+h-1, h).
pub fn verify_by_cardinality(table: &SumSupportTable) -> Result<bool> {
    if !table.contains_zero {
        return Err(Error::InvalidInput(
            "cardinality verification requires 0 in the ground set".into(),
        ));
    }
    let n = add(table.ground_size as u64, table.h as u64, "sizing the multiset count")? - 1;
    let expected = binomial(n, table.h as u64)?;
    Ok(table.support(table.h).len() as u64 == expected)
}

/// C(n, k) with overflow-checked arithmetic.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc
            .checked_mul((n - k + i) as u128)
            .ok_or(Error::Overflow("computing a binomial coefficient"))?
            / i as u128; // exact: C(n-k+i, i) * i! divides the running product
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("computing a binomial coefficient"))
}
