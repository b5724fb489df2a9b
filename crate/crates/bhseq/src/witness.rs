//! Collision witnesses against the fixed greedy prefix {0, 1, h+1, h^2+h+1},
//! and the interval algebra describing which fourth-term candidates they
//! block.
//!
//! Dropping a candidate c into the prefix breaks the B_h property exactly
//! when two distinct size-h multisets of {0, 1, h+1, h^2+h+1, c} share a
//! sum. Cancelling common entries and splitting by which side holds c
//! normalises any such collision to
//!
//!   x0*c + x1*1 + x2*(h+1) + x3*(h^2+h+1)
//!       = y1*1 + y2*(h+1) + y3*(h^2+h+1)
//!
//! with x0 >= 1, x0+x1+x2+x3 <= h, y1+y2+y3 <= h and x1*y1 = x2*y2 =
//! x3*y3 = 0 (zeros pad both sides to size h). A candidate with no witness
//! is "unblocked"; the least unblocked candidate above h^2+h+1 is the
//! fourth greedy term, which is how the engine result gets pinned by a
//! route that never runs the engine.
//!
//! Witnesses for c <= h^2+h+1 can degenerate (c = h^2+h+1 with y3 = 1
//! equates two copies of the same multiset), so blocking claims are only
//! meaningful above h^2+h+1; searches below stay available for
//! transparency.

use crate::error::{add, mul, Error, Result};
use crate::formulas::{a4_cofactor, upper_bound_sum, Parity};
use crate::interval::{merge, runs, IntegerInterval};

/// Desk-scale guard for the witness searches: the lookup table holds
/// C(h+3, 3) entries and scans touch C(h+3, 4) tuples per candidate.
const MAX_WITNESS_H: u32 = 64;

/// One normalised collision, stored with the h and c it witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollisionWitness {
    pub h: u32,
    pub c: u64,
    pub x0: u32,
    pub x1: u32,
    pub x2: u32,
    pub x3: u32,
    pub y1: u32,
    pub y2: u32,
    pub y3: u32,
}

impl CollisionWitness {
    /// Re-derive every constraint; a veto here is an internal bug.
    pub fn validate(&self) -> Result<()> {
        let h = self.h as u128;
        let (x0, x1, x2, x3) = (self.x0 as u128, self.x1 as u128, self.x2 as u128, self.x3 as u128);
        let (y1, y2, y3) = (self.y1 as u128, self.y2 as u128, self.y3 as u128);
        let t2 = h + 1;
        let t3 = h * h + h + 1;
        let lhs = x0 * self.c as u128 + x1 + x2 * t2 + x3 * t3;
        let rhs = y1 + y2 * t2 + y3 * t3;
        let ok = self.x0 >= 1
            && x0 + x1 + x2 + x3 <= h
            && y1 + y2 + y3 <= h
            && x1 * y1 == 0
            && x2 * y2 == 0
            && x3 * y3 == 0
            && lhs == rhs;
        if ok {
            Ok(())
        } else {
            Err(Error::Internal(format!("malformed collision witness: {self:?}")))
        }
    }

    /// The shared value both size-h multisets sum to.
    pub fn collision_value(&self) -> u64 {
        let h = self.h as u64;
        self.y1 as u64 + self.y2 as u64 * (h + 1) + self.y3 as u64 * (h * h + h + 1)
    }
}

impl std::fmt::Display for CollisionWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let h = self.h as u64;
        let side = |counts: &[(u64, u64)], f: &mut std::fmt::Formatter<'_>| -> std::fmt::Result {
            let mut first = true;
            for &(mult, val) in counts {
                if mult > 0 {
                    if !first {
                        write!(f, " + ")?;
                    }
                    write!(f, "{mult}*{val}")?;
                    first = false;
                }
            }
            if first {
                write!(f, "0")?;
            }
            Ok(())
        };
        side(
            &[
                (self.x0 as u64, self.c),
                (self.x1 as u64, 1),
                (self.x2 as u64, h + 1),
                (self.x3 as u64, h * h + h + 1),
            ],
            f,
        )?;
        write!(f, " = ")?;
        side(
            &[
                (self.y1 as u64, 1),
                (self.y2 as u64, h + 1),
                (self.y3 as u64, h * h + h + 1),
            ],
            f,
        )
    }
}

/// Right-hand-side lookup: every value y1 + y2*(h+1) + y3*(h^2+h+1) with
/// y1+y2+y3 <= h, grouped by value, triples kept in (y1, y2, y3)
/// lexicographic order.
pub struct WitnessSearcher {
    h: u32,
    rhs_max: u64,
    offsets: Vec<u32>,
    triples: Vec<(u32, u32, u32)>,
}

impl WitnessSearcher {
    pub fn new(h: u32) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidInput("h must be at least 1".into()));
        }
        if h > MAX_WITNESS_H {
            return Err(Error::InvalidInput(format!(
                "collision witness search is sized for h <= {MAX_WITNESS_H}, got {h}"
            )));
        }
        let hu = h as u64;
        let t2 = hu + 1;
        let t3 = mul(hu, hu, "sizing witness terms")? + hu + 1;
        let rhs_max = mul(hu, t3, "sizing the witness lookup")?;
        let mut entries: Vec<(u64, (u32, u32, u32))> = Vec::new();
        for y1 in 0..=h {
            for y2 in 0..=h - y1 {
                for y3 in 0..=h - y1 - y2 {
                    let v = y1 as u64 + y2 as u64 * t2 + y3 as u64 * t3;
                    entries.push((v, (y1, y2, y3)));
                }
            }
        }
        // Stable sort by value keeps the lexicographic order within groups.
        entries.sort_by_key(|e| e.0);
        let mut offsets = vec![0u32; rhs_max as usize + 2];
        for (v, _) in &entries {
            offsets[*v as usize + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        let triples = entries.into_iter().map(|e| e.1).collect();
        Ok(Self { h, rhs_max, offsets, triples })
    }

    fn rhs_group(&self, v: u64) -> &[(u32, u32, u32)] {
        let lo = self.offsets[v as usize] as usize;
        let hi = self.offsets[v as usize + 1] as usize;
        &self.triples[lo..hi]
    }

    /// Exhaustive search for a witness against candidate `c`, x-tuples in
    /// (x0, x1, x2, x3) lexicographic order, first hit returned.
    pub fn find(&self, c: u64) -> Result<Option<CollisionWitness>> {
        if c == 0 {
            return Err(Error::InvalidInput("candidates are positive".into()));
        }
        if c > self.rhs_max {
            // Every left side is at least c, already beyond every right side.
            return Ok(None);
        }
        let h = self.h;
        let hu = h as u64;
        let t2 = hu + 1;
        let t3 = hu * hu + hu + 1;
        for x0 in 1..=h {
            let base0 = x0 as u64 * c; // <= h * rhs_max, far from overflow
            if base0 > self.rhs_max {
                break;
            }
            for x1 in 0..=h - x0 {
                let base1 = base0 + x1 as u64;
                if base1 > self.rhs_max {
                    break;
                }
                for x2 in 0..=h - x0 - x1 {
                    let base2 = base1 + x2 as u64 * t2;
                    if base2 > self.rhs_max {
                        break;
                    }
                    for x3 in 0..=h - x0 - x1 - x2 {
                        let lhs = base2 + x3 as u64 * t3;
                        if lhs > self.rhs_max {
                            break;
                        }
                        for &(y1, y2, y3) in self.rhs_group(lhs) {
                            if x1 * y1 == 0 && x2 * y2 == 0 && x3 * y3 == 0 {
                                let w = CollisionWitness {
                                    h,
                                    c,
                                    x0,
                                    x1,
                                    x2,
                                    x3,
                                    y1,
                                    y2,
                                    y3,
                                };
                                w.validate()?;
                                return Ok(Some(w));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Search for a collision witness against candidate `c`. Exhaustive over
/// the normalised form; `None` is a proof of admissibility relative to the
/// fixed prefix, not a search giving up.
pub fn collision_witness(h: u32, c: u64) -> Result<Option<CollisionWitness>> {
    WitnessSearcher::new(h)?.find(c)
}

/// The least candidate above h^2+h+1 with no collision witness. By the
/// witness normalisation this equals the fourth greedy term; the scan is
/// capped by the geometric bound, past which something is broken.
///
/// Defined for h >= 1; for h = 1 the blocked gap above h^2+h+1 = 3 is
/// empty and the scan returns 4 immediately.
pub fn min_unblocked(h: u32) -> Result<u64> {
    let searcher = WitnessSearcher::new(h)?;
    let start = add(mul(h as u64, h as u64 + 1, "locating the scan start")?, 2, "locating the scan start")?;
    let cap = upper_bound_sum(h, 4)?;
    for c in start..=cap {
        if searcher.find(c)?.is_none() {
            return Ok(c);
        }
    }
    Err(Error::Internal(format!(
        "every candidate in [{start}, {cap}] is blocked at h={h}; the geometric bound should be unblockable"
    )))
}

/// True when the closed-form fourth term, written as (h+1) times its
/// cofactor, admits no collision witness. This is the upper half of the
/// pincer: the candidate equal to the closed form is never blocked.
pub fn fourth_term_candidate_unblocked(h: u32) -> Result<bool> {
    let cof = a4_cofactor(h)?.value;
    let c = mul(h as u64 + 1, cof, "forming the fourth-term candidate")?;
    Ok(collision_witness(h, c)?.is_none())
}

/// All b in [1, cap] blocked by a single-copy witness that avoids the
/// largest prefix element on the left:
///
///   b + x1*1 + x2*(h+1) = y1 + y2*(h+1) + y3*(h^2+h+1),
///   x1 + x2 <= h-1, y1+y2+y3 <= h, x1*y1 = x2*y2 = 0,
///
/// returned as sorted disjoint intervals. This restricted family is what
/// the interval algebra below describes; it already suffices to block the
/// whole gap between h^2+h+1 and the fourth term. Values b <= h^2+h+1 are
/// reported for transparency but carry no blocking claim.
pub fn blocked_candidates(h: u32) -> Result<Vec<IntegerInterval>> {
    if h == 0 {
        return Err(Error::InvalidInput("h must be at least 1".into()));
    }
    if h > MAX_WITNESS_H {
        return Err(Error::InvalidInput(format!(
            "blocked-candidate enumeration is sized for h <= {MAX_WITNESS_H}, got {h}"
        )));
    }
    let hu = h as u64;
    let t2 = hu + 1;
    let t3 = hu * hu + hu + 1;
    let cap = upper_bound_sum(h, 4)?;
    let mut hit = vec![false; cap as usize + 1];
    let mut mark = |b: i64| {
        if b >= 1 && b <= cap as i64 {
            hit[b as usize] = true;
        }
    };
    for y1 in 0..=hu {
        for y2 in 0..=hu - y1 {
            for y3 in 0..=hu - y1 - y2 {
                let rhs = (y1 + y2 * t2 + y3 * t3) as i64;
                // x ranges collapse under the disjointness constraints.
                let x1_max = if y1 > 0 { 0 } else { hu - 1 };
                for x1 in 0..=x1_max {
                    let x2_max = if y2 > 0 { 0 } else { hu - 1 - x1 };
                    for x2 in 0..=x2_max {
                        mark(rhs - x1 as i64 - (x2 * t2) as i64);
                    }
                }
            }
        }
    }
    let marked: Vec<i64> = hit
        .iter()
        .enumerate()
        .filter_map(|(b, &m)| m.then_some(b as i64))
        .collect();
    Ok(runs(&marked))
}

/// The labelled interval family describing the blocked candidates, plus
/// its merged union.
#[derive(Debug, Clone)]
pub struct BlockedIntervalFamily {
    pub h: u32,
    pub parity: Parity,
    /// Consecutive I(y3) and I(y3+1) intersect exactly for
    /// y3 <= this threshold, which equals floor((h^2-1)/(2h+1)).
    pub overlap_threshold: u64,
    pub labeled: Vec<(String, IntegerInterval)>,
    pub merged: Vec<IntegerInterval>,
}

fn iv(lo: i128, hi: i128) -> Result<IntegerInterval> {
    let narrow = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("evaluating an interval endpoint"));
    IntegerInterval::new(narrow(lo)?, narrow(hi)?)
}

/// Evaluate the blocked-interval family for h >= 2.
///
/// For each y3 the candidates blocked through the y side alone form
/// y_side(y3) and those through the x side x_side(y3); the two always
/// meet, and their union is I(y3) = [y3(h^2+2h+1) - h^2 - h + 1,
/// y3 h^2 + h^2 + h]. Chained up to the parity bound ((h+1)/2 odd, h/2
/// even) the I's merge into one run starting at h+2; one further interval
/// ("tail") tacked on the right closes the union at the fourth term minus
/// one. Structural identities (threshold closed form, side unions,
/// overlap exactness, chain connectivity) are re-verified on every call.
pub fn blocked_interval_family(h: u32) -> Result<BlockedIntervalFamily> {
    if h < 2 {
        return Err(Error::InvalidInput(
            "the interval family needs h >= 2".into(),
        ));
    }
    let hh = h as i128;
    let parity = Parity::of(h);
    let t3 = hh * hh + hh + 1;

    let threshold = ((hh * hh - 1) / (2 * hh + 1)) as u64;
    let threshold_closed = match parity {
        Parity::Odd => (h as u64 - 1) / 2,
        Parity::Even => (h as u64 - 2) / 2,
    };
    if threshold != threshold_closed {
        return Err(Error::Internal(format!(
            "overlap threshold mismatch at h={h}: {threshold} vs {threshold_closed}"
        )));
    }

    let y_side = |y3: i128| iv(y3 * t3 - hh + 1, y3 * hh * hh + hh * hh + hh);
    let x_side = |y3: i128| {
        iv(
            y3 * (hh * hh + 2 * hh + 1) - hh * hh - hh + 1,
            y3 * (hh * hh + hh) + hh,
        )
    };
    let whole = |y3: i128| -> Result<IntegerInterval> {
        let y = y_side(y3)?;
        let x = x_side(y3)?;
        // The union of the two sides must itself be the single interval
        // [x.lo, y.hi]; anything else is a bug.
        if !(x.lo <= y.lo && x.hi <= y.hi && x.touches(&y)) {
            return Err(Error::Internal(format!(
                "side intervals do not chain at h={h}, y3={y3}: {x} vs {y}"
            )));
        }
        IntegerInterval::new(x.lo, y.hi)
    };

    let bound = match parity {
        Parity::Odd => (h as i128 + 1) / 2,
        Parity::Even => h as i128 / 2,
    };

    // Overlap exactness across the whole formula domain, not just the
    // chained range: consecutive I's intersect iff y3 <= threshold.
    for y3 in 1..hh {
        let meets = whole(y3)?.intersects(&whole(y3 + 1)?);
        if meets != (y3 as u64 <= threshold) {
            return Err(Error::Internal(format!(
                "overlap exactness fails at h={h}, y3={y3}"
            )));
        }
    }

    let mut labeled = Vec::new();
    for y3 in 1..=bound {
        labeled.push((format!("y_side(y3={y3})"), y_side(y3)?));
        labeled.push((format!("x_side(y3={y3})"), x_side(y3)?));
        labeled.push((format!("I({y3})"), whole(y3)?));
    }

    let chain_hi = match parity {
        Parity::Odd => (hh * hh * hh + 3 * hh * hh + 2 * hh) / 2,
        Parity::Even => (hh * hh * hh + 2 * hh * hh + 2 * hh) / 2,
    };
    let chain = iv(hh + 2, chain_hi)?;
    let chained: Vec<IntegerInterval> = (1..=bound).map(whole).collect::<Result<_>>()?;
    if merge(&chained) != vec![chain] {
        return Err(Error::Internal(format!(
            "chained intervals do not merge to {chain} at h={h}"
        )));
    }
    labeled.push(("chain".into(), chain));

    let tail = match parity {
        Parity::Odd => iv(
            (hh * hh * hh + 3 * hh * hh + hh + 5) / 2,
            (hh * hh * hh + 3 * hh * hh + 3 * hh - 1) / 2,
        )?,
        Parity::Even => iv(
            (hh * hh * hh + 2 * hh * hh + hh + 4) / 2,
            (hh * hh * hh + 2 * hh * hh + 3 * hh) / 2,
        )?,
    };
    if !chain.touches(&tail) {
        return Err(Error::Internal(format!(
            "tail interval does not extend the chain at h={h}"
        )));
    }
    labeled.push(("tail".into(), tail));

    let merged = merge(&labeled.iter().map(|(_, iv)| *iv).collect::<Vec<_>>());
    if merged.len() != 1 {
        return Err(Error::Internal(format!(
            "family union is not a single interval at h={h}: {merged:?}"
        )));
    }

    Ok(BlockedIntervalFamily {
        h,
        parity,
        overlap_threshold: threshold,
        labeled,
        merged,
    })
}

/// Containment check: every interval in the family lies inside the
/// enumerated blocked set. Costs a full enumeration, so it is separate
/// from family construction.
pub fn family_within_blocked_set(h: u32) -> Result<bool> {
    let family = blocked_interval_family(h)?;
    let blocked = blocked_candidates(h)?;
    let covered = |iv: &IntegerInterval| blocked.iter().any(|b| b.lo <= iv.lo && iv.hi <= b.hi);
    Ok(family.labeled.iter().all(|(_, iv)| covered(iv)))
}
