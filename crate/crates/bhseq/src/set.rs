//! Ground sets and the brute-force reference routines.
//!
//! Everything here works by direct enumeration of size-h multisets and is
//! deliberately independent of the incremental sum-support machinery in
//! [`crate::table`]; the two routes cross-check each other in tests. The
//! enumeration cost grows as C(|A|+h-1, h), so these are reference tools
//! for small instances, not the construction path.

use std::collections::HashMap;

use crate::error::{add, Error, Result};

/// Set elements are nonnegative 64-bit integers.
pub type Element = u64;

/// Sort a candidate ground set and reject duplicates. Unsorted input is
/// accepted; duplicated values are a caller error.
pub fn normalize(elements: &[Element]) -> Result<Vec<Element>> {
    if elements.is_empty() {
        return Err(Error::InvalidInput("ground set is empty".into()));
    }
    let mut v = elements.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("duplicate element in ground set".into()));
    }
    Ok(v)
}

fn check_h(h: u32) -> Result<()> {
    if h == 0 {
        return Err(Error::InvalidInput("h must be at least 1".into()));
    }
    Ok(())
}

/// Count multisets of size exactly `h` drawn from `a` (repetition allowed,
/// order ignored) whose elements sum to `n`.
pub fn count_representations(a: &[Element], h: u32, n: u64) -> Result<u64> {
    check_h(h)?;
    let a = normalize(a)?;
    Ok(count_rec(&a, 0, h, n))
}

fn count_rec(a: &[Element], start: usize, slots: u32, target: u64) -> u64 {
    if slots == 0 {
        return u64::from(target == 0);
    }
    // Bounds: slots copies of the smallest (largest) remaining element
    // already overshoot (cannot reach) the target.
    let lo = a[start] as u128 * slots as u128;
    let hi = a[a.len() - 1] as u128 * slots as u128;
    if lo > target as u128 || hi < target as u128 {
        return 0;
    }
    let mut total = 0;
    for (j, &e) in a.iter().enumerate().skip(start) {
        if e > target {
            break; // sorted ascending: later elements only larger
        }
        total += count_rec(a, j, slots - 1, target - e);
    }
    total
}

/// Visit every size-`h` multiset of `a` as (sum, non-decreasing elements),
/// stopping early when the visitor returns false.
fn for_each_multiset<F>(a: &[Element], h: u32, f: &mut F) -> Result<()>
where
    F: FnMut(u64, &[Element]) -> bool,
{
    let mut chosen = Vec::with_capacity(h as usize);
    enum_rec(a, 0, h, 0, &mut chosen, f).map(|_| ())
}

fn enum_rec<F>(
    a: &[Element],
    start: usize,
    slots: u32,
    sum: u64,
    chosen: &mut Vec<Element>,
    f: &mut F,
) -> Result<bool>
where
    F: FnMut(u64, &[Element]) -> bool,
{
    if slots == 0 {
        return Ok(f(sum, chosen));
    }
    for (j, &e) in a.iter().enumerate().skip(start) {
        let next = add(sum, e, "accumulating a multiset sum")?;
        chosen.push(e);
        let keep_going = enum_rec(a, j, slots - 1, next, chosen, f)?;
        chosen.pop();
        if !keep_going {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `a` is a B_h set: no value has two representations as a sum of
/// `h` elements of `a` (repetition allowed, order ignored). Equivalently,
/// count_representations(a, h, n) <= 1 for every n in [0, h * max(a)].
pub fn is_bh_set_bruteforce(a: &[Element], h: u32) -> Result<bool> {
    Ok(find_collision(a, h)?.is_none())
}

/// Search for two distinct size-`h` multisets of `a` with equal sums.
/// Returns the colliding element lists (each non-decreasing) or None.
pub fn find_collision(a: &[Element], h: u32) -> Result<Option<(Vec<Element>, Vec<Element>)>> {
    check_h(h)?;
    let a = normalize(a)?;
    let mut seen: HashMap<u64, Vec<Element>> = HashMap::new();
    let mut hit = None;
    for_each_multiset(&a, h, &mut |sum, elems| {
        if let Some(prev) = seen.get(&sum) {
            hit = Some((prev.clone(), elems.to_vec()));
            false
        } else {
            seen.insert(sum, elems.to_vec());
            true
        }
    })?;
    Ok(hit)
}

/// A finite strictly increasing set of nonnegative integers certified to be
/// B_h for its tagged `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BhSet {
    elements: Vec<Element>,
    h: u32,
}

impl BhSet {
    /// Normalize and certify by brute force.
    pub fn verified(elements: &[Element], h: u32) -> Result<Self> {
        check_h(h)?;
        let elements = normalize(elements)?;
        if let Some((lhs, rhs)) = find_collision(&elements, h)? {
            return Err(Error::InvalidInput(format!(
                "not a B_{h} set: {} = {}",
                join_sum(&lhs),
                join_sum(&rhs)
            )));
        }
        Ok(Self { elements, h })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn max(&self) -> Element {
        *self.elements.last().expect("nonempty by construction")
    }
}

/// Render a multiset as `x1+x2+...` for collision messages.
pub fn join_sum(elems: &[Element]) -> String {
    elems
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join("+")
}
