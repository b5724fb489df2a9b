//! Closed forms for the first terms of the greedy B_h sequence and the
//! scan bound used by the construction engine.
//!
//! The first four terms after 0 are 1, h+1, h^2+h+1, and a fourth term
//! whose closed form splits on the parity of h. The fourth term also
//! factors as (h+1) times a parity-dependent cofactor, and collapses to a
//! single floor expression; both reformulations are checked against the
//! case split in tests.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(h: u32) -> Self {
        if h % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Odd => write!(f, "odd"),
            Parity::Even => write!(f, "even"),
        }
    }
}

/// A value defined by a parity case split on h, tagged with the branch
/// that produced it. `value` always matches the branch selected by h mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityCaseValue {
    pub h: u32,
    pub value: u64,
    pub parity: Parity,
}

fn check_h(h: u32) -> Result<()> {
    if h == 0 {
        return Err(Error::InvalidInput("h must be at least 1".into()));
    }
    Ok(())
}

fn narrow(v: u128, what: &'static str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// Exactly halve `n`, insisting on the divisibility the parity analysis
/// guarantees.
fn halve(n: u128) -> u128 {
    assert!(n.is_multiple_of(2), "parity case split produced an odd numerator: {n}");
    n / 2
}

/// The k-th greedy term as a closed form, known for k in [0, 4]:
/// 0, 1, h+1, h^2+h+1, and the parity-split fourth term.
pub fn closed_form_term(h: u32, k: u32) -> Result<u64> {
    check_h(h)?;
    let hh = h as u128;
    let v = match k {
        0 => 0,
        1 => 1,
        2 => hh + 1,
        3 => hh * hh + hh + 1,
        4 => return Ok(fourth_term(h)?.value),
        _ => {
            return Err(Error::Range(format!(
                "no closed form is known for term {k}; only k <= 4"
            )))
        }
    };
    narrow(v, "evaluating a closed-form term")
}

/// The fourth greedy term with its parity branch:
/// (h^3 + 3h^2 + 3h + 1) / 2 for odd h, (h^3 + 2h^2 + 3h + 2) / 2 for even.
pub fn fourth_term(h: u32) -> Result<ParityCaseValue> {
    check_h(h)?;
    let hh = h as u128;
    let parity = Parity::of(h);
    let numerator = match parity {
        Parity::Odd => hh * hh * hh + 3 * hh * hh + 3 * hh + 1,
        Parity::Even => hh * hh * hh + 2 * hh * hh + 3 * hh + 2,
    };
    Ok(ParityCaseValue {
        h,
        value: narrow(halve(numerator), "evaluating the fourth term")?,
        parity,
    })
}

/// The fourth greedy term as a single floor expression:
/// floor((h+3)/2) * h^2 + floor(3h/2) + 1.
pub fn a4_floor_form(h: u32) -> Result<u64> {
    check_h(h)?;
    let hh = h as u128;
    let v = (hh + 3) / 2 * hh * hh + 3 * hh / 2 + 1;
    narrow(v, "evaluating the floor form of the fourth term")
}

/// The cofactor pairing with (h+1) in the fourth term:
/// a4(h) = (h+1) * a4_cofactor(h), with
/// cofactor = (h^2 + 2h + 1) / 2 for odd h, (h^2 + h + 2) / 2 for even.
pub fn a4_cofactor(h: u32) -> Result<ParityCaseValue> {
    check_h(h)?;
    let hh = h as u128;
    let parity = Parity::of(h);
    let numerator = match parity {
        Parity::Odd => hh * hh + 2 * hh + 1,
        Parity::Even => hh * hh + hh + 2,
    };
    Ok(ParityCaseValue {
        h,
        value: narrow(halve(numerator), "evaluating the fourth-term cofactor")?,
        parity,
    })
}

/// The geometric-sum bound on the k-th greedy term:
/// a_k <= 1 + h + ... + h^(k-1). For h, k >= 2 the sum is also strictly
/// below h^(k-1) + 2h^(k-2), which this function asserts as a self-check.
pub fn upper_bound_sum(h: u32, k: u32) -> Result<u64> {
    check_h(h)?;
    if k == 0 {
        return Err(Error::InvalidInput("the scan bound needs k >= 1".into()));
    }
    let hh = h as u128;
    let mut sum: u128 = 0;
    let mut pow: u128 = 1;
    for i in 0..k {
        sum = sum
            .checked_add(pow)
            .ok_or(Error::Overflow("summing the geometric scan bound"))?;
        if i + 1 < k {
            pow = pow
                .checked_mul(hh)
                .ok_or(Error::Overflow("summing the geometric scan bound"))?;
        }
    }
    if h >= 2 && k >= 2 {
        // pow == h^(k-1) here; the strict comparison is a structural
        // identity for the geometric sum, so its failure is a bug.
        if let Some(bound) = (pow / hh).checked_mul(2).and_then(|t| pow.checked_add(t)) {
            assert!(sum < bound, "geometric sum bound identity failed for h={h}, k={k}");
        }
    }
    narrow(sum, "summing the geometric scan bound")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn early_terms() {
        assert_eq!(closed_form_term(7, 2).unwrap(), 8);
        assert_eq!(closed_form_term(7, 0).unwrap(), 0);
        assert_eq!(closed_form_term(7, 1).unwrap(), 1);
        assert_eq!(closed_form_term(7, 3).unwrap(), 57);
    }

    #[test]
    fn fourth_term_case_split() {
        assert_eq!(closed_form_term(1, 4).unwrap(), 4);
        assert_eq!(closed_form_term(2, 4).unwrap(), 12);
        assert_eq!(closed_form_term(3, 4).unwrap(), 32);
        assert_eq!(closed_form_term(4, 4).unwrap(), 55);
        assert_eq!(closed_form_term(5, 4).unwrap(), 108);
        assert_eq!(fourth_term(3).unwrap().parity, Parity::Odd);
        assert_eq!(fourth_term(4).unwrap().parity, Parity::Even);
    }

    #[test]
    fn no_closed_form_past_the_fourth_term() {
        assert!(matches!(closed_form_term(3, 5), Err(Error::Range(_))));
        assert!(matches!(closed_form_term(3, 9), Err(Error::Range(_))));
    }

    #[test]
    fn floor_form_values() {
        assert_eq!(a4_floor_form(2).unwrap(), 12);
        assert_eq!(a4_floor_form(3).unwrap(), 32);
        assert_eq!(a4_floor_form(5).unwrap(), 108);
    }

    #[test]
    fn cofactor_values_and_identity() {
        assert_eq!(a4_cofactor(3).unwrap().value, 8); // 4 * 8 = 32
        assert_eq!(a4_cofactor(2).unwrap().value, 4); // 3 * 4 = 12
        assert_eq!(a4_cofactor(1).unwrap().value, 2); // 2 * 2 = 4
        for h in 1..=200 {
            let a4 = closed_form_term(h, 4).unwrap();
            let cof = a4_cofactor(h).unwrap().value;
            assert_eq!(a4, (h as u64 + 1) * cof, "factorization failed at h={h}");
            assert_eq!(a4, a4_floor_form(h).unwrap(), "floor form diverged at h={h}");
        }
    }

    #[test]
    fn fourth_term_grows_strictly() {
        for h in 1..=200 {
            assert!(closed_form_term(h, 4).unwrap() < closed_form_term(h + 1, 4).unwrap());
        }
    }

    #[test]
    fn scan_bound_values() {
        assert_eq!(upper_bound_sum(2, 4).unwrap(), 15);
        assert_eq!(upper_bound_sum(1, 6).unwrap(), 6);
        assert_eq!(upper_bound_sum(3, 4).unwrap(), 40);
        assert_eq!(upper_bound_sum(5, 1).unwrap(), 1);
        assert!(upper_bound_sum(5, 0).is_err());
        assert!(upper_bound_sum(0, 3).is_err());
    }

    #[test]
    fn closed_forms_cover_the_scan_bound() {
        // Each known term sits within the geometric bound for its index.
        for h in 1..=64 {
            for k in 1..=4 {
                assert!(closed_form_term(h, k).unwrap() <= upper_bound_sum(h, k).unwrap());
            }
        }
    }

    #[test]
    fn rejects_h_zero() {
        assert!(closed_form_term(0, 2).is_err());
        assert!(a4_floor_form(0).is_err());
        assert!(a4_cofactor(0).is_err());
    }
}
