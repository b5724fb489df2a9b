//! Randomized invariants. Each property pits two independent routes
//! against each other or pins an identity that must hold for every
//! well-formed input, not just the documented examples.

use std::collections::HashSet;
use std::time::Duration;

use bhseq::bfile::{emit_bfile, parse_bfile, terms_from_bfile};
use bhseq::greedy::SequenceRecord;
use bhseq::set::{count_representations, is_bh_set_bruteforce};
use bhseq::table::{
    admissible, binomial, build_support_table, insert_element, verify_by_cardinality,
};

use proptest::collection::btree_set;
use proptest::prelude::*;

/// Ground sets for the oracle duels: 0 plus up to five distinct values.
fn ground_set() -> impl Strategy<Value = Vec<u64>> {
    btree_set(1..=60u64, 0..=5).prop_map(|extra| {
        let mut set = vec![0u64];
        set.extend(extra);
        set
    })
}

fn sums_of(a: &[u64], j: u32) -> Vec<u64> {
    fn rec(a: &[u64], start: usize, left: u32, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..a.len() {
            rec(a, i, left - 1, acc + a[i], out);
        }
    }
    let mut out = Vec::new();
    rec(a, 0, j, 0, &mut out);
    out
}

fn brute_admissible(a: &[u64], h: u32, b: u64) -> bool {
    let h_sums = sums_of(a, h);
    for d in 1..=h {
        for s in sums_of(a, h - d) {
            if h_sums.contains(&(d as u64 * b + s)) {
                return false;
            }
        }
    }
    true
}

proptest! {
    /// The table cardinality check and the brute-force enumeration must
    /// render the same verdict on every ground set.
    #[test]
    fn cardinality_check_equals_enumeration(set in ground_set(), h in 1..=4u32) {
        let table = build_support_table(&set, h).unwrap();
        prop_assert_eq!(
            verify_by_cardinality(&table).unwrap(),
            is_bh_set_bruteforce(&set, h).unwrap()
        );
    }

    /// Table admissibility must agree with the definition-level recheck
    /// for any candidate beyond the current maximum.
    #[test]
    fn admissibility_equals_definition(set in ground_set(), h in 1..=4u32, offset in 1..=40u64) {
        let table = build_support_table(&set, h).unwrap();
        let b = set.last().unwrap() + offset;
        prop_assert_eq!(admissible(&table, b).unwrap(), brute_admissible(&set, h, b));
    }

    /// Mass conservation: representation counts over all targets must sum
    /// to the number of h-multisets of the ground set.
    #[test]
    fn representation_counts_sum_to_multiset_count(set in ground_set(), h in 1..=4u32) {
        let max = *set.last().unwrap();
        let total: u64 = (0..=max * h as u64)
            .map(|n| count_representations(&set, h, n).unwrap())
            .sum();
        let m = set.len() as u64;
        prop_assert_eq!(total, binomial(m + h as u64 - 1, h as u64).unwrap());
    }

    /// With 0 in the ground set, each support level is contained in the
    /// next: any j-fold sum extends by a zero.
    #[test]
    fn support_levels_are_nested(set in ground_set(), h in 1..=4u32) {
        let table = build_support_table(&set, h).unwrap();
        for j in 0..h {
            for v in table.support(j).iter() {
                prop_assert!(table.support(j + 1).contains(v));
            }
        }
    }

    /// Incremental insertion must be indistinguishable from rebuilding
    /// the table over the extended set.
    #[test]
    fn insertion_matches_fresh_build(set in ground_set(), h in 1..=4u32, offset in 1..=40u64) {
        let table = build_support_table(&set, h).unwrap();
        let b = set.last().unwrap() + offset;
        if admissible(&table, b).unwrap() {
            let grown = insert_element(&table, b).unwrap();
            let mut extended = set.clone();
            extended.push(b);
            let fresh = build_support_table(&extended, h).unwrap();
            for j in 0..=h {
                prop_assert_eq!(grown.support(j), fresh.support(j));
            }
        }
    }

    /// Emitting and re-parsing a b-file must preserve the terms exactly,
    /// for any strictly increasing sequence starting at 0.
    #[test]
    fn bfile_round_trip_preserves_terms(steps in proptest::collection::vec(1..=1_000_000u64, 0..=12)) {
        let mut terms = vec![0u64];
        for s in steps {
            terms.push(terms.last().unwrap() + s);
        }
        let record = SequenceRecord {
            h: 2,
            k_max: terms.len() as u32 - 1,
            terms: terms.clone(),
            scan_cap: 0,
            elapsed: vec![Duration::ZERO; terms.len() - 1],
        };
        let pairs = parse_bfile(&emit_bfile(&record)).unwrap();
        prop_assert_eq!(terms_from_bfile(&pairs).unwrap(), terms);
    }

    /// The support sets never contain values outside [0, h * max].
    #[test]
    fn support_values_stay_in_range(set in ground_set(), h in 1..=4u32) {
        let table = build_support_table(&set, h).unwrap();
        let max = *set.last().unwrap();
        let seen: HashSet<u64> = table.support(h).iter().collect();
        for v in &seen {
            prop_assert!(*v <= max * h as u64);
        }
        prop_assert_eq!(seen.len(), table.support(h).len());
    }
}
