//! Acceptance gate: one test per shipping criterion, each printing a
//! PASS line with its measured cost. Ranges and time budgets here are
//! the contract; the unit tests cover the same ground in finer grain.

use std::time::Instant;

use bhseq::bfile::{emit_bfile, read_bfile, terms_from_bfile, write_bfile};
use bhseq::formulas::{
    a4_cofactor, a4_floor_form, closed_form_term, fourth_term, upper_bound_sum, Parity,
};
use bhseq::greedy::greedy_sequence;
use bhseq::interval::IntegerInterval;
use bhseq::set::is_bh_set_bruteforce;
use bhseq::table::{admissible, build_support_table, verify_by_cardinality};
use bhseq::witness::{
    blocked_interval_family, collision_witness, fourth_term_candidate_unblocked, min_unblocked,
};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// The quasi-polynomial fourth term, written out per parity case. Kept
/// inline so this gate does not trust the library's own formula module.
#[allow(clippy::manual_div_ceil)]
fn expected_fourth_term(h: u64) -> u64 {
    if h % 2 == 1 {
        (h * h * h + 3 * h * h + 3 * h + 1) / 2
    } else {
        (h * h * h + 2 * h * h + 3 * h + 2) / 2
    }
}

#[test]
fn c01_fourth_term_matches_closed_form() {
    let t0 = Instant::now();
    for h in 1..=24u32 {
        let record = greedy_sequence(h, 4).unwrap();
        assert_eq!(
            record.terms[4],
            expected_fourth_term(h as u64),
            "fourth greedy term diverges from the closed form at h={h}"
        );
    }
    let spot = |h: u32| greedy_sequence(h, 4).unwrap().terms[4];
    assert_eq!(spot(2), 12);
    assert_eq!(spot(3), 32);
    assert_eq!(spot(4), 55);
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "budget exceeded: {dt:?}");
    println!("PASS c01 greedy fourth term == closed form, h in [1,24] ({:.2}s)", dt.as_secs_f64());
}

#[test]
fn c02_early_terms_match_closed_forms() {
    for h in 1..=24u64 {
        let record = greedy_sequence(h as u32, 3).unwrap();
        assert_eq!(record.terms[0], 0);
        assert_eq!(record.terms[1], 1);
        assert_eq!(record.terms[2], h + 1);
        assert_eq!(record.terms[3], h * h + h + 1);
    }
    println!("PASS c02 early terms are 1, h+1, h^2+h+1, h in [1,24]");
}

#[test]
fn c03_three_routes_agree_on_the_fourth_term() {
    let t0 = Instant::now();
    for h in 2..=16u32 {
        let by_scan = min_unblocked(h).unwrap();
        let by_formula = closed_form_term(h, 4).unwrap();
        let by_greedy = greedy_sequence(h, 4).unwrap().terms[4];
        assert_eq!(by_scan, by_formula, "scan vs formula at h={h}");
        assert_eq!(by_formula, by_greedy, "formula vs greedy at h={h}");
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 30.0, "budget exceeded: {dt:?}");
    println!("PASS c03 scan == formula == greedy, h in [2,16] ({:.2}s)", dt.as_secs_f64());
}

#[test]
fn c04_gap_candidates_are_all_blocked() {
    for h in 1..=16u32 {
        assert!(
            fourth_term_candidate_unblocked(h).unwrap(),
            "the closed-form candidate is blocked at h={h}"
        );
    }
    // Control: between the third term and the fourth, every candidate
    // must carry a witness. The gap is empty at h=1 and holds only four
    // values at h=2, so sampling is replaced by exhausting the gap.
    let mut checked = 0u64;
    for h in 2..=16u64 {
        let gap_lo = h * h + h + 2;
        let gap_hi = expected_fourth_term(h) - 1;
        for c in gap_lo..=gap_hi {
            assert!(
                collision_witness(h as u32, c).unwrap().is_some(),
                "no witness for c={c} inside the gap at h={h}"
            );
            checked += 1;
        }
        if h >= 3 {
            assert!(gap_hi - gap_lo + 1 >= 5, "gap too small to sample at h={h}");
        }
    }
    println!("PASS c04 candidate gap fully witnessed, h in [2,16] ({checked} candidates)");
}

#[test]
fn c05_interval_family_tiles_the_gap() {
    let t0 = Instant::now();
    for h in 2..=50u32 {
        let fam = blocked_interval_family(h).unwrap();
        let a4 = closed_form_term(h, 4).unwrap();
        let expected = IntegerInterval::new(h as i64 + 2, a4 as i64 - 1).unwrap();
        assert_eq!(fam.merged, vec![expected], "merged union wrong at h={h}");
        let expected_threshold = match Parity::of(h) {
            Parity::Odd => (h as u64 - 1) / 2,
            Parity::Even => (h as u64 - 2) / 2,
        };
        assert_eq!(fam.overlap_threshold, expected_threshold, "threshold wrong at h={h}");
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 1.0, "budget exceeded: {dt:?}");
    println!("PASS c05 interval family tiles [h+2, a4-1], h in [2,50] ({:.3}s)", dt.as_secs_f64());
}

/// All j-fold multiset sums of `a`, duplicates included. Test-local so
/// the recheck shares nothing with the library's enumeration.
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

/// Definition-level admissibility: no d copies of b plus an (h-d)-fold
/// sum may land on an h-fold sum of the ground set.
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

#[test]
fn c06_oracles_agree_on_randomized_instances() {
    let mut rng = StdRng::seed_from_u64(0xB4);
    let mut admissible_checks = 0u64;
    for instance in 0..200 {
        let h = rng.gen_range(1..=4u32);
        let extra = rng.gen_range(0..=4usize);
        let mut set = vec![0u64];
        while set.len() < extra + 1 {
            let v = rng.gen_range(1..=60u64);
            if !set.contains(&v) {
                set.push(v);
            }
        }
        set.sort_unstable();

        let table = build_support_table(&set, h).unwrap();
        let by_cardinality = verify_by_cardinality(&table).unwrap();
        let by_enumeration = is_bh_set_bruteforce(&set, h).unwrap();
        assert_eq!(
            by_cardinality, by_enumeration,
            "cardinality and enumeration disagree on {set:?} at h={h} (instance {instance})"
        );

        let max = *set.last().unwrap();
        for offset in [1u64, rng.gen_range(2..=20), rng.gen_range(21..=40)] {
            let b = max + offset;
            admissible_checks += 1;
            assert_eq!(
                admissible(&table, b).unwrap(),
                brute_admissible(&set, h, b),
                "admissibility oracles disagree on {set:?} + {b} at h={h} (instance {instance})"
            );
        }
    }
    println!("PASS c06 oracle agreement on 200 randomized instances ({admissible_checks} admissibility checks)");
}

#[test]
fn c07_terms_respect_the_geometric_bound() {
    for h in 1..=10u32 {
        let record = greedy_sequence(h, 6).unwrap();
        assert_eq!(record.terms[0], 0);
        for k in 1..=6u32 {
            let bound = upper_bound_sum(h, k).unwrap();
            assert!(
                record.terms[k as usize] <= bound,
                "term {k} exceeds the geometric bound at h={h}: {} > {bound}",
                record.terms[k as usize]
            );
        }
    }
    println!("PASS c07 a_k <= sum of h^i for i<k, h in [1,10], k in [1,6]");
}

#[test]
fn c08_cofactor_and_floor_forms_agree() {
    for h in 1..=1000u32 {
        let case = fourth_term(h).unwrap().value;
        let cof = a4_cofactor(h).unwrap().value;
        assert_eq!(case, (h as u64 + 1) * cof, "cofactor identity fails at h={h}");
        assert_eq!(case, a4_floor_form(h).unwrap(), "floor form diverges at h={h}");
    }
    println!("PASS c08 (h+1)-cofactor identity and floor form, h in [1,1000]");
}

#[test]
fn c09_bfile_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = [(1u32, 8u32), (2, 6), (3, 5), (4, 4), (5, 3), (8, 4), (12, 4)];
    for (h, k) in corpus {
        let record = greedy_sequence(h, k).unwrap();
        let path = dir.path().join(format!("b_{h}_{k}.txt"));
        write_bfile(&record, &path).unwrap();
        let bytes = std::fs::read_to_string(&path).unwrap();
        assert_eq!(bytes, emit_bfile(&record), "written bytes differ at h={h}, k={k}");
        let terms = terms_from_bfile(&read_bfile(&path).unwrap()).unwrap();
        assert_eq!(terms, record.terms, "terms changed in transit at h={h}, k={k}");
    }
    println!("PASS c09 b-file round trip bit-exact on {} sequences", corpus.len());
}

#[test]
fn c10_monotonicity_is_reported() {
    // Growth of the fourth term in h is observed data, not an asserted
    // theorem: collect it over the scanned range and report.
    let values: Vec<u64> = (1..=24u32)
        .map(|h| closed_form_term(h, 4).unwrap())
        .collect();
    assert_eq!(values.len(), 24, "scan did not cover the range");
    let violations: Vec<u32> = values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] >= w[1])
        .map(|(i, _)| i as u32 + 1)
        .collect();
    if violations.is_empty() {
        println!("PASS c10 fourth term observed strictly increasing over h in [1,24]");
    } else {
        println!("PASS c10 monotonicity scan ran; observed violations at h = {violations:?}");
    }
}
