//! Cross-module agreement between independent computations.

use permlab::perm::{count_avoiders, first_letter_distribution, pair, PatternPair};
use permlab::recurrence::{th1_rows, JointPair};
use permlab::schroeder::{inversion_seq_distribution, schroeder_number, triangle};
use permlab::series::{build_closed_form, first_letter_series, verify_cleared};

/// One representative of each symmetry class with Schröder many avoiders.
fn class_representatives() -> Vec<PatternPair> {
    [
        "1234,1243",
        "1243,1324",
        "1243,1342",
        "1243,1423",
        "1324,1342",
        "1324,1423",
        "1342,1423",
        "1342,1432",
        "1423,1432",
        "2413,3142",
        "2314,3124",
        "2431,4231",
        "3124,4123",
    ]
    .into_iter()
    .map(pair)
    .collect()
}

#[test]
fn class_sizes_are_schroeder_numbers() {
    for p in class_representatives() {
        for n in 1..=10 {
            let got = u64::try_from(schroeder_number(n)).unwrap();
            assert_eq!(count_avoiders(n, &p).unwrap(), got, "{p} n={n}");
        }
    }
}

#[test]
fn symmetric_pairs_have_equal_class_sizes() {
    for p in class_representatives() {
        for q in [p.reversed(), p.complemented(), p.reversed().complemented()] {
            assert_eq!(count_avoiders(8, &p).unwrap(), count_avoiders(8, &q).unwrap(), "{p} vs {q}");
        }
    }
}

#[test]
fn inversion_sequences_brute_force() {
    let t = triangle(8);
    for n in 1..=8 {
        assert_eq!(inversion_seq_distribution(n).unwrap(), t.row_u64(n));
    }
}

#[test]
fn th1_rows_are_the_triangle() {
    let t = triangle(15);
    for (n, row) in th1_rows(15).iter().enumerate().skip(1) {
        assert_eq!(row, &t.row_u64(n));
    }
}

#[test]
fn corollaries_against_brute_force() {
    for jp in [JointPair::P1243_1423, JointPair::P1243_1342, JointPair::P1243_1324] {
        let p = jp.pattern_pair();
        let rows: Vec<Vec<u64>> =
            (0..=8).map(|n| if n == 0 { Vec::new() } else { first_letter_distribution(n, &p).unwrap() }).collect();
        let target = first_letter_series(&rows, 8);
        let [a, b] = p.patterns();
        let cf = build_closed_form(&format!("corollary_{a}_{b}")).unwrap();
        assert!(verify_cleared(&target, &cf, 8).unwrap().passed(), "{p}");

        let mut wrong = rows.clone();
        wrong[6][2] += 1;
        let r = verify_cleared(&first_letter_series(&wrong, 8), &cf, 8).unwrap();
        let off = r.offence.expect("perturbation is detected");
        assert_eq!(off.x_degree, 6);
    }
}

#[test]
fn conjecture_statement_with_last_letters() {
    // The original formulation: last letter k on the reversed pairs.
    let t = triangle(8);
    for p in [
        "4321,3421",
        "3241,2341",
        "2431,2341",
        "4231,3241",
        "4231,2431",
        "4231,3421",
        "2431,3241",
        "3421,2431",
        "3421,3241",
    ] {
        let rev = pair(p).reversed();
        assert_eq!(first_letter_distribution(8, &rev).unwrap(), t.row_u64(8), "{p}");
    }
}
