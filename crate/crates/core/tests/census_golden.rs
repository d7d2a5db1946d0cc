mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use common::euler_phi;
use pellab::census::{
    brute_force_enumerate, census, closed_formulas, enumerate_shapes, BruteForce, CensusOptions,
    ShapeCase,
};
use pellab::hurwitz::HurwitzTuple;
use serde_json::Value;

/// (n, disjoint, three-cycle, four-cycle, C1), counted by hand from the
/// shape parameters.
const TABLE: [(usize, usize, usize, usize, usize); 7] = [
    (2, 1, 0, 0, 0),
    (3, 1, 1, 0, 0),
    (4, 2, 3, 1, 1),
    (5, 2, 6, 2, 4),
    (6, 3, 10, 6, 10),
    (7, 3, 15, 10, 20),
    (8, 4, 21, 19, 35),
];

fn fixture(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/v1")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Orbits under conjugation by powers of the long cycle, restricted to
/// special members. Counted without the library's canonical forms.
fn orbit_sizes(tuples: &[HurwitzTuple]) -> Vec<(ShapeCase, usize)> {
    let all: BTreeSet<HurwitzTuple> = tuples.iter().cloned().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in tuples {
        if seen.contains(t) {
            continue;
        }
        let c = t.sigma_inf().clone();
        let mut orbit = BTreeSet::new();
        for k in 0..2 * t.n() {
            let u = t.conjugate(&c.pow(k as i64));
            if u.is_special() {
                assert!(all.contains(&u), "orbit leaves the enumerated set");
                orbit.insert(u);
            }
        }
        out.push((ShapeCase::of_tuple(t).unwrap(), orbit.len()));
        seen.extend(orbit);
    }
    out
}

#[test]
fn class_counts_match_hand_table() {
    for (n, disjoint, three, four, c1) in TABLE {
        let tuples = brute_force_enumerate(n, 8).unwrap().tuples;
        let orbits = orbit_sizes(&tuples);
        let count = |case| orbits.iter().filter(|(c, _)| *c == case).count();
        assert_eq!(
            [
                count(ShapeCase::Disjoint),
                count(ShapeCase::ThreeCycle),
                count(ShapeCase::FourCycle)
            ],
            [disjoint, three, four],
            "n = {n}"
        );
        let closed = closed_formulas(n);
        assert_eq!(
            [
                closed.disjoint,
                closed.three_cycle,
                closed.four_cycle,
                closed.c1
            ],
            [disjoint, three, four, c1]
        );
        assert!(closed.four_cycle_exact);

        let report = census(
            n,
            &CensusOptions {
                brute_force: BruteForce::Always,
                brute_max: 8,
            },
        )
        .unwrap();
        assert!(
            report.discrepancies.is_empty(),
            "n = {n}: {:?}",
            report.discrepancies
        );
        for case in ShapeCase::ALL {
            let mut sizes: Vec<usize> = orbits
                .iter()
                .filter(|(c, _)| *c == case)
                .map(|(_, s)| *s)
                .collect();
            sizes.sort_unstable();
            assert_eq!(report.case(case).class_sizes, sizes, "n = {n}, {case:?}");
        }
    }
}

#[test]
fn involution_scan_size() {
    // (2n - 1)!!
    for (n, expected) in [(2, 3), (3, 15), (4, 105), (5, 945), (6, 10395)] {
        assert_eq!(brute_force_enumerate(n, 8).unwrap().involutions, expected);
    }
}

#[test]
fn shapes_equal_brute_force_sets() {
    for n in 2..=7 {
        let mut shapes: Vec<HurwitzTuple> =
            enumerate_shapes(n).into_iter().map(|(_, t)| t).collect();
        shapes.sort();
        assert_eq!(
            shapes,
            brute_force_enumerate(n, 8).unwrap().tuples,
            "n = {n}"
        );
    }
}

#[test]
fn four_cycle_class_sizes() {
    let r6 = census(6, &CensusOptions::default()).unwrap();
    assert_eq!(
        r6.case(ShapeCase::FourCycle).class_sizes,
        vec![2, 2, 4, 4, 4, 4]
    );
    let r8 = census(8, &CensusOptions::default()).unwrap();
    let twos = r8
        .case(ShapeCase::FourCycle)
        .class_sizes
        .iter()
        .filter(|&&s| s == 2)
        .count();
    assert_eq!(twos, 3);
}

#[test]
fn primitive_disjoint_count() {
    for n in 3..=10 {
        let report = census(
            n,
            &CensusOptions {
                brute_force: BruteForce::Never,
                brute_max: 8,
            },
        )
        .unwrap();
        assert_eq!(report.primitive_disjoint.count, euler_phi(n) / 2, "n = {n}");
        assert_eq!(report.primitive_disjoint.expected, euler_phi(n) / 2);
    }
}

#[test]
fn reports_match_fixtures() {
    for n in [3, 6, 8] {
        let want = fixture(&format!("census_n{n}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_pellab"))
            .args(["--json", "census", "--n", &n.to_string(), "--brute-force"])
            .output()
            .unwrap();
        assert!(out.status.success());
        let got: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(got, want, "n = {n}");

        // the library report is the payload without the envelope
        let report = census(
            n,
            &CensusOptions {
                brute_force: BruteForce::Always,
                brute_max: 8,
            },
        )
        .unwrap();
        let mut lib = serde_json::to_value(report).unwrap();
        for key in ["schema", "command", "status"] {
            lib[key] = want[key].clone();
        }
        assert_eq!(lib, want);
    }
}
