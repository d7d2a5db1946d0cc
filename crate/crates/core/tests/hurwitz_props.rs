mod common;

use common::census_tuples;
use pellab::census::canonical_form;
use pellab::hurwitz::{
    normalize_special, power_test, primitivity_profile, validate, standard_tuple, BranchingBudget,
    HurwitzError, HurwitzTuple,
};
use pellab::perm::{is_ell_imprimitive, Perm};
use proptest::prelude::*;

#[test]
fn standard_family_validates_with_exact_budget() {
    for n in 2..=10 {
        for d in 2..=4.min(n) {
            let t = standard_tuple(n, d).unwrap();
            let report = validate(&t);
            assert!(report.passed, "n = {n}, d = {d}: {:?}", report.failures());
            assert_eq!(
                report.budget,
                BranchingBudget {
                    zero: n,
                    one: n - d,
                    infinity: 2 * n - 1,
                    taus: d - 1,
                    total: 4 * n - 2
                }
            );
            assert!(t.is_special());
            assert_eq!(t.common_fixed_points().last(), Some(&(2 * n)));
        }
    }
}

#[test]
fn standard_rejects_bad_degrees() {
    assert!(matches!(
        standard_tuple(3, 1),
        Err(HurwitzError::DegreeTooSmall { .. })
    ));
    assert!(matches!(
        standard_tuple(2, 3),
        Err(HurwitzError::DegreeOrder { .. })
    ));
}

#[test]
fn validation_flags_broken_tuples() {
    let t = standard_tuple(4, 2).unwrap();
    // swap in the wrong σ1: the product fails and so does the fixed-point count
    let bad = HurwitzTuple::new(
        t.sigma0().clone(),
        t.sigma_inf().clone(),
        Perm::identity(8),
        t.taus().to_vec(),
        2,
    )
    .unwrap();
    let failures = validate(&bad).failures();
    assert!(failures.contains(&pellab::hurwitz::Check::ProductIdentity));
    assert!(failures.contains(&pellab::hurwitz::Check::FixedPointCount));
}

#[test]
fn power_test_admissibility() {
    let t = standard_tuple(6, 2).unwrap();
    assert!(power_test(&t, 1).unwrap());
    for m in [0, 4, 5, 6] {
        assert!(
            matches!(power_test(&t, m), Err(HurwitzError::NotAdmissible { .. })),
            "m = {m}"
        );
    }
    let moved = t.conjugate(&Perm::transposition(12, 1, 12));
    assert!(matches!(
        power_test(&moved, 2),
        Err(HurwitzError::NotSpecialForm)
    ));
}

#[test]
fn power_test_matches_block_search_on_standard() {
    for n in 2..=10 {
        for d in 2..=3.min(n) {
            let t = standard_tuple(n, d).unwrap();
            for m in pellab::pell::admissible_powers(n, d) {
                assert_eq!(
                    power_test(&t, m).unwrap(),
                    is_ell_imprimitive(&t.gens(), 2 * m).unwrap().is_some(),
                    "n = {n}, d = {d}, m = {m}"
                );
            }
        }
    }
}

fn relabel_strategy() -> impl Strategy<Value = (HurwitzTuple, Perm)> {
    (2usize..=6).prop_flat_map(|n| {
        let tuples = census_tuples(n);
        (
            prop::sample::select(tuples),
            Just((1..=2 * n).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(|(t, images)| (t, Perm::from_images(&images).unwrap()))
    })
}

fn standard_relabel() -> impl Strategy<Value = (HurwitzTuple, Perm)> {
    (2usize..=9)
        .prop_flat_map(|n| (2..=n.min(4)).prop_map(move |d| standard_tuple(n, d).unwrap()))
        .prop_flat_map(|t| {
            let size = 2 * t.n();
            (Just(t), Just((1..=size).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(t, images)| (t, Perm::from_images(&images).unwrap()))
}

proptest! {
    #[test]
    fn normalization_recovers_the_class((t, g) in relabel_strategy()) {
        let moved = t.conjugate(&g);
        prop_assert!(validate(&moved).passed);
        let back = normalize_special(&moved).unwrap();
        prop_assert!(back.is_special());
        prop_assert_eq!(canonical_form(&back), canonical_form(&t));
        prop_assert_eq!(primitivity_profile(&back).unwrap(), primitivity_profile(&t).unwrap());
    }

    #[test]
    fn json_round_trip((t, g) in relabel_strategy()) {
        let moved = t.conjugate(&g);
        prop_assert_eq!(HurwitzTuple::from_json(&moved.to_json()).unwrap(), moved);
    }

    #[test]
    fn conjugation_keeps_validation((t, g) in standard_relabel()) {
        let moved = t.conjugate(&g);
        prop_assert_eq!(validate(&moved).budget, validate(&t).budget);
        prop_assert!(validate(&moved).passed);
    }
}
