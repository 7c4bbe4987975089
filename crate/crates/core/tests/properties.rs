mod common;

use clonoid::closure::{subalgebra_close_worklist, GeneratedClonoid, GeneratorFamily};
use clonoid::constructions::{boolean, dualize, dualize_algebra};
use clonoid::terms::{is_majority, is_malcev, is_near_unanimity, NuWitness};
use clonoid::{
    bp_member, classify_boolean, clonoid_slice, cube_term_blocker, subalgebra_close, Algebra,
    Budget, FiniteFunction, FunctionSet, Signature, Verdict,
};
use proptest::prelude::*;
use rand::Rng;

fn random_gens(seed: u64, c: usize, a: usize, k: usize, count: usize) -> FunctionSet {
    let mut rng = common::rng(seed);
    let sig = Signature::new(a, c, k).unwrap();
    FunctionSet::new(
        sig,
        (0..count).map(|_| common::random_function(&mut rng, a, c, k)),
    )
    .unwrap()
}

fn median3() -> Algebra {
    Algebra::from_tables(3, &[("m", 3, "000011012011111112012112222")]).unwrap()
}

fn random_boolean_algebra(seed: u64) -> Algebra {
    let mut rng = common::rng(seed);
    common::random_algebra(&mut rng, 2, 2, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn majority_shortcut_agrees_with_worklist(seed in any::<u64>(), k in 1usize..=3, count in 1usize..=4) {
        let gens = random_gens(seed, 2, 2, k, count);
        let b = boolean::majority();
        let budget = Budget::default();
        prop_assert_eq!(subalgebra_close(&gens, &b, budget).unwrap(), subalgebra_close_worklist(&gens, &b, budget).unwrap());
    }

    #[test]
    fn majority_shortcut_agrees_on_three_elements(seed in any::<u64>(), k in 1usize..=2, count in 1usize..=3) {
        let gens = random_gens(seed, 3, 2, k, count);
        let b = median3();
        let budget = Budget::default();
        prop_assert_eq!(subalgebra_close(&gens, &b, budget).unwrap(), subalgebra_close_worklist(&gens, &b, budget).unwrap());
    }

    #[test]
    fn affine_shortcut_agrees_with_worklist(seed in any::<u64>(), k in 1usize..=3, count in 1usize..=3, which in 0usize..3) {
        let gens = random_gens(seed, 2, 2, k, count);
        let b = [boolean::minority(), boolean::affine_with_constants(), Algebra::from_tables(2, &[("p", 2, "0110"), ("n", 1, "10")]).unwrap()][which].clone();
        let budget = Budget::default();
        prop_assert_eq!(subalgebra_close(&gens, &b, budget).unwrap(), subalgebra_close_worklist(&gens, &b, budget).unwrap());
    }

    #[test]
    fn baker_pixley_membership_agrees(seed in any::<u64>(), gens in 1usize..=2) {
        let mut rng = common::rng(seed);
        let fs: Vec<FiniteFunction> = (0..gens)
            .map(|_| { let k = rng.gen_range(1..=3); common::random_function(&mut rng, 2, 2, k) })
            .collect();
        let mut c = GeneratedClonoid::new(GeneratorFamily::new(2, 2, fs).unwrap(), boolean::majority(), Budget::default()).unwrap();
        let slice4 = c.slice(4).unwrap().clone();
        for arity in 1..=4 {
            let f = common::random_function(&mut rng, 2, 2, arity);
            prop_assert_eq!(c.contains(&f).unwrap(), bp_member(&f, &slice4, 3).unwrap());
        }
        for f in slice4.iter().take(20) {
            prop_assert!(bp_member(f, &slice4, 3).unwrap());
        }
    }

    #[test]
    fn duality_preserves_classification(seed in any::<u64>()) {
        let b = random_boolean_algebra(seed);
        let d = dualize_algebra(&b).unwrap();
        let budget = Budget::default();
        let (rb, rd) = (classify_boolean(&b, 4, budget).unwrap(), classify_boolean(&d, 4, budget).unwrap());
        prop_assert_eq!(rb.verdict, rd.verdict);
        prop_assert_eq!(cube_term_blocker(&b).is_some(), cube_term_blocker(&d).is_some());
        prop_assert_eq!(dualize_algebra(&d).unwrap(), b);
    }

    #[test]
    fn duality_commutes_with_slices(seed in any::<u64>(), which in 0usize..4) {
        let b = [boolean::meet(), boolean::negation_with_zero(), boolean::non_implication(), boolean::majority()][which].clone();
        let mut rng = common::rng(seed);
        let fs: Vec<FiniteFunction> = (0..2).map(|_| { let k = rng.gen_range(1..=2); common::random_function(&mut rng, 2, 2, k) }).collect();
        let dual_fs: Vec<FiniteFunction> = fs.iter().map(|f| dualize(f).unwrap()).collect();
        let budget = Budget::default();
        for n in 1..=3 {
            let s = clonoid_slice(&GeneratorFamily::new(2, 2, fs.clone()).unwrap(), &b, n, budget).unwrap();
            let d = clonoid_slice(&GeneratorFamily::new(2, 2, dual_fs.clone()).unwrap(), &dualize_algebra(&b).unwrap(), n, budget).unwrap();
            let mapped = FunctionSet::new(s.signature(), s.iter().map(|f| dualize(f).unwrap())).unwrap();
            prop_assert_eq!(mapped, d);
        }
    }

    #[test]
    fn classifier_is_total_and_witnesses_hold(seed in any::<u64>()) {
        let b = random_boolean_algebra(seed);
        let r = classify_boolean(&b, 4, Budget::default()).unwrap();
        if let Some(m) = &r.witness_majority { prop_assert!(is_majority(m)); }
        if let Some(m) = &r.witness_malcev { prop_assert!(is_malcev(m)); }
        match r.verdict {
            Verdict::Finite => match &r.witness_nu {
                Some(NuWitness::Found(f)) => prop_assert!(is_near_unanimity(f)),
                Some(NuWitness::BeyondCap(cap)) => prop_assert_eq!(*cap, 4),
                None => prop_assert!(false, "finite verdict without an NU witness"),
            },
            Verdict::CountablyInfinite => prop_assert!(r.witness_malcev.is_some() && r.witness_majority.is_none()),
            Verdict::Continuum => {
                prop_assert!(r.witness_majority.is_none() && r.witness_malcev.is_none());
                prop_assert!(r.containing_maximal_clone.is_some());
            }
        }
        if let Some(agrees) = r.idempotent_cross_check {
            prop_assert!(agrees, "blocker/continuum mismatch for idempotent {:?}", b);
        }
    }

    #[test]
    fn random_artifacts_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let a = common::random_artifact(&mut rng, 12, 2);
        let written = clonoid::text::format_artifact(&a);
        prop_assert_eq!(clonoid::text::parse_artifact(&written).unwrap(), a);
    }
}

#[test]
fn minor_functoriality_small() {
    assert!(common::minor_functoriality(2, 3, 1).unwrap() > 0);
}

#[test]
fn pointwise_commutation_small() {
    assert!(common::pointwise_commutation(2, 3, 2).unwrap() > 0);
}

#[test]
fn pol_minor_closure_small() {
    assert!(common::pol_minor_closure(2, 2, 20, 3).unwrap() > 0);
}

#[test]
fn closure_laws_small() {
    assert!(common::closure_laws(2, 2, 4).unwrap() > 0);
}

#[test]
fn round_trip_small() {
    assert!(common::round_trip(2, 2, 100, 5).unwrap() > 0);
}
