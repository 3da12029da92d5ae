mod oracle;

use gpdkit::fixtures::{groupoid, small_groupoids};
use gpdkit::model::Predicate;
use gpdkit::nerve::{
    classification_level, components, double_nerve_w, homology, nerve, FiniteCategory, Marking, DEFAULT_BUDGET,
};
use gpdkit::sample::{enumerate_sample, FiniteSampleCategory};
use proptest::prelude::*;

const POOL: &[&str] = &["B1", "BZ2", "BZ3", "codiscrete2", "discrete2", "BZ2+B1"];

fn sample(names: &[&str]) -> FiniteSampleCategory {
    enumerate_sample(&names.iter().map(|n| (n.to_string(), groupoid(n).unwrap())).collect::<Vec<_>>()).unwrap()
}

fn subset() -> impl Strategy<Value = Vec<&'static str>> {
    proptest::sample::subsequence(POOL, 1..=2)
}

#[test]
fn groupoid_nerves_match_row_reduction() {
    for g in small_groupoids(2, 6) {
        let x = nerve(&FiniteCategory::from_groupoid(&g), 3).unwrap();
        assert!(oracle::agrees_with_row_reduction(&x, &homology(&x)), "{:?}", g.objects());
    }
}

#[test]
fn first_homology_of_a_group_is_its_abelianization() {
    // order of G/[G,G] from the character count
    for name in ["BZ4", "BS3", "BQ8", "BD4", "BA4"] {
        let g = groupoid(name).unwrap();
        let group = g.vertex_group(0).as_group(&g);
        let linear = oracle::irreducible_degrees(&group).iter().filter(|&&d| d == 1).count() as u64;
        let h = homology(&nerve(&FiniteCategory::from_groupoid(&g), 2).unwrap());
        assert_eq!(h.groups[1].rank, 0, "{name}");
        assert_eq!(h.groups[1].torsion.iter().product::<u64>(), linear, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn marked_nerves_are_simplicial(names in subset()) {
        let s = sample(&names);
        for marking in [Marking::All, Marking::Weak, Marking::Cofibrations, Marking::AcyclicCofibrations] {
            let x = nerve(&FiniteCategory::marked(&s, marking).unwrap(), 3).unwrap();
            prop_assert_eq!(x.identity_violation(), None);
            let h = homology(&x);
            prop_assert_eq!(h.groups[0].rank, components(&x).1);
            prop_assert!(oracle::agrees_with_row_reduction(&x, &h));
        }
    }

    #[test]
    fn double_nerve_identities(names in subset()) {
        let s = sample(&names);
        let w = double_nerve_w(&s, Predicate::All, 2).unwrap();
        let x = w.bisimplicial(DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(x.identity_violation(), None);
        prop_assert!(w.row_zero_is_good_weak_nerve(DEFAULT_BUDGET).unwrap());
        prop_assert!(w.column_zero_is_acyclic_cofibration_nerve(DEFAULT_BUDGET).unwrap());
        let diagonal = w.diagonal(DEFAULT_BUDGET).unwrap();
        prop_assert!(diagonal.set.same_as(&x.diagonal().unwrap()));
        let checks = diagonal.checks();
        let lazy = w.retraction_check();
        prop_assert!(checks.restriction_retracts_good_weak && checks.restriction_extends_inclusion);
        prop_assert_eq!(lazy.retracts_good_weak, checks.restriction_retracts_good_weak);
        prop_assert_eq!(lazy.extends_inclusion, checks.restriction_extends_inclusion);
    }

    #[test]
    fn functor_level_of_the_classification_diagram(names in subset()) {
        let s = sample(&names);
        let level = classification_level(&s, 1, 2, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(level.chains.object_count(), s.morphism_count());
        let cofibrations = s.morphisms().iter().filter(|m| m.is_cofibration).count();
        prop_assert_eq!(level.cofibration_chains.object_count(), cofibrations);
        prop_assert!(level.comparison.is_injective());
        prop_assert_eq!(level.nerve.identity_violation(), None);
    }
}
