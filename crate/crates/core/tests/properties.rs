use std::sync::Arc;

use proptest::prelude::*;

use burnside::units::sign_span;
use burnside::{
    all_subgroups, brute_force_units, conjecture_check, unit_group, BurnsideElement, Decomposition,
    MarksTable, PermGroup, Permutation, SignVector, SubgroupClassList,
};

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

/// Groups generated by one to three random permutations of degree at most 5.
fn small_group() -> impl Strategy<Value = Arc<PermGroup>> {
    (2usize..=5)
        .prop_flat_map(|d| prop::collection::vec(permutation(d), 1..=3))
        .prop_map(|gens| Arc::new(PermGroup::new(gens).unwrap()))
}

fn marks_of(g: &Arc<PermGroup>) -> MarksTable {
    MarksTable::new(Arc::new(SubgroupClassList::new(g))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_sizes_add_up(g in small_group()) {
        let classes = SubgroupClassList::new(&g);
        prop_assert_eq!(classes.subgroup_count(), all_subgroups(&g).len());
        for (i, h) in classes.reps().iter().enumerate() {
            prop_assert_eq!(classes.class_sizes()[i] * classes.normalizer(i).order(), g.order());
            prop_assert_eq!(g.order() % h.order(), 0);
        }
    }

    #[test]
    fn units_agree_with_oracle(g in small_group()) {
        let marks = marks_of(&g);
        let result = unit_group(&marks, None).unwrap();
        prop_assert!(result.rank <= marks.len());
        prop_assert!(result.contains(&SignVector::minus_ones(marks.len())));
        prop_assert_eq!(brute_force_units(&marks, 24).unwrap(), result.elements());
        prop_assert!(conjecture_check(&result).holds);
    }

    #[test]
    fn seeds_do_not_change_the_span(g in small_group(), seed in any::<u64>()) {
        let marks = marks_of(&g);
        let plain = unit_group(&marks, None).unwrap();
        let seeded = unit_group(&marks, Some(seed)).unwrap();
        prop_assert_eq!(plain.span(), seeded.span());
        prop_assert_eq!(sign_span(marks.len(), &seeded.basis), plain.span());
    }

    #[test]
    fn marks_round_trip(g in small_group(), values in prop::collection::vec(-50i64..50, 64)) {
        let marks = marks_of(&g);
        let b = BurnsideElement::from_i64(&values[..marks.len()]);
        prop_assert_eq!(marks.decompose(&marks.marks_of(&b)), Decomposition::Integral(b));
    }

    #[test]
    fn non_units_fail_membership(g in small_group(), bits in any::<u64>()) {
        let marks = marks_of(&g);
        let r = marks.len();
        let u = SignVector::from_bits(r, |i| bits >> (i % 64) & 1 == 1);
        let result = unit_group(&marks, None).unwrap();
        prop_assert_eq!(marks.is_unit(&u), result.contains(&u));
    }
}

#[test]
fn lattice_json_survives_a_round_trip() {
    for g in [
        burnside::families::symmetric(4).unwrap(),
        burnside::families::dihedral(12).unwrap(),
        burnside::families::semidirect_inversion(&[3, 5]).unwrap(),
    ] {
        let classes = SubgroupClassList::new(&Arc::new(g));
        let text = classes.to_json().unwrap();
        let back = SubgroupClassList::from_json(&text, 1000).unwrap();
        assert_eq!(back.to_json().unwrap(), text);
        assert_eq!(back.class_sizes(), classes.class_sizes());
    }
}

#[test]
fn two_groups_have_rank_at_least_frattini_quotient() {
    // for 2-groups, the elementary abelian quotient alone gives 2^n units
    for (g, quotient_rank) in [
        (burnside::families::dihedral(8).unwrap(), 2u32),
        (burnside::families::dihedral(16).unwrap(), 2),
        (burnside::families::cyclic(8).unwrap(), 1),
        (burnside::families::elementary_abelian(3).unwrap(), 3),
    ] {
        let marks = marks_of(&Arc::new(g));
        let rank = unit_group(&marks, None).unwrap().rank;
        assert!(rank >= 1 << quotient_rank, "rank {rank}");
    }
}
