use permstat::distribution::{adj_recurrence, brute_force, compute, des_recurrence, val_recurrence, Method, Poly};
use permstat::stats::{adj, exc, val, StatId};
use permstat::transforms::{foata, foata_inverse, insert_i, label_adjacency_slots, label_value_slots, matches_transitions};
use permstat::{Permutation, SetSpec};
use proptest::prelude::*;

fn perm(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(v).unwrap())
}

fn spec() -> impl Strategy<Value = SetSpec> {
    prop_oneof![
        Just(SetSpec::All),
        Just(SetSpec::Even),
        Just(SetSpec::Odd),
        (2u32..=5).prop_flat_map(|m| (0..m, Just(m))).prop_map(|(o, m)| SetSpec::residue(o, m).unwrap()),
        prop::collection::btree_set(1u32..=10, 0..7).prop_map(|s| SetSpec::explicit(s).unwrap()),
    ]
}

/// Two sets that share nothing on `1..=10`.
fn disjoint_pair() -> impl Strategy<Value = (SetSpec, SetSpec)> {
    prop::collection::vec(0u8..3, 10).prop_map(|tags| {
        let pick = |t| SetSpec::explicit((1..=10u32).filter(|&m| tags[m as usize - 1] == t)).unwrap();
        (pick(1), pick(2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reverse_and_inverse_are_involutions(s in perm(8)) {
        prop_assert_eq!(s.reverse().reverse(), s.clone());
        prop_assert_eq!(s.inverse().inverse(), s.clone());
        prop_assert!(s.compose(&s.inverse()).is_identity());
    }

    #[test]
    fn reverse_swaps_adjacency_sets(s in perm(8), x in spec(), y in spec()) {
        prop_assert_eq!(adj(&s, &x, &y), adj(&s.reverse(), &y, &x));
    }

    #[test]
    fn inverse_swaps_value_sets(s in perm(8), x in spec(), y in spec()) {
        prop_assert_eq!(val(&s, &x, &y), val(&s.inverse(), &y, &x));
    }

    #[test]
    fn foata_round_trip_and_transport(s in perm(8), x in spec(), y in spec()) {
        let t = foata(&s);
        prop_assert_eq!(foata_inverse(&t), s.clone());
        prop_assert_eq!(StatId::Des(x.clone(), y.clone()).eval(&t), exc(&s, &y, &x));
    }

    #[test]
    fn insertion_is_injective_in_locus(s in perm(7)) {
        let images: std::collections::BTreeSet<Permutation> =
            (1..=s.len() + 1).map(|i| insert_i(&s, i).unwrap()).collect();
        prop_assert_eq!(images.len(), s.len() + 1);
        prop_assert!(insert_i(&s, 0).is_err());
        prop_assert!(insert_i(&s, s.len() + 2).is_err());
    }

    #[test]
    fn slot_classes_follow_the_recurrence(s in perm(7), (x, y) in disjoint_pair()) {
        let n = s.len();
        let a = label_adjacency_slots(&s, &x, &y).unwrap();
        prop_assert!(a.is_valid());
        prop_assert!(matches_transitions(&a, true, &x, &y, n, adj(&s, &x, &y)));
        let v = label_value_slots(&s, &x, &y).unwrap();
        prop_assert!(v.is_valid());
        prop_assert!(matches_transitions(&v, false, &x, &y, n, val(&s, &x, &y)));
    }

    #[test]
    fn recurrence_rows_sum_to_factorial(x in spec(), y in spec(), n in 0usize..=12) {
        prop_assert!(des_recurrence(&x, &y, n).sums_to_factorial());
        prop_assert!(adj_recurrence(&x, &y, n).sums_to_factorial());
        prop_assert!(val_recurrence(&x, &y, n).sums_to_factorial());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engines_agree_on_random_specs(x in spec(), y in spec(), n in 0usize..=7) {
        for poly in [Poly::D, Poly::A, Poly::V, Poly::E] {
            let brute = brute_force(&poly.stat(&x, &y), n, 11).unwrap();
            prop_assert!(brute.sums_to_factorial());
            for m in [Method::Recurrence, Method::ClosedForm, Method::ClosedFormAlt] {
                if let Ok(d) = compute(poly, &x, &y, n, m, 11) {
                    prop_assert!(d.same_counts(&brute), "{} {} {} {} n={}", poly, m, x, y, n);
                }
            }
        }
    }

    #[test]
    fn swapping_sets_preserves_a_and_v(x in spec(), y in spec(), n in 0usize..=7) {
        let a = brute_force(&StatId::Adj(x.clone(), y.clone()), n, 11).unwrap();
        prop_assert!(a.same_counts(&brute_force(&StatId::Adj(y.clone(), x.clone()), n, 11).unwrap()));
        let v = brute_force(&StatId::Val(x.clone(), y.clone()), n, 11).unwrap();
        prop_assert!(v.same_counts(&brute_force(&StatId::Val(y, x), n, 11).unwrap()));
    }
}
