use proptest::prelude::*;

use glint_core::orbit::{contribution, half_dim};
use glint_core::partition::partitions;
use glint_core::weyl::{
    coset_key, is_admissible, is_admissible_finite_field, AdmissibilityContext, Permutation,
};
use glint_core::{ClassicalFamily, ClassicalType, OrbitLabel, Partition};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=7, 0..8).prop_map(Partition::from_parts)
}

/// Three partitions of a common size.
fn same_size_triple() -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (1u32..=12).prop_flat_map(|n| {
        let all = partitions(n);
        let k = all.len();
        (0..k, 0..k, 0..k)
            .prop_map(move |(a, b, c)| (all[a].clone(), all[b].clone(), all[c].clone()))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).expect("shuffle of 1..n"))
}

fn context() -> impl Strategy<Value = AdmissibilityContext> {
    (1usize..=4)
        .prop_flat_map(|p| (Just(p), p..2 * p))
        .prop_map(|(p, r)| AdmissibilityContext::new(p, r).expect("p <= r < 2p"))
}

/// Block permutation of `S_r x S_{n-r}` in one-line notation.
fn levi_element(n: usize, r: usize) -> impl Strategy<Value = Permutation> {
    (
        Just((1..=r).collect::<Vec<_>>()).prop_shuffle(),
        Just((r + 1..=n).collect::<Vec<_>>()).prop_shuffle(),
    )
        .prop_map(|(mut a, b)| {
            a.extend(b);
            Permutation::new(a).expect("block permutation")
        })
}

proptest! {
    #[test]
    fn dominance_is_a_partial_order((a, b, c) in same_size_triple()) {
        prop_assert!(a.dominates(&a).unwrap());
        if a.dominates(&b).unwrap() && b.dominates(&a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if a.dominates(&b).unwrap() && b.dominates(&c).unwrap() {
            prop_assert!(a.dominates(&c).unwrap());
        }
    }

    #[test]
    fn transpose_is_an_antitone_involution((a, b, _) in same_size_triple()) {
        prop_assert_eq!(a.transpose().transpose(), a.clone());
        prop_assert_eq!(a.transpose().size(), a.size());
        if a.dominates(&b).unwrap() {
            prop_assert!(b.transpose().dominates(&a.transpose()).unwrap());
        }
    }

    #[test]
    fn sum_transposes_to_union(a in partition(), b in partition()) {
        let mut union: Vec<u32> = a.transpose().parts().to_vec();
        union.extend(b.transpose().parts());
        prop_assert_eq!(a.add(&b).transpose(), Partition::from_parts(union));
        prop_assert_eq!(a.double(), a.add(&a));
    }

    #[test]
    fn display_round_trips(a in partition()) {
        let back: Partition = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn classical_orbit_dims_are_even(a in partition()) {
        for ty in [ClassicalType::GL, ClassicalType::GSp, ClassicalType::GSO] {
            let Ok(family) = ClassicalFamily::new(ty, a.size().max(1)) else { continue };
            if a.size() == 0 || !family.is_valid(&a) {
                continue;
            }
            let d = family.orbit_dim(&a).unwrap();
            prop_assert_eq!(d % 2, 0, "{:?} {}", ty, a);
        }
    }

    #[test]
    fn larger_orbits_have_larger_dims((a, b, _) in same_size_triple()) {
        let gl = ClassicalFamily::gl(a.size());
        if a.strictly_dominates(&b).unwrap() {
            let (oa, ob) = (
                OrbitLabel::classical(gl, a.clone()).unwrap(),
                OrbitLabel::classical(gl, b.clone()).unwrap(),
            );
            prop_assert!(half_dim(&oa).unwrap() > half_dim(&ob).unwrap());
            prop_assert_eq!(
                contribution(&ob, &oa).unwrap(),
                half_dim(&oa).unwrap() - half_dim(&ob).unwrap()
            );
        }
    }

    #[test]
    fn permutation_group_laws(
        (a, b) in (1usize..=7).prop_flat_map(|n| (permutation(n), permutation(n)))
    ) {
        let n = a.size();
        prop_assert_eq!(a.compose(&a.inverse()), Permutation::identity(n));
        prop_assert_eq!(a.compose(&b).inverse(), b.inverse().compose(&a.inverse()));
        prop_assert_eq!(a.inverse().length(), a.length());
        prop_assert!(a.compose(&b).length() <= a.length() + b.length());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), a);
    }

    #[test]
    fn admissibility_is_constant_on_levi_cosets(
        (ctx, w, m) in context().prop_flat_map(|c| (Just(c), permutation(c.n()), levi_element(c.n(), c.r)))
    ) {
        let mw = m.compose(&w);
        prop_assert_eq!(coset_key(&ctx, &mw), coset_key(&ctx, &w));
        prop_assert_eq!(is_admissible(&ctx, &mw, &[]).unwrap(), is_admissible(&ctx, &w, &[]).unwrap());
    }

    #[test]
    fn torus_part_only_removes_admissibility(
        (ctx, w, z) in context().prop_flat_map(|c| (
            Just(c),
            permutation(c.n()),
            prop::collection::vec(-3i64..=3, c.p),
        ))
    ) {
        if !is_admissible(&ctx, &w, &[]).unwrap() {
            prop_assert!(!is_admissible(&ctx, &w, &z).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linear_test_agrees_with_group_test_over_f3(
        (ctx, w, z) in (1usize..=2)
            .prop_flat_map(|p| (Just(p), p..2 * p))
            .prop_map(|(p, r)| AdmissibilityContext::new(p, r).unwrap())
            .prop_flat_map(|c| (Just(c), permutation(c.n()), prop::collection::vec(0i64..3, c.p)))
    ) {
        let linear = glint_core::weyl::is_admissible_mod(&ctx, &w, &z, Some(3)).unwrap();
        prop_assert_eq!(is_admissible_finite_field(&ctx, &w, &z, 3).unwrap(), linear);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn solver_rows_solve_the_equation(m in 2u32..=3, lo in 1u32..=4, span in 0u32..=2) {
        let opts = glint_core::solver::ClassifyOptions::with_params(lo..=lo + span);
        for row in glint_core::solver::classify(m, &opts).unwrap() {
            prop_assert_eq!(row.contributions.iter().sum::<u64>(), u64::from(m * m - 1));
            prop_assert_eq!(row.total, u64::from(m * m - 1));
            prop_assert!(row.contributions.iter().all(|&c| c > 0));
            prop_assert_eq!(row.contributions.len(), row.l());
        }
    }
}
