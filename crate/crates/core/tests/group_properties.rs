use proptest::prelude::*;

use quillen_core::group::{prime_factors, Group, Perm};
use quillen_core::homology::reduced_homology;
use quillen_core::poset::{brown_poset, quillen_poset};

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

/// Random subgroups of S_n for n <= 5, given by one to three generators.
fn group_strategy() -> impl Strategy<Value = Group> {
    (2usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(perm_strategy(n), 1..=3)
            .prop_map(move |gens| Group::from_generators(n, &gens, 4096).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_matches_permutations(g in group_strategy(), picks in proptest::collection::vec(any::<u32>(), 6)) {
        let n = g.order() as u32;
        for w in picks.windows(2) {
            let (a, b) = (w[0] % n, w[1] % n);
            prop_assert_eq!(g.perm(g.mul(a, b)), g.perm(a).then(&g.perm(b)));
            prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn subgroups_are_closed_and_divide_the_order(g in group_strategy(), seeds in proptest::collection::vec(any::<u32>(), 1..3)) {
        let n = g.order() as u32;
        let seeds: Vec<u32> = seeds.into_iter().map(|s| s % n).collect();
        let h = g.subgroup_generated(&seeds);
        prop_assert_eq!(g.order() % h.order(), 0);
        for &a in h.elements() {
            for &b in h.elements() {
                prop_assert!(h.contains(g.mul(a, g.inv(b))));
            }
        }
        prop_assert!(seeds.iter().all(|&s| h.contains(s)));
    }

    #[test]
    fn sylow_counts(g in group_strategy()) {
        for p in prime_factors(g.order() as u64) {
            let sylows = g.all_sylow_subgroups(p);
            let order = sylows[0].order();
            prop_assert_eq!(g.order() % order, 0);
            prop_assert_ne!((g.order() / order) as u64 % p, 0);
            prop_assert_eq!(sylows.len() as u64 % p, 1);
            prop_assert_eq!((g.order() / order) % sylows.len(), 0);
        }
    }

    #[test]
    fn brown_and_quillen_have_equal_homology(g in group_strategy()) {
        for p in prime_factors(g.order() as u64) {
            if g.is_p_group(&g.whole(), p) {
                continue;
            }
            let a = reduced_homology(&quillen_poset(&g, p).order_complex());
            let s = reduced_homology(&brown_poset(&g, p, false).order_complex());
            prop_assert!(a.same_homology(&s), "p = {}: {:?} vs {:?}", p, a, s);
        }
    }

    #[test]
    fn normal_p_subgroup_forces_acyclicity(g in group_strategy()) {
        for p in prime_factors(g.order() as u64) {
            if !g.o_p(p).is_trivial() {
                prop_assert!(reduced_homology(&quillen_poset(&g, p).order_complex()).is_acyclic());
            }
        }
    }

    #[test]
    fn quillen_nodes_are_elementary_abelian_and_closed_under_conjugation(g in group_strategy()) {
        for p in prime_factors(g.order() as u64) {
            let a = quillen_poset(&g, p);
            for x in a.nodes() {
                prop_assert!(g.is_elementary_abelian(x, p) && !x.is_trivial());
                for &t in g.generators() {
                    prop_assert!(a.index_of(&g.conjugate(x, t)).is_ok());
                }
            }
        }
    }
}
