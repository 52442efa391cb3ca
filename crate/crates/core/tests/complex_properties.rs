use proptest::prelude::*;

use quillen_core::complex::SimplicialComplex;
use quillen_core::homology::{reduced_homology, HomologyProfile};

/// Random complexes on at most 7 vertices, from up to 8 facets.
fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    proptest::collection::vec(proptest::collection::btree_set(0u32..7, 1..=4), 1..=8).prop_map(
        |facets| {
            SimplicialComplex::from_facets(
                facets
                    .into_iter()
                    .map(|f| f.into_iter().collect::<Vec<_>>()),
            )
        },
    )
}

fn cone(c: &SimplicialComplex) -> SimplicialComplex {
    c.join(&SimplicialComplex::from_facets([vec![0]]))
}

fn suspension(c: &SimplicialComplex) -> SimplicialComplex {
    c.join(&SimplicialComplex::from_facets([vec![0], vec![1]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(c in complex_strategy()) {
        let back = SimplicialComplex::from_text(&c.to_text()).unwrap();
        prop_assert_eq!(back.f_vector(), c.f_vector());
        prop_assert_eq!(back.facets(), c.facets());
    }

    #[test]
    fn euler_characteristic_from_faces(c in complex_strategy()) {
        let h = reduced_homology(&c);
        let faces: i64 = -1 + c.f_vector().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum::<i64>();
        prop_assert_eq!(h.euler_characteristic(), faces);
    }

    #[test]
    fn cones_are_acyclic(c in complex_strategy()) {
        prop_assert!(reduced_homology(&cone(&c)).is_acyclic());
    }

    #[test]
    fn suspension_shifts_degrees(c in complex_strategy()) {
        let h = reduced_homology(&c);
        let s = reduced_homology(&suspension(&c));
        for q in -1..=c.dim() {
            prop_assert_eq!(s.betti(q + 1), h.betti(q));
            prop_assert_eq!(s.torsion(q + 1), h.torsion(q));
        }
        prop_assert_eq!(s.betti(-1), 0);
    }

    #[test]
    fn join_formula_matches_direct_computation(a in complex_strategy(), b in complex_strategy()) {
        // keep the join small enough to compute directly
        prop_assume!(a.count(0) + b.count(0) <= 9);
        let direct = reduced_homology(&a.join(&b));
        let formula = reduced_homology(&a).join(&reduced_homology(&b));
        prop_assert!(direct.same_homology(&formula), "{:?} vs {:?}", direct, formula);
    }

    #[test]
    fn links_live_inside_the_complex(c in complex_strategy()) {
        for v in c.vertices() {
            let l = c.link(&[v]).unwrap();
            for s in l.all_simplices() {
                let mut t = s.to_vec();
                t.push(v);
                t.sort();
                prop_assert!(c.contains(&t));
                prop_assert!(!s.contains(&v));
            }
        }
    }
}

#[test]
fn empty_complex_and_point() {
    assert_eq!(
        reduced_homology(&SimplicialComplex::empty()),
        HomologyProfile::empty_complex()
    );
    assert!(reduced_homology(&SimplicialComplex::from_facets([vec![3]])).is_acyclic());
}
