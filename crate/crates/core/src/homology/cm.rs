use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{
    profile_sphericity, reduced_homology, sphericity, HomologyProfile, SphericityVerdict, Witness,
};
use crate::complex::{FinitePoset, SimplicialComplex};

/// Link condition checked simplex by simplex: with `d = dim C`, the complex
/// must be homology-d-spherical and the link of every r-simplex
/// homology-(d-r-1)-spherical. The witness is the first failure in
/// (dimension, lexicographic) order.
pub fn is_cohen_macaulay(c: &SimplicialComplex) -> SphericityVerdict {
    let d = c.dim();
    let mut verdict = sphericity(c, d);
    if !verdict.homology_spherical {
        return verdict;
    }
    let simplices: Vec<Vec<u32>> = (0..=d.max(-1))
        .flat_map(|k| {
            c.simplices(k as usize)
                .map(<[u32]>::to_vec)
                .collect::<Vec<_>>()
        })
        .collect();
    let failure = simplices.par_iter().find_map_first(|s| {
        let expected = d - s.len() as i64;
        let link = c.link(s).expect("simplex taken from the complex");
        let v = sphericity(&link, expected);
        (!v.homology_spherical).then(|| Witness {
            simplex: s.clone(),
            degree: v.witness.map_or(expected, |w| w.degree),
            expected_degree: expected,
        })
    });
    verdict.cohen_macaulay = failure.is_none();
    verdict.witness = failure;
    verdict
}

/// Cohen-Macaulay check for an order complex that never builds a link. The
/// link of a chain `x_1 < ... < x_k` is the join of the order complexes of
/// `P_{<x_1}`, the open intervals `(x_i, x_{i+1})` and `P_{>x_k}`, so its
/// homology follows from cached interval homology by the join formula.
/// Witness simplices use node ids.
pub fn poset_cohen_macaulay(p: &FinitePoset) -> SphericityVerdict {
    let complex = p.order_complex();
    let d = complex.dim();
    let mut verdict = profile_sphericity(&reduced_homology(&complex), d);
    if !verdict.homology_spherical {
        return verdict;
    }
    let n = p.len();
    let lower: Vec<HomologyProfile> = (0..n)
        .into_par_iter()
        .map(|x| interval_homology(p, &p.below(x)))
        .collect();
    let upper: Vec<HomologyProfile> = (0..n)
        .into_par_iter()
        .map(|x| interval_homology(p, &p.above(x)))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| p.above(x).into_iter().map(move |y| (x, y)))
        .collect();
    let open: FxHashMap<(usize, usize), HomologyProfile> = pairs
        .par_iter()
        .map(|&(x, y)| ((x, y), interval_homology(p, &p.open_interval(x, y))))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    if intervals_spherical(p, d, &lower, &upper, &open) {
        verdict.cohen_macaulay = true;
        return verdict;
    }

    let rank: Vec<usize> = (0..n).map(|x| p.below(x).len()).collect();
    let simplices: Vec<&[u32]> = (0..=d.max(-1))
        .flat_map(|k| complex.simplices(k as usize))
        .collect();
    let failure = simplices.par_iter().find_map_first(|s| {
        let mut chain: Vec<usize> = s.iter().map(|&v| v as usize).collect();
        chain.sort_by_key(|&x| rank[x]);
        let mut h = lower[chain[0]].clone();
        for w in chain.windows(2) {
            h = h.join(&open[&(w[0], w[1])]);
        }
        h = h.join(&upper[*chain.last().unwrap()]);
        let expected = d - s.len() as i64;
        let v = profile_sphericity(&h, expected);
        (!v.homology_spherical).then(|| Witness {
            simplex: s.to_vec(),
            degree: v.witness.map_or(expected, |w| w.degree),
            expected_degree: expected,
        })
    });
    verdict.cohen_macaulay = failure.is_none();
    verdict.witness = failure;
    verdict
}

/// Every link is a join of intervals, and every interval is itself a link,
/// so a pure poset is Cohen-Macaulay exactly when each lower, upper and
/// open interval is spherical in the degree its length dictates. Returns
/// false when this cannot be confirmed; the caller then sweeps simplices
/// to locate a witness.
fn intervals_spherical(
    p: &FinitePoset,
    d: i64,
    lower: &[HomologyProfile],
    upper: &[HomologyProfile],
    open: &FxHashMap<(usize, usize), HomologyProfile>,
) -> bool {
    let mut height = vec![0i64; p.len()];
    for x in p.linear_extension() {
        height[x] = p.below(x).iter().map(|&y| height[y] + 1).max().unwrap_or(0);
    }
    let pure = p.covers().iter().all(|&(a, b)| height[b] == height[a] + 1)
        && p.maximal().iter().all(|&x| height[x] == d);
    if !pure {
        return false;
    }
    let ok = |h: &HomologyProfile, r: i64| profile_sphericity(h, r).homology_spherical;
    (0..p.len()).all(|x| ok(&lower[x], height[x] - 1) && ok(&upper[x], d - height[x] - 1))
        && open
            .iter()
            .all(|(&(x, y), h)| ok(h, height[y] - height[x] - 2))
}

fn interval_homology(p: &FinitePoset, nodes: &[usize]) -> HomologyProfile {
    reduced_homology(&p.induced(nodes).order_complex())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisor_poset(n: usize) -> FinitePoset {
        let d: Vec<usize> = (2..n).filter(|k| n.is_multiple_of(*k)).collect();
        FinitePoset::from_relation(d.len(), |a, b| d[a] != d[b] && d[b].is_multiple_of(d[a]))
    }

    #[test]
    fn examples() {
        assert!(is_cohen_macaulay(&SimplicialComplex::from_facets([[0]])).cohen_macaulay);
        let two_edges = SimplicialComplex::from_facets([[0, 1], [2, 3]]);
        let v = is_cohen_macaulay(&two_edges);
        assert!(!v.cohen_macaulay);
        assert_eq!(v.witness.unwrap().degree, 0);
        assert!(is_cohen_macaulay(&SimplicialComplex::empty()).cohen_macaulay);
    }

    #[test]
    fn non_pure_complex_fails_at_a_small_facet() {
        // a triangle with a whisker: contractible but not pure
        let c = SimplicialComplex::from_facets([vec![0, 1, 2], vec![2, 3]]);
        let v = is_cohen_macaulay(&c);
        assert!(v.homology_spherical);
        assert!(!v.cohen_macaulay);
        assert_eq!(v.witness.unwrap().simplex, vec![2]);
    }

    #[test]
    fn poset_route_agrees_with_link_sweep() {
        // proper part of divisor lattices: boolean ones are CM spheres,
        // 12 and 72 are CM, a non-graded relation is not.
        for n in [30, 210, 12, 72, 60, 36] {
            let p = divisor_poset(n);
            let direct = is_cohen_macaulay(&p.order_complex());
            let fast = poset_cohen_macaulay(&p);
            assert_eq!(direct.cohen_macaulay, fast.cohen_macaulay, "n = {n}");
            assert_eq!(direct.homology_spherical, fast.homology_spherical);
            assert!(direct.cohen_macaulay, "n = {n}");
        }
        // divisibility minus 4 < 12: the maximal chain 2 < 4 is too short
        let d = [2usize, 3, 4, 6, 12];
        let odd = FinitePoset::from_relation(5, |a, b| {
            let (x, y) = (d[a], d[b]);
            x != y && y % x == 0 && !(x == 4 && y == 12)
        });
        let direct = is_cohen_macaulay(&odd.order_complex());
        let fast = poset_cohen_macaulay(&odd);
        assert!(!direct.cohen_macaulay);
        assert_eq!(direct.cohen_macaulay, fast.cohen_macaulay);
        assert_eq!(direct.homology_spherical, fast.homology_spherical);
    }

    fn closure(n: usize, bits: &[bool]) -> FinitePoset {
        let mut lt = vec![vec![false; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                lt[i][j] = bits[k];
                k += 1;
            }
        }
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if lt[i][m] && lt[m][j] {
                        lt[i][j] = true;
                    }
                }
            }
        }
        FinitePoset::from_relation(n, |a, b| lt[a][b])
    }

    proptest::proptest! {
        #[test]
        fn routes_agree_on_random_posets(n in 1usize..8, bits in proptest::collection::vec(proptest::bool::weighted(0.4), 28)) {
            let p = closure(n, &bits);
            let direct = is_cohen_macaulay(&p.order_complex());
            let fast = poset_cohen_macaulay(&p);
            proptest::prop_assert_eq!(direct.cohen_macaulay, fast.cohen_macaulay);
            proptest::prop_assert_eq!(direct.homology_spherical, fast.homology_spherical);
            proptest::prop_assert_eq!(direct.witness.is_some(), fast.witness.is_some());
        }
    }
}
