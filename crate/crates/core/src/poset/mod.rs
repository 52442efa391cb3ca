//! Inclusion posets of subgroups: the Quillen poset A_p(G), the Brown poset
//! S_p(G), intervals in them, and the poset of abelian subgroups.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::complex::{FinitePoset, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};

/// A family of subgroups of one group ordered by inclusion. Nodes are kept
/// in subgroup order (by size, then members), so chains list their nodes
/// in increasing index order.
#[derive(Clone)]
pub struct SubgroupPoset<'g> {
    group: &'g Group,
    nodes: Vec<Subgroup>,
    order: FinitePoset,
}

impl std::fmt::Debug for SubgroupPoset<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubgroupPoset({} nodes in a group of order {})",
            self.nodes.len(),
            self.group.order()
        )
    }
}

/// Short description of a node for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeSummary {
    pub index: usize,
    pub order: usize,
    pub generators: Vec<Elem>,
}

impl<'g> SubgroupPoset<'g> {
    pub fn from_nodes(group: &'g Group, mut nodes: Vec<Subgroup>) -> Self {
        nodes.sort();
        nodes.dedup();
        let order = FinitePoset::from_relation(nodes.len(), |a, b| {
            let (x, y) = (&nodes[a], &nodes[b]);
            x.order() < y.order()
                && y.order() % x.order() == 0
                && x.generators().iter().all(|&g| y.contains(g))
        });
        SubgroupPoset {
            group,
            nodes,
            order,
        }
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Subgroup {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn relation(&self) -> &FinitePoset {
        &self.order
    }

    pub fn index_of(&self, s: &Subgroup) -> Result<usize> {
        self.nodes
            .binary_search(s)
            .map_err(|_| Error::NodeNotInPoset)
    }

    /// Hasse diagram edges `(a, b)` with `b` covering `a`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.order.covers()
    }

    pub fn summaries(&self) -> Vec<NodeSummary> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(index, s)| NodeSummary {
                index,
                order: s.order(),
                generators: s.generators().to_vec(),
            })
            .collect()
    }

    fn restrict(&self, keep: Vec<usize>) -> SubgroupPoset<'g> {
        SubgroupPoset {
            group: self.group,
            order: self.order.induced(&keep),
            nodes: keep.into_iter().map(|i| self.nodes[i].clone()).collect(),
        }
    }

    /// `P_{>x}`.
    pub fn upper_interval(&self, x: &Subgroup) -> Result<SubgroupPoset<'g>> {
        let i = self.index_of(x)?;
        Ok(self.restrict(self.order.above(i)))
    }

    /// `P_{<x}`.
    pub fn lower_interval(&self, x: &Subgroup) -> Result<SubgroupPoset<'g>> {
        let i = self.index_of(x)?;
        Ok(self.restrict(self.order.below(i)))
    }

    /// `(r, s)`: nodes strictly between `r` and `s`.
    pub fn open_interval(&self, r: &Subgroup, s: &Subgroup) -> Result<SubgroupPoset<'g>> {
        let (i, j) = (self.index_of(r)?, self.index_of(s)?);
        Ok(self.restrict(self.order.open_interval(i, j)))
    }

    /// Nodes satisfying `keep`, as an induced subposet.
    pub fn filter(&self, keep: impl Fn(&Subgroup) -> bool) -> SubgroupPoset<'g> {
        self.restrict((0..self.len()).filter(|&i| keep(&self.nodes[i])).collect())
    }

    /// A node with a least upper bound in the poset against every node; the
    /// smallest such index is returned.
    pub fn find_conjunctive_element(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|x| self.order.join_of(a, x).is_some()))
    }

    /// Vertices are node indices.
    pub fn order_complex(&self) -> SimplicialComplex {
        self.order.order_complex()
    }
}

/// A_p(G): nontrivial elementary abelian p-subgroups.
pub fn quillen_poset(g: &Group, p: u64) -> SubgroupPoset<'_> {
    quillen_poset_of(g, &g.whole(), p)
}

/// A_p(H) for a subgroup `H`, with nodes living in `g`.
pub fn quillen_poset_of<'g>(g: &'g Group, within: &Subgroup, p: u64) -> SubgroupPoset<'g> {
    if !(within.order() as u64).is_multiple_of(p) {
        return SubgroupPoset::from_nodes(g, Vec::new());
    }
    SubgroupPoset::from_nodes(g, g.elementary_abelian_subgroups(within, p))
}

/// S_p(G): nontrivial p-subgroups, proper in G. When G is itself a p-group
/// the whole group is dropped unless `include_whole` is set.
pub fn brown_poset(g: &Group, p: u64, include_whole: bool) -> SubgroupPoset<'_> {
    let mut nodes = Vec::new();
    if (g.order() as u64).is_multiple_of(p) {
        let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
        for s in g.all_sylow_subgroups(p) {
            for h in p_subgroups(g, &s, p) {
                if !h.is_trivial() && seen.insert(h.bits().clone()) {
                    nodes.push(h);
                }
            }
        }
    }
    if !include_whole {
        nodes.retain(|h| h.order() < g.order());
    }
    SubgroupPoset::from_nodes(g, nodes)
}

/// All subgroups of the p-group `s`, including 1 and `s`. Every subgroup of
/// order p^(k+1) is `<H, y>` for some H of order p^k normalized by `y` with
/// `y^p` in H.
pub fn p_subgroups(g: &Group, s: &Subgroup, p: u64) -> Vec<Subgroup> {
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    let mut layer = vec![g.trivial()];
    seen.insert(g.trivial().bits().clone());
    let mut all = layer.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for h in &layer {
            let n = g.normalizer(s, h);
            let mut covered = FixedBitSet::with_capacity(g.order());
            for &y in n.elements() {
                if h.contains(y) || covered.contains(y as usize) || !h.contains(g.pow(y, p)) {
                    continue;
                }
                let k = g.extend(h, y);
                covered.union_with(k.bits());
                if seen.insert(k.bits().clone()) {
                    next.push(k);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort();
    all
}

/// Ab(D): all abelian subgroups of `d`, the trivial one included.
pub fn ab_poset<'g>(g: &'g Group, d: &Subgroup) -> SubgroupPoset<'g> {
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    let mut layer = vec![g.trivial()];
    seen.insert(g.trivial().bits().clone());
    let mut all = layer.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for h in &layer {
            let c = g.centralizer(d, h);
            for &y in c.elements() {
                if h.contains(y) {
                    continue;
                }
                let k = g.extend(h, y);
                if seen.insert(k.bits().clone()) {
                    next.push(k);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    SubgroupPoset::from_nodes(g, all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, catalog};
    use crate::group::{Perm, DEFAULT_MAX_ORDER as CAP};
    use crate::homology::reduced_homology;

    fn named(name: &str) -> Group {
        build(&catalog(name).unwrap(), CAP).unwrap()
    }

    /// Every subset of the group closed under multiplication, by brute force.
    fn all_subgroups_brute(g: &Group) -> Vec<FixedBitSet> {
        let mut found: FxHashSet<FixedBitSet> = FxHashSet::default();
        for a in g.elements() {
            for b in g.elements() {
                found.insert(g.subgroup_generated(&[a, b]).bits().clone());
            }
        }
        // two generators suffice for the groups of order 8 and 16 used here
        found.into_iter().collect()
    }

    #[test]
    fn quillen_poset_examples() {
        let s3 = named("S3");
        let a = quillen_poset(&s3, 2);
        assert_eq!(a.len(), 3);
        assert!(a.covers().is_empty());
        assert_eq!(quillen_poset(&named("Q8"), 2).len(), 1);
        let v4 = named("V4");
        let a = quillen_poset(&v4, 2);
        assert_eq!(a.len(), 4);
        assert_eq!(a.covers().len(), 3);
        assert_eq!(a.order_complex().f_vector(), vec![4, 3]);
        assert!(quillen_poset(&s3, 5).is_empty());
    }

    #[test]
    fn brown_poset_examples() {
        let s3 = named("S3");
        assert_eq!(brown_poset(&s3, 2, false).len(), 3);
        assert!(brown_poset(&s3, 5, false).is_empty());
        let s4 = named("S4");
        let b = brown_poset(&s4, 2, false);
        let mut by_order = std::collections::BTreeMap::new();
        for h in b.nodes() {
            *by_order.entry(h.order()).or_insert(0) += 1;
        }
        // 9 involutions; 4 Klein fours (one normal) plus 3 cyclic of order 4; 3 Sylows
        assert_eq!(by_order, [(2, 9), (4, 7), (8, 3)].into_iter().collect());
        // a p-group drops itself unless asked
        let v4 = named("V4");
        assert_eq!(brown_poset(&v4, 2, false).len(), 3);
        assert_eq!(brown_poset(&v4, 2, true).len(), 4);
    }

    #[test]
    fn proper_wording_breaks_brown_quillen_for_p_groups() {
        // with G excluded, S_2(V4) is three points while A_2(V4) is a cone
        let v4 = named("V4");
        let s = reduced_homology(&brown_poset(&v4, 2, false).order_complex());
        let a = reduced_homology(&quillen_poset(&v4, 2).order_complex());
        assert!(a.is_acyclic());
        assert_eq!(s.betti(0), 2);
        let s_full = reduced_homology(&brown_poset(&v4, 2, true).order_complex());
        assert!(s_full.same_homology(&a));
    }

    #[test]
    fn p_subgroups_match_brute_force() {
        for name in ["D8", "Q8", "SD16", "D16"] {
            let g = named(name);
            let ours: FxHashSet<FixedBitSet> = p_subgroups(&g, &g.whole(), 2)
                .iter()
                .map(|h| h.bits().clone())
                .collect();
            let brute: FxHashSet<FixedBitSet> = all_subgroups_brute(&g).into_iter().collect();
            assert_eq!(ours, brute, "{name}");
        }
        assert_eq!(p_subgroups(&named("D8"), &named("D8").whole(), 2).len(), 10);
    }

    #[test]
    fn intervals() {
        let v4 = named("V4");
        let a = quillen_poset(&v4, 2);
        let c2 = a.node(0).clone();
        let top = a.node(3).clone();
        assert_eq!(a.upper_interval(&c2).unwrap().len(), 1);
        assert!(a.upper_interval(&top).unwrap().is_empty());
        assert_eq!(a.lower_interval(&top).unwrap().len(), 3);
        assert!(a.open_interval(&c2, &top).unwrap().is_empty());
        let s3 = named("S3");
        assert!(matches!(
            a.upper_interval(&s3.whole()),
            Err(Error::NodeNotInPoset)
        ));

        let dd = named("D8∘D8");
        let p = quillen_poset(&dd, 2);
        let z = dd.center(&dd.whole());
        let up = p.upper_interval(&z).unwrap();
        assert!(up.nodes().iter().all(|t| z.is_proper_subgroup_of(t)));
        let brute = p
            .nodes()
            .iter()
            .filter(|t| z.is_proper_subgroup_of(t))
            .count();
        assert_eq!(up.len(), brute);
    }

    #[test]
    fn abelian_subgroup_posets() {
        // upper intervals over the center, checked against a brute-force count
        for (name, expect) in [("D8", 3), ("Q8", 3)] {
            let g = named(name);
            let z = g.center(&g.whole());
            let ab = ab_poset(&g, &g.whole());
            let up = ab.upper_interval(&z).unwrap();
            let brute = all_subgroups_brute(&g)
                .into_iter()
                .map(|b| g.subgroup_from_members(b))
                .filter(|h| g.is_abelian(h) && z.is_proper_subgroup_of(h))
                .count();
            assert_eq!(up.len(), brute, "{name}");
            assert_eq!(up.len(), expect, "{name}");
            assert!(up.nodes().iter().all(|h| h.order() == 4));
        }
        let v4 = named("V4");
        assert_eq!(ab_poset(&v4, &v4.whole()).len(), 5);
    }

    #[test]
    fn conjunctive_elements() {
        let v4 = named("V4");
        assert_eq!(quillen_poset(&v4, 2).find_conjunctive_element(), Some(0));
        assert_eq!(
            quillen_poset(&named("S3"), 2).find_conjunctive_element(),
            None
        );
        // X not containing Omega_1(Z(P)): X Omega_1(Z(P)) is conjunctive above X
        let d8 = named("D8");
        let z = d8.center(&d8.whole());
        let a = quillen_poset(&d8, 2);
        let x = a
            .nodes()
            .iter()
            .find(|h| h.order() == 2 && **h != z)
            .unwrap()
            .clone();
        let up = a.upper_interval(&x).unwrap();
        let xz = d8.product(&x, &z);
        let c = up.find_conjunctive_element().unwrap();
        assert_eq!(up.node(c), &xz);
        assert!(reduced_homology(&up.order_complex()).is_acyclic());
    }

    #[test]
    fn node_count_is_conjugation_invariant() {
        let g = named("S4");
        let t = Perm::parse(4, "(1,3,2,4)").unwrap();
        let conj: Vec<Perm> = g
            .generators()
            .iter()
            .map(|&x| t.inverse().then(&g.perm(x)).then(&t))
            .collect();
        let h = Group::from_generators(4, &conj, CAP).unwrap();
        for p in [2, 3] {
            let (a, b) = (quillen_poset(&g, p), quillen_poset(&h, p));
            assert_eq!(a.len(), b.len());
            assert_eq!(a.covers().len(), b.covers().len());
        }
    }

    #[test]
    fn vertex_links_are_joins_of_intervals() {
        for (name, p) in [("S4", 2), ("D8∘D8", 2), ("SL(2,3)", 2)] {
            let g = named(name);
            let a = quillen_poset(&g, p);
            let c = a.order_complex();
            for i in 0..a.len() {
                let (lo, hi) = (a.relation().below(i), a.relation().above(i));
                let lower = a
                    .lower_interval(a.node(i))
                    .unwrap()
                    .order_complex()
                    .relabel(|v| lo[v as usize] as u32);
                let upper = a
                    .upper_interval(a.node(i))
                    .unwrap()
                    .order_complex()
                    .relabel(|v| hi[v as usize] as u32);
                let mut expected: Vec<Vec<u32>> = Vec::new();
                for s in lower.all_simplices() {
                    for t in upper.all_simplices() {
                        let mut u: Vec<u32> = s.iter().chain(t).copied().collect();
                        u.sort();
                        expected.push(u);
                    }
                }
                expected.sort();
                let link = c.link(&[i as u32]).unwrap();
                let mut got: Vec<Vec<u32>> = link.all_simplices().map(|s| s.to_vec()).collect();
                got.sort();
                assert_eq!(got, expected, "{name} node {i}");
            }
        }
    }
}
