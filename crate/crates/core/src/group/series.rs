//! p-local subgroup machinery: Omega_1, Sylow subgroups, O_p, O_p',
//! the upper p-series, elementary abelian subgroups and rank.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::quotient::Quotient;
use super::{is_power_of, log_p, p_part, Elem, Group, Subgroup};
use crate::error::{Error, Result};

const SOLVABILITY_DEPTH_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesStep {
    PPrime,
    P,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub step: SeriesStep,
    pub order: usize,
    pub subgroup: Subgroup,
}

/// The upper p-series `1 <= O_p' <= O_p',p <= ...` of a solvable group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PSeriesReport {
    pub prime: u64,
    pub series: Vec<SeriesTerm>,
    pub p_length: u32,
}

/// Cheap isomorphism-invariant summary used for labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub exponent: u64,
    pub abelianization_order: usize,
    pub center_order: usize,
    pub derived_length: Option<u32>,
}

impl Group {
    fn require_p_group(&self, s: &Subgroup, p: u64) -> Result<()> {
        if self.is_p_group(s, p) {
            Ok(())
        } else {
            Err(Error::NotAPGroup {
                p,
                order: s.order(),
            })
        }
    }

    /// Subgroup generated by the elements of order `p` of the p-group `s`.
    pub fn omega1(&self, s: &Subgroup, p: u64) -> Result<Subgroup> {
        self.require_p_group(s, p)?;
        let seeds: Vec<Elem> = s
            .elements()
            .iter()
            .copied()
            .filter(|&x| self.element_order(x) as u64 == p)
            .collect();
        Ok(self.subgroup_generated(&seeds))
    }

    /// Elements of `within` of order exactly `p`.
    pub fn elements_of_order(&self, within: &Subgroup, p: u64) -> Vec<Elem> {
        within
            .elements()
            .iter()
            .copied()
            .filter(|&x| self.element_order(x) as u64 == p)
            .collect()
    }

    pub fn is_p_element(&self, x: Elem, p: u64) -> bool {
        is_power_of(self.element_order(x) as u64, p)
    }

    /// A Sylow p-subgroup of `within`, grown one index-p step at a time
    /// inside normalizers, always taking the smallest admissible element id.
    pub fn sylow_subgroup_of(&self, within: &Subgroup, p: u64) -> Subgroup {
        let target = p_part(within.order() as u64, p) as usize;
        let mut h = self.trivial();
        while h.order() < target {
            let n = self.normalizer(within, &h);
            let y = n
                .elements()
                .iter()
                .copied()
                .find(|&y| !h.contains(y) && self.is_p_element(y, p) && h.contains(self.pow(y, p)))
                .expect("a p-subgroup below Sylow order has a larger p-subgroup in its normalizer");
            h = self.extend(&h, y);
        }
        h
    }

    pub fn sylow_subgroup(&self, p: u64) -> Subgroup {
        self.sylow_subgroup_of(&self.whole(), p)
    }

    /// All Sylow p-subgroups, sorted; empty when `p` does not divide the order.
    pub fn all_sylow_subgroups(&self, p: u64) -> Vec<Subgroup> {
        if !(self.order() as u64).is_multiple_of(p) {
            return Vec::new();
        }
        let mut class = self.conjugacy_class_of_subgroup(&self.whole(), &self.sylow_subgroup(p));
        class.sort();
        class
    }

    /// Conjugates of `x` under `within`, unsorted.
    pub fn conjugacy_class_of_subgroup(&self, within: &Subgroup, x: &Subgroup) -> Vec<Subgroup> {
        let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
        seen.insert(x.bits().clone());
        let mut out = vec![x.clone()];
        let mut i = 0;
        while i < out.len() {
            for &g in within.generators() {
                let c = self.conjugate(&out[i], g);
                if seen.insert(c.bits().clone()) {
                    out.push(c);
                }
            }
            i += 1;
        }
        out
    }

    /// Largest normal p-subgroup.
    pub fn o_p(&self, p: u64) -> Subgroup {
        let sylows = self.all_sylow_subgroups(p);
        let Some(first) = sylows.first() else {
            return self.trivial();
        };
        let mut bits = first.bits().clone();
        for s in &sylows[1..] {
            bits.intersect_with(s.bits());
        }
        self.subgroup_from_members(bits)
    }

    /// Largest normal p'-subgroup: generated by the conjugacy classes whose
    /// normal closure has order prime to `p`.
    pub fn o_p_prime(&self, p: u64) -> Subgroup {
        let whole = self.whole();
        let mut h = self.trivial();
        for class in self.conjugacy_classes(&whole) {
            let x = class[0];
            if h.contains(x) || (self.element_order(x) as u64).is_multiple_of(p) {
                continue;
            }
            let closure = self.normal_closure(&whole, &[x]);
            if !(closure.order() as u64).is_multiple_of(p) {
                // h is normal and p', and so is <h, closure>
                for &y in closure.generators() {
                    h = self.extend(&h, y);
                }
            }
        }
        h
    }

    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        for _ in 0..SOLVABILITY_DEPTH_CAP {
            let last = series.last().unwrap();
            let d = self.derived_subgroup(last);
            if d == *last {
                break;
            }
            let done = d.is_trivial();
            series.push(d);
            if done {
                break;
            }
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    pub fn derived_length(&self) -> Option<u32> {
        let s = self.derived_series();
        s.last().unwrap().is_trivial().then(|| s.len() as u32 - 1)
    }

    pub fn quotient(&self, kernel: &Subgroup) -> Quotient {
        Quotient::new(self, kernel)
    }

    /// Upper p-series and p-length of a solvable group.
    pub fn p_length(&self, p: u64) -> Result<PSeriesReport> {
        if !self.is_solvable() {
            return Err(Error::NotSolvable);
        }
        let mut series = Vec::new();
        let mut current = self.trivial();
        let mut step = SeriesStep::PPrime;
        let mut p_length = 0;
        loop {
            let q = self.quotient(&current);
            let top = match step {
                SeriesStep::PPrime => q.group.o_p_prime(p),
                SeriesStep::P => q.group.o_p(p),
            };
            let next = q.preimage(self, &top);
            if step == SeriesStep::P && next.order() > current.order() {
                p_length += 1;
            }
            if next == current && step == SeriesStep::P {
                // a solvable group with trivial O_p' quotient always has O_p > 1
                unreachable!("upper p-series stalled on a solvable group");
            }
            series.push(SeriesTerm {
                step,
                order: next.order(),
                subgroup: next.clone(),
            });
            current = next;
            if current.order() == self.order() {
                break;
            }
            step = match step {
                SeriesStep::PPrime => SeriesStep::P,
                SeriesStep::P => SeriesStep::PPrime,
            };
        }
        Ok(PSeriesReport {
            prime: p,
            series,
            p_length,
        })
    }

    /// Nontrivial elementary abelian p-subgroups of `within`, built rank by
    /// rank from commuting elements of order `p`; sorted by (order, members).
    pub fn elementary_abelian_subgroups(&self, within: &Subgroup, p: u64) -> Vec<Subgroup> {
        let pelts = self.elements_of_order(within, p);
        let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
        let mut layer = Vec::new();
        for &x in &pelts {
            let c = self.subgroup_generated(&[x]);
            if seen.insert(c.bits().clone()) {
                layer.push(c);
            }
        }
        let mut all = layer.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for a in &layer {
                for &y in &pelts {
                    if a.contains(y) || !a.generators().iter().all(|&g| self.commute(g, y)) {
                        continue;
                    }
                    let mut bits = FixedBitSet::with_capacity(self.order());
                    let mut yk = 0;
                    for _ in 0..p {
                        for &e in a.elements() {
                            bits.insert(self.mul(e, yk) as usize);
                        }
                        yk = self.mul(yk, y);
                    }
                    if seen.contains(&bits) {
                        continue;
                    }
                    seen.insert(bits.clone());
                    let mut gens = a.generators().to_vec();
                    gens.push(y);
                    next.push(Subgroup::from_parts(bits, gens));
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort();
        all
    }

    /// Largest r with an elementary abelian subgroup of order p^r in `s`.
    pub fn rank(&self, s: &Subgroup, p: u64) -> Result<u32> {
        self.require_p_group(s, p)?;
        Ok(self.p_rank(s, p))
    }

    /// p-rank of any subgroup (no p-group requirement).
    pub fn p_rank(&self, s: &Subgroup, p: u64) -> u32 {
        self.elementary_abelian_subgroups(s, p)
            .last()
            .map(|t| log_p(t.order() as u64, p))
            .unwrap_or(0)
    }

    /// Rank of an elementary abelian subgroup (or log_p of any p-group order).
    pub fn torus_rank(&self, s: &Subgroup, p: u64) -> u32 {
        log_p(s.order() as u64, p)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let whole = self.whole();
        Fingerprint {
            order: self.order(),
            exponent: self.exponent(&whole),
            abelianization_order: self.order() / self.derived_subgroup(&whole).order(),
            center_order: self.center(&whole).order(),
            derived_length: self.derived_length(),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::group::tests::perm_group;
    use crate::group::{Group, Perm, DEFAULT_MAX_ORDER};

    fn s4() -> Group {
        perm_group(4, &["(1,2,3,4)", "(1,2)"])
    }

    #[test]
    fn sylow_counts() {
        let s3 = perm_group(3, &["(1,2,3)", "(1,2)"]);
        let syl = s3.all_sylow_subgroups(2);
        assert_eq!(syl.len(), 3);
        assert!(syl.iter().all(|s| s.order() == 2));
        assert!(s3.all_sylow_subgroups(5).is_empty());
        assert!(s3.sylow_subgroup(5).is_trivial());

        let g = s4();
        let syl = g.all_sylow_subgroups(2);
        assert_eq!(syl.len(), 3);
        for s in &syl {
            assert_eq!(s.order(), 8);
            assert_eq!(g.derived_subgroup(s).order(), 2);
        }
    }

    #[test]
    fn o_p_and_o_p_prime() {
        let s3 = perm_group(3, &["(1,2,3)", "(1,2)"]);
        assert_eq!(s3.o_p(3).order(), 3);
        assert!(s3.o_p(2).is_trivial());
        assert_eq!(s3.o_p_prime(2).order(), 3);
        let g = s4();
        let v4 = g.o_p(2);
        assert_eq!(v4.order(), 4);
        assert!(g.is_elementary_abelian(&v4, 2));
        assert_eq!(g.o_p_prime(3).order(), 4);
        assert!(g.o_p_prime(2).is_trivial());
    }

    #[test]
    fn p_length_of_small_groups() {
        let g = s4();
        let r = g.p_length(2).unwrap();
        assert_eq!(r.p_length, 2);
        let orders: Vec<usize> = r.series.iter().map(|t| t.order).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(g.p_length(3).unwrap().p_length, 1);
        assert_eq!(g.p_length(5).unwrap().p_length, 0);
        let c4 = perm_group(4, &["(1,2,3,4)"]);
        assert_eq!(c4.p_length(2).unwrap().p_length, 1);
    }

    #[test]
    fn non_solvable_is_rejected() {
        let a5 = perm_group(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        assert_eq!(a5.order(), 60);
        assert!(!a5.is_solvable());
        assert!(matches!(a5.p_length(2), Err(crate::Error::NotSolvable)));
    }

    #[test]
    fn omega1_and_rank() {
        let c4 = perm_group(4, &["(1,2,3,4)"]);
        assert_eq!(c4.omega1(&c4.whole(), 2).unwrap().order(), 2);
        assert_eq!(c4.rank(&c4.whole(), 2).unwrap(), 1);
        let d8 = perm_group(4, &["(1,2,3,4)", "(1,3)"]);
        assert_eq!(d8.rank(&d8.whole(), 2).unwrap(), 2);
        let s3 = perm_group(3, &["(1,2,3)", "(1,2)"]);
        assert!(s3.omega1(&s3.whole(), 2).is_err());
        let e = perm_group(6, &["(1,2)", "(3,4)", "(5,6)"]);
        assert_eq!(e.rank(&e.whole(), 2).unwrap(), 3);
        assert_eq!(e.omega1(&e.whole(), 2).unwrap().order(), 8);
    }

    #[test]
    fn elementary_abelian_enumeration_of_v4() {
        let v4 = perm_group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let tori = v4.elementary_abelian_subgroups(&v4.whole(), 2);
        assert_eq!(tori.len(), 4);
        assert_eq!(tori[3].order(), 4);
    }

    #[test]
    fn quotient_by_normal_subgroup() {
        let g = s4();
        let v4 = g.o_p(2);
        let q = g.quotient(&v4);
        assert_eq!(q.group.order(), 6);
        assert!(!q.group.is_abelian(&q.group.whole()));
        for a in (0..24).step_by(5) {
            for b in 0..24 {
                assert_eq!(
                    q.project(g.mul(a, b)),
                    q.group.mul(q.project(a), q.project(b))
                );
            }
        }
        assert_eq!(q.preimage(&g, &q.group.trivial()), v4);
    }

    #[test]
    fn fingerprint_distinguishes_s4_and_sl23() {
        let g = s4();
        let f = g.fingerprint();
        assert_eq!(
            (f.order, f.center_order, f.abelianization_order),
            (24, 1, 2)
        );
        let gens = [Perm::parse(3, "(1,2)").unwrap()];
        let c2 = Group::from_generators(3, &gens, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(c2.fingerprint().derived_length, Some(1));
    }
}
