//! Finite permutation groups held as fully enumerated element tables.
//!
//! Every element gets a canonical integer id: ids follow the lexicographic
//! order of image tuples, so the identity is always id 0 and two builds of
//! the same group agree bit-for-bit. Products are computed on a base (a
//! point set whose images determine an element) and looked up by those
//! images, which keeps arithmetic cheap for the degrees used here.

mod perm;
mod quotient;
mod series;
mod subgroup;

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use rustc_hash::{FxHashMap, FxHashSet};

pub use perm::Perm;
pub use quotient::Quotient;
pub use series::{Fingerprint, PSeriesReport, SeriesStep, SeriesTerm};
pub use subgroup::Subgroup;

use crate::error::{Error, Result};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Element id inside a [`Group`].
pub type Elem = u32;

#[derive(Clone)]
pub struct Group {
    degree: usize,
    order: usize,
    perms: Vec<u32>,
    generators: Vec<Elem>,
    base: Vec<u32>,
    lookup: FxHashMap<Box<[u32]>, Elem>,
    inverses: Vec<Elem>,
    orders: Vec<u32>,
    representation: String,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("representation", &self.representation)
            .finish()
    }
}

impl Group {
    /// Enumerates the group generated by `gens` acting on `degree` points.
    pub fn from_generators(degree: usize, gens: &[Perm], cap: usize) -> Result<Group> {
        Self::from_generators_labeled(degree, gens, cap, "natural")
    }

    pub fn from_generators_labeled(
        degree: usize,
        gens: &[Perm],
        cap: usize,
        representation: &str,
    ) -> Result<Group> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "{g} acts on {} points, expected {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut seen: FxHashSet<Box<[u32]>> = FxHashSet::default();
        seen.insert(id.images().into());
        let mut all: Vec<Box<[u32]>> = vec![id.images().into()];
        let mut i = 0;
        while i < all.len() {
            for g in gens {
                let img: Box<[u32]> = all[i].iter().map(|&x| g.apply(x)).collect();
                if !seen.contains(&img) {
                    if all.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    seen.insert(img.clone());
                    all.push(img);
                }
            }
            i += 1;
        }
        drop(seen);
        all.sort_unstable();
        let order = all.len();
        let mut perms = Vec::with_capacity(order * degree);
        for p in &all {
            perms.extend_from_slice(p);
        }
        let base = choose_base(&all, degree);
        let mut lookup = FxHashMap::default();
        lookup.reserve(order);
        for (idx, p) in all.iter().enumerate() {
            let key: Box<[u32]> = base.iter().map(|&b| p[b as usize]).collect();
            lookup.insert(key, idx as Elem);
        }
        let mut group = Group {
            degree,
            order,
            perms,
            generators: Vec::new(),
            base,
            lookup,
            inverses: Vec::new(),
            orders: Vec::new(),
            representation: representation.to_string(),
        };
        group.generators = gens
            .iter()
            .map(|g| group.id_of(g).expect("generator lies in its own closure"))
            .filter(|&g| g != 0)
            .collect();
        group.generators.sort_unstable();
        group.generators.dedup();
        group.inverses = (0..order as Elem)
            .map(|x| {
                let key: Vec<u32> = group
                    .base
                    .iter()
                    .map(|&b| {
                        // the preimage of b under x
                        let row = group.row(x);
                        row.iter().position(|&y| y == b).unwrap() as u32
                    })
                    .collect();
                group.lookup[key.as_slice()]
            })
            .collect();
        group.orders = (0..order as Elem)
            .map(|x| {
                let mut k = 1;
                let mut y = x;
                while y != 0 {
                    y = group.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Label of the permutation representation the builder chose
    /// (`natural`, `regular`, `coset`, `affine`, `product`, ...).
    pub fn representation(&self) -> &str {
        &self.representation
    }

    pub(crate) fn set_representation(&mut self, label: &str) {
        self.representation = label.to_string();
    }

    pub fn identity(&self) -> Elem {
        0
    }

    fn row(&self, x: Elem) -> &[u32] {
        let s = x as usize * self.degree;
        &self.perms[s..s + self.degree]
    }

    pub fn perm(&self, x: Elem) -> Perm {
        Perm::from_images(self.row(x).to_vec()).expect("stored rows are permutations")
    }

    /// Image of point `pt` under element `x`.
    pub fn apply(&self, x: Elem, pt: u32) -> u32 {
        self.perms[x as usize * self.degree + pt as usize]
    }

    pub fn id_of(&self, p: &Perm) -> Option<Elem> {
        if p.degree() != self.degree {
            return None;
        }
        let key: Vec<u32> = self.base.iter().map(|&b| p.apply(b)).collect();
        let id = *self.lookup.get(key.as_slice())?;
        (self.row(id) == p.images()).then_some(id)
    }

    /// Product `a * b` (apply `a` first).
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let ra = self.row(a);
        let rb = self.row(b);
        let mut buf = [0u32; 16];
        if self.base.len() <= buf.len() {
            for (slot, &pt) in buf.iter_mut().zip(&self.base) {
                *slot = rb[ra[pt as usize] as usize];
            }
            self.lookup[&buf[..self.base.len()]]
        } else {
            let key: Vec<u32> = self
                .base
                .iter()
                .map(|&pt| rb[ra[pt as usize] as usize])
                .collect();
            self.lookup[key.as_slice()]
        }
    }

    pub fn inv(&self, x: Elem) -> Elem {
        self.inverses[x as usize]
    }

    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        e %= self.orders[x as usize] as u64;
        let mut acc = 0;
        let mut sq = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, x: Elem) -> u32 {
        self.orders[x as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order);
        bits.insert_range(..);
        Subgroup::from_parts(bits, self.generators.clone())
    }

    pub fn trivial(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order);
        bits.insert(0);
        Subgroup::from_parts(bits, Vec::new())
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_generated(&self, seed: &[Elem]) -> Subgroup {
        let mut h = self.trivial();
        for &s in seed {
            if !h.contains(s) {
                h = self.extend(&h, s);
            }
        }
        h
    }

    /// `<h, g>` computed by closing `h` under right multiplication.
    pub fn extend(&self, h: &Subgroup, g: Elem) -> Subgroup {
        if h.contains(g) {
            return h.clone();
        }
        let mut gens = h.generators().to_vec();
        gens.push(g);
        let mut bits = h.bits().clone();
        let mut list: Vec<Elem> = h.elements().to_vec();
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in &gens {
                let y = self.mul(x, s);
                if !bits.contains(y as usize) {
                    bits.insert(y as usize);
                    list.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_parts(bits, gens)
    }

    /// Subgroup with the given member set; the caller guarantees closure.
    /// A generating witness is chosen greedily in id order.
    pub fn subgroup_from_members(&self, members: FixedBitSet) -> Subgroup {
        debug_assert!(self.is_closed(&members));
        let mut h = self.trivial();
        for x in members.ones() {
            if !h.contains(x as Elem) {
                h = self.extend(&h, x as Elem);
                if h.order() == members.count_ones(..) {
                    break;
                }
            }
        }
        h
    }

    pub fn subgroup_from_filter(&self, within: &Subgroup, keep: impl Fn(Elem) -> bool) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order);
        for &x in within.elements() {
            if keep(x) {
                bits.insert(x as usize);
            }
        }
        self.subgroup_from_members(bits)
    }

    /// True when `members` is closed under products (and so a subgroup).
    pub fn is_closed(&self, members: &FixedBitSet) -> bool {
        let elts: Vec<usize> = members.ones().collect();
        if !members.contains(0) {
            return false;
        }
        elts.iter().all(|&a| {
            elts.iter()
                .all(|&b| members.contains(self.mul(a as Elem, b as Elem) as usize))
        })
    }

    /// Smallest subgroup of `within` that contains `seed` and is normal in `within`.
    pub fn normal_closure(&self, within: &Subgroup, seed: &[Elem]) -> Subgroup {
        let mut h = self.subgroup_generated(seed);
        loop {
            let mut grown = false;
            let hgens = h.generators().to_vec();
            'outer: for &x in &hgens {
                for &s in within.generators() {
                    let c = self.conj(x, s);
                    if !h.contains(c) {
                        h = self.extend(&h, c);
                        grown = true;
                        break 'outer;
                    }
                }
            }
            if !grown {
                return h;
            }
        }
    }

    pub fn derived_subgroup(&self, s: &Subgroup) -> Subgroup {
        let gens = s.generators();
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.comm(a, b);
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(s, &comms)
    }

    /// `C_S(X)`.
    pub fn centralizer(&self, s: &Subgroup, x: &Subgroup) -> Subgroup {
        let xg = x.generators();
        self.subgroup_from_filter(s, |g| xg.iter().all(|&y| self.commute(g, y)))
    }

    pub fn centralizer_of_element(&self, s: &Subgroup, y: Elem) -> Subgroup {
        self.subgroup_from_filter(s, |g| self.commute(g, y))
    }

    pub fn center(&self, s: &Subgroup) -> Subgroup {
        self.centralizer(s, s)
    }

    /// `N_S(X)`.
    pub fn normalizer(&self, s: &Subgroup, x: &Subgroup) -> Subgroup {
        let xg = x.generators();
        self.subgroup_from_filter(s, |g| xg.iter().all(|&y| x.contains(self.conj(y, g))))
    }

    pub fn is_normal(&self, s: &Subgroup, x: &Subgroup) -> bool {
        x.generators()
            .iter()
            .all(|&y| s.generators().iter().all(|&g| x.contains(self.conj(y, g))))
    }

    /// Conjugate subgroup `X^g`.
    pub fn conjugate(&self, x: &Subgroup, g: Elem) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order);
        for &y in x.elements() {
            bits.insert(self.conj(y, g) as usize);
        }
        let gens = x.generators().iter().map(|&y| self.conj(y, g)).collect();
        Subgroup::from_parts(bits, gens)
    }

    /// Product set `AB`; a subgroup whenever one factor normalizes the other.
    pub fn product(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seed = a.generators().to_vec();
        seed.extend_from_slice(b.generators());
        let mut h = a.clone();
        for &g in b.generators() {
            h = self.extend(&h, g);
        }
        debug_assert!(seed.iter().all(|&g| h.contains(g)));
        h
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut bits = a.bits().clone();
        bits.intersect_with(b.bits());
        self.subgroup_from_members(bits)
    }

    pub fn is_abelian(&self, s: &Subgroup) -> bool {
        let g = s.generators();
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    pub fn is_cyclic(&self, s: &Subgroup) -> bool {
        s.elements()
            .iter()
            .any(|&x| self.element_order(x) as usize == s.order())
    }

    pub fn is_elementary_abelian(&self, s: &Subgroup, p: u64) -> bool {
        self.is_abelian(s)
            && s.elements()
                .iter()
                .all(|&x| x == 0 || self.element_order(x) as u64 == p)
    }

    pub fn is_p_group(&self, s: &Subgroup, p: u64) -> bool {
        is_power_of(s.order() as u64, p)
    }

    pub fn exponent(&self, s: &Subgroup) -> u64 {
        s.elements().iter().fold(1u64, |acc, &x| {
            num_integer::lcm(acc, self.element_order(x) as u64)
        })
    }

    /// Conjugacy classes of `within`, each sorted, in order of smallest member.
    pub fn conjugacy_classes(&self, within: &Subgroup) -> Vec<Vec<Elem>> {
        let mut seen = FixedBitSet::with_capacity(self.order);
        let mut out = Vec::new();
        for &x in within.elements() {
            if seen.contains(x as usize) {
                continue;
            }
            seen.insert(x as usize);
            let mut class = vec![x];
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &g in within.generators() {
                    let c = self.conj(y, g);
                    if !seen.contains(c as usize) {
                        seen.insert(c as usize);
                        class.push(c);
                        queue.push_back(c);
                    }
                }
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }

    /// The subgroup as a group in its own right, with the same degree.
    /// Element `i` of the result is `s.elements()[i]` of `self`, because both
    /// id sequences follow the lexicographic order of the permutations.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> Group {
        let gens: Vec<Perm> = s.generators().iter().map(|&g| self.perm(g)).collect();
        let mut g =
            Group::from_generators_labeled(self.degree, &gens, usize::MAX, &self.representation)
                .expect("subgroup of an enumerated group");
        g.representation = self.representation.clone();
        g
    }
}

fn choose_base(all: &[Box<[u32]>], degree: usize) -> Vec<u32> {
    // Refine the partition of elements by base images until it is discrete.
    let n = all.len();
    let mut class: Vec<u32> = vec![0; n];
    let mut classes = 1usize;
    let mut base = Vec::new();
    for pt in 0..degree {
        if classes == n {
            break;
        }
        let mut map: FxHashMap<(u32, u32), u32> = FxHashMap::default();
        let refined: Vec<u32> = (0..n)
            .map(|i| {
                let key = (class[i], all[i][pt]);
                let next = map.len() as u32;
                *map.entry(key).or_insert(next)
            })
            .collect();
        if map.len() > classes {
            classes = map.len();
            class = refined;
            base.push(pt as u32);
        }
    }
    if base.is_empty() {
        base.push(0);
    }
    base
}

pub(crate) fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Largest power of `p` dividing `n`.
pub(crate) fn p_part(mut n: u64, p: u64) -> u64 {
    let mut q = 1;
    while n.is_multiple_of(p) {
        n /= p;
        q *= p;
    }
    q
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn log_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}
