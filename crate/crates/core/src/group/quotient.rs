use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::{Elem, Group, Perm, Subgroup};

/// `G/K` realized as the action of `G` on the right cosets of `K`,
/// together with the projection from `G`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Group,
    projection: Vec<Elem>,
}

impl Quotient {
    /// Caller guarantees `kernel` is normal in `g`.
    pub fn new(g: &Group, kernel: &Subgroup) -> Quotient {
        debug_assert!(g.is_normal(&g.whole(), kernel));
        if kernel.is_trivial() {
            return Quotient {
                group: g.clone(),
                projection: (0..g.order() as Elem).collect(),
            };
        }
        let n = g.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as Elem {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            for &k in kernel.elements() {
                coset_of[g.mul(k, x) as usize] = c;
            }
            reps.push(x);
        }
        let degree = reps.len();
        let gen_perms: Vec<Perm> = g
            .generators()
            .iter()
            .map(|&s| {
                let images = reps
                    .iter()
                    .map(|&r| coset_of[g.mul(r, s) as usize])
                    .collect();
                Perm::from_images(images).expect("coset action is a permutation")
            })
            .collect();
        let mut q = Group::from_generators_labeled(degree, &gen_perms, usize::MAX, "coset")
            .expect("uncapped enumeration");
        q.set_representation("coset");
        let qgens: Vec<Elem> = gen_perms.iter().map(|p| q.id_of(p).unwrap()).collect();

        let mut projection = vec![u32::MAX; n];
        projection[0] = 0;
        let mut queue = VecDeque::from([0 as Elem]);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in g.generators().iter().enumerate() {
                let y = g.mul(x, s);
                if projection[y as usize] == u32::MAX {
                    projection[y as usize] = q.mul(projection[x as usize], qgens[i]);
                    queue.push_back(y);
                }
            }
        }
        Quotient {
            group: q,
            projection,
        }
    }

    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x as usize]
    }

    /// Image `HK/K` of a subgroup of the parent.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.generators().iter().map(|&x| self.project(x)).collect();
        self.group.subgroup_generated(&gens)
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, parent: &Group, s: &Subgroup) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(parent.order());
        for (x, &q) in self.projection.iter().enumerate() {
            if s.contains(q) {
                bits.insert(x);
            }
        }
        parent.subgroup_from_members(bits)
    }
}
