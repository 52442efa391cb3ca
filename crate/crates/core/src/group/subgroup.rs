use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Elem;

/// A subgroup of some parent [`super::Group`], stored as a member bitset
/// over the parent's element ids. Equality, hashing and ordering look only
/// at the member set; the generator list is a witness.
#[derive(Clone)]
pub struct Subgroup {
    bits: FixedBitSet,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
}

impl Subgroup {
    pub(crate) fn from_parts(bits: FixedBitSet, generators: Vec<Elem>) -> Self {
        let elements = bits.ones().map(|x| x as Elem).collect();
        Subgroup {
            bits,
            elements,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x as usize)
    }

    /// Member ids in increasing order.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_proper_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() < other.order() && self.is_subgroup_of(other)
    }

    /// Order of the parent group this subgroup was built in.
    pub fn parent_order(&self) -> usize {
        self.bits.len()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

/// Orders by size, then lexicographically by sorted member ids.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subgroup(order {}, gens {:?})",
            self.order(),
            self.generators
        )
    }
}

#[derive(Serialize, Deserialize)]
struct SubgroupRepr {
    parent_order: usize,
    order: usize,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubgroupRepr {
            parent_order: self.bits.len(),
            order: self.order(),
            elements: self.elements.clone(),
            generators: self.generators.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subgroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SubgroupRepr::deserialize(d)?;
        let mut bits = FixedBitSet::with_capacity(r.parent_order);
        for &x in &r.elements {
            if x as usize >= r.parent_order {
                return Err(serde::de::Error::custom("element id outside parent group"));
            }
            bits.insert(x as usize);
        }
        if bits.count_ones(..) != r.order {
            return Err(serde::de::Error::custom(
                "order does not match element list",
            ));
        }
        Ok(Subgroup::from_parts(bits, r.generators))
    }
}
