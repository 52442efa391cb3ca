//! Group builders driven by a JSON-friendly [`GroupSpec`].
//!
//! Every spec kind has a documented generator list (its "spec generators"),
//! so product and action parameters can refer to elements as words
//! `[[generator index, exponent], ...]` in those generators.

mod catalog;
mod families;
mod products;

use serde::{Deserialize, Serialize};

pub use catalog::{catalog, catalog_names, CatalogEntry, CATALOG};
pub use families::{
    cyclic, dihedral, elementary_abelian, extraspecial, quaternion, semidihedral, ExtraspecialSign,
};
pub use products::{central_product, direct_product, semidirect_product};

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Perm};

/// `[[generator index, exponent], ...]`, read left to right.
pub type Word = Vec<(usize, i64)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum GroupSpec {
    /// A catalog entry. Generators: those of the entry's spec.
    Named { name: String },
    /// Generators: `[x]`.
    Cyclic { n: u32 },
    /// Dihedral group of the given order `2m`. Generators: `[x, z]`, `x` of
    /// order `m`, `z` an involution inverting `x`.
    Dihedral { order: u32 },
    /// Order `2^n`, `n >= 4`. Generators: `[x, z]` with `x^z = x^(-1+2^(n-2))`.
    Semidihedral { order: u32 },
    /// Generalized quaternion of order `2^n`, `n >= 3`. Generators: `[x, y]`.
    Quaternion { order: u32 },
    /// Generators: a basis `[e_1, ..., e_rank]`.
    ElementaryAbelian { p: u32, rank: u32 },
    /// Order `p^(1+2n)`. For odd `p`, `exponent` is `p` (default) or `p^2`;
    /// for `p = 2`, `sign` picks the plus or minus type. Generators:
    /// `[a_1, b_1, ..., a_n, b_n]` with `[a_i, b_i]` generating the center.
    Extraspecial {
        p: u32,
        n: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exponent: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sign: Option<ExtraspecialSign>,
    },
    /// Generators: the factors' generators, concatenated.
    DirectProduct { factors: Vec<GroupSpec> },
    /// `(A x B) / {(a, b^-1)}` over the listed pairs of central words.
    /// Generators: those of `left` then those of `right`.
    CentralProduct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
        identify: Vec<(Word, Word)>,
    },
    /// `N x| H`; `action[i][j]` is the image of the j-th generator of `N`
    /// under the i-th generator of `H`, acting on the right.
    /// Generators: those of `normal` then those of `acting`.
    SemidirectProduct {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<Word>>,
    },
    /// Cycle notation on points `1..=degree`. Generators: as listed.
    Perm {
        degree: u32,
        generators: Vec<String>,
    },
}

/// A built group plus its spec generators as element ids.
#[derive(Debug, Clone)]
pub struct BuiltGroup {
    pub group: Group,
    pub generators: Vec<Elem>,
}

impl BuiltGroup {
    pub(crate) fn from_perms(
        degree: usize,
        perms: &[Perm],
        cap: usize,
        label: &str,
    ) -> Result<Self> {
        let group = Group::from_generators_labeled(degree, perms, cap, label)?;
        let generators = perms.iter().map(|p| group.id_of(p).unwrap()).collect();
        Ok(BuiltGroup { group, generators })
    }

    /// Evaluates a word in the spec generators.
    pub fn eval(&self, w: &Word) -> Result<Elem> {
        let g = &self.group;
        let mut acc = g.identity();
        for &(i, e) in w {
            let &x = self.generators.get(i).ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "word uses generator {i}, only {} exist",
                    self.generators.len()
                ))
            })?;
            let k = e.rem_euclid(g.element_order(x) as i64) as u64;
            acc = g.mul(acc, g.pow(x, k));
        }
        Ok(acc)
    }
}

pub fn build(spec: &GroupSpec, cap: usize) -> Result<Group> {
    build_with_generators(spec, cap).map(|b| b.group)
}

pub fn build_with_generators(spec: &GroupSpec, cap: usize) -> Result<BuiltGroup> {
    match spec {
        GroupSpec::Named { name } => build_with_generators(&catalog(name)?, cap),
        GroupSpec::Cyclic { n } => cyclic(*n, cap),
        GroupSpec::Dihedral { order } => dihedral(*order, cap),
        GroupSpec::Semidihedral { order } => semidihedral(*order, cap),
        GroupSpec::Quaternion { order } => quaternion(*order, cap),
        GroupSpec::ElementaryAbelian { p, rank } => elementary_abelian(*p, *rank, cap),
        GroupSpec::Extraspecial {
            p,
            n,
            exponent,
            sign,
        } => extraspecial(*p, *n, *exponent, *sign, cap),
        GroupSpec::DirectProduct { factors } => {
            let built = factors
                .iter()
                .map(|f| build_with_generators(f, cap))
                .collect::<Result<Vec<_>>>()?;
            direct_product(&built, cap)
        }
        GroupSpec::CentralProduct {
            left,
            right,
            identify,
        } => {
            let a = build_with_generators(left, cap)?;
            let b = build_with_generators(right, cap)?;
            let pairs = identify
                .iter()
                .map(|(x, y)| Ok((a.eval(x)?, b.eval(y)?)))
                .collect::<Result<Vec<_>>>()?;
            central_product(&a, &b, &pairs, cap)
        }
        GroupSpec::SemidirectProduct {
            normal,
            acting,
            action,
        } => {
            let n = build_with_generators(normal, cap)?;
            let h = build_with_generators(acting, cap)?;
            if action.len() != h.generators.len() {
                return Err(Error::InvalidSpec(format!(
                    "action lists {} generator images, acting group has {} generators",
                    action.len(),
                    h.generators.len()
                )));
            }
            let images = action
                .iter()
                .map(|imgs| {
                    if imgs.len() != n.generators.len() {
                        return Err(Error::InvalidSpec(format!(
                            "each action entry needs {} images, got {}",
                            n.generators.len(),
                            imgs.len()
                        )));
                    }
                    imgs.iter().map(|w| n.eval(w)).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            semidirect_product(&n, &h, &images, cap)
        }
        GroupSpec::Perm { degree, generators } => {
            let degree = *degree as usize;
            let perms = generators
                .iter()
                .map(|g| Perm::parse(degree, g))
                .collect::<Result<Vec<_>>>()?;
            BuiltGroup::from_perms(degree, &perms, cap, "natural")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;

    fn spec(json: &str) -> GroupSpec {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn json_schema_round_trip() {
        let s = spec(
            r#"{"kind": "semidirect_product", "params": {
            "normal": {"kind": "cyclic", "params": {"n": 3}},
            "acting": {"kind": "cyclic", "params": {"n": 2}},
            "action": [[[[0, -1]]]]}}"#,
        );
        let g = build(&s, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian(&g.whole()));
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<GroupSpec>(&text).unwrap(), s);
        assert!(serde_json::from_str::<GroupSpec>(r#"{"kind": "bogus", "params": {}}"#).is_err());
    }

    #[test]
    fn named_and_perm_specs() {
        let s4 = build(
            &spec(r#"{"kind": "named", "params": {"name": "S4"}}"#),
            DEFAULT_MAX_ORDER,
        )
        .unwrap();
        assert_eq!(s4.order(), 24);
        let d8 = build(&spec(r#"{"kind": "perm", "params": {"degree": 4, "generators": ["(1,2,3,4)", "(1,3)"]}}"#), 100).unwrap();
        assert_eq!(d8.order(), 8);
        assert!(matches!(
            build(
                &GroupSpec::Named {
                    name: "nope".into()
                },
                100
            ),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn build_is_deterministic() {
        for name in ["SD16∘C4", "(C3×C3)⋊SL(2,3)", "D8∘Q8"] {
            let a = build(&catalog(name).unwrap(), DEFAULT_MAX_ORDER).unwrap();
            let b = build(&catalog(name).unwrap(), DEFAULT_MAX_ORDER).unwrap();
            assert_eq!(a.order(), b.order());
            assert!(a.elements().all(|x| a.perm(x) == b.perm(x)));
        }
    }

    #[test]
    fn bad_words_are_rejected() {
        let s = GroupSpec::CentralProduct {
            left: Box::new(GroupSpec::Cyclic { n: 4 }),
            right: Box::new(GroupSpec::Cyclic { n: 4 }),
            identify: vec![(vec![(3, 1)], vec![(0, 2)])],
        };
        assert!(matches!(build(&s, 100), Err(Error::InvalidSpec(_))));
    }
}
