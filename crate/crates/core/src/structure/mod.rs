//! Structure of p-groups with Omega_1(P) = P and cyclic derived subgroup,
//! and verdicts comparing predicted homology shapes with computed ones.

mod checks;
mod upper;

use serde::{Deserialize, Serialize};

pub use checks::{
    main_theorem_check, p_length_bound_check, split_torus_check, verify_pulkus_welker,
};
pub use upper::upper_interval_check;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::homology::{HomologyProfile, SphericityVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureCase {
    Abelian,
    /// `P = A x E`, `A` elementary abelian, `E` extraspecial of exponent p.
    OddExtraspecialSplit,
    /// `|P'| = 2`; no T/D decomposition is attempted.
    SmallDerived,
    /// `P = TD` with `T` dihedral or semidihedral.
    TwoGroupTd,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TKind {
    Trivial,
    Dihedral,
    Semidihedral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub prime: u64,
    pub order: usize,
    pub omega1_equals_p: bool,
    pub derived_cyclic: bool,
    pub derived_order: usize,
    pub case: StructureCase,
    pub t: Option<Subgroup>,
    pub t_kind: Option<TKind>,
    pub d: Option<Subgroup>,
    /// Trivial or extraspecial.
    pub e: Option<Subgroup>,
    /// Elementary abelian direct factor in the odd split case.
    pub elementary_part: Option<Subgroup>,
    /// `Omega_1(Z(P))`.
    pub z: Subgroup,
    /// T types realized by other valid decompositions of the same group.
    pub alternative_t_kinds: Vec<TKind>,
    pub notes: Vec<String>,
}

/// What a theorem says the computation should show.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Prediction {
    /// All reduced homology vanishes.
    Acyclic,
    /// Some reduced homology group is nonzero.
    NotAcyclic,
    /// Free homology concentrated in `degree`, or none at all.
    Spherical {
        degree: i64,
    },
    CohenMacaulay {
        degree: i64,
    },
    /// At least two degrees carry nonzero reduced homology.
    NotWeaklySpherical,
    /// Homology equal to a profile computed another way.
    SameHomology {
        expected: HomologyProfile,
    },
    PLengthAtMost {
        bound: u32,
    },
    PLengthExactly {
        value: u32,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Computed {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologyProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphericity: Option<SphericityVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_length: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub claim: String,
    pub predicted: Prediction,
    pub computed: Computed,
    pub agrees: bool,
    pub notes: Vec<String>,
}

/// Subgroup generated by the elements of order p in `Z(s)`.
pub fn omega1_center(g: &Group, s: &Subgroup, p: u64) -> Subgroup {
    let z = g.center(s);
    g.subgroup_generated(&g.elements_of_order(&z, p))
}

/// Extraspecial: center equal to the derived subgroup, of order p, with
/// elementary abelian central quotient.
pub fn is_extraspecial(g: &Group, s: &Subgroup, p: u64) -> bool {
    if !g.is_p_group(s, p) || s.order() < (p * p * p) as usize {
        return false;
    }
    let z = g.center(s);
    if z.order() as u64 != p || g.derived_subgroup(s) != z {
        return false;
    }
    s.elements().iter().all(|&x| z.contains(g.pow(x, p)))
}

struct Hypotheses {
    omega1_equals_p: bool,
    derived: Subgroup,
    derived_cyclic: bool,
}

fn hypotheses(g: &Group, s: &Subgroup, p: u64) -> Result<Hypotheses> {
    if !g.is_p_group(s, p) {
        return Err(Error::HypothesisViolated(format!(
            "subgroup of order {} is not a {p}-group",
            s.order()
        )));
    }
    let omega1_equals_p = g.omega1(s, p)? == *s;
    let derived = g.derived_subgroup(s);
    let derived_cyclic = g.is_cyclic(&derived);
    if !omega1_equals_p {
        return Err(Error::HypothesisViolated(
            "Omega_1(P) is a proper subgroup of P".into(),
        ));
    }
    if !derived_cyclic {
        return Err(Error::HypothesisViolated(format!(
            "P' of order {} is not cyclic",
            derived.order()
        )));
    }
    Ok(Hypotheses {
        omega1_equals_p,
        derived,
        derived_cyclic,
    })
}

fn blank_report(
    g: &Group,
    s: &Subgroup,
    p: u64,
    h: &Hypotheses,
    case: StructureCase,
) -> StructureReport {
    StructureReport {
        prime: p,
        order: s.order(),
        omega1_equals_p: h.omega1_equals_p,
        derived_cyclic: h.derived_cyclic,
        derived_order: h.derived.order(),
        case,
        t: None,
        t_kind: None,
        d: None,
        e: None,
        elementary_part: None,
        z: omega1_center(g, s, p),
        alternative_t_kinds: Vec::new(),
        notes: Vec::new(),
    }
}

/// Greedy search for mutually commuting pairs `x_i, y_i` in `s` with
/// `<x_i, y_i>` nonabelian of order p^3, each pair taken inside the
/// centralizer of the previous ones, smallest ids first. Returns the group
/// the pairs generate and the final centralizer.
fn extraspecial_core(g: &Group, s: &Subgroup, p: u64) -> (Subgroup, Subgroup) {
    let cube = (p * p * p) as usize;
    let mut pairs: Vec<Elem> = Vec::new();
    let mut c = s.clone();
    'grow: loop {
        for &x in c.elements() {
            if c.generators().iter().all(|&y| g.commute(x, y)) {
                continue;
            }
            for &y in c.elements() {
                if g.commute(x, y) {
                    continue;
                }
                let pair = g.subgroup_generated(&[x, y]);
                if pair.order() != cube {
                    continue;
                }
                pairs.extend([x, y]);
                c = g.centralizer(&c, &pair);
                continue 'grow;
            }
        }
        break;
    }
    (g.subgroup_generated(&pairs), c)
}

/// Smallest-id complement of `inner` in the elementary abelian `outer`.
fn complement_in_torus(g: &Group, outer: &Subgroup, inner: &Subgroup) -> Subgroup {
    let mut comp = g.trivial();
    for &x in outer.elements() {
        if comp.order() * inner.order() == outer.order() {
            break;
        }
        if !g.product(&comp, inner).contains(x) {
            comp = g.extend(&comp, x);
        }
    }
    comp
}

/// Decomposition of a p-group (p odd) with `Omega_1(P) = P` and `P'` cyclic
/// as an elementary abelian group times an extraspecial group of exponent p.
pub fn classify_odd_p_group(g: &Group, s: &Subgroup, p: u64) -> Result<StructureReport> {
    if p == 2 {
        return Err(Error::HypothesisViolated(
            "the odd classification needs an odd prime".into(),
        ));
    }
    let h = hypotheses(g, s, p)?;
    if h.derived.is_trivial() {
        let mut r = blank_report(g, s, p, &h, StructureCase::Abelian);
        r.elementary_part = Some(s.clone());
        return Ok(r);
    }
    if h.derived.order() as u64 != p {
        return Err(Error::DecompositionNotFound(format!(
            "|P'| = {} exceeds p = {p}",
            h.derived.order()
        )));
    }
    let (e, c) = extraspecial_core(g, s, p);
    let a = complement_in_torus(g, &c, &h.derived);
    let mut r = blank_report(g, s, p, &h, StructureCase::OddExtraspecialSplit);
    r.e = Some(e);
    r.elementary_part = Some(a);
    let failures = check_structure(g, s, &r);
    if !failures.is_empty() {
        return Err(Error::DecompositionNotFound(failures.join("; ")));
    }
    Ok(r)
}

struct TdCandidate {
    kind: TKind,
    t: Subgroup,
    d: Subgroup,
    e: Subgroup,
}

/// `T = <x, z>` and `D = C_P(T)`, when these satisfy every invariant.
fn td_candidate(g: &Group, s: &Subgroup, z1: &Subgroup, x: Elem, z: Elem) -> Option<TdCandidate> {
    let n = g.element_order(x) as u64;
    let t = g.subgroup_generated(&[x, z]);
    if t.order() as u64 != 2 * n || !g.is_normal(s, &t) {
        return None;
    }
    let xz = g.conj(x, z);
    let kind = if xz == g.inv(x) {
        TKind::Dihedral
    } else if n >= 8 && xz == g.pow(x, n / 2 - 1) {
        TKind::Semidihedral
    } else {
        return None;
    };
    let d = g.centralizer(s, &t);
    if g.intersection(&t, &d).order() > 2 || g.product(&t, &d) != *s || !z1.is_subgroup_of(&d) {
        return None;
    }
    let (e, _) = extraspecial_core(g, &d, 2);
    if g.product(&g.center(&d), &e) != d {
        return None;
    }
    Some(TdCandidate { kind, t, d, e })
}

/// `P = TD` for a 2-group with `Omega_1(P) = P`, `P'` cyclic of order > 2:
/// `T = <x, z>` with `P' = <x^2>` and `z` an involution outside `C_P(P')`,
/// `D = C_P(T)`. Pairs `(x, z)` are tried in id order; a semidihedral `T`
/// is preferred when the group admits both kinds, and the other kinds seen
/// are listed in the report.
pub fn decompose_2group(g: &Group, s: &Subgroup) -> Result<StructureReport> {
    let h = hypotheses(g, s, 2)?;
    match h.derived.order() {
        1 => return Ok(blank_report(g, s, 2, &h, StructureCase::Abelian)),
        2 => return Ok(blank_report(g, s, 2, &h, StructureCase::SmallDerived)),
        _ => {}
    }
    let z1 = omega1_center(g, s, 2);
    let cd = g.centralizer(s, &h.derived);
    let involutions: Vec<Elem> = g
        .elements_of_order(s, 2)
        .into_iter()
        .filter(|&z| !cd.contains(z))
        .collect();
    let mut found: Vec<TdCandidate> = Vec::new();
    for &x in s.elements() {
        if g.element_order(x) as usize != 2 * h.derived.order() || !h.derived.contains(g.pow(x, 2))
        {
            continue;
        }
        for &z in &involutions {
            if let Some(c) = td_candidate(g, s, &z1, x, z) {
                if !found.iter().any(|f| f.kind == c.kind) {
                    found.push(c);
                }
            }
        }
        if found.iter().any(|f| f.kind == TKind::Semidihedral)
            && found.iter().any(|f| f.kind == TKind::Dihedral)
        {
            break;
        }
    }
    let mut kinds: Vec<TKind> = found.iter().map(|f| f.kind).collect();
    kinds.sort();
    let pick = found
        .iter()
        .position(|f| f.kind == TKind::Semidihedral)
        .or(if found.is_empty() { None } else { Some(0) })
        .ok_or_else(|| {
            Error::DecompositionNotFound("no pair (x, z) yields valid T and D".into())
        })?;
    let c = found.swap_remove(pick);
    let mut r = blank_report(g, s, 2, &h, StructureCase::TwoGroupTd);
    r.alternative_t_kinds = kinds.into_iter().filter(|&k| k != c.kind).collect();
    if !r.alternative_t_kinds.is_empty() {
        r.notes.push(format!(
            "the group also decomposes with T of kind {:?}",
            r.alternative_t_kinds
        ));
    }
    r.t = Some(c.t);
    r.t_kind = Some(c.kind);
    r.d = Some(c.d);
    r.e = Some(c.e);
    let failures = check_structure(g, s, &r);
    if !failures.is_empty() {
        return Err(Error::DecompositionNotFound(failures.join("; ")));
    }
    Ok(r)
}

/// Dispatches on the prime.
pub fn classify(g: &Group, s: &Subgroup, p: u64) -> Result<StructureReport> {
    if p == 2 {
        decompose_2group(g, s)
    } else {
        classify_odd_p_group(g, s, p)
    }
}

/// Re-derives every invariant a report claims, independently of how it was
/// found. Returns the violated ones.
pub fn check_structure(g: &Group, s: &Subgroup, r: &StructureReport) -> Vec<String> {
    let p = r.prime;
    let mut bad = Vec::new();
    let mut require = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };
    require(r.z == omega1_center(g, s, p), "Z is Omega_1(Z(P))");
    match r.case {
        StructureCase::OddExtraspecialSplit => {
            let (Some(e), Some(a)) = (&r.e, &r.elementary_part) else {
                return vec!["split case without E and A".into()];
            };
            require(g.derived_subgroup(s).order() as u64 == p, "|P'| = p");
            require(is_extraspecial(g, e, p), "E extraspecial");
            require(g.exponent(e) == p, "E has exponent p");
            require(
                a.is_trivial() || g.is_elementary_abelian(a, p),
                "A elementary abelian",
            );
            require(g.intersection(a, e).is_trivial(), "A and E meet trivially");
            require(a.order() * e.order() == s.order(), "|A||E| = |P|");
            require(
                a.generators()
                    .iter()
                    .all(|&x| e.generators().iter().all(|&y| g.commute(x, y))),
                "[A, E] = 1",
            );
        }
        StructureCase::TwoGroupTd => {
            let (Some(t), Some(d), Some(e), Some(kind)) = (&r.t, &r.d, &r.e, r.t_kind) else {
                return vec!["TD case without T, D, E".into()];
            };
            require(g.is_normal(s, t), "T normal in P");
            require(g.is_normal(s, d), "D normal in P");
            require(g.intersection(t, d).order() <= 2, "|T n D| <= 2");
            require(g.product(t, d) == *s, "TD = P");
            require(r.z.is_subgroup_of(d), "Omega_1(Z(P)) <= D");
            require(
                e.is_trivial() || is_extraspecial(g, e, 2),
                "E trivial or extraspecial",
            );
            require(
                e.is_subgroup_of(d) && g.product(&g.center(d), e) == *d,
                "D = Z(D)E",
            );
            require(t_kind_of(g, t) == Some(kind), "T has the claimed kind");
        }
        StructureCase::Abelian => require(g.is_abelian(s), "P abelian"),
        StructureCase::SmallDerived => require(g.derived_subgroup(s).order() == 2, "|P'| = 2"),
        StructureCase::NotApplicable => {}
    }
    bad
}

/// Dihedral or semidihedral recognition of a 2-group through a cyclic
/// subgroup of index 2 and the involutions outside it.
pub fn t_kind_of(g: &Group, t: &Subgroup) -> Option<TKind> {
    if t.is_trivial() {
        return Some(TKind::Trivial);
    }
    let n = (t.order() / 2) as u64;
    let mut semidihedral = false;
    for &x in t.elements() {
        if g.element_order(x) as u64 != n {
            continue;
        }
        let cyc = g.subgroup_generated(&[x]);
        for &z in t.elements() {
            if cyc.contains(z) || g.element_order(z) != 2 {
                continue;
            }
            let xz = g.conj(x, z);
            if xz == g.inv(x) {
                return Some(TKind::Dihedral);
            }
            semidihedral |= n >= 8 && xz == g.pow(x, n / 2 - 1);
        }
    }
    semidihedral.then_some(TKind::Semidihedral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, catalog};
    use crate::group::DEFAULT_MAX_ORDER as CAP;

    fn named(name: &str) -> Group {
        build(&catalog(name).unwrap(), CAP).unwrap()
    }

    #[test]
    fn odd_classification() {
        let e27 = named("3^{1+2}");
        let r = classify_odd_p_group(&e27, &e27.whole(), 3).unwrap();
        assert_eq!(r.case, StructureCase::OddExtraspecialSplit);
        assert!(r.elementary_part.as_ref().unwrap().is_trivial());
        assert_eq!(r.e.as_ref().unwrap().order(), 27);

        let ab = named("3^{1+2}×C3");
        let r = classify_odd_p_group(&ab, &ab.whole(), 3).unwrap();
        assert_eq!(r.case, StructureCase::OddExtraspecialSplit);
        assert_eq!(r.elementary_part.as_ref().unwrap().order(), 3);
        assert!(check_structure(&ab, &ab.whole(), &r).is_empty());

        let c3c3 = build(
            &crate::constructions::GroupSpec::ElementaryAbelian { p: 3, rank: 2 },
            CAP,
        )
        .unwrap();
        assert_eq!(
            classify_odd_p_group(&c3c3, &c3c3.whole(), 3).unwrap().case,
            StructureCase::Abelian
        );

        // exponent 9 violates Omega_1(P) = P
        let m27 = named("3^{1+2}_9");
        assert!(matches!(
            classify_odd_p_group(&m27, &m27.whole(), 3),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn two_group_decompositions() {
        let g = named("D16×C2");
        let r = decompose_2group(&g, &g.whole()).unwrap();
        assert_eq!(r.case, StructureCase::TwoGroupTd);
        assert_eq!(r.t_kind, Some(TKind::Dihedral));
        assert_eq!(r.t.as_ref().unwrap().order(), 16);
        assert!(g.is_abelian(r.d.as_ref().unwrap()));
        assert!(r.e.as_ref().unwrap().is_trivial());

        let g = named("SD16∘C4");
        let r = decompose_2group(&g, &g.whole()).unwrap();
        assert_eq!(r.t_kind, Some(TKind::Semidihedral));
        assert_eq!(r.derived_order, 4);
        assert!(check_structure(&g, &g.whole(), &r).is_empty());

        let d8 = named("D8");
        assert_eq!(
            decompose_2group(&d8, &d8.whole()).unwrap().case,
            StructureCase::SmallDerived
        );
        let q8 = named("Q8");
        assert!(matches!(
            decompose_2group(&q8, &q8.whole()),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn t_kinds() {
        assert_eq!(
            t_kind_of(&named("D16"), &named("D16").whole()),
            Some(TKind::Dihedral)
        );
        assert_eq!(
            t_kind_of(&named("SD16"), &named("SD16").whole()),
            Some(TKind::Semidihedral)
        );
        assert_eq!(
            t_kind_of(&named("D8"), &named("D8").whole()),
            Some(TKind::Dihedral)
        );
        let q16 = build(
            &crate::constructions::GroupSpec::Quaternion { order: 16 },
            CAP,
        )
        .unwrap();
        assert_eq!(t_kind_of(&q16, &q16.whole()), None);
    }

    #[test]
    fn extraspecial_recognition() {
        for (name, p) in [
            ("D8", 2),
            ("Q8", 2),
            ("3^{1+2}", 3),
            ("3^{1+2}_9", 3),
            ("D8∘D8", 2),
            ("D8∘Q8", 2),
            ("5^{1+2}", 5),
        ] {
            let g = named(name);
            assert!(is_extraspecial(&g, &g.whole(), p), "{name}");
        }
        for (name, p) in [("V4", 2), ("D16", 2), ("3^{1+2}×C3", 3)] {
            let g = named(name);
            assert!(!is_extraspecial(&g, &g.whole(), p), "{name}");
        }
    }
}
