use super::{
    classify, is_extraspecial, omega1_center, Computed, Prediction, StructureCase, TKind,
    TheoremVerdict,
};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::homology::{profile_sphericity, reduced_homology, HomologyProfile};
use crate::poset::{quillen_poset_of, SubgroupPoset};

/// Compares the homology of `A_p(P)_{>X}` with the applicable prediction.
/// `within` is usually a p-group; for other groups the interval is reduced
/// to the centralizer of `X`. Without an applicable prediction the computed
/// homology travels inside the error.
pub fn upper_interval_check(
    g: &Group,
    within: &Subgroup,
    p: u64,
    x: &Subgroup,
) -> Result<TheoremVerdict> {
    let a = quillen_poset_of(g, within, p);
    let up = a.upper_interval(x)?;
    let computed = reduced_homology(&up.order_complex());
    let (claim, predicted, mut notes, side_checks) = match predict(g, within, p, x, &up) {
        Ok(v) => v,
        Err(reason) => {
            return Err(Error::NoApplicablePrediction {
                reason,
                computed: Box::new(computed),
            });
        }
    };
    let agrees = matches_prediction(&computed, &predicted) && side_checks;
    if let Prediction::Spherical { degree } | Prediction::CohenMacaulay { degree } = predicted {
        if !agrees {
            notes.push(format!(
                "nonzero degrees {:?}, expected only {degree}",
                computed.nonzero_degrees()
            ));
        }
    }
    let sphericity = match predicted {
        Prediction::Spherical { degree } => Some(profile_sphericity(&computed, degree)),
        _ => None,
    };
    Ok(TheoremVerdict {
        claim: claim.into(),
        predicted,
        computed: Computed {
            homology: Some(computed),
            sphericity,
            p_length: None,
        },
        agrees,
        notes,
    })
}

pub(crate) fn matches_prediction(h: &HomologyProfile, predicted: &Prediction) -> bool {
    match predicted {
        Prediction::Acyclic => h.is_acyclic(),
        Prediction::NotAcyclic => !h.is_acyclic(),
        Prediction::Spherical { degree } => profile_sphericity(h, *degree).homology_spherical,
        Prediction::NotWeaklySpherical => h.nonzero_degrees().len() >= 2,
        Prediction::SameHomology { expected } => h.same_homology(expected),
        _ => false,
    }
}

/// Claim, prediction, notes, and whether the claim's side conditions held.
type Predicted = (&'static str, Prediction, Vec<String>, bool);

fn predict(
    g: &Group,
    within: &Subgroup,
    p: u64,
    x: &Subgroup,
    up: &SubgroupPoset<'_>,
) -> std::result::Result<Predicted, String> {
    let rank_x = g.torus_rank(x, p) as i64;
    if !g.is_p_group(within, p) {
        return predict_centralizer(g, within, p, x);
    }
    let z1 = omega1_center(g, within, p);
    if !z1.is_subgroup_of(x) {
        let xz = g.product(x, &z1);
        let found = up.find_conjunctive_element().map(|i| up.node(i).clone());
        let mut notes = vec![format!("X Omega_1(Z(P)) has order {}", xz.order())];
        match found {
            Some(c) if c == xz => notes.push("conjunctive element X Omega_1(Z(P)) found".into()),
            Some(c) => notes.push(format!("conjunctive element of order {} found", c.order())),
            None => notes.push("no conjunctive element found".into()),
        }
        return Ok((
            "conjunctive-upper-interval",
            Prediction::Acyclic,
            notes,
            true,
        ));
    }
    let rank_p = g.p_rank(within, p) as i64;
    let spherical = Prediction::Spherical {
        degree: rank_p - rank_x - 1,
    };
    if is_extraspecial(g, within, p) {
        if up.is_empty() {
            return Ok((
                "extraspecial-upper-interval",
                spherical,
                vec!["X is a maximal torus".into()],
                true,
            ));
        }
        let (ok, notes) = extraspecial_isomorphism_check(g, within, p, x, up);
        return Ok(("extraspecial-upper-interval", spherical, notes, ok));
    }
    if *x != z1 {
        // A_p(P)_{>X} = A_p(C_P(X))_{>X}, and X is central there
        let c = g.centralizer(within, x);
        if c == *within {
            return Err("X is central but larger than Omega_1(Z(P))".into());
        }
        let a = quillen_poset_of(g, &c, p);
        let inner = a.upper_interval(x).map_err(|e| e.to_string())?;
        let (claim, pred, mut notes, ok) = predict(g, &c, p, x, &inner)?;
        notes.insert(0, format!("reduced to C_P(X) of order {}", c.order()));
        return Ok((claim, pred, notes, ok));
    }
    let derived = g.derived_subgroup(within);
    let center = g.center(within);
    if p == 2 && derived.order() == 2 && g.is_cyclic(&center) && center.order() >= 4 {
        // cyclic times extraspecial: (rk(D/Z)/2 - 1)-spherical
        let quotient_rank = g.torus_rank(within, 2) as i64 - g.torus_rank(&center, 2) as i64;
        let notes = vec![format!("|P/Z(P)| = 2^{quotient_rank}")];
        return Ok((
            "cyclic-center-upper-interval",
            Prediction::Spherical {
                degree: quotient_rank / 2 - 1,
            },
            notes,
            true,
        ));
    }
    let structure = classify(g, within, p).map_err(|e| e.to_string())?;
    match structure.case {
        StructureCase::Abelian => Ok(("abelian-upper-interval", spherical, Vec::new(), true)),
        StructureCase::OddExtraspecialSplit | StructureCase::SmallDerived => {
            Ok(("class-two-upper-interval", spherical, Vec::new(), true))
        }
        StructureCase::TwoGroupTd if structure.t_kind == Some(TKind::Dihedral) => {
            Ok(("dihedral-upper-interval", spherical, structure.notes, true))
        }
        _ => Err("T is semidihedral; only the whole complex carries a prediction".into()),
    }
}

/// Solvable groups: `A_p(G)_{>X} = A_p(C)_{>X}` with `C = C_G(X)`. If
/// `Omega_1(Z(C))` (p-part) is larger than X it is conjunctive; otherwise
/// the interval is (rk(C) - rk(X) - 1)-spherical when a Sylow of C has
/// cyclic derived subgroup and is not of semidihedral type.
fn predict_centralizer(
    g: &Group,
    within: &Subgroup,
    p: u64,
    x: &Subgroup,
) -> std::result::Result<Predicted, String> {
    let c = g.centralizer(within, x);
    let y = omega1_center(g, &c, p);
    if y != *x {
        let notes = vec![format!(
            "Omega_1(Z(C_G(X))) of order {} lies above X",
            y.order()
        )];
        return Ok((
            "central-torus-conjunctive",
            Prediction::Acyclic,
            notes,
            true,
        ));
    }
    let cg = g.subgroup_as_group(&c);
    if !cg.is_solvable() {
        return Err("C_G(X) is not solvable".into());
    }
    let syl = cg.sylow_subgroup(p);
    if !cg.is_cyclic(&cg.derived_subgroup(&syl)) {
        return Err("a Sylow subgroup of C_G(X) has noncyclic derived subgroup".into());
    }
    if p == 2 {
        let o = cg.omega1(&syl, 2).map_err(|e| e.to_string())?;
        if let Ok(r) = classify(&cg, &o, 2) {
            if r.t_kind == Some(TKind::Semidihedral) {
                return Err("T is semidihedral".into());
            }
        }
    }
    let degree = cg.p_rank(&syl, p) as i64 - g.torus_rank(x, p) as i64 - 1;
    Ok((
        "solvable-upper-interval",
        Prediction::Spherical { degree },
        vec![format!("|C_G(X)| = {}", c.order())],
        true,
    ))
}

/// Builds `P_2` with `P_2/Z` a complement of `X/Z` in `C_P(X)/Z` and checks
/// that `T -> TX` matches `A_p(P_2)_{>Z}` with `A_p(P)_{>X}`.
fn extraspecial_isomorphism_check(
    g: &Group,
    within: &Subgroup,
    p: u64,
    x: &Subgroup,
    up: &SubgroupPoset<'_>,
) -> (bool, Vec<String>) {
    let z = g.center(within);
    let c = g.centralizer(within, x);
    let mut p2 = z.clone();
    for &y in c.elements() {
        if g.product(&p2, x).order() == c.order() {
            break;
        }
        if !g.product(&p2, x).contains(y) {
            p2 = g.extend(&p2, y);
        }
    }
    let mut notes = vec![format!("P_2 has order {}", p2.order())];
    if !is_extraspecial(g, &p2, p) {
        notes.push("P_2 is not extraspecial".into());
        return (false, notes);
    }
    let a2 = quillen_poset_of(g, &p2, p);
    let small = a2.upper_interval(&z).expect("Z is a node of A_p(P_2)");
    let mut images: Vec<Subgroup> = small.nodes().iter().map(|t| g.product(t, x)).collect();
    images.sort();
    let same_nodes = images == up.nodes();
    let same_homology = reduced_homology(&small.order_complex())
        .same_homology(&reduced_homology(&up.order_complex()));
    notes.push(format!(
        "T -> TX {} a bijection onto the interval; homology {}",
        if same_nodes { "is" } else { "is not" },
        if same_homology { "matches" } else { "differs" }
    ));
    (same_nodes && same_homology, notes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, catalog};
    use crate::group::DEFAULT_MAX_ORDER as CAP;
    use crate::poset::quillen_poset;

    fn named(name: &str) -> Group {
        build(&catalog(name).unwrap(), CAP).unwrap()
    }

    #[test]
    fn extraspecial_over_center() {
        let g = named("D8∘D8");
        let z = g.center(&g.whole());
        let v = upper_interval_check(&g, &g.whole(), 2, &z).unwrap();
        assert_eq!(v.claim, "extraspecial-upper-interval");
        assert_eq!(v.predicted, Prediction::Spherical { degree: 1 });
        assert!(v.agrees, "{v:?}");

        let g = named("3^{1+2}");
        let z = g.center(&g.whole());
        let v = upper_interval_check(&g, &g.whole(), 3, &z).unwrap();
        assert_eq!(v.predicted, Prediction::Spherical { degree: 0 });
        assert!(v.agrees);
        // p + 1 maximal tori above Z
        assert_eq!(v.computed.homology.unwrap().betti(0), 3);
    }

    #[test]
    fn isomorphism_to_smaller_extraspecial() {
        let g = named("D8∘D8");
        let a = quillen_poset(&g, 2);
        let z = g.center(&g.whole());
        let x = a
            .nodes()
            .iter()
            .find(|t| t.order() == 4 && z.is_subgroup_of(t))
            .unwrap();
        let v = upper_interval_check(&g, &g.whole(), 2, x).unwrap();
        assert!(v.agrees, "{v:?}");
        assert!(
            v.notes
                .iter()
                .any(|n| n.contains("is a bijection") && n.contains("matches")),
            "{:?}",
            v.notes
        );
    }

    #[test]
    fn conjunctive_when_center_not_contained() {
        let g = named("D8∘D8");
        let a = quillen_poset(&g, 2);
        let z = g.center(&g.whole());
        let x = a
            .nodes()
            .iter()
            .find(|t| t.order() == 2 && **t != z)
            .unwrap();
        let v = upper_interval_check(&g, &g.whole(), 2, x).unwrap();
        assert_eq!(v.predicted, Prediction::Acyclic);
        assert!(v.agrees);
        assert!(v.notes.iter().any(|n| n.contains("X Omega_1(Z(P)) found")));
    }

    #[test]
    fn other_shapes() {
        let g = named("D16×C2");
        let z1 = omega1_center(&g, &g.whole(), 2);
        let v = upper_interval_check(&g, &g.whole(), 2, &z1).unwrap();
        assert_eq!(v.claim, "dihedral-upper-interval");
        assert!(v.agrees, "{v:?}");

        let g = named("SD16∘C4");
        let z1 = omega1_center(&g, &g.whole(), 2);
        assert!(matches!(
            upper_interval_check(&g, &g.whole(), 2, &z1),
            Err(Error::NoApplicablePrediction { .. })
        ));

        let s4 = named("S4");
        let a = quillen_poset(&s4, 2);
        for x in a.nodes() {
            let v = upper_interval_check(&s4, &s4.whole(), 2, x).unwrap();
            assert!(v.agrees, "{v:?}");
        }
        let s3 = named("S3");
        assert!(matches!(
            upper_interval_check(&s3, &s3.whole(), 2, &s3.whole()),
            Err(Error::NodeNotInPoset)
        ));
    }
}
