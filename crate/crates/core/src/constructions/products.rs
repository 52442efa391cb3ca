use std::collections::VecDeque;

use super::BuiltGroup;
use crate::error::{Error, Result};
use crate::group::{Elem, Group, Perm, Quotient};

fn embed(parts: &[(&Group, Elem)]) -> Perm {
    let mut images = Vec::new();
    let mut offset = 0u32;
    for (g, x) in parts {
        images.extend(g.perm(*x).images().iter().map(|&i| i + offset));
        offset += g.degree() as u32;
    }
    Perm::from_images(images).expect("blockwise permutation")
}

/// Spec generators of every factor, each acting on its own block of points.
pub fn direct_product(factors: &[BuiltGroup], cap: usize) -> Result<BuiltGroup> {
    let order = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.group.order()));
    if order.is_none_or(|o| o > cap) {
        return Err(Error::GroupTooLarge { cap });
    }
    if factors.is_empty() {
        return BuiltGroup::from_perms(1, &[], cap, "natural");
    }
    let mut perms = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for &x in &f.generators {
            let parts: Vec<(&Group, Elem)> = factors
                .iter()
                .enumerate()
                .map(|(j, h)| (&h.group, if i == j { x } else { 0 }))
                .collect();
            perms.push(embed(&parts));
        }
    }
    let degree = factors.iter().map(|f| f.group.degree()).sum();
    BuiltGroup::from_perms(degree, &perms, cap, "product")
}

/// `(A x B) / K` with `K` generated by `(a, b^-1)` over the given pairs.
/// Each `a` must be central in `A`, each `b` central in `B`, and `a -> b`
/// must extend to an isomorphism of the generated subgroups.
pub fn central_product(
    a: &BuiltGroup,
    b: &BuiltGroup,
    pairs: &[(Elem, Elem)],
    cap: usize,
) -> Result<BuiltGroup> {
    let (ga, gb) = (&a.group, &b.group);
    for &(x, y) in pairs {
        if !ga.generators().iter().all(|&g| ga.commute(g, x)) {
            return Err(Error::NotCentral(format!(
                "{} is not central in the left factor",
                ga.perm(x)
            )));
        }
        if !gb.generators().iter().all(|&g| gb.commute(g, y)) {
            return Err(Error::NotCentral(format!(
                "{} is not central in the right factor",
                gb.perm(y)
            )));
        }
    }
    let za = ga.subgroup_generated(&pairs.iter().map(|p| p.0).collect::<Vec<_>>());
    let full = ga.order() * gb.order();
    if full / za.order() > cap {
        return Err(Error::GroupTooLarge { cap });
    }
    let both = direct_product(&[a.clone(), b.clone()], usize::MAX)?;
    let d = &both.group;
    let k_gens: Vec<Elem> = pairs
        .iter()
        .map(|&(x, y)| d.id_of(&embed(&[(ga, x), (gb, gb.inv(y))])).unwrap())
        .collect();
    let k = d.subgroup_generated(&k_gens);
    let deg_a = ga.degree() as u32;
    for &z in k.elements().iter().skip(1) {
        let fixes_left = (0..deg_a).all(|pt| d.apply(z, pt) == pt);
        let fixes_right = (deg_a..d.degree() as u32).all(|pt| d.apply(z, pt) == pt);
        if fixes_left || fixes_right {
            return Err(Error::PairingNotIsomorphism(
                "the identification collapses a nontrivial element of one factor".into(),
            ));
        }
    }
    let q = Quotient::new(d, &k);
    let generators = both.generators.iter().map(|&x| q.project(x)).collect();
    let mut group = q.group;
    if !k.is_trivial() {
        group.set_representation("coset");
    }
    Ok(BuiltGroup { group, generators })
}

/// Table of the endomorphism of `n` sending spec generator `j` to
/// `images[j]`, or `None` if no such homomorphism exists.
fn extend_to_endomorphism(n: &BuiltGroup, images: &[Elem]) -> Option<Vec<Elem>> {
    let g = &n.group;
    let mut phi = vec![Elem::MAX; g.order()];
    phi[0] = 0;
    let mut queue = VecDeque::from([0 as Elem]);
    while let Some(x) = queue.pop_front() {
        for (j, &s) in n.generators.iter().enumerate() {
            let y = g.mul(x, s);
            let img = g.mul(phi[x as usize], images[j]);
            if phi[y as usize] == Elem::MAX {
                phi[y as usize] = img;
                queue.push_back(y);
            } else if phi[y as usize] != img {
                return None;
            }
        }
    }
    Some(phi)
}

/// `N x| H` acting on the points of `N` (affinely) and of `H` (by right
/// translation). `images[i][j]` is where the i-th generator of `H` sends
/// the j-th generator of `N`.
pub fn semidirect_product(
    n: &BuiltGroup,
    h: &BuiltGroup,
    images: &[Vec<Elem>],
    cap: usize,
) -> Result<BuiltGroup> {
    let (gn, gh) = (&n.group, &h.group);
    let order = gn
        .order()
        .checked_mul(gh.order())
        .filter(|&o| o <= cap)
        .ok_or(Error::GroupTooLarge { cap })?;
    let mut autos = Vec::new();
    for (i, imgs) in images.iter().enumerate() {
        let phi = extend_to_endomorphism(n, imgs).ok_or_else(|| {
            Error::ActionNotHomomorphism(format!(
                "generator {i} of the acting group does not define an endomorphism"
            ))
        })?;
        let mut seen = vec![false; phi.len()];
        for &y in &phi {
            if std::mem::replace(&mut seen[y as usize], true) {
                return Err(Error::ActionNotHomomorphism(format!(
                    "generator {i} acts non-injectively"
                )));
            }
        }
        autos.push(phi);
    }
    let (dn, dh) = (gn.order() as u32, gh.order() as u32);
    let mut perms = Vec::new();
    for &s in &n.generators {
        let images = (0..dn).map(|x| gn.mul(x, s)).chain(dn..dn + dh).collect();
        perms.push(Perm::from_images(images)?);
    }
    for (i, &s) in h.generators.iter().enumerate() {
        let images = (0..dn)
            .map(|x| autos[i][x as usize])
            .chain((0..dh).map(|y| dn + gh.mul(y, s)))
            .collect();
        perms.push(Perm::from_images(images)?);
    }
    let built = match BuiltGroup::from_perms((dn + dh) as usize, &perms, order, "affine") {
        Err(Error::GroupTooLarge { .. }) => None,
        Err(e) => return Err(e),
        Ok(b) if b.group.order() != order => None,
        Ok(b) => Some(b),
    };
    built.ok_or_else(|| {
        Error::ActionNotHomomorphism(
            "the generator images violate a relation of the acting group".into(),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::super::families::{cyclic, dihedral, quaternion, semidihedral};
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER as CAP;

    fn center_of(b: &BuiltGroup) -> Vec<Elem> {
        let g = &b.group;
        g.center(&g.whole()).elements().to_vec()
    }

    #[test]
    fn central_product_examples() {
        let d8 = dihedral(8, CAP).unwrap();
        let z = center_of(&d8)[1];
        let dd = central_product(&d8, &d8, &[(z, z)], CAP).unwrap();
        assert_eq!(dd.group.order(), 32);
        assert_eq!(dd.group.center(&dd.group.whole()).order(), 2);

        let c2 = cyclic(2, CAP).unwrap();
        let collapsed = central_product(&d8, &c2, &[(z, c2.generators[0])], CAP).unwrap();
        assert_eq!(collapsed.group.order(), 8);
        assert_eq!(collapsed.group.fingerprint(), d8.group.fingerprint());

        let sd = semidihedral(16, CAP).unwrap();
        let c4 = cyclic(4, CAP).unwrap();
        let x4 = sd.group.pow(sd.generators[0], 4);
        let c2sq = c4.group.pow(c4.generators[0], 2);
        let p = central_product(&sd, &c4, &[(x4, c2sq)], CAP).unwrap();
        let g = &p.group;
        assert_eq!(g.order() * 2, 16 * 4);
        assert_eq!(g.omega1(&g.whole(), 2).unwrap(), g.whole());
        let d = g.derived_subgroup(&g.whole());
        assert_eq!(d.order(), 4);
        assert!(g.is_cyclic(&d));
    }

    #[test]
    fn central_product_errors() {
        let d8 = dihedral(8, CAP).unwrap();
        let c4 = cyclic(4, CAP).unwrap();
        let reflection = d8.generators[1];
        assert!(matches!(
            central_product(&d8, &c4, &[(reflection, c4.generators[0])], CAP),
            Err(Error::NotCentral(_))
        ));
        // an order-2 element paired with an order-4 element
        let z = center_of(&d8)[1];
        assert!(matches!(
            central_product(&d8, &c4, &[(z, c4.generators[0])], CAP),
            Err(Error::PairingNotIsomorphism(_))
        ));
        let q8 = quaternion(8, CAP).unwrap();
        let zq = center_of(&q8)[1];
        assert_eq!(
            central_product(&d8, &q8, &[(z, zq)], CAP)
                .unwrap()
                .group
                .order(),
            32
        );
    }

    #[test]
    fn semidirect_examples() {
        let c3 = cyclic(3, CAP).unwrap();
        let c2 = cyclic(2, CAP).unwrap();
        let x = c3.generators[0];
        let s3 = semidirect_product(&c3, &c2, &[vec![c3.group.inv(x)]], CAP).unwrap();
        assert_eq!(s3.group.order(), 6);
        assert_eq!(s3.group.center(&s3.group.whole()).order(), 1);

        let c7 = cyclic(7, CAP).unwrap();
        let y = c7.generators[0];
        let g = semidirect_product(&c7, &c3, &[vec![c7.group.pow(y, 2)]], CAP).unwrap();
        assert_eq!(g.group.order(), 21);
        assert!(!g.group.is_abelian(&g.group.whole()));
        let n = g.group.subgroup_generated(&[g.generators[0]]);
        assert!(g.group.is_normal(&g.group.whole(), &n));
    }

    #[test]
    fn semidirect_rejects_non_homomorphisms() {
        let c7 = cyclic(7, CAP).unwrap();
        let c3 = cyclic(3, CAP).unwrap();
        let y = c7.generators[0];
        // x -> x^3 has order 6 in Aut(C7), so C3 cannot act this way
        assert!(matches!(
            semidirect_product(&c7, &c3, &[vec![c7.group.pow(y, 3)]], CAP),
            Err(Error::ActionNotHomomorphism(_))
        ));
        // sending the generator to the identity is not injective
        assert!(matches!(
            semidirect_product(&c7, &c3, &[vec![0]], CAP),
            Err(Error::ActionNotHomomorphism(_))
        ));
    }
}
