//! Named groups. Linear actions are written as matrices over a prime field
//! acting on row vectors from the right.

use super::{GroupSpec, Word};
use crate::constructions::ExtraspecialSign;
use crate::error::{Error, Result};
use crate::group::Perm;

pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub description: &'static str,
    spec: fn() -> GroupSpec,
}

impl CatalogEntry {
    pub fn spec(&self) -> GroupSpec {
        (self.spec)()
    }
}

pub static CATALOG: &[CatalogEntry] = &[
    entry("S3", &[], "symmetric group on 3 points", || {
        perm(3, &["(1,2,3)", "(1,2)"])
    }),
    entry("S4", &[], "symmetric group on 4 points", || {
        perm(4, &["(1,2,3,4)", "(1,2)"])
    }),
    entry("A4", &[], "alternating group on 4 points", || {
        perm(4, &["(1,2,3)", "(1,2)(3,4)"])
    }),
    entry(
        "A5",
        &[],
        "alternating group on 5 points (not solvable)",
        || perm(5, &["(1,2,3,4,5)", "(1,2,3)"]),
    ),
    entry(
        "SL(2,3)",
        &["SL23"],
        "SL(2,3) on the 8 nonzero vectors of F_3^2",
        sl23,
    ),
    entry("V4", &["C2xC2"], "Klein four group", || {
        GroupSpec::ElementaryAbelian { p: 2, rank: 2 }
    }),
    entry("C4", &[], "cyclic of order 4", || GroupSpec::Cyclic {
        n: 4,
    }),
    entry("D8", &[], "dihedral of order 8", || GroupSpec::Dihedral {
        order: 8,
    }),
    entry("Q8", &[], "quaternion of order 8", || {
        GroupSpec::Quaternion { order: 8 }
    }),
    entry("D10", &[], "dihedral of order 10", || GroupSpec::Dihedral {
        order: 10,
    }),
    entry("SD16", &[], "semidihedral of order 16", || {
        GroupSpec::Semidihedral { order: 16 }
    }),
    entry("D16", &[], "dihedral of order 16", || GroupSpec::Dihedral {
        order: 16,
    }),
    entry(
        "3^{1+2}",
        &["E27", "3^1+2"],
        "extraspecial of order 27, exponent 3",
        || extraspecial(3, None),
    ),
    entry(
        "3^{1+2}_9",
        &["M27", "3^1+2_exp9"],
        "extraspecial of order 27, exponent 9",
        || extraspecial(3, Some(9)),
    ),
    entry(
        "5^{1+2}",
        &["E125", "5^1+2"],
        "extraspecial of order 125, exponent 5",
        || extraspecial(5, None),
    ),
    entry(
        "3^{1+2}×C3",
        &["E27xC3"],
        "extraspecial 3^{1+2} times C3",
        || GroupSpec::DirectProduct {
            factors: vec![extraspecial(3, None), GroupSpec::Cyclic { n: 3 }],
        },
    ),
    entry(
        "D8∘D8",
        &["D8oD8", "2^{1+4}_+"],
        "extraspecial 2^{1+4} of plus type",
        || GroupSpec::Extraspecial {
            p: 2,
            n: 2,
            exponent: None,
            sign: Some(ExtraspecialSign::Plus),
        },
    ),
    entry(
        "D8∘Q8",
        &["D8oQ8", "2^{1+4}_-"],
        "extraspecial 2^{1+4} of minus type",
        || GroupSpec::Extraspecial {
            p: 2,
            n: 2,
            exponent: None,
            sign: Some(ExtraspecialSign::Minus),
        },
    ),
    entry(
        "SD16∘C4",
        &["SD16oC4"],
        "SD16 and C4 glued along x^4 = c^2",
        sd16_c4,
    ),
    entry("D16×C2", &["D16xC2"], "D16 times C2", || {
        GroupSpec::DirectProduct {
            factors: vec![
                GroupSpec::Dihedral { order: 16 },
                GroupSpec::Cyclic { n: 2 },
            ],
        }
    }),
    entry("S3×S3", &["S3xS3"], "direct square of S3", || {
        GroupSpec::DirectProduct {
            factors: vec![named("S3"), named("S3")],
        }
    }),
    entry(
        "C7⋊C3",
        &["C7:C3", "F21"],
        "Frobenius group of order 21",
        || cyclic_action(7, 3, 2),
    ),
    entry(
        "C11⋊C5",
        &["C11:C5", "F55"],
        "Frobenius group of order 55",
        || cyclic_action(11, 5, 3),
    ),
    entry(
        "(C3×C3)⋊C2",
        &["(C3xC3):C2"],
        "inversion acting on C3 x C3",
        || {
            linear_action(
                3,
                2,
                GroupSpec::Cyclic { n: 2 },
                &[vec![vec![2, 0], vec![0, 2]]],
            )
        },
    ),
    entry(
        "(C3×C3)⋊V4",
        &["(C3xC3):V4"],
        "V4 acting on C3 x C3 by diagonal signs",
        || {
            linear_action(
                3,
                2,
                GroupSpec::ElementaryAbelian { p: 2, rank: 2 },
                &[vec![vec![2, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 2]]],
            )
        },
    ),
    entry(
        "(C5×C5)⋊C3",
        &["(C5xC5):C3"],
        "C3 acting fixed-point-freely on C5 x C5",
        || {
            // an element of order 3 in SL(2,5)
            linear_action(
                5,
                2,
                GroupSpec::Cyclic { n: 3 },
                &[vec![vec![0, 1], vec![4, 4]]],
            )
        },
    ),
    entry(
        "(C3×C3)⋊SL(2,3)",
        &["(C3xC3):SL(2,3)", "ASL(2,3)"],
        "SL(2,3) acting naturally on F_3^2",
        || {
            linear_action(
                3,
                2,
                sl23(),
                &SL23_GENS.map(|m| m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()),
            )
        },
    ),
    entry(
        "F7^2⋊D16",
        &["F7^2:D16"],
        "D16 inside GL(2,7) acting on F_7^2",
        f7_d16,
    ),
    entry(
        "(F7^2⋊D16)×S3",
        &["(F7^2:D16)xS3"],
        "F7^2:D16 times S3; needs a cap above 4096",
        || GroupSpec::DirectProduct {
            factors: vec![f7_d16(), named("S3")],
        },
    ),
    entry(
        "F4^3⋊3^{1+2}",
        &["F4^3:E27"],
        "3^{1+2} acting irreducibly on F_4^3",
        f4_e27,
    ),
    entry(
        "F9^2⋊(SD16∘C4)",
        &["F9^2:(SD16oC4)"],
        "SD16oC4 acting faithfully on F_3^4",
        f9_sd16_c4,
    ),
];

const fn entry(
    name: &'static str,
    aliases: &'static [&'static str],
    description: &'static str,
    spec: fn() -> GroupSpec,
) -> CatalogEntry {
    CatalogEntry {
        name,
        aliases,
        description,
        spec,
    }
}

/// Looks a name up among catalog names and aliases. ASCII spellings are
/// accepted: `x` for the direct product sign, `o` for the central product
/// and `:` for the semidirect product.
pub fn catalog(name: &str) -> Result<GroupSpec> {
    let key = ascii_key(name);
    CATALOG
        .iter()
        .find(|e| ascii_key(e.name) == key || e.aliases.iter().any(|a| ascii_key(a) == key))
        .map(CatalogEntry::spec)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

fn ascii_key(s: &str) -> String {
    s.replace('×', "x")
        .replace('∘', "o")
        .replace('⋊', ":")
        .replace(' ', "")
        .to_lowercase()
}

fn named(name: &str) -> GroupSpec {
    GroupSpec::Named {
        name: name.to_string(),
    }
}

fn perm(degree: u32, gens: &[&str]) -> GroupSpec {
    GroupSpec::Perm {
        degree,
        generators: gens.iter().map(|g| g.to_string()).collect(),
    }
}

fn extraspecial(p: u32, exponent: Option<u32>) -> GroupSpec {
    GroupSpec::Extraspecial {
        p,
        n: 1,
        exponent,
        sign: None,
    }
}

fn cyclic_action(n: u32, h: u32, power: i64) -> GroupSpec {
    GroupSpec::SemidirectProduct {
        normal: Box::new(GroupSpec::Cyclic { n }),
        acting: Box::new(GroupSpec::Cyclic { n: h }),
        action: vec![vec![vec![(0, power)]]],
    }
}

type Mat = Vec<Vec<u32>>;

const SL23_GENS: [[[u32; 2]; 2]; 2] = [[[1, 1], [0, 1]], [[1, 0], [1, 1]]];

/// Words for the images of the standard basis: row j of each matrix.
fn matrix_words(mats: &[Mat]) -> Vec<Vec<Word>> {
    mats.iter()
        .map(|m| {
            m.iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|e| *e.1 != 0)
                        .map(|(k, &a)| (k, a as i64))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `F_p^dim x| H` with the i-th generator of `H` acting by `mats[i]`.
fn linear_action(p: u32, dim: u32, acting: GroupSpec, mats: &[Mat]) -> GroupSpec {
    GroupSpec::SemidirectProduct {
        normal: Box::new(GroupSpec::ElementaryAbelian { p, rank: dim }),
        acting: Box::new(acting),
        action: matrix_words(mats),
    }
}

fn mat_mul(p: u32, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u32>() % p)
                .collect()
        })
        .collect()
}

fn mat_pow(p: u32, a: &Mat, e: u32) -> Mat {
    let n = a.len();
    let mut acc: Mat = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect();
    for _ in 0..e {
        acc = mat_mul(p, &acc, a);
    }
    acc
}

fn mat_order(p: u32, a: &Mat) -> u32 {
    let id = mat_pow(p, a, 0);
    let mut x = a.clone();
    let mut k = 1;
    while x != id {
        x = mat_mul(p, &x, a);
        k += 1;
    }
    k
}

fn kron(p: u32, a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    (0..n * m)
        .map(|i| {
            (0..n * m)
                .map(|j| a[i / m][j / m] * b[i % m][j % m] % p)
                .collect()
        })
        .collect()
}

fn gl2(p: u32) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if !(a * d + p * p - b * c).is_multiple_of(p) {
                        out.push(vec![vec![a, b], vec![c, d]]);
                    }
                }
            }
        }
    }
    out
}

/// Lexicographically first `(x, z)` in GL(2, p) with `x` of order `n`, `z`
/// an involution and `z^-1 x z = x^t`.
fn metacyclic_pair(p: u32, n: u32, t: u32) -> (Mat, Mat) {
    let all = gl2(p);
    for x in all.iter().filter(|x| mat_order(p, x) == n) {
        let target = mat_pow(p, x, t);
        if let Some(z) = all
            .iter()
            .find(|z| mat_order(p, z) == 2 && mat_mul(p, &mat_mul(p, z, x), z) == target)
        {
            return (x.clone(), z.clone());
        }
    }
    panic!("no pair of order {n} in GL(2,{p})");
}

/// Permutation of the nonzero vectors of F_p^dim (listed in base-p order,
/// 1-based) induced by `v -> v M`.
fn vector_perm(p: u32, m: &Mat) -> Perm {
    let dim = m.len() as u32;
    let count = p.pow(dim);
    let decode = |mut x: u32| {
        let mut v = vec![0; dim as usize];
        for slot in v.iter_mut().rev() {
            *slot = x % p;
            x /= p;
        }
        v
    };
    let encode = |v: &[u32]| v.iter().fold(0, |acc, &c| acc * p + c);
    let images = (1..count)
        .map(|x| {
            let v = decode(x);
            let w: Vec<u32> = (0..dim as usize)
                .map(|j| (0..dim as usize).map(|i| v[i] * m[i][j]).sum::<u32>() % p)
                .collect();
            encode(&w) - 1
        })
        .collect();
    Perm::from_images(images).expect("invertible matrix")
}

fn sl23() -> GroupSpec {
    let gens =
        SL23_GENS.map(|m| vector_perm(3, &m.iter().map(|r| r.to_vec()).collect()).to_string());
    GroupSpec::Perm {
        degree: 8,
        generators: gens.to_vec(),
    }
}

fn sd16_c4() -> GroupSpec {
    GroupSpec::CentralProduct {
        left: Box::new(GroupSpec::Semidihedral { order: 16 }),
        right: Box::new(GroupSpec::Cyclic { n: 4 }),
        identify: vec![(vec![(0, 4)], vec![(0, 2)])],
    }
}

fn f7_d16() -> GroupSpec {
    let (x, z) = metacyclic_pair(7, 8, 7);
    linear_action(7, 2, GroupSpec::Dihedral { order: 16 }, &[x, z])
}

fn f9_sd16_c4() -> GroupSpec {
    // SD16 is a Sylow 2-subgroup of GL(2,3); c squares to -1
    let (x, z) = metacyclic_pair(3, 8, 3);
    let id = vec![vec![1, 0], vec![0, 1]];
    let c = vec![vec![0, 2], vec![1, 0]];
    linear_action(
        3,
        4,
        sd16_c4(),
        &[kron(3, &x, &id), kron(3, &z, &id), kron(3, &id, &c)],
    )
}

/// F_4 = F_2[w]/(w^2 + w + 1) with elements `c0 + c1 w` stored as bits.
fn gf4_mul(a: u32, b: u32) -> u32 {
    let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
    // (a0 + a1 w)(b0 + b1 w) with w^2 = w + 1
    let c0 = (a0 * b0 + a1 * b1) % 2;
    let c1 = (a0 * b1 + a1 * b0 + a1 * b1) % 2;
    c0 | c1 << 1
}

fn f4_e27() -> GroupSpec {
    let (one, w, w2) = (1, 2, 3);
    let a = [[one, 0, 0], [0, w, 0], [0, 0, w2]];
    let b = [[0, one, 0], [0, 0, one], [one, 0, 0]];
    // basis of F_4^3 over F_2: index 2k + m is w^m e_k
    let expand = |m: &[[u32; 3]; 3]| -> Mat {
        (0..6)
            .map(|row| {
                let (k, e) = (row / 2, row % 2);
                let scalar = if e == 0 { one } else { w };
                let mut out = vec![0; 6];
                for l in 0..3 {
                    let v = gf4_mul(scalar, m[k][l]);
                    out[2 * l] = v & 1;
                    out[2 * l + 1] = v >> 1;
                }
                out
            })
            .collect()
    };
    linear_action(2, 6, extraspecial(3, None), &[expand(&a), expand(&b)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build;
    use crate::group::DEFAULT_MAX_ORDER as CAP;

    #[test]
    fn catalog_orders() {
        let expect = [
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("A5", 60),
            ("SL(2,3)", 24),
            ("D8", 8),
            ("Q8", 8),
            ("SD16", 16),
            ("D16", 16),
            ("SD16∘C4", 32),
            ("D16×C2", 32),
            ("3^{1+2}", 27),
            ("3^{1+2}_9", 27),
            ("5^{1+2}", 125),
            ("3^{1+2}×C3", 81),
            ("(C3×C3)⋊SL(2,3)", 216),
            ("D8∘D8", 32),
            ("D8∘Q8", 32),
            ("C7⋊C3", 21),
            ("C11⋊C5", 55),
            ("(C3×C3)⋊C2", 18),
            ("(C3×C3)⋊V4", 36),
            ("(C5×C5)⋊C3", 75),
            ("S3×S3", 36),
            ("F7^2⋊D16", 784),
            ("F4^3⋊3^{1+2}", 1728),
            ("F9^2⋊(SD16∘C4)", 2592),
        ];
        for (name, order) in expect {
            let g = build(&catalog(name).unwrap(), CAP).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(g.order(), order, "{name}");
        }
        let big = build(&catalog("(F7^2⋊D16)×S3").unwrap(), 8192).unwrap();
        assert_eq!(big.order(), 4704);
        assert!(matches!(
            build(&catalog("(F7^2:D16)xS3").unwrap(), CAP),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(catalog("SD16oC4").unwrap(), catalog("SD16∘C4").unwrap());
        assert_eq!(catalog("d8oq8").unwrap(), catalog("D8∘Q8").unwrap());
        assert_eq!(catalog("E27").unwrap(), catalog("3^{1+2}").unwrap());
        assert!(matches!(catalog("M24"), Err(Error::UnknownName(_))));
        for e in CATALOG {
            assert!(catalog(e.name).is_ok());
        }
    }

    #[test]
    fn linear_groups_have_expected_sylows() {
        let g = build(&catalog("SL(2,3)").unwrap(), CAP).unwrap();
        let s = g.sylow_subgroup(2);
        assert_eq!(s.order(), 8);
        assert_eq!(g.elements_of_order(&s, 2).len(), 1);
        let asl = build(&catalog("ASL(2,3)").unwrap(), CAP).unwrap();
        let p = asl.sylow_subgroup(3);
        let ps = asl.subgroup_as_group(&p);
        assert_eq!(ps.center(&ps.whole()).order(), 3);
        assert_eq!(ps.exponent(&ps.whole()), 3);
        assert_eq!(asl.o_p(3).order(), 9);

        let f = build(&catalog("F4^3⋊3^{1+2}").unwrap(), CAP).unwrap();
        assert_eq!(f.o_p(3).order(), 1);
        assert_eq!(f.o_p_prime(3).order(), 64);
        let sd = build(&catalog("F9^2⋊(SD16∘C4)").unwrap(), CAP).unwrap();
        assert_eq!(sd.o_p(2).order(), 1);
        assert_eq!(sd.o_p_prime(2).order(), 81);
        let d = build(&catalog("F7^2⋊D16").unwrap(), CAP).unwrap();
        assert_eq!(d.o_p(2).order(), 1);
    }
}
