//! Reduced integral homology of simplicial complexes, plus sphericity and
//! Cohen-Macaulay checks built on it.
//!
//! All checks are homology-level: "contractible" is read as acyclic and a
//! wedge of r-spheres as free homology concentrated in degree r.

mod cm;
pub mod snf;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cm::{is_cohen_macaulay, poset_cohen_macaulay};
pub use snf::{smith_normal_form, SmithForm, SparseMatrix};

use crate::complex::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub betti: u64,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<u64>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Reduced homology listed for every degree from -1 up to the dimension of
/// the complex it came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyProfile {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    /// Profile with the given Betti numbers starting at degree -1.
    pub fn from_betti(betti: &[u64]) -> Self {
        HomologyProfile {
            degrees: betti
                .iter()
                .enumerate()
                .map(|(i, &b)| DegreeHomology {
                    degree: i as i64 - 1,
                    betti: b,
                    torsion: Vec::new(),
                })
                .collect(),
        }
    }

    /// Homology of the empty complex: one copy of Z in degree -1.
    pub fn empty_complex() -> Self {
        Self::from_betti(&[1])
    }

    /// Homology of an r-sphere (r = -1 is the empty complex).
    pub fn sphere(r: i64) -> Self {
        let mut b = vec![0; (r + 2) as usize];
        b[(r + 1) as usize] = 1;
        Self::from_betti(&b)
    }

    pub fn top_degree(&self) -> i64 {
        self.degrees.len() as i64 - 2
    }

    pub fn get(&self, q: i64) -> Option<&DegreeHomology> {
        usize::try_from(q + 1)
            .ok()
            .and_then(|i| self.degrees.get(i))
    }

    pub fn betti(&self, q: i64) -> u64 {
        self.get(q).map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, q: i64) -> &[u64] {
        self.get(q).map_or(&[], |d| &d.torsion)
    }

    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.degrees
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| d.degree)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees.iter().all(DegreeHomology::is_zero)
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|d| !d.torsion.is_empty())
    }

    /// Reduced Euler characteristic from the Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| {
                if d.degree.rem_euclid(2) == 0 {
                    d.betti as i64
                } else {
                    -(d.betti as i64)
                }
            })
            .sum()
    }

    /// Drops trailing zero degrees (degree -1 is always kept).
    pub fn trimmed(&self) -> HomologyProfile {
        let mut degrees = self.degrees.clone();
        while degrees.len() > 1 && degrees.last().is_some_and(DegreeHomology::is_zero) {
            degrees.pop();
        }
        HomologyProfile { degrees }
    }

    /// Equal homology groups in every degree, regardless of how many zero
    /// degrees each profile lists.
    pub fn same_homology(&self, other: &HomologyProfile) -> bool {
        self.trimmed() == other.trimmed()
    }

    /// Homology of the join, from the join form of the Künneth formula:
    /// `H~_{n+1}(A*B) = sum_{i+j=n} H~_i(A) (x) H~_j(B) + sum_{i+j=n-1} Tor(H~_i(A), H~_j(B))`.
    pub fn join(&self, other: &HomologyProfile) -> HomologyProfile {
        let top = self.top_degree() + other.top_degree() + 1;
        // one spare slot for Tor terms from torsion in top degrees
        let mut betti = vec![0u64; (top + 3) as usize];
        let mut torsion: Vec<Vec<u64>> = vec![Vec::new(); (top + 3) as usize];
        for a in &self.degrees {
            for b in &other.degrees {
                let n = a.degree + b.degree;
                let slot = (n + 2) as usize; // degree n + 1
                betti[slot] += a.betti * b.betti;
                for &x in &a.torsion {
                    torsion[slot].extend(std::iter::repeat_n(x, b.betti as usize));
                }
                for &y in &b.torsion {
                    torsion[slot].extend(std::iter::repeat_n(y, a.betti as usize));
                }
                for &x in &a.torsion {
                    for &y in &b.torsion {
                        let g = num_integer::gcd(x, y);
                        torsion[slot].push(g);
                        // Tor lands one degree higher
                        torsion[slot + 1].push(g);
                    }
                }
            }
        }
        if torsion.last().is_some_and(|t| t.iter().all(|&g| g <= 1)) {
            betti.pop();
            torsion.pop();
        }
        HomologyProfile {
            degrees: betti
                .into_iter()
                .zip(torsion)
                .enumerate()
                .map(|(i, (b, t))| DegreeHomology {
                    degree: i as i64 - 1,
                    betti: b,
                    torsion: snf::normalize_torsion(
                        &t.into_iter().filter(|&g| g > 1).collect::<Vec<_>>(),
                    ),
                })
                .collect(),
        }
    }
}

/// Failure location for a sphericity or Cohen-Macaulay check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The simplex whose link failed; empty for the complex itself.
    pub simplex: Vec<u32>,
    /// A degree with unexpected homology.
    pub degree: i64,
    pub expected_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphericityVerdict {
    /// `Some(r)` when homology vanishes outside degree r.
    pub weakly_spherical_in: Option<i64>,
    /// Acyclic, or free homology concentrated in degree r.
    pub homology_spherical: bool,
    /// Only evaluated by the Cohen-Macaulay checks; false otherwise.
    pub cohen_macaulay: bool,
    pub witness: Option<Witness>,
}

/// The k-th boundary map, rows indexed by (k-1)-simplices and columns by
/// k-simplices. For k = 0 this is the augmentation onto the empty simplex.
pub fn boundary_matrix(c: &SimplicialComplex, k: usize) -> SparseMatrix {
    coboundary_rows(c, k).transpose()
}

/// Transpose of the k-th boundary map (one row per k-simplex).
fn coboundary_rows(c: &SimplicialComplex, k: usize) -> SparseMatrix {
    if k == 0 {
        return SparseMatrix::from_rows(1, (0..c.count(0)).map(|_| vec![(0, 1)]).collect());
    }
    let rows = c
        .simplices(k)
        .map(|s| {
            let mut face = Vec::with_capacity(k);
            (0..=k)
                .map(|skip| {
                    face.clear();
                    face.extend(
                        s.iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &v)| v),
                    );
                    let idx = c.index_of(&face).expect("complex closed under faces");
                    (idx as u32, if skip % 2 == 0 { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    SparseMatrix::from_rows(c.count(k as i64 - 1), rows)
}

/// Exact reduced integral homology.
pub fn reduced_homology(c: &SimplicialComplex) -> HomologyProfile {
    let d = c.dim();
    // forms[k] is the Smith form of the boundary k -> k-1, k = 0..=d
    let forms: Vec<(usize, Vec<u64>)> = (0..=d.max(-1))
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return (usize::from(c.count(0) > 0), Vec::new());
            }
            let f = smith_normal_form(&coboundary_rows(c, k as usize));
            let tors = f
                .torsion()
                .iter()
                .map(|t| t.to_u64().expect("torsion fits in u64"))
                .collect();
            (f.rank, tors)
        })
        .collect();
    let rank = |k: i64| {
        if k < 0 || k > d {
            0
        } else {
            forms[k as usize].0
        }
    };
    let degrees = (-1..=d)
        .map(|q| {
            let betti = c.count(q) - rank(q) - rank(q + 1);
            let torsion = if q < d {
                forms[(q + 1) as usize].1.clone()
            } else {
                Vec::new()
            };
            DegreeHomology {
                degree: q,
                betti: betti as u64,
                torsion,
            }
        })
        .collect();
    HomologyProfile { degrees }
}

/// Sphericity of a profile in degree r.
pub fn profile_sphericity(h: &HomologyProfile, r: i64) -> SphericityVerdict {
    let off = h.degrees.iter().find(|d| d.degree != r && !d.is_zero());
    let weakly = off.is_none();
    let free_top = h.torsion(r).is_empty();
    let homology_spherical = weakly && free_top;
    let witness = match off {
        Some(d) => Some(Witness {
            simplex: Vec::new(),
            degree: d.degree,
            expected_degree: r,
        }),
        None if !free_top => Some(Witness {
            simplex: Vec::new(),
            degree: r,
            expected_degree: r,
        }),
        None => None,
    };
    SphericityVerdict {
        weakly_spherical_in: weakly.then_some(r),
        homology_spherical,
        cohen_macaulay: false,
        witness,
    }
}

pub fn sphericity(c: &SimplicialComplex, r: i64) -> SphericityVerdict {
    profile_sphericity(&reduced_homology(c), r)
}
