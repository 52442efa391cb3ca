//! Abstract simplicial complexes stored face-by-dimension.
//!
//! Each dimension keeps its simplices as sorted vertex tuples in one flat,
//! lexicographically sorted buffer, so face lookup is a binary search. The
//! empty complex (only the empty simplex) has dimension -1.

mod poset;

use std::fmt::Write as _;

use rustc_hash::FxHashMap;

pub use poset::FinitePoset;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
struct FaceList {
    width: usize,
    data: Vec<u32>,
}

impl FaceList {
    fn new(width: usize, mut simplices: Vec<Vec<u32>>) -> Self {
        simplices.sort_unstable();
        simplices.dedup();
        let mut data = Vec::with_capacity(simplices.len() * width);
        for s in simplices {
            debug_assert_eq!(s.len(), width);
            data.extend(s);
        }
        FaceList { width, data }
    }

    fn len(&self) -> usize {
        self.data.len() / self.width
    }

    fn get(&self, i: usize) -> &[u32] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    fn index_of(&self, s: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(s) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks_exact(self.width)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    faces: Vec<FaceList>,
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialComplex(f-vector {:?})", self.f_vector())
    }
}

impl SimplicialComplex {
    /// The complex whose only face is the empty simplex.
    pub fn empty() -> Self {
        SimplicialComplex { faces: Vec::new() }
    }

    /// Closure of a list of facets under taking faces.
    pub fn from_facets<I, S>(facets: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        for f in facets {
            let mut f = f.as_ref().to_vec();
            f.sort_unstable();
            f.dedup();
            let n = f.len();
            if n == 0 {
                continue;
            }
            assert!(n <= 24, "facet too large to expand");
            for mask in 1u32..(1 << n) {
                let face: Vec<u32> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, Vec::new());
                }
                by_dim[d].push(face);
            }
        }
        Self::from_closed(by_dim)
    }

    /// Builds from per-dimension simplex lists that are already closed
    /// under faces (vertex tuples sorted ascending).
    pub(crate) fn from_closed(by_dim: Vec<Vec<Vec<u32>>>) -> Self {
        let mut faces: Vec<FaceList> = by_dim
            .into_iter()
            .enumerate()
            .map(|(d, s)| FaceList::new(d + 1, s))
            .collect();
        while faces.last().is_some_and(|f| f.len() == 0) {
            faces.pop();
        }
        SimplicialComplex { faces }
    }

    pub fn dim(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Number of `k`-simplices; `k = -1` counts the empty simplex.
    pub fn count(&self, k: i64) -> usize {
        if k == -1 {
            1
        } else if k < -1 || k > self.dim() {
            0
        } else {
            self.faces[k as usize].len()
        }
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(FaceList::len).collect()
    }

    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &[u32]> {
        self.faces.get(k).into_iter().flat_map(FaceList::iter)
    }

    pub fn simplex(&self, k: usize, i: usize) -> &[u32] {
        self.faces[k].get(i)
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        if s.is_empty() {
            return Some(0);
        }
        self.faces.get(s.len() - 1)?.index_of(s)
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.simplices(0).map(|v| v[0]).collect()
    }

    /// Maximal faces, in order of dimension and then lexicographically.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut covered: Vec<Vec<bool>> = self.faces.iter().map(|f| vec![false; f.len()]).collect();
        for k in 1..self.faces.len() {
            for s in self.faces[k].iter() {
                for skip in 0..s.len() {
                    let face: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    let idx = self.faces[k - 1].index_of(&face).unwrap();
                    covered[k - 1][idx] = true;
                }
            }
        }
        let mut out = Vec::new();
        for (k, f) in self.faces.iter().enumerate() {
            for (i, s) in f.iter().enumerate() {
                if !covered[k][i] {
                    out.push(s.to_vec());
                }
            }
        }
        out
    }

    /// All simplices including the empty one, grouped by dimension.
    pub fn all_simplices(&self) -> impl Iterator<Item = &[u32]> {
        std::iter::once(&[][..]).chain(self.faces.iter().flat_map(FaceList::iter))
    }

    /// `{ tau : tau and sigma disjoint, tau + sigma a face }`.
    pub fn link(&self, sigma: &[u32]) -> Result<SimplicialComplex> {
        let mut sigma = sigma.to_vec();
        sigma.sort_unstable();
        if !self.contains(&sigma) {
            return Err(Error::SimplexNotInComplex(sigma));
        }
        let s = sigma.len();
        if s == 0 {
            return Ok(self.clone());
        }
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        for k in s - 1..self.faces.len() {
            let mut level = Vec::new();
            for rho in self.faces[k].iter() {
                if is_sorted_subset(&sigma, rho) {
                    level.push(
                        rho.iter()
                            .copied()
                            .filter(|v| sigma.binary_search(v).is_err())
                            .collect(),
                    );
                }
            }
            if level.is_empty() {
                break;
            }
            by_dim.push(level);
        }
        // by_dim[0] holds sigma itself minus sigma = empty tuple
        let by_dim = by_dim.into_iter().skip(1).collect();
        Ok(SimplicialComplex::from_closed(by_dim))
    }

    /// Renames vertices through `f`, which must be injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> SimplicialComplex {
        let by_dim = self
            .faces
            .iter()
            .map(|fl| {
                fl.iter()
                    .map(|s| {
                        let mut t: Vec<u32> = s.iter().map(|&v| f(v)).collect();
                        t.sort_unstable();
                        t
                    })
                    .collect()
            })
            .collect();
        SimplicialComplex::from_closed(by_dim)
    }

    /// Vertices relabeled to `0..n` in increasing order.
    pub fn normalized(&self) -> SimplicialComplex {
        let map: FxHashMap<u32, u32> = self
            .vertices()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();
        self.relabel(|v| map[&v])
    }

    /// Join: simplices `sigma + tau` with either part possibly empty. The
    /// second factor's vertices are shifted above the first's, and the join
    /// with the empty complex is the other factor.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let a = self.normalized();
        let b = other.normalized();
        let shift = a.count(0) as u32;
        let mut by_dim: Vec<Vec<Vec<u32>>> =
            vec![Vec::new(); (a.dim() + b.dim() + 2).max(0) as usize];
        for s in a.all_simplices() {
            for t in b.all_simplices() {
                if s.is_empty() && t.is_empty() {
                    continue;
                }
                let mut u = s.to_vec();
                u.extend(t.iter().map(|&v| v + shift));
                by_dim[u.len() - 1].push(u);
            }
        }
        SimplicialComplex::from_closed(by_dim)
    }

    /// Glues the pieces of `w` onto its base, each at one vertex.
    pub fn wedge(w: &WedgeAssembly) -> Result<SimplicialComplex> {
        let base = &w.base;
        let mut next = base.vertices().iter().max().map_or(0, |&m| m + 1);
        let mut by_dim: Vec<Vec<Vec<u32>>> = base
            .faces
            .iter()
            .map(|f| f.iter().map(<[u32]>::to_vec).collect())
            .collect();
        for (idx, piece) in w.pieces.iter().enumerate() {
            if !base.contains(&[piece.attach_to]) {
                return Err(Error::BadAttachment(format!(
                    "piece {idx}: base has no vertex {}",
                    piece.attach_to
                )));
            }
            let verts = piece.complex.vertices();
            let Some(&anchor) = verts.first() else {
                return Err(Error::BadAttachment(format!("piece {idx} has no vertices")));
            };
            let mut map = FxHashMap::default();
            for v in verts {
                if v == anchor {
                    map.insert(v, piece.attach_to);
                } else {
                    map.insert(v, next);
                    next += 1;
                }
            }
            let moved = piece.complex.relabel(|v| map[&v]);
            for (k, f) in moved.faces.iter().enumerate() {
                if by_dim.len() <= k {
                    by_dim.resize(k + 1, Vec::new());
                }
                by_dim[k].extend(f.iter().map(<[u32]>::to_vec));
            }
        }
        Ok(SimplicialComplex::from_closed(by_dim))
    }

    /// One simplex per line as space-separated vertex ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.faces {
            for s in f.iter() {
                let line: Vec<String> = s.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        }
        out
    }

    /// Parses a simplex or facet list (blank lines and `#` comments ignored).
    pub fn from_text(text: &str) -> Result<SimplicialComplex> {
        let mut facets = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let simplex = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("line {}: bad vertex `{t}`", n + 1)))
                })
                .collect::<Result<Vec<u32>>>()?;
            facets.push(simplex);
        }
        Ok(SimplicialComplex::from_facets(facets))
    }
}

/// A base complex and pieces glued to it. Each piece is attached at its
/// smallest vertex, which is identified with `attach_to` in the base.
#[derive(Debug, Clone)]
pub struct WedgeAssembly {
    pub base: SimplicialComplex,
    pub pieces: Vec<WedgePiece>,
}

#[derive(Debug, Clone)]
pub struct WedgePiece {
    pub complex: SimplicialComplex,
    pub attach_to: u32,
}

fn is_sorted_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}
