use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::SimplicialComplex;

/// A finite poset on `0..n` given by its strict order relation.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinitePoset({} nodes)", self.len())
    }
}

impl FinitePoset {
    /// `less(a, b)` must be a strict partial order.
    pub fn from_relation(n: usize, less: impl Fn(usize, usize) -> bool) -> Self {
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in 0..n {
                if a != b && less(a, b) {
                    below[b].insert(a);
                    above[a].insert(b);
                }
            }
        }
        FinitePoset { below, above }
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b) || self.lt(b, a)
    }

    pub fn below(&self, x: usize) -> Vec<usize> {
        self.below[x].ones().collect()
    }

    pub fn above(&self, x: usize) -> Vec<usize> {
        self.above[x].ones().collect()
    }

    /// Nodes strictly between `r` and `s`.
    pub fn open_interval(&self, r: usize, s: usize) -> Vec<usize> {
        let mut b = self.above[r].clone();
        b.intersect_with(&self.below[s]);
        b.ones().collect()
    }

    /// Induced subposet on `nodes`; node `i` of the result is `nodes[i]`.
    pub fn induced(&self, nodes: &[usize]) -> FinitePoset {
        FinitePoset::from_relation(nodes.len(), |a, b| self.lt(nodes[a], nodes[b]))
    }

    /// Hasse diagram edges `(a, b)` with `b` covering `a`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.above[a].ones() {
                let mut between = self.above[a].clone();
                between.intersect_with(&self.below[b]);
                if between.is_clear() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.above[x].is_clear())
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.below[x].is_clear())
            .collect()
    }

    /// Least upper bound of `a` and `b` inside the poset, if one exists.
    pub fn join_of(&self, a: usize, b: usize) -> Option<usize> {
        let mut ub = self.above[a].clone();
        ub.insert(a);
        let mut ub_b = self.above[b].clone();
        ub_b.insert(b);
        ub.intersect_with(&ub_b);
        ub.ones()
            .find(|&u| ub.ones().all(|v| v == u || self.lt(u, v)))
    }

    /// Number of nodes in a longest chain.
    pub fn height(&self) -> usize {
        let order = self.linear_extension();
        let mut h = vec![1usize; self.len()];
        for &x in &order {
            for y in self.above[x].ones() {
                h[y] = h[y].max(h[x] + 1);
            }
        }
        h.into_iter().max().unwrap_or(0)
    }

    /// Nodes sorted so that every node comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| self.below[x].count_ones(..));
        order
    }

    /// Chains `x_0 < ... < x_k` as simplices on the node ids.
    pub fn order_complex(&self) -> SimplicialComplex {
        let n = self.len();
        let per_start: Vec<Vec<Vec<Vec<u32>>>> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
                let mut chain = vec![x];
                self.extend_chains(&mut chain, &mut by_dim);
                by_dim
            })
            .collect();
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        for part in per_start {
            for (k, s) in part.into_iter().enumerate() {
                if by_dim.len() <= k {
                    by_dim.resize(k + 1, Vec::new());
                }
                by_dim[k].extend(s);
            }
        }
        SimplicialComplex::from_closed(by_dim)
    }

    fn extend_chains(&self, chain: &mut Vec<usize>, out: &mut Vec<Vec<Vec<u32>>>) {
        let k = chain.len() - 1;
        if out.len() <= k {
            out.resize(k + 1, Vec::new());
        }
        let mut s: Vec<u32> = chain.iter().map(|&v| v as u32).collect();
        s.sort_unstable();
        out[k].push(s);
        let top = *chain.last().unwrap();
        for y in self.above[top].ones() {
            chain.push(y);
            self.extend_chains(chain, out);
            chain.pop();
        }
    }
}
