//! Smith normal form over the integers.
//!
//! Sparse Gaussian elimination on unit pivots runs first in checked `i64`
//! arithmetic. Whatever is left without a unit pivot, or whatever remained
//! when a coefficient overflowed, goes through a dense reduction over
//! arbitrary-precision integers.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Row-major sparse integer matrix. Each row is sorted by column with no
/// explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    /// Duplicate entries in a row are summed.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<(u32, i64)>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(u32, i64)> = Vec::with_capacity(r.len());
                for (c, v) in r {
                    assert!((c as usize) < ncols, "column {c} out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|e| e.1 != 0);
                out
            })
            .collect::<Vec<_>>();
        SparseMatrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn from_dense(m: &[Vec<i64>]) -> Self {
        let ncols = m.first().map_or(0, Vec::len);
        let rows = m
            .iter()
            .map(|r| r.iter().enumerate().map(|(c, &v)| (c as u32, v)).collect())
            .collect();
        Self::from_rows(ncols, rows)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(u32, i64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        entry(&self.rows[i], j as u32).unwrap_or(0)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                rows[c as usize].push((i as u32, v));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols]; self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                out[i][c as usize] = v;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, rhs.nrows, "shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: Vec<(u32, i64)> = Vec::new();
                for &(k, a) in r {
                    for &(c, b) in &rhs.rows[k as usize] {
                        acc.push((c, a * b));
                    }
                }
                acc
            })
            .collect();
        Self::from_rows(rhs.ncols, rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let mut e = Eliminator::new(m);
    e.run();
    let units = e.rank;
    let rest = e.remaining_dense();
    let mut factors = vec![BigInt::one(); units];
    factors.extend(normalize_factors(dense_snf(rest)));
    SmithForm {
        rank: factors.len(),
        invariant_factors: factors,
    }
}

fn entry(row: &[(u32, i64)], c: u32) -> Option<i64> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|i| row[i].1)
}

struct Overflow;

struct Eliminator {
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
    row_alive: Vec<bool>,
    col_rows: Vec<Vec<u32>>,
    col_nnz: Vec<u32>,
    col_alive: Vec<bool>,
    col_version: Vec<u32>,
    heap: BinaryHeap<Reverse<(u32, u32, u32)>>,
    rank: usize,
}

impl Eliminator {
    fn new(m: &SparseMatrix) -> Self {
        let mut col_rows = vec![Vec::new(); m.ncols];
        for (i, r) in m.rows.iter().enumerate() {
            for &(c, _) in r {
                col_rows[c as usize].push(i as u32);
            }
        }
        let col_nnz: Vec<u32> = col_rows.iter().map(|r| r.len() as u32).collect();
        let heap = col_nnz
            .iter()
            .enumerate()
            .map(|(c, &n)| Reverse((n, c as u32, 0)))
            .collect();
        Eliminator {
            ncols: m.ncols,
            rows: m.rows.clone(),
            row_alive: vec![true; m.nrows],
            col_rows,
            col_nnz,
            col_alive: vec![true; m.ncols],
            col_version: vec![0; m.ncols],
            heap,
            rank: 0,
        }
    }

    fn touch(&mut self, c: usize) {
        self.col_version[c] += 1;
        self.heap
            .push(Reverse((self.col_nnz[c], c as u32, self.col_version[c])));
    }

    /// Eliminates unit pivots, sparsest column first, until none is left
    /// or an update would overflow.
    fn run(&mut self) {
        while let Some(Reverse((nnz, j, ver))) = self.heap.pop() {
            let j = j as usize;
            if !self.col_alive[j] || ver != self.col_version[j] {
                continue;
            }
            if nnz == 0 {
                self.col_alive[j] = false;
                continue;
            }
            let mut cand = std::mem::take(&mut self.col_rows[j]);
            cand.sort_unstable();
            cand.dedup();
            cand.retain(|&r| {
                self.row_alive[r as usize] && entry(&self.rows[r as usize], j as u32).is_some()
            });
            let pivot = cand
                .iter()
                .copied()
                .filter(|&r| entry(&self.rows[r as usize], j as u32).is_some_and(|v| v.abs() == 1))
                .min_by_key(|&r| (self.rows[r as usize].len(), r));
            self.col_rows[j] = cand;
            let Some(r) = pivot else { continue };
            if self.eliminate(r as usize, j).is_err() {
                return;
            }
        }
    }

    fn eliminate(&mut self, r: usize, j: usize) -> Result<(), Overflow> {
        let pivot_row = self.rows[r].clone();
        let p = entry(&pivot_row, j as u32).unwrap();
        let others: Vec<u32> = self.col_rows[j]
            .iter()
            .copied()
            .filter(|&k| k as usize != r)
            .collect();
        for k in others {
            let k = k as usize;
            let a = entry(&self.rows[k], j as u32).unwrap();
            let f = a.checked_mul(p).ok_or(Overflow)?;
            let new = self.combine(k, &pivot_row, f)?;
            self.rows[k] = new;
        }
        for &(c, _) in &pivot_row {
            self.col_nnz[c as usize] -= 1;
        }
        self.rows[r].clear();
        self.row_alive[r] = false;
        self.col_alive[j] = false;
        self.col_rows[j].clear();
        self.rank += 1;
        for &(c, _) in &pivot_row {
            if c as usize != j {
                self.touch(c as usize);
            }
        }
        Ok(())
    }

    /// `rows[k] - f * pivot`, with column counts kept in sync.
    fn combine(
        &mut self,
        k: usize,
        pivot: &[(u32, i64)],
        f: i64,
    ) -> Result<Vec<(u32, i64)>, Overflow> {
        let old = &self.rows[k];
        let mut out = Vec::with_capacity(old.len() + pivot.len());
        let mut added = Vec::new();
        let mut removed = Vec::new();
        let (mut i, mut t) = (0, 0);
        while i < old.len() || t < pivot.len() {
            let oc = old.get(i).map_or(u32::MAX, |e| e.0);
            let pc = pivot.get(t).map_or(u32::MAX, |e| e.0);
            if oc < pc {
                out.push(old[i]);
                i += 1;
            } else {
                let delta = f.checked_mul(pivot[t].1).ok_or(Overflow)?;
                if oc == pc {
                    let v = old[i].1.checked_sub(delta).ok_or(Overflow)?;
                    if v == 0 {
                        removed.push(oc);
                    } else {
                        out.push((oc, v));
                    }
                    i += 1;
                } else {
                    let v = delta.checked_neg().ok_or(Overflow)?;
                    out.push((pc, v));
                    added.push(pc);
                }
                t += 1;
            }
        }
        for c in removed {
            self.col_nnz[c as usize] -= 1;
        }
        for c in added {
            self.col_nnz[c as usize] += 1;
            self.col_rows[c as usize].push(k as u32);
        }
        Ok(out)
    }

    fn remaining_dense(&self) -> Vec<Vec<BigInt>> {
        let mut col_map = vec![usize::MAX; self.ncols];
        let mut ncols = 0;
        for r in self
            .rows
            .iter()
            .zip(&self.row_alive)
            .filter(|x| *x.1)
            .map(|x| x.0)
        {
            for &(c, _) in r {
                if col_map[c as usize] == usize::MAX {
                    col_map[c as usize] = ncols;
                    ncols += 1;
                }
            }
        }
        self.rows
            .iter()
            .zip(&self.row_alive)
            .filter(|(r, &alive)| alive && !r.is_empty())
            .map(|(r, _)| {
                let mut dense = vec![BigInt::zero(); ncols];
                for &(c, v) in r {
                    dense[col_map[c as usize]] = BigInt::from(v);
                }
                dense
            })
            .collect()
    }
}

/// Diagonal of the Smith form of a dense matrix (nonzero entries only).
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_nonzero(&a, t, t..m, t..n) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x -= &q * y;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a[t..].iter_mut() {
                        let y = row[t].clone();
                        row[j] -= &q * y;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // move the smallest leftover of row t / column t to the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                }
                if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            let d = a[t][t].clone();
            let bad = (t + 1..m).find(|&i| a[i][t + 1..].iter().any(|x| !(x % &d).is_zero()));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn min_nonzero(
    a: &[Vec<BigInt>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[i][j];
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Rewrites a list of nonzero diagonal entries into divisibility order by
/// repeated gcd/lcm exchange.
pub fn normalize_factors(d: Vec<BigInt>) -> Vec<BigInt> {
    let (ones, mut rest): (Vec<BigInt>, Vec<BigInt>) = d
        .into_iter()
        .map(|x| x.abs())
        .filter(|x| !x.is_zero())
        .partition(|x| x.is_one());
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = ones;
    out.extend(rest);
    out
}

/// Same as [`normalize_factors`] for machine integers, dropping ones.
pub fn normalize_torsion(d: &[u64]) -> Vec<u64> {
    let big = d.iter().map(|&x| BigInt::from(x)).collect();
    normalize_factors(big)
        .into_iter()
        .filter(|x| !x.is_one())
        .map(|x| x.to_u64().expect("torsion coefficient fits in u64"))
        .collect()
}
