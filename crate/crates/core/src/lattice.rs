//! Integer row reduction: echelon forms with tracked transforms, Hermite
//! normal form, and left kernels.
//!
//! Rows are split into a short dense *key* (the columns being reduced) and a
//! sparse *tail* that receives the same unimodular operations. Transforms of
//! valuation matrices are mostly zero, so the sparse tail keeps the J-scan
//! cheap even with a few hundred generators.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Int;

/// Sparse integer vector, sorted by index, no explicit zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseVec(Vec<(usize, Int)>);

impl SparseVec {
    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i, Int::one())])
    }

    pub fn from_dense(v: &[Int]) -> Self {
        SparseVec(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<Int> {
        let mut out = vec![Int::zero(); len];
        for (i, x) in &self.0 {
            out[*i] = x.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> Int {
        match self.0.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.0[pos].1.clone(),
            Err(_) => Int::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Int)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `self − q·other`
    fn sub_scaled(&self, q: &Int, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let take_left = j >= other.0.len() || (i < self.0.len() && self.0[i].0 < other.0[j].0);
            let take_right = i >= self.0.len() || (j < other.0.len() && other.0[j].0 < self.0[i].0);
            if take_left {
                out.push(self.0[i].clone());
                i += 1;
            } else if take_right {
                out.push((other.0[j].0, -(q * &other.0[j].1)));
                j += 1;
            } else {
                let v = &self.0[i].1 - q * &other.0[j].1;
                if !v.is_zero() {
                    out.push((self.0[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec(out)
    }

    fn negate(&mut self) {
        for (_, x) in &mut self.0 {
            *x = -x.clone();
        }
    }

    /// Linear combination `Σ cᵢ·rowsᵢ`.
    pub fn combine(coeffs: &SparseVec, rows: &[SparseVec]) -> SparseVec {
        let mut acc = SparseVec::default();
        for (i, c) in coeffs.iter() {
            acc = acc.sub_scaled(&-c.clone(), &rows[*i]);
        }
        acc
    }
}

/// A row being reduced: dense key columns plus a sparse tail.
#[derive(Debug, Clone)]
pub struct KeyedRow {
    pub key: Vec<Int>,
    pub tail: SparseVec,
}

impl KeyedRow {
    fn sub_scaled(&mut self, q: &Int, other: &KeyedRow) {
        for (x, y) in self.key.iter_mut().zip(&other.key) {
            *x -= q * y;
        }
        self.tail = self.tail.sub_scaled(q, &other.tail);
    }

    fn negate(&mut self) {
        for x in &mut self.key {
            *x = -x.clone();
        }
        self.tail.negate();
    }
}

/// Row echelon form of the key columns by unimodular row operations (Euclid
/// with the smallest nonzero pivot). Pivots end up positive. Returns the
/// pivot columns; rows past the rank have an all-zero key.
pub fn echelon(rows: &mut [KeyedRow]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.key.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = rows[r..]
                .iter()
                .enumerate()
                .filter(|(_, row)| !row.key[col].is_zero())
                .min_by(|(_, x), (_, y)| x.key[col].abs().cmp(&y.key[col].abs()))
                .map(|(i, _)| i + r);
            let Some(best) = best else { break };
            rows.swap(r, best);
            if rows[r].key[col].is_negative() {
                rows[r].negate();
            }
            let (head, rest) = rows.split_at_mut(r + 1);
            let pivot = &head[r];
            let mut clean = true;
            for row in rest.iter_mut() {
                if row.key[col].is_zero() {
                    continue;
                }
                let q = row.key[col].div_floor(&pivot.key[col]);
                row.sub_scaled(&q, pivot);
                if !row.key[col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !rows[r].key[col].is_zero() {
            pivots.push(col);
            r += 1;
        }
    }
    pivots
}

/// Basis of the left kernel `{x : x·A = 0}` of an `n × c` integer matrix, as
/// sparse vectors of length `n`.
pub fn left_kernel_sparse(matrix: &[Vec<Int>]) -> Vec<SparseVec> {
    let mut rows: Vec<KeyedRow> = matrix
        .iter()
        .enumerate()
        .map(|(i, r)| KeyedRow { key: r.clone(), tail: SparseVec::unit(i) })
        .collect();
    let rank = echelon(&mut rows).len();
    rows.drain(rank..).map(|r| r.tail).collect()
}

pub fn left_kernel(matrix: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = matrix.len();
    left_kernel_sparse(matrix).iter().map(|v| v.to_dense(n)).collect()
}

/// Hermite normal form of the lattice spanned by the rows: nonzero rows only,
/// positive pivots strictly increasing by column, entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hnf(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut keyed: Vec<KeyedRow> = rows
        .iter()
        .map(|r| KeyedRow { key: r.clone(), tail: SparseVec::default() })
        .collect();
    let pivots = echelon(&mut keyed);
    keyed.truncate(pivots.len());
    for (i, &col) in pivots.iter().enumerate() {
        let (head, rest) = keyed.split_at_mut(i);
        let pivot = &rest[0];
        for row in head.iter_mut() {
            let q = row.key[col].div_floor(&pivot.key[col]);
            if !q.is_zero() {
                row.sub_scaled(&q, pivot);
            }
        }
    }
    keyed.into_iter().map(|r| r.key).collect()
}

pub fn is_hnf(rows: &[Vec<Int>]) -> bool {
    let mut last: Option<usize> = None;
    for (i, row) in rows.iter().enumerate() {
        let Some(col) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if last.is_some_and(|l| col <= l) || !row[col].is_positive() {
            return false;
        }
        for above in &rows[..i] {
            if above[col].is_negative() || above[col] >= row[col] {
                return false;
            }
        }
        last = Some(col);
    }
    true
}
