//! Sparse integer matrices and elementary divisors by unit-pivot elimination.
//!
//! Boundary matrices of bar complexes are very sparse and most of their rank
//! is carried by ±1 entries. Each ±1 pivot splits off a unit divisor
//! (`M ~ 1 ⊕ M'`) without touching divisibility, so the eliminator removes
//! unit pivots greedily (lightest column first, lightest row within it) and
//! hands whatever is left to the dense Smith form.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, SnfResult};

/// Column-major sparse integer matrix with small entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        assert!(rows <= u32::MAX as usize, "too many rows");
        SparseMatrix {
            rows,
            cols: Vec::new(),
        }
    }

    /// Appends a column given as (row, value) pairs; duplicates are summed.
    pub fn push_column(&mut self, mut entries: Vec<(usize, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut col: Vec<(u32, i64)> = Vec::with_capacity(entries.len());
        for (r, v) in entries {
            assert!(r < self.rows, "row {r} out of range");
            match col.last_mut() {
                Some(last) if last.0 as usize == r => last.1 += v,
                _ => col.push((r as u32, v)),
            }
        }
        col.retain(|e| e.1 != 0);
        self.cols.push(col);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut buckets: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                buckets[r as usize].push((j, v));
            }
        }
        let mut t = SparseMatrix::new(self.cols.len());
        for b in buckets {
            t.push_column(b);
        }
        t
    }

    /// `self * other`, both sparse.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols.len(), other.rows, "dimension mismatch");
        let mut out = SparseMatrix::new(self.rows);
        for col in &other.cols {
            let mut acc = Vec::new();
            for &(k, b) in col {
                for &(i, a) in &self.cols[k as usize] {
                    acc.push((i as usize, a * b));
                }
            }
            out.push_column(acc);
        }
        out
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                m[(r as usize, j)] = BigInt::from(v);
            }
        }
        m
    }
}

/// Elementary divisors of a sparse matrix, same contract as [`smith_normal_form`].
pub fn elementary_divisors(m: &SparseMatrix) -> SnfResult {
    let small: Vec<Vec<(u32, i64)>> = m.cols.clone();
    let (units, rest) = match eliminate(m.rows, small) {
        Some(done) => done,
        None => {
            let wide = m
                .cols
                .iter()
                .map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect())
                .collect();
            eliminate(m.rows, wide).expect("bigint arithmetic cannot overflow")
        }
    };
    let core = smith_normal_form(&rest);
    let mut diagonal = vec![BigInt::one(); units];
    diagonal.extend(core.diagonal.into_iter().filter(|d| !d.is_zero()));
    let rank = diagonal.len();
    diagonal.resize(m.rows.min(m.cols.len()), BigInt::zero());
    SnfResult { diagonal, rank }
}

trait Entry: Clone + Zero + One + PartialEq + Signed + CheckedMul + CheckedSub {
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Removes unit pivots. Returns the pivot count and the leftover block as a
/// dense matrix, or `None` if `T` overflowed.
fn eliminate<T: Entry>(nrows: usize, mut cols: Vec<Vec<(u32, T)>>) -> Option<(usize, IntMatrix)> {
    let mut col_alive = vec![true; cols.len()];
    let mut row_alive = vec![true; nrows];
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); nrows];
    let mut heap = BinaryHeap::with_capacity(cols.len());
    for (j, col) in cols.iter().enumerate() {
        if col.is_empty() {
            col_alive[j] = false;
            continue;
        }
        for &(r, _) in col {
            row_cols[r as usize].push(j as u32);
        }
        heap.push(Reverse((col.len(), j as u32)));
    }

    let mut pivots = 0usize;
    let mut seen_stamp = vec![0u32; cols.len()];
    let mut stamp = 0u32;
    while let Some(Reverse((weight, j))) = heap.pop() {
        let j = j as usize;
        if !col_alive[j] || cols[j].len() != weight {
            continue;
        }
        if weight == 0 {
            col_alive[j] = false;
            continue;
        }
        let pick = cols[j]
            .iter()
            .filter(|(_, v)| v.abs().is_one())
            .min_by_key(|(r, _)| row_cols[*r as usize].len())
            .cloned();
        let Some((prow, pval)) = pick else {
            continue;
        };

        col_alive[j] = false;
        row_alive[prow as usize] = false;
        pivots += 1;
        let pivot_col = std::mem::take(&mut cols[j]);

        stamp = stamp.wrapping_add(1);
        let targets = std::mem::take(&mut row_cols[prow as usize]);
        for k in targets {
            let k = k as usize;
            if !col_alive[k] || seen_stamp[k] == stamp {
                continue;
            }
            seen_stamp[k] = stamp;
            let Ok(pos) = cols[k].binary_search_by_key(&prow, |e| e.0) else {
                continue;
            };
            // col_k -= (a / pval) * pivot_col, and 1/pval == pval for a unit
            let factor = cols[k][pos].1.checked_mul(&pval)?;
            let merged = axpy(&cols[k], &pivot_col, &factor, |r| {
                row_cols[r as usize].push(k as u32);
            })?;
            cols[k] = merged;
            if cols[k].is_empty() {
                col_alive[k] = false;
            } else {
                heap.push(Reverse((cols[k].len(), k as u32)));
            }
        }
    }

    // every pivot cleared its row from all live columns
    let live_cols: Vec<usize> = (0..cols.len())
        .filter(|&j| col_alive[j] && !cols[j].is_empty())
        .collect();
    let mut row_index = vec![usize::MAX; nrows];
    let mut nlive_rows = 0;
    for &j in &live_cols {
        for &(r, _) in &cols[j] {
            debug_assert!(row_alive[r as usize]);
            if row_index[r as usize] == usize::MAX {
                row_index[r as usize] = nlive_rows;
                nlive_rows += 1;
            }
        }
    }
    let mut rest = IntMatrix::zeros(nlive_rows, live_cols.len());
    for (jj, &j) in live_cols.iter().enumerate() {
        for (r, v) in &cols[j] {
            rest[(row_index[*r as usize], jj)] = v.to_big();
        }
    }
    Some((pivots, rest))
}

/// `x - factor * y` on sorted sparse vectors; `on_new` sees rows that `x` lacked.
fn axpy<T: Entry>(
    x: &[(u32, T)],
    y: &[(u32, T)],
    factor: &T,
    mut on_new: impl FnMut(u32),
) -> Option<Vec<(u32, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        let take_x = b >= y.len() || (a < x.len() && x[a].0 < y[b].0);
        let take_y = a >= x.len() || (b < y.len() && y[b].0 < x[a].0);
        if take_x {
            out.push(x[a].clone());
            a += 1;
        } else if take_y {
            let v = T::zero().checked_sub(&factor.checked_mul(&y[b].1)?)?;
            on_new(y[b].0);
            out.push((y[b].0, v));
            b += 1;
        } else {
            let v = x[a].1.checked_sub(&factor.checked_mul(&y[b].1)?)?;
            if !v.is_zero() {
                out.push((x[a].0, v));
            }
            a += 1;
            b += 1;
        }
    }
    Some(out)
}
