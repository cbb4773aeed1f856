use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Elementary divisors `d1 | d2 | ...` of an integer matrix.
///
/// `diagonal` has `min(rows, cols)` entries; zeros come last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Divisors that are neither 0 nor 1, i.e. the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && !super::is_unit(d))
            .cloned()
            .collect()
    }
}

/// Smith form together with unimodular `left`, `right` such that
/// `left * m * right` is the diagonal form.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub result: SnfResult,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfDecomposition {
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        IntMatrix::diagonal(rows, cols, &self.result.diagonal)
    }

    /// Checks `left * m * right == diag` and that both transforms have determinant ±1.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let Ok(lm) = self.left.mul(m) else {
            return false;
        };
        let Ok(lmr) = lm.mul(&self.right) else {
            return false;
        };
        if lmr != self.diagonal_matrix(m.rows(), m.cols()) {
            return false;
        }
        let unimodular =
            |u: &IntMatrix| u.determinant().map(|d| super::is_unit(&d)).unwrap_or(false);
        unimodular(&self.left) && unimodular(&self.right)
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    reduce(m.clone(), false).0
}

pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SnfDecomposition {
    let (result, transforms) = reduce(m.clone(), true);
    let (left, right) = transforms.expect("transforms were requested");
    SnfDecomposition {
        result,
        left,
        right,
    }
}

struct Work {
    a: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.left {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.right {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        if let Some(u) = &mut self.left {
            u.add_row_multiple(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        if let Some(v) = &mut self.right {
            v.add_col_multiple(dst, src, f);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(u) = &mut self.left {
            u.negate_row(r);
        }
    }
}

fn reduce(m: IntMatrix, track: bool) -> (SnfResult, Option<(IntMatrix, IntMatrix)>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m,
        left: track.then(|| IntMatrix::identity(rows)),
        right: track.then(|| IntMatrix::identity(cols)),
    };
    let n = rows.min(cols);

    for t in 0..n {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = &w.a[(i, j)];
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < w.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);

        loop {
            let mut clear = true;
            for i in t + 1..rows {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&w.a[(t, t)]);
                w.add_row(i, t, &-q);
                clear &= w.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&w.a[(t, t)]);
                w.add_col(j, t, &-q);
                clear &= w.a[(t, j)].is_zero();
            }
            if !clear {
                // a remainder smaller than the pivot survived; promote it
                let mut best = (t, t);
                for i in t + 1..rows {
                    let v = &w.a[(i, t)];
                    if !v.is_zero() && v.abs() < w.a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let v = &w.a[(t, j)];
                    if !v.is_zero() && v.abs() < w.a[best].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let pivot = w.a[(t, t)].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }

    let diagonal: Vec<BigInt> = (0..n).map(|i| w.a[(i, i)].clone()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    let transforms = match (w.left, w.right) {
        (Some(u), Some(v)) => Some((u, v)),
        _ => None,
    };
    (SnfResult { diagonal, rank }, transforms)
}
