use super::FiniteGroup;
use crate::arith::sparse::SparseMatrix;
use crate::arith::IntMatrix;

/// Rank of `C_n` in the normalized bar complex: `(|G| - 1)^n`.
pub fn chain_rank(g: &FiniteGroup, n: usize) -> usize {
    (g.order() - 1).pow(n as u32)
}

/// Boundary `C_n -> C_{n-1}` of the normalized bar complex with trivial
/// integer coefficients.
///
/// Basis cells are tuples `[g1|...|gn]` of non-identity elements; faces
/// containing the identity are degenerate and dropped:
/// `∂[g1|...|gn] = [g2|...|gn] + Σ (-1)^i [..|g_i g_{i+1}|..] + (-1)^n [g1|...|g_{n-1}]`.
pub fn bar_boundary_sparse(g: &FiniteGroup, n: usize) -> SparseMatrix {
    assert!(n >= 1, "boundary degree starts at 1");
    let base = g.order() - 1;
    let others: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
    let mut rank_of = vec![usize::MAX; g.order()];
    for (r, &x) in others.iter().enumerate() {
        rank_of[x] = r;
    }
    let encode = |cell: &[usize]| cell.iter().fold(0usize, |acc, &x| acc * base + rank_of[x]);

    let mut m = SparseMatrix::new(chain_rank(g, n - 1));
    let mut cell = vec![0usize; n];
    let mut face = Vec::with_capacity(n);
    for idx in 0..chain_rank(g, n) {
        let mut rest = idx;
        for slot in cell.iter_mut().rev() {
            *slot = others[rest % base];
            rest /= base;
        }
        let mut entries = Vec::with_capacity(n + 1);
        entries.push((encode(&cell[1..]), 1));
        for i in 1..n {
            let prod = g.mul(cell[i - 1], cell[i]);
            if prod == g.identity() {
                continue;
            }
            face.clear();
            face.extend_from_slice(&cell[..i - 1]);
            face.push(prod);
            face.extend_from_slice(&cell[i + 1..]);
            entries.push((encode(&face), if i % 2 == 0 { 1 } else { -1 }));
        }
        entries.push((
            encode(&cell[..n - 1]),
            if n.is_multiple_of(2) { 1 } else { -1 },
        ));
        m.push_column(entries);
    }
    m
}

/// Dense form of [`bar_boundary_sparse`].
pub fn bar_boundary(g: &FiniteGroup, n: usize) -> IntMatrix {
    bar_boundary_sparse(g, n).to_dense()
}
