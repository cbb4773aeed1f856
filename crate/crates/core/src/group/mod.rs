//! Finite groups given by multiplication tables, their integral
//! (co)homology through the normalized bar resolution, Sylow 2-subgroups and
//! the holonomy bounding verdict.

mod bar;
mod homology;
mod named;
mod sylow;
mod verdict;

pub use bar::{bar_boundary, bar_boundary_sparse, chain_rank};
pub use homology::{
    cohomology, cohomology_by_cochains, cohomology_with, homology, homology_with, schur_multiplier,
    schur_multiplier_with, AbelianInvariants, Budget,
};
pub use named::{direct_product, named_group, parse_group_spec, GroupSpec, MAX_NAMED_ORDER};
pub use sylow::{recognize_2group, sylow_2, Sylow, TwoGroupKind};
pub use verdict::{holonomy_verdict, holonomy_verdict_with, HolonomyReport, HolonomyVerdict};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group as a multiplication table: `table[a][b]` is the index of `a * b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
    #[serde(skip)]
    inverses: Vec<usize>,
}

#[derive(Deserialize)]
struct RawGroup {
    order: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates the table as a group law (identity, Latin square, associativity).
    pub fn new(identity: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = table.len();
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        if m == 0 {
            return bad("empty table".into());
        }
        if identity >= m {
            return bad(format!("identity {identity} out of range 0..{m}"));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != m {
                return bad(format!("row {a} has {} entries, expected {m}", row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= m) {
                return bad(format!("row {a} contains out-of-range element {x}"));
            }
        }
        for a in 0..m {
            if table[identity][a] != a || table[a][identity] != a {
                return bad(format!(
                    "identity {identity} is not neutral for element {a}"
                ));
            }
        }
        let mut seen = vec![0usize; m];
        for a in 0..m {
            let stamp = a + 1;
            for b in 0..m {
                if seen[table[a][b]] == stamp {
                    return bad(format!("row {a} is not a permutation"));
                }
                seen[table[a][b]] = stamp;
            }
        }
        let mut seen = vec![0usize; m];
        for b in 0..m {
            let stamp = b + 1;
            for a in 0..m {
                if seen[table[a][b]] == stamp {
                    return bad(format!("column {b} is not a permutation"));
                }
                seen[table[a][b]] = stamp;
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = table[a][b];
                for c in 0..m {
                    if table[ab][c] != table[a][table[b][c]] {
                        return bad(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let inverses = (0..m)
            .map(|a| {
                (0..m)
                    .find(|&b| table[a][b] == identity)
                    .expect("Latin square")
            })
            .collect();
        Ok(FiniteGroup {
            order: m,
            identity,
            table,
            inverses,
        })
    }

    /// Parses `{ "order": m, "identity": i, "table": [[...]] }` with 0-based indices.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawGroup = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.order != raw.table.len() {
            return Err(Error::Parse(format!(
                "field \"order\" is {} but \"table\" has {} rows",
                raw.order,
                raw.table.len()
            )));
        }
        Self::new(raw.identity, raw.table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// Smallest subgroup containing `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// The subgroup on `elements` (closed under multiplication) as its own
    /// table, indexed by position in `elements`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<FiniteGroup> {
        let mut pos = vec![usize::MAX; self.order];
        for (i, &e) in elements.iter().enumerate() {
            pos[e] = i;
        }
        let identity = pos[self.identity];
        if identity == usize::MAX {
            return Err(Error::InvalidGroup(
                "subset does not contain the identity".into(),
            ));
        }
        let mut table = Vec::with_capacity(elements.len());
        for &a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in elements {
                let p = pos[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::InvalidGroup("subset is not closed".into()));
                }
                row.push(p);
            }
            table.push(row);
        }
        FiniteGroup::new(identity, table)
    }

    /// The isomorphic group obtained by renaming element `a` to `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteGroup> {
        let m = self.order;
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..m).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument(
                "relabeling is not a permutation".into(),
            ));
        }
        let mut table = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                table[perm[a]][perm[b]] = perm[self.mul(a, b)];
            }
        }
        FiniteGroup::new(perm[self.identity], table)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Largest power of two dividing `n`.
pub(crate) fn two_part(n: usize) -> usize {
    1 << n.trailing_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_table() -> Vec<Vec<usize>> {
        (0..3)
            .map(|a| (0..3).map(|b| (a + b) % 3).collect())
            .collect()
    }

    #[test]
    fn validates_group_laws() {
        assert!(FiniteGroup::new(0, z3_table()).is_ok());
        assert!(FiniteGroup::new(1, z3_table()).is_err());
        let mut t = z3_table();
        t[1][1] = 1;
        assert!(FiniteGroup::new(0, t).is_err());
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::new(0, loop5).unwrap_err();
        assert!(
            matches!(err, Error::InvalidGroup(ref m) if m.contains("associative")),
            "{err}"
        );
    }

    #[test]
    fn json_round_trip_and_diagnostics() {
        let g = FiniteGroup::new(0, z3_table()).unwrap();
        let back = FiniteGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
        let err =
            FiniteGroup::from_json(r#"{"order": 2, "identity": 0, "table": [[0]]}"#).unwrap_err();
        assert!(err.to_string().contains("order"));
        let err = FiniteGroup::from_json(r#"{"order": 1, "identity": 0}"#).unwrap_err();
        assert!(err.to_string().contains("table"));
    }

    #[test]
    fn element_orders_and_closure() {
        let g = FiniteGroup::new(0, z3_table()).unwrap();
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.closure(&[1]), vec![0, 1, 2]);
        assert_eq!(g.inverse(1), 2);
    }

    #[test]
    fn two_parts() {
        assert_eq!(two_part(12), 4);
        assert_eq!(two_part(9), 1);
        assert_eq!(two_part(64), 64);
    }
}
