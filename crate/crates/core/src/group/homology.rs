use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::bar::{bar_boundary_sparse, chain_rank};
use super::{two_part, FiniteGroup};
use crate::arith::sparse::elementary_divisors;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ Z/d2 ⊕ ...`
/// with `d1 | d2 | ...` and every `di >= 2`. The trivial group has no divisors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub divisors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn torsion(divisors: Vec<u64>) -> Self {
        AbelianInvariants {
            free_rank: 0,
            divisors,
        }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.divisors.is_empty()
    }

    /// Order of the group, `None` when it is infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.divisors.iter().product())
    }

    /// The 2-primary part of the torsion subgroup.
    pub fn two_primary(&self) -> AbelianInvariants {
        let divisors = self
            .divisors
            .iter()
            .map(|&d| two_part(d as usize) as u64)
            .filter(|&d| d > 1)
            .collect();
        AbelianInvariants::torsion(divisors)
    }

    fn from_torsion(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let divisors = torsion
            .iter()
            .map(|d| {
                d.to_u64()
                    .ok_or_else(|| Error::SizeBudget(format!("divisor {d} exceeds 64 bits")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AbelianInvariants {
            free_rank,
            divisors,
        })
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.divisors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Size limits for bar-complex computations. The cost is driven by the
/// number of cells `(|G| - 1)^(n + 1)` in the top chain group touched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest order for `H_1`, `H_2` and cohomology through the UCT route.
    pub max_order: usize,
    /// Largest order for `H_3`, which needs `∂_4`.
    pub max_order_degree3: usize,
    /// Largest order for the direct cochain computation of `H^3`.
    pub max_order_cochain3: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_order: 16,
            max_order_degree3: 16,
            max_order_cochain3: 8,
        }
    }
}

impl Budget {
    fn check(&self, g: &FiniteGroup, limit: usize, what: &str) -> Result<()> {
        if g.order() > limit {
            Err(Error::SizeBudget(format!(
                "{what} for a group of order {} (limit {limit})",
                g.order()
            )))
        } else {
            Ok(())
        }
    }
}

fn check_degree(n: usize) -> Result<()> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("degree {n} outside 1..=3")))
    }
}

/// `H_n(G; Z)` under the default [`Budget`].
pub fn homology(g: &FiniteGroup, n: usize) -> Result<AbelianInvariants> {
    homology_with(g, n, &Budget::default())
}

pub fn homology_with(g: &FiniteGroup, n: usize, budget: &Budget) -> Result<AbelianInvariants> {
    check_degree(n)?;
    let limit = if n == 3 {
        budget.max_order_degree3
    } else {
        budget.max_order
    };
    budget.check(g, limit, &format!("H_{n}"))?;

    // torsion of ker ∂_n / im ∂_{n+1} is the torsion of coker ∂_{n+1}
    let rank_in = if n == 1 {
        0
    } else {
        elementary_divisors(&bar_boundary_sparse(g, n)).rank
    };
    let out = elementary_divisors(&bar_boundary_sparse(g, n + 1));
    let free = chain_rank(g, n) - rank_in - out.rank;
    AbelianInvariants::from_torsion(free, out.torsion())
}

/// `H^n(G; Z)` under the default [`Budget`].
pub fn cohomology(g: &FiniteGroup, n: usize) -> Result<AbelianInvariants> {
    cohomology_with(g, n, &Budget::default())
}

/// `H^n(G; Z)` from the universal coefficient theorem: rational cohomology
/// of a finite group vanishes in positive degrees, so `H^n ≅ tors H_{n-1}`.
/// When the budget allows, the dual cochain complex is reduced directly as
/// an independent check.
pub fn cohomology_with(g: &FiniteGroup, n: usize, budget: &Budget) -> Result<AbelianInvariants> {
    check_degree(n)?;
    let via_uct = if n == 1 {
        AbelianInvariants::trivial()
    } else {
        AbelianInvariants::torsion(homology_with(g, n - 1, budget)?.divisors)
    };
    let direct_limit = if n == 3 {
        budget.max_order_cochain3
    } else {
        budget.max_order
    };
    if g.order() <= direct_limit {
        let direct = cochain_cohomology(g, n)?;
        if direct != via_uct {
            return Err(Error::CrossCheck(format!(
                "H^{n}: universal coefficients give {via_uct}, cochains give {direct}"
            )));
        }
    }
    Ok(via_uct)
}

/// `H^n(G; Z)` computed only from the dual cochain complex.
pub fn cohomology_by_cochains(
    g: &FiniteGroup,
    n: usize,
    budget: &Budget,
) -> Result<AbelianInvariants> {
    check_degree(n)?;
    let limit = if n == 3 {
        budget.max_order_cochain3
    } else {
        budget.max_order
    };
    budget.check(g, limit, &format!("cochain H^{n}"))?;
    cochain_cohomology(g, n)
}

/// `ker δ^n / im δ^{n-1}` with `δ^k = ∂_{k+1}^T`.
fn cochain_cohomology(g: &FiniteGroup, n: usize) -> Result<AbelianInvariants> {
    let incoming = elementary_divisors(&bar_boundary_sparse(g, n).transpose());
    let outgoing = elementary_divisors(&bar_boundary_sparse(g, n + 1).transpose());
    let free = chain_rank(g, n) - incoming.rank - outgoing.rank;
    AbelianInvariants::from_torsion(free, incoming.torsion())
}

/// The Schur multiplier `H_2(G; Z)`.
pub fn schur_multiplier(g: &FiniteGroup) -> Result<AbelianInvariants> {
    schur_multiplier_with(g, &Budget::default())
}

pub fn schur_multiplier_with(g: &FiniteGroup, budget: &Budget) -> Result<AbelianInvariants> {
    homology_with(g, 2, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, parse_group_spec};

    fn build(s: &str) -> FiniteGroup {
        named_group(&parse_group_spec(s).unwrap()).unwrap()
    }

    fn inv(d: &[u64]) -> AbelianInvariants {
        AbelianInvariants::torsion(d.to_vec())
    }

    #[test]
    fn small_examples() {
        assert_eq!(homology(&build("cyclic:2"), 1).unwrap(), inv(&[2]));
        assert_eq!(homology(&build("cyclic:2"), 2).unwrap(), inv(&[]));
        assert_eq!(
            homology(&build("product:cyclic:2,cyclic:2"), 1).unwrap(),
            inv(&[2, 2])
        );
        assert_eq!(
            homology(&build("product:cyclic:2,cyclic:2"), 2).unwrap(),
            inv(&[2])
        );
        assert_eq!(homology(&build("symmetric:3"), 1).unwrap(), inv(&[2]));
        assert_eq!(homology(&build("quaternion:8"), 1).unwrap(), inv(&[2, 2]));
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(cohomology(&build("quaternion:8"), 3).unwrap(), inv(&[]));
        assert_eq!(cohomology(&build("cyclic:2"), 3).unwrap(), inv(&[]));
        assert_eq!(
            cohomology(&build("product:cyclic:2,cyclic:2"), 3).unwrap(),
            inv(&[2])
        );
        assert_eq!(cohomology(&build("cyclic:6"), 2).unwrap(), inv(&[6]));
        assert_eq!(cohomology(&build("cyclic:5"), 1).unwrap(), inv(&[]));
    }

    #[test]
    fn budget_and_degree_errors() {
        let big = build("cyclic:17");
        assert!(matches!(homology(&big, 2), Err(Error::SizeBudget(_))));
        assert!(matches!(
            homology(&build("cyclic:2"), 4),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            homology(&build("cyclic:2"), 0),
            Err(Error::InvalidArgument(_))
        ));
        let roomy = Budget {
            max_order: 20,
            ..Budget::default()
        };
        assert_eq!(homology_with(&big, 2, &roomy).unwrap(), inv(&[]));
    }

    #[test]
    fn two_primary_part() {
        assert_eq!(inv(&[6, 12]).two_primary(), inv(&[2, 4]));
        assert_eq!(inv(&[3, 9]).two_primary(), inv(&[]));
        assert_eq!(inv(&[2, 4]).to_string(), "Z/2 + Z/4");
        assert_eq!(inv(&[]).to_string(), "0");
        assert_eq!(inv(&[2, 4]).order(), Some(8));
    }
}
