use serde::{Deserialize, Serialize};

use super::{two_part, FiniteGroup};
use crate::error::{Error, Result};

/// A Sylow 2-subgroup as a standalone group, with `embedding[i]` the element
/// of the ambient group that its element `i` came from.
#[derive(Debug, Clone)]
pub struct Sylow {
    pub group: FiniteGroup,
    pub embedding: Vec<usize>,
}

/// Finds a Sylow 2-subgroup by growing a 2-subgroup `P` one 2-element at a
/// time. Any 2-element normalizing `P` extends it to the 2-group `P<x>`, and
/// while `P` is not Sylow such an element outside `P` exists in `N(P)`.
pub fn sylow_2(g: &FiniteGroup) -> Result<Sylow> {
    if g.order() > 64 {
        return Err(Error::SizeBudget(format!(
            "Sylow search in a group of order {} (limit 64)",
            g.order()
        )));
    }
    let target = two_part(g.order());
    let two_elements: Vec<usize> = g
        .elements()
        .filter(|&x| g.element_order(x).is_power_of_two())
        .collect();

    let mut gens: Vec<usize> = Vec::new();
    let mut members = vec![g.identity()];
    while members.len() < target {
        let mut inside = vec![false; g.order()];
        for &p in &members {
            inside[p] = true;
        }
        let x = two_elements
            .iter()
            .copied()
            .find(|&x| {
                !inside[x]
                    && members
                        .iter()
                        .all(|&p| inside[g.mul(g.mul(x, p), g.inverse(x))])
            })
            .expect("a 2-subgroup that is not Sylow has a 2-element in its normalizer outside it");
        gens.push(x);
        members = g.closure(&gens);
    }
    Ok(Sylow {
        group: g.subgroup(&members)?,
        embedding: members,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoGroupKind {
    Cyclic,
    GeneralizedQuaternion,
    Other,
}

/// Classifies a 2-group as cyclic, generalized quaternion (non-cyclic with a
/// unique involution, order at least 8) or neither.
pub fn recognize_2group(g: &FiniteGroup) -> Result<TwoGroupKind> {
    let m = g.order();
    if !m.is_power_of_two() {
        return Err(Error::NotATwoGroup(m));
    }
    if g.elements().any(|x| g.element_order(x) == m) {
        return Ok(TwoGroupKind::Cyclic);
    }
    let involutions = g.elements().filter(|&x| g.element_order(x) == 2).count();
    if involutions == 1 && m >= 8 {
        Ok(TwoGroupKind::GeneralizedQuaternion)
    } else {
        Ok(TwoGroupKind::Other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, parse_group_spec};

    fn build(s: &str) -> FiniteGroup {
        named_group(&parse_group_spec(s).unwrap()).unwrap()
    }

    /// All subgroups by closing every subset of at most two generators.
    fn subgroup_orders(g: &FiniteGroup) -> Vec<usize> {
        let mut orders = Vec::new();
        for a in g.elements() {
            for b in g.elements() {
                orders.push(g.closure(&[a, b]).len());
            }
        }
        orders
    }

    #[test]
    fn sylow_orders() {
        let s3 = build("symmetric:3");
        let p = sylow_2(&s3).unwrap();
        assert_eq!(p.group.order(), 2);
        // brute force: the largest 2-power subgroup order of S3 is 2
        let best = subgroup_orders(&s3)
            .into_iter()
            .filter(|o| o.is_power_of_two())
            .max();
        assert_eq!(best, Some(2));

        let z12 = build("cyclic:12");
        let p = sylow_2(&z12).unwrap();
        assert_eq!(p.group.order(), 4);
        assert_eq!(recognize_2group(&p.group).unwrap(), TwoGroupKind::Cyclic);

        for odd in ["cyclic:9", "cyclic:15", "product:cyclic:3,cyclic:5"] {
            assert_eq!(sylow_2(&build(odd)).unwrap().group.order(), 1);
        }
    }

    #[test]
    fn sylow_embedding_is_a_subgroup() {
        for s in [
            "symmetric:4",
            "dihedral:6",
            "product:cyclic:3,quaternion:8",
            "dihedral:12",
        ] {
            let g = build(s);
            let p = sylow_2(&g).unwrap();
            assert_eq!(p.group.order(), two_part(g.order()), "{s}");
            for a in 0..p.group.order() {
                for b in 0..p.group.order() {
                    assert_eq!(
                        p.embedding[p.group.mul(a, b)],
                        g.mul(p.embedding[a], p.embedding[b])
                    );
                }
            }
        }
        // S4 has dihedral Sylow 2-subgroups
        let p = sylow_2(&build("symmetric:4")).unwrap();
        assert_eq!(recognize_2group(&p.group).unwrap(), TwoGroupKind::Other);
    }

    #[test]
    fn recognition() {
        assert_eq!(
            recognize_2group(&build("cyclic:8")).unwrap(),
            TwoGroupKind::Cyclic
        );
        assert_eq!(
            recognize_2group(&build("cyclic:1")).unwrap(),
            TwoGroupKind::Cyclic
        );
        assert_eq!(
            recognize_2group(&build("quaternion:16")).unwrap(),
            TwoGroupKind::GeneralizedQuaternion
        );
        assert_eq!(
            recognize_2group(&build("quaternion:8")).unwrap(),
            TwoGroupKind::GeneralizedQuaternion
        );
        assert_eq!(
            recognize_2group(&build("product:cyclic:2,cyclic:2")).unwrap(),
            TwoGroupKind::Other
        );
        assert_eq!(
            recognize_2group(&build("dihedral:4")).unwrap(),
            TwoGroupKind::Other
        );
        assert!(matches!(
            recognize_2group(&build("cyclic:6")),
            Err(Error::NotATwoGroup(6))
        ));
    }
}
