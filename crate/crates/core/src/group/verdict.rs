use serde::{Deserialize, Serialize};

use super::homology::{schur_multiplier_with, AbelianInvariants, Budget};
use super::sylow::{recognize_2group, sylow_2, TwoGroupKind};
use super::FiniteGroup;
use crate::error::{Error, Result};

/// Which sufficient condition for bounding fired. Failing both conditions
/// decides nothing, so there is no negative outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HolonomyVerdict {
    /// `H_2(Syl_2 G)` vanishes, so the manifold is spin^c and bounds.
    BoundsSpincRoute,
    /// The Sylow 2-subgroup is cyclic or generalized quaternion.
    BoundsDfRoute,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolonomyReport {
    pub verdict: HolonomyVerdict,
    pub group_order: usize,
    pub sylow_order: usize,
    pub sylow_kind: TwoGroupKind,
    pub sylow_multiplier: AbelianInvariants,
    pub spinc_route: bool,
    pub df_route: bool,
    /// 2-primary part of `H_2(G)`, when `G` itself fits the budget.
    pub group_multiplier_two_part: Option<AbelianInvariants>,
    pub notes: Vec<String>,
}

pub fn holonomy_verdict(g: &FiniteGroup) -> Result<HolonomyReport> {
    holonomy_verdict_with(g, &Budget::default())
}

pub fn holonomy_verdict_with(g: &FiniteGroup, budget: &Budget) -> Result<HolonomyReport> {
    let sylow = sylow_2(g)?;
    let p = &sylow.group;
    if p.order() > budget.max_order {
        return Err(Error::SizeBudget(format!(
            "Sylow 2-subgroup of order {} (limit {})",
            p.order(),
            budget.max_order
        )));
    }
    let sylow_multiplier = schur_multiplier_with(p, budget)?;
    let sylow_kind = recognize_2group(p)?;
    let spinc_route = sylow_multiplier.is_trivial();
    let df_route = matches!(
        sylow_kind,
        TwoGroupKind::Cyclic | TwoGroupKind::GeneralizedQuaternion
    );

    let mut notes = Vec::new();
    let group_multiplier_two_part = if g.order() <= budget.max_order {
        let full = schur_multiplier_with(g, budget)?;
        let two = full.two_primary();
        if two != sylow_multiplier {
            return Err(Error::CrossCheck(format!(
                "2-part of H_2(G) is {two} but H_2(Syl_2 G) is {sylow_multiplier}"
            )));
        }
        notes.push(format!("H_2(G) = {full}; its 2-part matches H_2(Syl_2 G)"));
        Some(two)
    } else {
        notes.push("G exceeds the homology budget; only the Sylow 2-subgroup was examined".into());
        None
    };

    let verdict = if spinc_route {
        notes.push("Schur multiplier of G has odd order: M is spin^c and bounds".into());
        if df_route {
            notes.push(format!(
                "Sylow 2-subgroup is {sylow_kind:?}: the cyclic/quaternion route also applies"
            ));
        }
        HolonomyVerdict::BoundsSpincRoute
    } else if df_route {
        notes.push(format!("Sylow 2-subgroup is {sylow_kind:?}: M bounds"));
        HolonomyVerdict::BoundsDfRoute
    } else {
        notes.push("neither sufficient condition holds; no conclusion about bounding".into());
        HolonomyVerdict::Inconclusive
    };

    Ok(HolonomyReport {
        verdict,
        group_order: g.order(),
        sylow_order: p.order(),
        sylow_kind,
        sylow_multiplier,
        spinc_route,
        df_route,
        group_multiplier_two_part,
        notes,
    })
}
