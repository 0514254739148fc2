use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::PrimeSetExpr;
use crate::error::Result;
use crate::numberfield::{NumberField, PrimeRef};

/// A finite union `U_{G_1} ∪ ... ∪ U_{G_m}` of basic opens
/// `U_G = {T : T ∩ G = ∅}` of the power-cofinite topology.
///
/// The generators are kept as a sorted antichain, so equal opens have equal
/// representations. Since `U_G ⊆ U_H` iff `H ⊆ G`, a generator that contains
/// another one is redundant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerCofiniteOpen {
    gens: Vec<BTreeSet<PrimeRef>>,
}

impl PowerCofiniteOpen {
    pub fn new(gens: impl IntoIterator<Item = BTreeSet<PrimeRef>>) -> Self {
        let mut all: Vec<BTreeSet<PrimeRef>> = gens.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut kept: Vec<BTreeSet<PrimeRef>> = Vec::new();
        for g in all {
            if !kept.iter().any(|h| h.is_subset(&g)) {
                kept.push(g);
            }
        }
        kept.sort();
        Self { gens: kept }
    }

    pub fn basic(g: impl IntoIterator<Item = PrimeRef>) -> Self {
        Self::new([g.into_iter().collect()])
    }

    pub fn empty() -> Self {
        Self { gens: Vec::new() }
    }

    pub fn whole() -> Self {
        Self::basic([])
    }

    pub fn generators(&self) -> &[BTreeSet<PrimeRef>] {
        &self.gens
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::new(
            self.gens
                .iter()
                .flat_map(|g| other.gens.iter().map(move |h| g.union(h).copied().collect())),
        )
    }

    /// `self ⊆ other`: every generator of `self` lies in some basic open of `other`.
    pub fn leq(&self, other: &Self) -> bool {
        self.gens
            .iter()
            .all(|g| other.gens.iter().any(|h| h.is_subset(g)))
    }

    /// Whether the point `A ∈ 2^𝒫` lies in the open set.
    pub fn contains_point(&self, field: &NumberField, a: &PrimeSetExpr) -> bool {
        self.gens
            .iter()
            .any(|g| g.iter().all(|p| !a.contains_ref(field, p)))
    }
}

/// The closure `{T : T ⊇ A}` of a single point `A` of `2^𝒫`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClosure {
    pub point: PrimeSetExpr,
}

impl PointClosure {
    pub fn of(a: PrimeSetExpr) -> Self {
        Self { point: a }
    }

    pub fn contains(&self, field: &NumberField, t: &PrimeSetExpr) -> Result<bool> {
        self.point.is_subset(field, t)
    }
}
