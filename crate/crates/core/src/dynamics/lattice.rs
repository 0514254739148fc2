//! Primitive ideals `I_A` labelled by `A ∈ 2^𝒫` and ideals labelled by open
//! subsets of the power-cofinite topology.

use serde_json::{json, Value};

use crate::error::Result;
use crate::numberfield::NumberField;
use crate::primesets::{PointClosure, PowerCofiniteOpen, PrimeSetExpr};

/// The primitive ideal `I_A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimIdealDescriptor {
    a: PrimeSetExpr,
}

pub fn primitive_ideal(field: &NumberField, a: &PrimeSetExpr) -> Result<PrimIdealDescriptor> {
    Ok(PrimIdealDescriptor {
        a: a.canonical(field)?,
    })
}

/// `I_A ⊆ I_B` iff `A ⊆ B`.
pub fn ideal_leq(field: &NumberField, i: &PrimIdealDescriptor, j: &PrimIdealDescriptor) -> Result<bool> {
    i.a.is_subset(field, &j.a)
}

/// `I_𝒫` is the only maximal ideal.
pub fn is_maximal(field: &NumberField, i: &PrimIdealDescriptor) -> Result<bool> {
    i.a.set_eq(field, &PrimeSetExpr::All)
}

impl PrimIdealDescriptor {
    pub fn label(&self) -> &PrimeSetExpr {
        &self.a
    }

    /// The closure of `{A}`; `I_B ⊇ I_A` exactly for `B` in it.
    pub fn closure(&self) -> PointClosure {
        PointClosure::of(self.a.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({ "label": self.a.to_string() })
    }
}

/// The ideal of the Toeplitz algebra supported on an open set `U`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealOfOpen {
    pub open: PowerCofiniteOpen,
}

pub fn ideal_of_open(open: PowerCofiniteOpen) -> IdealOfOpen {
    IdealOfOpen { open }
}

impl IdealOfOpen {
    pub fn zero() -> Self {
        ideal_of_open(PowerCofiniteOpen::empty())
    }

    pub fn whole() -> Self {
        ideal_of_open(PowerCofiniteOpen::whole())
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.open.leq(&other.open)
    }

    pub fn meet(&self, other: &Self) -> Self {
        ideal_of_open(self.open.intersect(&other.open))
    }

    pub fn join(&self, other: &Self) -> Self {
        ideal_of_open(self.open.union(&other.open))
    }

    /// Whether `I_A` does not contain this ideal, i.e. `A ∈ U`.
    pub fn contains_point(&self, field: &NumberField, a: &PrimeSetExpr) -> bool {
        self.open.contains_point(field, a)
    }

    pub fn to_json(&self) -> Value {
        json!({ "open": serde_json::to_value(&self.open).expect("serializable") })
    }
}
