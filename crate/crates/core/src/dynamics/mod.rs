//! The affine group `K⋊K*` acting on `Ω_A` by `(x,k)·ω_{r,a} = ω_{x+kr, ka}`.
//!
//! Orbit closures are decided by zero sets: `ω_{s,b}` lies in the closure of
//! the orbit of `ω_{r,a}` exactly when `Z(b) ⊇ Z(a)`. The constructive side of
//! that statement is [`approximate_into`]. Quasi-orbits are labelled by
//! `Z(a) ∈ 2^𝒫`, and the primitive ideals of the Toeplitz algebra by the same
//! sets, see [`lattice`].

mod approx;
pub mod lattice;
mod stabilizer;
mod trivial;

use std::fmt;

use serde_json::{json, Value};

pub use approx::{approximate_into, Approximation, BasicNeighborhood, Check, CheckKind};
pub use stabilizer::{stabilizer, Constraint, StabilizerDescription};
pub use trivial::{default_q, essential_freeness_witness, trivial_stabilizer_point, trivial_stabilizer_point_with};

use crate::adelic::OmegaPoint;
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::primesets::PrimeSetExpr;

/// `(x, k) ∈ K⋊K*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub x: FieldElement,
    pub k: FieldElement,
}

impl GroupElement {
    pub fn new(x: FieldElement, k: FieldElement) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { x, k })
    }

    pub fn identity() -> Self {
        Self {
            x: FieldElement::zero(),
            k: FieldElement::one(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.k.is_one()
    }

    pub fn translation(x: FieldElement) -> Self {
        Self { x, k: FieldElement::one() }
    }

    /// `(x1,k1)(x2,k2) = (x1 + k1 x2, k1 k2)`.
    pub fn compose(&self, field: &NumberField, other: &Self) -> Self {
        Self {
            x: &self.x + &field.mul(&self.k, &other.x),
            k: field.mul(&self.k, &other.k),
        }
    }

    /// `(-x/k, 1/k)`.
    pub fn inverse(&self, field: &NumberField) -> Self {
        let kinv = field.inv(&self.k).expect("k is nonzero");
        Self {
            x: -field.mul(&self.x, &kinv),
            k: kinv,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "x": self.x.to_string(), "k": self.k.to_string() })
    }

    pub fn from_json(field: &NumberField, v: &Value, path: &str) -> Result<Self> {
        let m = v
            .as_object()
            .ok_or_else(|| Error::json(path, "expected an object with `x` and `k`"))?;
        let get = |key: &str| -> Result<FieldElement> {
            let p = format!("{path}.{key}");
            let s = m.get(key).ok_or_else(|| Error::json(&p, "missing"))?;
            crate::adelic::element_from_json(field, s, &p)
        };
        let (x, k) = (get("x")?, get("k")?);
        if k.is_zero() {
            return Err(Error::json(format!("{path}.k"), "k must be nonzero"));
        }
        Ok(Self { x, k })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.k)
    }
}

/// `(x,k)·ω_{r,a} = ω_{x+kr, ka}`.
pub fn act(field: &NumberField, g: &GroupElement, w: &OmegaPoint) -> Result<OmegaPoint> {
    Ok(OmegaPoint::new(
        w.r.affine(field, &g.x, &g.k)?,
        w.a.mul(field, &g.k)?,
    ))
}

/// Whether `target` lies in the closure of the orbit of `base`: `Z(b) ⊇ Z(a)`.
pub fn orbit_closure_contains(field: &NumberField, base: &OmegaPoint, target: &OmegaPoint) -> Result<bool> {
    base.a.zero_set().is_subset(field, &target.a.zero_set())
}

/// The quasi-orbit label `Z(a)` of `ω_{r,a}`.
pub fn quasi_orbit(w: &OmegaPoint) -> PrimeSetExpr {
    w.a.zero_set()
}
