//! Points with trivial stabilizer and prescribed zero set.

use crate::adelic::{AdeleSketch, LocalValue, OmegaPoint, SuperIdeal, Valuation};
use crate::error::Result;
use crate::numberfield::{FieldElement, NumberField};
use crate::primesets::{PrimeSetExpr, SplitFilter};

/// The infinite set `𝒬` used when `A = ∅`: split primes `≡ 1 (mod 4)`.
pub fn default_q(field: &NumberField) -> Result<PrimeSetExpr> {
    let q = PrimeSetExpr::residue(4, [1], SplitFilter::Split)?;
    if !q.is_empty(field)? {
        return Ok(q);
    }
    PrimeSetExpr::residue(1, [0], SplitFilter::Split)
}

/// A point `ω_{r,a}` with `Z(a) = A` and trivial stabilizer.
///
/// For `A ≠ ∅` the exponent is `∞` on `A` and `r_P ∉ K` at one `P ∈ A`. For
/// `A = ∅` see [`trivial_stabilizer_point_with`].
pub fn trivial_stabilizer_point(field: &NumberField, a: &PrimeSetExpr) -> Result<OmegaPoint> {
    let Some(p) = a.first_member(field)? else {
        return trivial_stabilizer_point_with(field, a, &default_q(field)?);
    };
    let a = a.canonical(field)?;
    let sup = SuperIdeal::new(
        field,
        vec![(a.clone(), Valuation::Infinite), (a.complement(), Valuation::Finite(0))],
    )?;
    let r = AdeleSketch::new(
        field,
        FieldElement::zero(),
        vec![(PrimeSetExpr::single(p), LocalValue::generic(0, true))],
    )?;
    Ok(OmegaPoint::new(r, sup))
}

/// As [`trivial_stabilizer_point`], with an explicit infinite `𝒬` for the
/// case `A = ∅`: `a` has exponent 1 on `𝒬`, and `r` is a unit outside `K` on
/// one half `𝒬₁` and has valuation 1 on the other half `𝒬₂`.
pub fn trivial_stabilizer_point_with(
    field: &NumberField,
    a: &PrimeSetExpr,
    q: &PrimeSetExpr,
) -> Result<OmegaPoint> {
    if !a.is_empty(field)? {
        return trivial_stabilizer_point(field, a);
    }
    let (q1, q2) = q.split_infinite(field)?;
    let q = q.canonical(field)?;
    let sup = SuperIdeal::new(
        field,
        vec![(q.clone(), Valuation::Finite(1)), (q.complement(), Valuation::Finite(0))],
    )?;
    let r = AdeleSketch::new(
        field,
        FieldElement::zero(),
        vec![(q1, LocalValue::generic(0, true)), (q2, LocalValue::generic(1, true))],
    )?;
    Ok(OmegaPoint::new(r, sup))
}

/// A point with trivial stabilizer and dense orbit.
pub fn essential_freeness_witness(field: &NumberField) -> Result<OmegaPoint> {
    trivial_stabilizer_point(field, &PrimeSetExpr::Empty)
}
