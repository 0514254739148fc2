use serde::{Deserialize, Serialize};

use super::{AdeleSketch, LocalValue, OmegaPoint, ValInterval, Valuation};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField, PrimeIdeal};
use crate::primesets::PrimeSetExpr;

pub const DEFAULT_REFINEMENT_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equivalence {
    Yes,
    No,
    Unknown,
}

impl Equivalence {
    pub(crate) fn and(self, other: Equivalence) -> Equivalence {
        match (self, other) {
            (Equivalence::No, _) | (_, Equivalence::No) => Equivalence::No,
            (Equivalence::Unknown, _) | (_, Equivalence::Unknown) => Equivalence::Unknown,
            _ => Equivalence::Yes,
        }
    }
}

fn local_valuation(field: &NumberField, v: &LocalValue, p: &PrimeIdeal) -> (Valuation, bool) {
    match v {
        LocalValue::Exact(y) => (field.valuation(y, p), true),
        LocalValue::Generic {
            valuation, precise, ..
        } => (Valuation::Finite(*valuation), *precise),
    }
}

/// What can be proved about `v_P(r_P - s_P)`.
pub fn local_sub(field: &NumberField, r: &AdeleSketch, s: &AdeleSketch, p: &PrimeIdeal) -> ValInterval {
    let (x, y) = (r.local_at(field, &p.id), s.local_at(field, &p.id));
    if let (LocalValue::Exact(x), LocalValue::Exact(y)) = (&x, &y) {
        return ValInterval::exact(field.valuation(&(x - y), p));
    }
    ValInterval::of_difference(local_valuation(field, &x, p), local_valuation(field, &y, p))
}

/// Judges `v(r_P - s_P) >= e` from an interval. `distinct` means `r_P ≠ s_P`
/// is known for another reason (one side in `K`, the other not).
fn judge(iv: ValInterval, e: Valuation, distinct: bool) -> Equivalence {
    if e.is_infinite() {
        if distinct || (iv.exact && !iv.lower.is_infinite()) {
            return Equivalence::No;
        }
        return if iv.exact { Equivalence::Yes } else { Equivalence::Unknown };
    }
    if iv.lower >= e {
        Equivalence::Yes
    } else if iv.exact {
        Equivalence::No
    } else {
        Equivalence::Unknown
    }
}

fn exact_cell(
    field: &NumberField,
    cell: &PrimeSetExpr,
    e: Valuation,
    x: &FieldElement,
    y: &FieldElement,
) -> Result<Equivalence> {
    let d = x - y;
    if d.is_zero() {
        return Ok(Equivalence::Yes);
    }
    if e.is_infinite() {
        return Ok(Equivalence::No);
    }
    let support = field.element_support(&d)?;
    for (p, v) in &support {
        if cell.contains(field, p) && Valuation::Finite(*v) < e {
            return Ok(Equivalence::No);
        }
    }
    let rest = cell.clone().minus(PrimeSetExpr::finite(support.iter().map(|(p, _)| p.id)));
    if e > Valuation::Finite(0) && !rest.is_empty(field)? {
        return Ok(Equivalence::No);
    }
    Ok(Equivalence::Yes)
}

fn symbolic_cell(
    field: &NumberField,
    cell: &PrimeSetExpr,
    e: Valuation,
    lr: &LocalValue,
    ls: &LocalValue,
) -> Result<Equivalence> {
    let generic = |v: &LocalValue| match v {
        LocalValue::Generic {
            valuation,
            precise,
            not_in_k,
        } => Some((Valuation::Finite(*valuation), *precise, *not_in_k)),
        LocalValue::Exact(_) => None,
    };
    let (g, other) = match (generic(lr), generic(ls)) {
        (Some(g), Some(h)) => {
            let iv = ValInterval::of_difference((g.0, g.1), (h.0, h.1));
            return Ok(judge(iv, e, false));
        }
        (Some(g), None) => (g, ls),
        (None, Some(h)) => (h, lr),
        (None, None) => unreachable!("exact cells are handled separately"),
    };
    let LocalValue::Exact(y) = other else { unreachable!() };
    let distinct = g.2;
    let mut verdict = Equivalence::Yes;
    let mut rest = cell.clone();
    if !y.is_zero() {
        let support = field.element_support(y)?;
        for (p, v) in &support {
            if cell.contains(field, p) {
                let iv = ValInterval::of_difference((g.0, g.1), (Valuation::Finite(*v), true));
                verdict = verdict.and(judge(iv, e, distinct));
            }
        }
        rest = rest.minus(PrimeSetExpr::finite(support.iter().map(|(p, _)| p.id)));
    }
    if !rest.is_empty(field)? {
        let vy = if y.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(0)
        };
        let iv = ValInterval::of_difference((g.0, g.1), (vy, true));
        verdict = verdict.and(judge(iv, e, distinct));
    }
    Ok(verdict)
}

/// Decides `v_P(x - c·r_P) >= e` for every `P` in `cell`, where `r_P` is the
/// constant local value `local` and `x, c ∈ K`.
pub(crate) fn cell_condition(
    field: &NumberField,
    cell: &PrimeSetExpr,
    e: Valuation,
    x: &FieldElement,
    c: &FieldElement,
    local: &LocalValue,
) -> Result<Equivalence> {
    let (v, precise, not_in_k) = match local {
        LocalValue::Exact(y) => return exact_cell(field, cell, e, x, &field.mul(c, y)),
        LocalValue::Generic {
            valuation,
            precise,
            not_in_k,
        } => (*valuation, *precise, *not_in_k),
    };
    if c.is_zero() {
        return exact_cell(field, cell, e, x, &FieldElement::zero());
    }
    let mut special: Vec<PrimeIdeal> = field.element_support(c)?.into_iter().map(|(p, _)| p).collect();
    if !x.is_zero() {
        special.extend(field.element_support(x)?.into_iter().map(|(p, _)| p));
    }
    special.sort();
    special.dedup();
    let mut verdict = Equivalence::Yes;
    for p in &special {
        if cell.contains(field, p) {
            let vc = field.valuation(c, p) + Valuation::Finite(v);
            let iv = ValInterval::of_difference((field.valuation(x, p), true), (vc, precise));
            verdict = verdict.and(judge(iv, e, not_in_k));
        }
    }
    let rest = cell.clone().minus(PrimeSetExpr::finite(special.iter().map(|p| p.id)));
    if !rest.is_empty(field)? {
        let vx = if x.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(0)
        };
        let iv = ValInterval::of_difference((vx, true), (Valuation::Finite(v), precise));
        verdict = verdict.and(judge(iv, e, not_in_k));
    }
    Ok(verdict)
}

pub(crate) fn partition(r: &AdeleSketch) -> Vec<(PrimeSetExpr, LocalValue)> {
    let mut parts: Vec<_> = r.overrides().to_vec();
    parts.push((r.default_set(), LocalValue::Exact(r.global_part().clone())));
    parts
}

/// Decides `ω_{r,a} = ω_{s,b}`, i.e. `a R̂* = b R̂*` and `r - s ∈ a R̂`.
///
/// At primes with `e_P(a) = ∞` the condition is `r_P = s_P`. The check runs
/// over the common refinement of the pieces of `a` and the override sets of
/// `r` and `s`; more than `cap` nonempty cells is an error.
pub fn points_equivalent(
    field: &NumberField,
    w1: &OmegaPoint,
    w2: &OmegaPoint,
    cap: usize,
) -> Result<Equivalence> {
    if w1.a != w2.a {
        return Ok(Equivalence::No);
    }
    if w1.r == w2.r {
        return Ok(Equivalence::Yes);
    }
    let (pr, ps) = (partition(&w1.r), partition(&w2.r));
    let mut verdict = Equivalence::Yes;
    let mut cells = 0usize;
    for (sa, e) in w1.a.pieces() {
        for (s1, l1) in &pr {
            for (s2, l2) in &ps {
                let cell = PrimeSetExpr::Intersect(vec![sa.clone(), s1.clone(), s2.clone()]);
                if cell.is_empty(field)? {
                    continue;
                }
                cells += 1;
                if cells > cap {
                    return Err(Error::RefinementCapExceeded { cap });
                }
                let v = match (l1, l2) {
                    (LocalValue::Exact(x), LocalValue::Exact(y)) => exact_cell(field, &cell, *e, x, y)?,
                    _ => symbolic_cell(field, &cell, *e, l1, l2)?,
                };
                verdict = verdict.and(v);
                if verdict == Equivalence::No {
                    return Ok(verdict);
                }
            }
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adelic::SuperIdeal;

    fn int(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn local_sub_examples() {
        let q = NumberField::rational();
        let p2 = q.prime_by_label("P2").unwrap();
        let iv = local_sub(&q, &AdeleSketch::global(int(8)), &AdeleSketch::global(int(0)), &p2);
        assert_eq!(iv, ValInterval::exact(Valuation::Finite(3)));

        let set2: PrimeSetExpr = r#"(finite "P2")"#.parse().unwrap();
        let g0 = AdeleSketch::new(&q, int(0), vec![(set2.clone(), LocalValue::generic(0, true))]).unwrap();
        let iv = local_sub(&q, &g0, &AdeleSketch::global(int(1)), &p2);
        assert_eq!(iv, ValInterval::at_least(Valuation::Finite(0)));

        let g2 = AdeleSketch::new(&q, int(0), vec![(set2, LocalValue::generic(2, false))]).unwrap();
        let iv = local_sub(&q, &g2, &AdeleSketch::global(int(1)), &p2);
        assert_eq!(iv, ValInterval::exact(Valuation::Finite(0)));
    }

    #[test]
    fn equivalence_examples() {
        let q = NumberField::rational();
        let four = int(4);
        let w = |r: i64| OmegaPoint::exact(&q, int(r), &four).unwrap();
        let cap = DEFAULT_REFINEMENT_CAP;
        assert_eq!(points_equivalent(&q, &w(8), &w(0), cap).unwrap(), Equivalence::Yes);
        assert_eq!(points_equivalent(&q, &w(1), &w(0), cap).unwrap(), Equivalence::No);

        let set2: PrimeSetExpr = r#"(finite "P2")"#.parse().unwrap();
        let a = SuperIdeal::of_element(&q, &int(2)).unwrap();
        let r = AdeleSketch::new(&q, int(0), vec![(set2.clone(), LocalValue::generic(0, false))]).unwrap();
        let s = AdeleSketch::new(&q, int(1), vec![(set2, LocalValue::generic(0, false))]).unwrap();
        let s = s.affine(&q, &int(-1), &int(1)).unwrap();
        let w1 = OmegaPoint::new(r, a.clone());
        let w2 = OmegaPoint::new(s, a);
        assert_eq!(points_equivalent(&q, &w1, &w2, cap).unwrap(), Equivalence::Unknown);
    }

    #[test]
    fn zero_exponent_needs_equality() {
        let q = NumberField::rational();
        let w1 = OmegaPoint::exact(&q, int(1), &FieldElement::zero()).unwrap();
        let w2 = OmegaPoint::exact(&q, int(0), &FieldElement::zero()).unwrap();
        assert_eq!(points_equivalent(&q, &w1, &w2, 64).unwrap(), Equivalence::No);
        assert_eq!(points_equivalent(&q, &w1, &w1, 64).unwrap(), Equivalence::Yes);
        let set: PrimeSetExpr = r#"(finite "P3")"#.parse().unwrap();
        let g = AdeleSketch::new(&q, int(0), vec![(set, LocalValue::generic(0, true))]).unwrap();
        let w3 = OmegaPoint::new(g, SuperIdeal::zero());
        assert_eq!(points_equivalent(&q, &w3, &w2, 64).unwrap(), Equivalence::No);
    }

    #[test]
    fn different_superideals_are_inequivalent() {
        let q = NumberField::rational();
        let w1 = OmegaPoint::exact(&q, int(0), &int(2)).unwrap();
        let w2 = OmegaPoint::exact(&q, int(0), &int(3)).unwrap();
        assert_eq!(points_equivalent(&q, &w1, &w2, 64).unwrap(), Equivalence::No);
    }
}
