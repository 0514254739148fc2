//! Stabilizers `{(x,k) : k·a = a, x + (k-1)·r ∈ aR̂}` by case analysis.
//!
//! The first condition forces `v_P(k) = 0` off `Z(a)`. The solver proves one
//! of a few closed forms or reports `Unknown`; it never guesses.

use serde_json::{json, Value};

use super::GroupElement;
use crate::adelic::{
    cell_condition, partition, points_equivalent, AdeleSketch, Equivalence, LocalValue, OmegaPoint, Valuation,
};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField, PrimeRef};
use crate::primesets::{Cardinality, PrimeSetExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `{(b(1-u) + t, u) : u ∈ R*, t ∈ 𝔞}` for a non-principal fractional ideal `𝔞`.
    AffineCoset {
        base: FieldElement,
        ideal: Vec<(PrimeRef, i64)>,
    },
    /// `{((1-k)y, k) : k ∈ K*, supp(k) ⊆ S}`.
    SUnitLine { center: FieldElement, support: PrimeSetExpr },
    /// `{(t, 1) : t ∈ 𝔞}`.
    Translations { ideal: Vec<(PrimeRef, i64)> },
    /// An explicit finite group.
    Finite(Vec<GroupElement>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizerDescription {
    Trivial,
    /// `g (R⋊R*) g⁻¹`.
    FullAffineOverR { conjugator: GroupElement },
    /// `g ({0}×K*) g⁻¹`.
    MultiplicativeLine { conjugator: GroupElement },
    ConstraintSet(Constraint),
    Unknown { reason: String },
}

fn fractional_contains(field: &NumberField, ideal: &[(PrimeRef, i64)], t: &FieldElement) -> Result<bool> {
    if t.is_zero() {
        return Ok(true);
    }
    for (p, v) in field.element_support(t)? {
        let need = ideal.iter().find(|(q, _)| *q == p.id).map_or(0, |(_, e)| *e);
        if v < need {
            return Ok(false);
        }
    }
    for (p, e) in ideal {
        if *e > 0 && field.valuation(t, &field.prime(p)?) < Valuation::Finite(*e) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn shift_ideal(field: &NumberField, ideal: &[(PrimeRef, i64)], k: &FieldElement) -> Result<Vec<(PrimeRef, i64)>> {
    let mut out: Vec<(PrimeRef, i64)> = ideal.to_vec();
    for (p, v) in field.element_support(k)? {
        match out.iter_mut().find(|(q, _)| *q == p.id) {
            Some(entry) => entry.1 += v,
            None => out.push((p.id, v)),
        }
    }
    out.retain(|(_, e)| *e != 0);
    out.sort();
    Ok(out)
}

impl StabilizerDescription {
    pub fn tag(&self) -> &'static str {
        match self {
            StabilizerDescription::Trivial => "Trivial",
            StabilizerDescription::FullAffineOverR { .. } => "FullAffineOverR",
            StabilizerDescription::MultiplicativeLine { .. } => "MultiplicativeLine",
            StabilizerDescription::ConstraintSet(_) => "ConstraintSet",
            StabilizerDescription::Unknown { .. } => "Unknown",
        }
    }

    /// The closed form, with `m, k` or `x` standing for the conjugator.
    pub fn form(&self) -> String {
        match self {
            StabilizerDescription::Trivial => "{(0,1)}".into(),
            StabilizerDescription::FullAffineOverR { conjugator } if conjugator.is_identity() => "R⋊R*".into(),
            StabilizerDescription::FullAffineOverR { .. } => "{(m(1−w) + kr, w) : r ∈ R, w ∈ R*}".into(),
            StabilizerDescription::MultiplicativeLine { conjugator } if conjugator.x.is_zero() => "{0}×K*".into(),
            StabilizerDescription::MultiplicativeLine { .. } => "{(x(1−k),k) : k ∈ K*}".into(),
            StabilizerDescription::ConstraintSet(c) => match c {
                Constraint::AffineCoset { .. } => "{(b(1−u) + t, u) : t ∈ 𝔞, u ∈ R*}".into(),
                Constraint::SUnitLine { .. } => "{(y(1−k),k) : k ∈ K*, supp(k) ⊆ S}".into(),
                Constraint::Translations { .. } => "{(t,1) : t ∈ 𝔞}".into(),
                Constraint::Finite(list) => {
                    let parts: Vec<String> = list.iter().map(ToString::to_string).collect();
                    format!("{{{}}}", parts.join(", "))
                }
            },
            StabilizerDescription::Unknown { .. } => "?".into(),
        }
    }

    /// Membership of `h`; `None` when the description is `Unknown`.
    pub fn contains(&self, field: &NumberField, h: &GroupElement) -> Result<Option<bool>> {
        Ok(Some(match self {
            StabilizerDescription::Trivial => h.is_identity(),
            StabilizerDescription::FullAffineOverR { conjugator: g } => {
                let c = g.inverse(field).compose(field, h).compose(field, g);
                field.is_unit(&c.k) && c.x.is_integral()
            }
            StabilizerDescription::MultiplicativeLine { conjugator: g } => {
                g.inverse(field).compose(field, h).compose(field, g).x.is_zero()
            }
            StabilizerDescription::ConstraintSet(c) => match c {
                Constraint::AffineCoset { base, ideal } => {
                    let one = FieldElement::one();
                    field.is_unit(&h.k)
                        && fractional_contains(field, ideal, &(&h.x - &field.mul(base, &(&one - &h.k))))?
                }
                Constraint::SUnitLine { center, support } => {
                    let one = FieldElement::one();
                    h.x == field.mul(center, &(&one - &h.k))
                        && field
                            .element_support(&h.k)?
                            .iter()
                            .all(|(p, _)| support.contains(field, p))
                }
                Constraint::Translations { ideal } => h.k.is_one() && fractional_contains(field, ideal, &h.x)?,
                Constraint::Finite(list) => list.contains(h),
            },
            StabilizerDescription::Unknown { .. } => return Ok(None),
        }))
    }

    /// `g·S·g⁻¹`, the stabilizer of `g·ω` when `S` is the stabilizer of `ω`.
    pub fn conjugate(&self, field: &NumberField, g: &GroupElement) -> Result<Self> {
        let gi = g.inverse(field);
        Ok(match self {
            StabilizerDescription::Trivial => StabilizerDescription::Trivial,
            StabilizerDescription::FullAffineOverR { conjugator } => full_affine(field, g.compose(field, conjugator)),
            StabilizerDescription::MultiplicativeLine { conjugator } => StabilizerDescription::MultiplicativeLine {
                conjugator: g.compose(field, conjugator),
            },
            StabilizerDescription::ConstraintSet(c) => StabilizerDescription::ConstraintSet(match c {
                Constraint::AffineCoset { base, ideal } => Constraint::AffineCoset {
                    base: &g.x + &field.mul(&g.k, base),
                    ideal: shift_ideal(field, ideal, &g.k)?,
                },
                Constraint::SUnitLine { center, support } => Constraint::SUnitLine {
                    center: &g.x + &field.mul(&g.k, center),
                    support: support.clone(),
                },
                Constraint::Translations { ideal } => Constraint::Translations {
                    ideal: shift_ideal(field, ideal, &g.k)?,
                },
                Constraint::Finite(list) => Constraint::Finite(
                    list.iter()
                        .map(|h| g.compose(field, h).compose(field, &gi))
                        .collect(),
                ),
            }),
            StabilizerDescription::Unknown { reason } => StabilizerDescription::Unknown { reason: reason.clone() },
        })
    }

    /// Whether two descriptions denote the same subgroup.
    pub fn equivalent(&self, field: &NumberField, other: &Self) -> Result<bool> {
        use StabilizerDescription as S;
        Ok(match (self, other) {
            (S::Trivial, S::Trivial) => true,
            (S::FullAffineOverR { conjugator: g1 }, S::FullAffineOverR { conjugator: g2 }) => {
                // equal iff g1⁻¹g2 normalizes R⋊R*
                let h = g1.inverse(field).compose(field, g2);
                let one = FieldElement::one();
                field.is_unit(&h.k)
                    && field
                        .unit_group()
                        .iter()
                        .all(|u| field.mul(&h.x, &(&one - u)).is_integral())
            }
            (S::MultiplicativeLine { conjugator: g1 }, S::MultiplicativeLine { conjugator: g2 }) => {
                g1.inverse(field).compose(field, g2).x.is_zero()
            }
            (S::ConstraintSet(a), S::ConstraintSet(b)) => match (a, b) {
                (
                    Constraint::AffineCoset { base: b1, ideal: i1 },
                    Constraint::AffineCoset { base: b2, ideal: i2 },
                ) => {
                    let one = FieldElement::one();
                    let d = b1 - b2;
                    i1 == i2
                        && field
                            .unit_group()
                            .iter()
                            .map(|u| fractional_contains(field, i1, &field.mul(&d, &(&one - u))))
                            .collect::<Result<Vec<_>>>()?
                            .into_iter()
                            .all(|x| x)
                }
                (
                    Constraint::SUnitLine { center: c1, support: s1 },
                    Constraint::SUnitLine { center: c2, support: s2 },
                ) => c1 == c2 && s1.set_eq(field, s2)?,
                (Constraint::Finite(l1), Constraint::Finite(l2)) => {
                    l1.len() == l2.len() && l1.iter().all(|h| l2.contains(h))
                }
                _ => a == b,
            },
            _ => false,
        })
    }

    pub fn to_json(&self) -> Value {
        let ideal_json = |ideal: &[(PrimeRef, i64)]| -> Value {
            ideal
                .iter()
                .map(|(p, e)| json!({ "prime": p.to_string(), "exp": e }))
                .collect::<Vec<_>>()
                .into()
        };
        let mut v = json!({ "tag": self.tag(), "form": self.form() });
        let m = v.as_object_mut().expect("object");
        match self {
            StabilizerDescription::FullAffineOverR { conjugator } => {
                m.insert("conjugator".into(), conjugator.to_json());
                m.insert("m".into(), json!(conjugator.x.to_string()));
                m.insert("k".into(), json!(conjugator.k.to_string()));
            }
            StabilizerDescription::MultiplicativeLine { conjugator } => {
                m.insert("conjugator".into(), conjugator.to_json());
                m.insert("x".into(), json!(conjugator.x.to_string()));
            }
            StabilizerDescription::ConstraintSet(c) => {
                let body = match c {
                    Constraint::AffineCoset { base, ideal } => {
                        json!({ "kind": "affine_coset", "b": base.to_string(), "ideal": ideal_json(ideal) })
                    }
                    Constraint::SUnitLine { center, support } => {
                        json!({ "kind": "s_unit_line", "y": center.to_string(), "S": support.to_string() })
                    }
                    Constraint::Translations { ideal } => json!({ "kind": "translations", "ideal": ideal_json(ideal) }),
                    Constraint::Finite(list) => {
                        json!({ "kind": "finite", "elements": list.iter().map(GroupElement::to_json).collect::<Vec<_>>() })
                    }
                };
                m.insert("constraint".into(), body);
            }
            StabilizerDescription::Unknown { reason } => {
                m.insert("reason".into(), json!(reason));
            }
            StabilizerDescription::Trivial => {}
        }
        v
    }
}

struct Cell {
    set: PrimeSetExpr,
    exp: Valuation,
    local: LocalValue,
    infinite: bool,
}

fn refine(field: &NumberField, w: &OmegaPoint, cap: usize) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    for (t, e) in w.a.pieces() {
        for (s, v) in partition(&w.r) {
            let set = t.clone().intersect(s).canonical(field)?;
            if set == PrimeSetExpr::Empty {
                continue;
            }
            if out.len() == cap {
                return Err(Error::RefinementCapExceeded { cap });
            }
            let infinite = set.cardinality(field)? == Cardinality::Infinite;
            out.push(Cell {
                set,
                exp: *e,
                local: v,
                infinite,
            });
        }
    }
    Ok(out)
}

/// Replaces generic local values that already lie in `a_P R̂_P` by `0`; the
/// result is an equivalent point.
fn simplify(field: &NumberField, w: &OmegaPoint, cap: usize) -> Result<OmegaPoint> {
    if w.r.is_exact() {
        return Ok(w.clone());
    }
    let overrides = refine(field, w, cap)?
        .into_iter()
        .map(|c| {
            let local = match c.local {
                LocalValue::Generic { valuation, .. } if Valuation::Finite(valuation) >= c.exp => {
                    LocalValue::Exact(FieldElement::zero())
                }
                other => other,
            };
            (c.set, local)
        })
        .collect();
    Ok(OmegaPoint::new(
        AdeleSketch::new(field, w.r.global_part().clone(), overrides)?,
        w.a.clone(),
    ))
}

enum UnitVerdict {
    Member(FieldElement),
    Excluded,
    Undecided,
}

/// Decides whether some `x` makes `(x, u)` fix the point, for a unit `u ≠ 1`
/// and `Z(a) = ∅`.
fn unit_verdict(field: &NumberField, cells: &[Cell], u: &FieldElement) -> Result<UnitVerdict> {
    let c = &FieldElement::one() - u;
    let check = |x: &FieldElement| -> Result<Equivalence> {
        let mut verdict = Equivalence::Yes;
        for cell in cells {
            verdict = verdict.and(cell_condition(field, &cell.set, cell.exp, x, &c, &cell.local)?);
            if verdict == Equivalence::No {
                break;
            }
        }
        Ok(verdict)
    };
    // v_P(x - c·y) >= e > 0 at infinitely many P forces x = c·y
    let forced = cells.iter().find_map(|cell| match &cell.local {
        LocalValue::Exact(y) if cell.infinite && cell.exp > Valuation::Finite(0) => Some(field.mul(&c, y)),
        _ => None,
    });
    if let Some(x) = forced {
        return Ok(match check(&x)? {
            Equivalence::Yes => UnitVerdict::Member(x),
            Equivalence::No => UnitVerdict::Excluded,
            Equivalence::Unknown => UnitVerdict::Undecided,
        });
    }
    match check(&FieldElement::zero())? {
        Equivalence::Yes => return Ok(UnitVerdict::Member(FieldElement::zero())),
        Equivalence::Unknown => return Ok(UnitVerdict::Undecided),
        Equivalence::No => {}
    }
    // x ≠ 0 is a unit at all but finitely many primes of an infinite cell
    let nonzero_excluded = cells.iter().any(|cell| {
        if let LocalValue::Generic { valuation, precise, .. } = cell.local {
            let iv = crate::adelic::ValInterval::of_difference(
                (Valuation::Finite(0), true),
                (Valuation::Finite(valuation), precise),
            );
            cell.infinite && iv.exact && iv.lower < cell.exp
        } else {
            false
        }
    });
    Ok(if nonzero_excluded {
        UnitVerdict::Excluded
    } else {
        UnitVerdict::Undecided
    })
}

/// An element `b ∈ K` with `b ≡ r (mod aR̂)` everywhere, for exact `r` and a
/// superideal with finitely many nonzero exponents.
fn exact_center(
    field: &NumberField,
    w: &OmegaPoint,
    finite_part: &[(PrimeRef, i64)],
) -> Result<FieldElement> {
    let g = w.r.global_part();
    let mut special: Vec<PrimeRef> = finite_part.iter().map(|(p, _)| *p).collect();
    for (s, v) in w.r.overrides() {
        let LocalValue::Exact(y) = v else {
            return Err(Error::Internal("exact center needs an exact sketch".into()));
        };
        let d = y - g;
        if d.is_zero() {
            continue;
        }
        for (p, e) in field.element_support(&d)? {
            if e < 0 && s.contains(field, &p) {
                special.push(p.id);
            }
        }
    }
    special.sort();
    special.dedup();
    let mut targets = Vec::new();
    for id in special {
        let LocalValue::Exact(y) = w.r.local_at(field, &id) else {
            unreachable!("sketch is exact")
        };
        let e = w.a.exponent_at(field, &id).finite().expect("Z(a) is empty");
        targets.push((field.prime(&id)?, &y - g, e));
    }
    Ok(g + &field.approximate(&targets)?)
}

/// `g(R⋊R*)g⁻¹`, with `g` dropped when it already lies in `R⋊R*`.
fn full_affine(field: &NumberField, g: GroupElement) -> StabilizerDescription {
    let conjugator = if g.x.is_integral() && field.is_unit(&g.k) {
        GroupElement::identity()
    } else {
        g
    };
    StabilizerDescription::FullAffineOverR { conjugator }
}

/// Solves for the stabilizer of `w`. `cap` bounds the piece refinement.
pub fn stabilizer(field: &NumberField, w: &OmegaPoint, cap: usize) -> Result<StabilizerDescription> {
    let w = simplify(field, w, cap)?;
    let z = w.a.zero_set();
    if !z.is_empty(field)? {
        return on_nonempty_zero_set(field, &w, &z, cap);
    }

    let finite = w.a.finite_part(field)?;
    if let (true, Some(fp)) = (w.r.is_exact(), &finite) {
        let base = exact_center(field, &w, fp)?;
        let factors = fp
            .iter()
            .map(|(p, e)| Ok((field.prime(p)?, *e)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(match field.fractional_generator(&factors)? {
            Some(m) => full_affine(field, GroupElement::new(base, m)?),
            None => StabilizerDescription::ConstraintSet(Constraint::AffineCoset {
                base,
                ideal: fp.clone(),
            }),
        });
    }

    let cells = refine(field, &w, cap)?;
    let mut members = vec![GroupElement::identity()];
    for u in field.unit_group() {
        if u.is_one() {
            continue;
        }
        match unit_verdict(field, &cells, u)? {
            UnitVerdict::Member(x) => members.push(GroupElement::new(x, u.clone())?),
            UnitVerdict::Excluded => {}
            UnitVerdict::Undecided => {
                return Ok(StabilizerDescription::Unknown {
                    reason: format!("cannot decide whether the unit {u} occurs"),
                })
            }
        }
    }
    Ok(match (finite, members.len()) {
        (None, 1) => StabilizerDescription::Trivial,
        (None, _) => StabilizerDescription::ConstraintSet(Constraint::Finite(members)),
        (Some(fp), 1) => StabilizerDescription::ConstraintSet(Constraint::Translations { ideal: fp }),
        (Some(_), _) => StabilizerDescription::Unknown {
            reason: "translations combine with nontrivial units over a symbolic first coordinate".into(),
        },
    })
}

fn on_nonempty_zero_set(
    field: &NumberField,
    w: &OmegaPoint,
    z: &PrimeSetExpr,
    cap: usize,
) -> Result<StabilizerDescription> {
    // at P ∈ Z(a): x + (k-1) r_P = 0
    let mut values: Vec<LocalValue> = Vec::new();
    for (s, v) in partition(&w.r) {
        if !s.is_disjoint(field, z)? && !values.contains(&v) {
            values.push(v);
        }
    }
    if values
        .iter()
        .any(|v| matches!(v, LocalValue::Generic { not_in_k: true, .. }))
    {
        return Ok(StabilizerDescription::Trivial);
    }
    if values.iter().any(|v| !v.is_exact()) {
        return Ok(StabilizerDescription::Unknown {
            reason: "a symbolic coordinate on Z(a) may lie in K".into(),
        });
    }
    if values.len() >= 2 {
        return Ok(StabilizerDescription::Trivial);
    }
    let Some(LocalValue::Exact(y)) = values.pop() else {
        unreachable!("Z(a) is nonempty")
    };
    if z.set_eq(field, &PrimeSetExpr::All)? {
        return Ok(StabilizerDescription::MultiplicativeLine {
            conjugator: GroupElement::translation(y),
        });
    }
    let centered = OmegaPoint::new(AdeleSketch::global(y.clone()), w.a.clone());
    Ok(match points_equivalent(field, w, &centered, cap)? {
        Equivalence::Yes => StabilizerDescription::ConstraintSet(Constraint::SUnitLine {
            center: y,
            support: z.clone(),
        }),
        _ => StabilizerDescription::Unknown {
            reason: "r differs from its value on Z(a) outside Z(a)".into(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adelic::{SuperIdeal, DEFAULT_REFINEMENT_CAP as CAP};

    fn int(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn example_points() {
        for field in [NumberField::rational(), NumberField::imag_quadratic(-5).unwrap()] {
            let w01 = OmegaPoint::exact(&field, int(0), &int(1)).unwrap();
            assert_eq!(
                stabilizer(&field, &w01, CAP).unwrap(),
                StabilizerDescription::FullAffineOverR {
                    conjugator: GroupElement::identity()
                }
            );
            let w00 = OmegaPoint::exact(&field, int(0), &int(0)).unwrap();
            let s = stabilizer(&field, &w00, CAP).unwrap();
            assert_eq!(s.form(), "{0}×K*");
            let w30 = OmegaPoint::exact(&field, int(3), &int(0)).unwrap();
            let s = stabilizer(&field, &w30, CAP).unwrap();
            assert_eq!(
                s,
                StabilizerDescription::MultiplicativeLine {
                    conjugator: GroupElement::translation(int(3))
                }
            );
        }
    }

    #[test]
    fn orbit_of_base_point_has_conjugate_stabilizer() {
        let k = NumberField::imag_quadratic(-5).unwrap();
        let m = k.element("1/2+w").unwrap();
        let kk = k.element("1+w").unwrap();
        let w = OmegaPoint::exact(&k, m.clone(), &kk).unwrap();
        let s = stabilizer(&k, &w, CAP).unwrap();
        let expected = StabilizerDescription::FullAffineOverR {
            conjugator: GroupElement::new(m.clone(), kk.clone()).unwrap(),
        };
        assert!(s.equivalent(&k, &expected).unwrap(), "{s:?}");
        // (m(1-w') + k t, w') with t = 1, w' = -1
        let h = GroupElement::new(&k.mul(&m, &int(2)) + &kk, int(-1)).unwrap();
        assert_eq!(s.contains(&k, &h).unwrap(), Some(true));
        let not_h = GroupElement::new(m, int(-1)).unwrap();
        assert_eq!(s.contains(&k, &not_h).unwrap(), Some(false));
    }

    #[test]
    fn non_principal_superideal_gives_coset() {
        let k = NumberField::imag_quadratic(-5).unwrap();
        let p2: PrimeSetExpr = r#"(finite "P2")"#.parse().unwrap();
        let a = SuperIdeal::new(
            &k,
            vec![(p2.clone(), Valuation::Finite(1)), (p2.complement(), Valuation::Finite(0))],
        )
        .unwrap();
        let w = OmegaPoint::new(AdeleSketch::global(int(0)), a);
        match stabilizer(&k, &w, CAP).unwrap() {
            StabilizerDescription::ConstraintSet(Constraint::AffineCoset { ideal, .. }) => {
                assert_eq!(ideal, vec![(PrimeRef::unique(2), 1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn two_values_on_zero_set_are_trivial() {
        let q = NumberField::rational();
        let r = AdeleSketch::new(&q, int(0), vec![(r#"(finite "P2")"#.parse().unwrap(), LocalValue::Exact(int(1)))]).unwrap();
        let w = OmegaPoint::new(r, SuperIdeal::zero());
        assert_eq!(stabilizer(&q, &w, CAP).unwrap(), StabilizerDescription::Trivial);
    }

    #[test]
    fn s_unit_line_on_finite_zero_set() {
        let q = NumberField::rational();
        let z: PrimeSetExpr = r#"(finite "P2")"#.parse().unwrap();
        let a = SuperIdeal::new(&q, vec![(z.clone(), Valuation::Infinite), (z.complement(), Valuation::Finite(0))]).unwrap();
        let w = OmegaPoint::new(AdeleSketch::global(int(5)), a);
        let s = stabilizer(&q, &w, CAP).unwrap();
        assert_eq!(s.tag(), "ConstraintSet");
        let h = GroupElement::new(int(-5 * 3), int(4)).unwrap();
        assert_eq!(s.contains(&q, &h).unwrap(), Some(true));
        let bad = GroupElement::new(int(-5 * 2), int(3)).unwrap();
        assert_eq!(s.contains(&q, &bad).unwrap(), Some(false));
    }

    #[test]
    fn infinite_support_exact_point_has_finite_stabilizer() {
        let q = NumberField::rational();
        let s4: PrimeSetExpr = "(res 4 (1))".parse().unwrap();
        let a = SuperIdeal::new(&q, vec![(s4.clone(), Valuation::Finite(1)), (s4.complement(), Valuation::Finite(0))]).unwrap();
        let w = OmegaPoint::new(AdeleSketch::global(int(1)), a);
        let s = stabilizer(&q, &w, CAP).unwrap();
        // only u = -1 with x = 2 survives: 2 - 2·1 = 0
        assert_eq!(
            s,
            StabilizerDescription::ConstraintSet(Constraint::Finite(vec![
                GroupElement::identity(),
                GroupElement::new(int(2), int(-1)).unwrap()
            ]))
        );
    }
}
