use std::collections::BTreeMap;
use std::fmt;

use super::Valuation;
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField, PrimeRef};
use crate::primesets::{Cardinality, PrimeSetExpr};

/// The class `a R̂*` of a finite adele, as exponents `e_P(a) ∈ Z ∪ {∞}`.
///
/// Pieces are canonical: one per distinct exponent, sorted by exponent, each
/// set in normal form. Equal superideals therefore compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperIdeal {
    pieces: Vec<(PrimeSetExpr, Valuation)>,
}

impl SuperIdeal {
    /// Validates that the pieces partition all primes and that negative
    /// exponents occur on finitely many primes, then canonicalizes.
    pub fn new(field: &NumberField, pieces: Vec<(PrimeSetExpr, Valuation)>) -> Result<Self> {
        for (i, (s, e)) in pieces.iter().enumerate() {
            for (t, _) in &pieces[..i] {
                if !s.is_disjoint(field, t)? {
                    return Err(Error::InvalidSuperIdeal(format!("pieces {t} and {s} overlap")));
                }
            }
            if matches!(e, Valuation::Finite(v) if *v < 0)
                && s.cardinality(field)? == Cardinality::Infinite
            {
                return Err(Error::InvalidSuperIdeal(format!(
                    "negative exponent {e} on the infinite set {s}"
                )));
            }
        }
        let cover = PrimeSetExpr::union_all(pieces.iter().map(|(s, _)| s.clone()));
        if !PrimeSetExpr::All.is_subset(field, &cover)? {
            return Err(Error::InvalidSuperIdeal("pieces do not cover every prime".into()));
        }
        Self::merge(field, pieces)
    }

    fn merge(field: &NumberField, pieces: Vec<(PrimeSetExpr, Valuation)>) -> Result<Self> {
        let mut by_exp: BTreeMap<Valuation, Vec<PrimeSetExpr>> = BTreeMap::new();
        for (s, e) in pieces {
            by_exp.entry(e).or_default().push(s);
        }
        let mut out = Vec::new();
        for (e, sets) in by_exp {
            let s = PrimeSetExpr::union_all(sets).canonical(field)?;
            if s != PrimeSetExpr::Empty {
                out.push((s, e));
            }
        }
        Ok(Self { pieces: out })
    }

    pub fn unit() -> Self {
        Self {
            pieces: vec![(PrimeSetExpr::All, Valuation::Finite(0))],
        }
    }

    /// The class of the zero adele: exponent `∞` everywhere.
    pub fn zero() -> Self {
        Self {
            pieces: vec![(PrimeSetExpr::All, Valuation::Infinite)],
        }
    }

    /// `∏ P^{v_P(k)}`; `k = 0` gives [`SuperIdeal::zero`].
    pub fn of_element(field: &NumberField, k: &FieldElement) -> Result<Self> {
        if k.is_zero() {
            return Ok(Self::zero());
        }
        Self::unit().mul(field, k)
    }

    /// `k·a` for `k ≠ 0`: exponents shift by `v_P(k)`, `∞` is absorbing.
    pub fn mul(&self, field: &NumberField, k: &FieldElement) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let support = field.element_support(k)?;
        if support.is_empty() {
            return Ok(self.clone());
        }
        let supp_set = PrimeSetExpr::finite(support.iter().map(|(p, _)| p.id));
        let mut pieces = Vec::new();
        for (s, e) in &self.pieces {
            if e.is_infinite() {
                pieces.push((s.clone(), *e));
                continue;
            }
            pieces.push((s.clone().minus(supp_set.clone()), *e));
            for (p, v) in &support {
                if s.contains(field, p) {
                    pieces.push((PrimeSetExpr::single(p.id), *e + Valuation::Finite(*v)));
                }
            }
        }
        Self::merge(field, pieces)
    }

    pub fn pieces(&self) -> &[(PrimeSetExpr, Valuation)] {
        &self.pieces
    }

    pub fn exponent_at(&self, field: &NumberField, p: &PrimeRef) -> Valuation {
        self.pieces
            .iter()
            .find(|(s, _)| s.contains_ref(field, p))
            .map(|(_, e)| *e)
            .expect("pieces cover every prime")
    }

    /// `Z(a)`: the primes with exponent `∞`.
    pub fn zero_set(&self) -> PrimeSetExpr {
        self.pieces
            .iter()
            .find(|(_, e)| e.is_infinite())
            .map_or(PrimeSetExpr::Empty, |(s, _)| s.clone())
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::unit()
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// The pieces other than the generic exponent-0 and exponent-`∞` ones,
    /// when all of them are finite; these are the primes where the superideal
    /// looks like an ordinary fractional ideal.
    pub fn finite_part(&self, field: &NumberField) -> Result<Option<Vec<(PrimeRef, i64)>>> {
        let mut out = Vec::new();
        for (s, e) in &self.pieces {
            let Valuation::Finite(v) = e else { continue };
            if *v == 0 {
                continue;
            }
            match s.finite_members(field)? {
                Some(ms) => out.extend(ms.into_iter().map(|p| (p, *v))),
                None => return Ok(None),
            }
        }
        out.sort();
        Ok(Some(out))
    }
}

impl fmt::Display for SuperIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pieces.iter().map(|(s, e)| format!("{s}^{e}")).collect();
        f.write_str(&parts.join(" · "))
    }
}
