use std::collections::BTreeMap;
use std::fmt;

use super::{LocalValue, SuperIdeal, Valuation};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField, PrimeRef};
use crate::primesets::{Cardinality, PrimeSetExpr};

/// A finite adele `r`: the element `global` of `K` at every prime not covered
/// by an override.
///
/// Overrides are canonical: disjoint normal-form sets, one per distinct local
/// value, sorted by value, never equal to `Exact(global)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdeleSketch {
    global: FieldElement,
    overrides: Vec<(PrimeSetExpr, LocalValue)>,
}

impl AdeleSketch {
    pub fn global(x: FieldElement) -> Self {
        Self {
            global: x,
            overrides: Vec::new(),
        }
    }

    pub fn new(
        field: &NumberField,
        global: FieldElement,
        overrides: Vec<(PrimeSetExpr, LocalValue)>,
    ) -> Result<Self> {
        field.check_element(&global)?;
        for (i, (s, v)) in overrides.iter().enumerate() {
            for (t, _) in &overrides[..i] {
                if !s.is_disjoint(field, t)? {
                    return Err(Error::InvalidSketch(format!("overrides on {t} and {s} overlap")));
                }
            }
            match v {
                LocalValue::Exact(y) => field.check_element(y)?,
                LocalValue::Generic { valuation, .. } => {
                    if *valuation < 0 && s.cardinality(field)? == Cardinality::Infinite {
                        return Err(Error::InvalidSketch(format!(
                            "negative valuation {valuation} on the infinite set {s}"
                        )));
                    }
                }
            }
        }
        Self::canonical(field, global, overrides)
    }

    fn canonical(
        field: &NumberField,
        global: FieldElement,
        overrides: Vec<(PrimeSetExpr, LocalValue)>,
    ) -> Result<Self> {
        let mut by_value: BTreeMap<LocalValue, Vec<PrimeSetExpr>> = BTreeMap::new();
        for (s, v) in overrides {
            if v == LocalValue::Exact(global.clone()) {
                continue;
            }
            by_value.entry(v).or_default().push(s);
        }
        let mut out = Vec::new();
        for (v, sets) in by_value {
            let s = PrimeSetExpr::union_all(sets).canonical(field)?;
            if s != PrimeSetExpr::Empty {
                out.push((s, v));
            }
        }
        Ok(Self {
            global,
            overrides: out,
        })
    }

    pub fn global_part(&self) -> &FieldElement {
        &self.global
    }

    pub fn overrides(&self) -> &[(PrimeSetExpr, LocalValue)] {
        &self.overrides
    }

    pub fn is_exact(&self) -> bool {
        self.overrides.iter().all(|(_, v)| v.is_exact())
    }

    /// The set of primes with no override.
    pub fn default_set(&self) -> PrimeSetExpr {
        PrimeSetExpr::union_all(self.overrides.iter().map(|(s, _)| s.clone())).complement()
    }

    pub fn local_at(&self, field: &NumberField, p: &PrimeRef) -> LocalValue {
        self.overrides
            .iter()
            .find(|(s, _)| s.contains_ref(field, p))
            .map_or_else(|| LocalValue::Exact(self.global.clone()), |(_, v)| v.clone())
    }

    /// `x + k·r`.
    pub fn affine(&self, field: &NumberField, x: &FieldElement, k: &FieldElement) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let global = x + &field.mul(k, &self.global);
        let special = if self.overrides.iter().any(|(_, v)| !v.is_exact()) {
            let mut ids: Vec<PrimeRef> = field.element_support(k)?.into_iter().map(|(p, _)| p.id).collect();
            if !x.is_zero() {
                ids.extend(field.element_support(x)?.into_iter().map(|(p, _)| p.id));
            }
            ids.sort();
            ids.dedup();
            ids
        } else {
            Vec::new()
        };
        let special_set = PrimeSetExpr::finite(special.iter().copied());

        let mut overrides = Vec::new();
        for (s, v) in &self.overrides {
            match v {
                LocalValue::Exact(y) => {
                    overrides.push((s.clone(), LocalValue::Exact(x + &field.mul(k, y))));
                }
                LocalValue::Generic {
                    valuation,
                    precise,
                    not_in_k,
                } => {
                    let update = |vk: i64, vx: Valuation| {
                        let w = Valuation::Finite(valuation + vk);
                        let iv = super::ValInterval::of_difference((w, *precise), (vx, true));
                        LocalValue::Generic {
                            valuation: iv.lower.finite().expect("generic value has finite valuation"),
                            precise: iv.exact,
                            not_in_k: *not_in_k,
                        }
                    };
                    let vx_rest = if x.is_zero() {
                        Valuation::Infinite
                    } else {
                        Valuation::Finite(0)
                    };
                    overrides.push((s.clone().minus(special_set.clone()), update(0, vx_rest)));
                    for id in &special {
                        if s.contains_ref(field, id) {
                            let p = field.prime(id)?;
                            let vk = field.valuation(k, &p).finite().expect("k is nonzero");
                            overrides.push((PrimeSetExpr::single(*id), update(vk, field.valuation(x, &p))));
                        }
                    }
                }
            }
        }
        Self::canonical(field, global, overrides)
    }
}

impl fmt::Display for AdeleSketch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.global)?;
        for (s, v) in &self.overrides {
            match v {
                LocalValue::Exact(y) => write!(f, " [{s}: {y}]")?,
                LocalValue::Generic {
                    valuation,
                    precise,
                    not_in_k,
                } => write!(
                    f,
                    " [{s}: v{}{valuation}{}]",
                    if *precise { "=" } else { ">=" },
                    if *not_in_k { ", not in K" } else { "" }
                )?,
            }
        }
        Ok(())
    }
}

/// A point `ω_{r,a}` of `Ω_A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaPoint {
    pub r: AdeleSketch,
    pub a: SuperIdeal,
}

impl OmegaPoint {
    pub fn new(r: AdeleSketch, a: SuperIdeal) -> Self {
        Self { r, a }
    }

    /// `ω_{r,a}` for `r, a ∈ K` (`a` may be zero).
    pub fn exact(field: &NumberField, r: FieldElement, a: &FieldElement) -> Result<Self> {
        field.check_element(&r)?;
        Ok(Self {
            r: AdeleSketch::global(r),
            a: SuperIdeal::of_element(field, a)?,
        })
    }

    pub fn is_exact(&self) -> bool {
        self.r.is_exact()
    }
}

impl fmt::Display for OmegaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω(r = {}; a = {})", self.r, self.a)
    }
}
