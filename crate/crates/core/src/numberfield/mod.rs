//! Exact arithmetic in `K = Q` or an imaginary quadratic field `K = Q(sqrt(d))`
//! and in its ring of integers `R = Z[w]`.
//!
//! Everything here is exact: rationals are `BigRational`, ideals are stored in
//! Hermite normal form over the integral basis `{1, w}`, and ideal classes are
//! reduced binary quadratic forms of the field discriminant.

mod cache;
mod classgroup;
mod element;
mod ideal;
mod primes;
mod principal;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use cache::{CacheFile, FieldCacheRecord, CACHE_SCHEMA};
pub use classgroup::{ClassGroup, IdealClass, QuadForm};
pub use element::FieldElement;
pub use ideal::RingIdeal;
pub use primes::{PrimeIdeal, PrimeRef, PrimeSplitting, SplitType};
pub use principal::{Cofactor, Principality};

use crate::adelic::Valuation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rational,
    ImagQuadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub kind: FieldKind,
    /// Squarefree negative `d`; absent for `Q`.
    pub d: Option<i64>,
    pub discriminant: i64,
    /// 2 when `w = (1 + sqrt(d))/2`, 1 when `w = sqrt(d)` (and for `Q`).
    pub integral_basis_denom: u8,
}

impl FieldSpec {
    pub fn rational() -> Self {
        Self {
            kind: FieldKind::Rational,
            d: None,
            discriminant: 1,
            integral_basis_denom: 1,
        }
    }

    pub fn imag_quadratic(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::InvalidField(format!("d = {d} must be negative")));
        }
        if d < -(1i64 << 40) {
            return Err(Error::InvalidField(format!("d = {d} is out of range")));
        }
        if !crate::arith::is_squarefree(d.unsigned_abs()) {
            return Err(Error::InvalidField(format!("d = {d} is not squarefree")));
        }
        let one_mod_four = d.rem_euclid(4) == 1;
        Ok(Self {
            kind: FieldKind::ImagQuadratic,
            d: Some(d),
            discriminant: if one_mod_four { d } else { 4 * d },
            integral_basis_denom: if one_mod_four { 2 } else { 1 },
        })
    }

    /// `Q`, `d=-5`, or a bare negative integer.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
            return Ok(Self::rational());
        }
        let num = t.strip_prefix("d=").unwrap_or(t);
        let d: i64 = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("field must be `Q` or `d=<negative squarefree>`, got `{s}`")))?;
        Self::imag_quadratic(d)
    }

    pub fn is_rational(&self) -> bool {
        self.kind == FieldKind::Rational
    }

    pub fn degree(&self) -> u32 {
        if self.is_rational() {
            1
        } else {
            2
        }
    }

    /// Trace of `w`: the `t` in `w^2 = t·w - n`.
    pub(crate) fn omega_trace(&self) -> BigInt {
        BigInt::from(if self.integral_basis_denom == 2 { 1 } else { 0 })
    }

    /// Norm of `w`: the `n` in `w^2 = t·w - n`.
    pub(crate) fn omega_norm(&self) -> BigInt {
        match self.d {
            None => BigInt::zero(),
            Some(d) if self.integral_basis_denom == 2 => BigInt::from((1 - d) / 4),
            Some(d) => BigInt::from(-d),
        }
    }

    pub fn basis_description(&self) -> Vec<String> {
        match self.d {
            None => vec!["1".into()],
            Some(d) if self.integral_basis_denom == 2 => {
                vec!["1".into(), format!("(1+sqrt({d}))/2")]
            }
            Some(d) => vec!["1".into(), format!("sqrt({d})")],
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            None => write!(f, "Q"),
            Some(d) => write!(f, "d={d}"),
        }
    }
}

/// A field together with its lazily filled prime, power and class caches.
///
/// The caches are the only mutable state; they are behind `RwLock`/`OnceLock`
/// so a `NumberField` can be shared across threads.
pub struct NumberField {
    spec: FieldSpec,
    splittings: RwLock<HashMap<u64, Arc<PrimeSplitting>>>,
    powers: RwLock<HashMap<(PrimeRef, u32), RingIdeal>>,
    class_group: OnceLock<ClassGroup>,
    units: OnceLock<Vec<FieldElement>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField").field("spec", &self.spec).finish()
    }
}

impl NumberField {
    pub fn new(spec: FieldSpec) -> Self {
        Self {
            spec,
            splittings: RwLock::new(HashMap::new()),
            powers: RwLock::new(HashMap::new()),
            class_group: OnceLock::new(),
            units: OnceLock::new(),
        }
    }

    pub fn rational() -> Self {
        Self::new(FieldSpec::rational())
    }

    pub fn imag_quadratic(d: i64) -> Result<Self> {
        Ok(Self::new(FieldSpec::imag_quadratic(d)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_rational(&self) -> bool {
        self.spec.is_rational()
    }

    pub fn discriminant(&self) -> i64 {
        self.spec.discriminant
    }

    /// Parses an element and checks it lives in this field.
    pub fn element(&self, s: &str) -> Result<FieldElement> {
        let x: FieldElement = s.parse()?;
        self.check_element(&x)?;
        Ok(x)
    }

    pub fn check_element(&self, x: &FieldElement) -> Result<()> {
        if self.is_rational() && !x.b.is_zero() {
            return Err(Error::Parse(format!("`{x}` has a w-component but the field is Q")));
        }
        Ok(())
    }

    pub fn omega(&self) -> FieldElement {
        if self.is_rational() {
            FieldElement::one()
        } else {
            FieldElement::from_ints(0, 1)
        }
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let t = BigRational::from_integer(self.spec.omega_trace());
        let n = BigRational::from_integer(self.spec.omega_norm());
        let bb = &x.b * &y.b;
        FieldElement {
            a: &x.a * &y.a - &n * &bb,
            b: &x.a * &y.b + &x.b * &y.a + &t * &bb,
        }
    }

    pub fn conj(&self, x: &FieldElement) -> FieldElement {
        if self.is_rational() {
            return x.clone();
        }
        let t = BigRational::from_integer(self.spec.omega_trace());
        FieldElement {
            a: &x.a + &x.b * &t,
            b: -&x.b,
        }
    }

    pub fn norm(&self, x: &FieldElement) -> BigRational {
        if self.is_rational() {
            return x.a.clone();
        }
        self.mul(x, &self.conj(x)).a
    }

    pub fn trace(&self, x: &FieldElement) -> BigRational {
        if self.is_rational() {
            return x.a.clone();
        }
        (x + &self.conj(x)).a
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(FieldElement::from_rational(x.a.recip()));
        }
        let n = self.norm(x);
        Ok(self.conj(x).scale(&n.recip()))
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FieldElement, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut acc = FieldElement::one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// `v_P(x)`, with `v_P(0) = ∞`. Non-integral `x` uses `v_P(dx) - v_P(d)` for
    /// the least denominator `d`.
    pub fn valuation(&self, x: &FieldElement, p: &PrimeIdeal) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinite;
        }
        let d = x.denominator();
        self.valuation_with_denominator(x, &d, p)
            .expect("least denominator clears x")
    }

    /// `v_P(d·x) - v_P(d)` for a caller-chosen integer `d` with `d·x ∈ R`.
    pub fn valuation_with_denominator(
        &self,
        x: &FieldElement,
        d: &BigInt,
        p: &PrimeIdeal,
    ) -> Result<Valuation> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if x.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let y = x.scale_int(d);
        if !y.is_integral() {
            return Err(Error::NotIntegral(format!("{d}·({x})")));
        }
        let vy = self.valuation_integral(&y, p);
        let vd = self.valuation_integral(&FieldElement::from_int(d.clone()), p);
        Ok(Valuation::Finite(vy as i64 - vd as i64))
    }

    /// All `(P, v_P(x))` with `v_P(x) ≠ 0`, sorted by prime.
    pub fn element_support(&self, x: &FieldElement) -> Result<Vec<(PrimeIdeal, i64)>> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = x.denominator();
        let y = x.scale_int(&d);
        let mut rational_primes: Vec<u64> = crate::arith::factor_bigint(&d)?.into_keys().collect();
        let ny = self.norm(&y).to_integer();
        rational_primes.extend(crate::arith::factor_bigint(&ny)?.into_keys());
        rational_primes.sort_unstable();
        rational_primes.dedup();
        let mut out = Vec::new();
        for p in rational_primes {
            for prime in self.primes_above(p)?.primes.iter() {
                if let Valuation::Finite(v) = self.valuation(x, prime) {
                    if v != 0 {
                        out.push((prime.clone(), v));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &NumberField, s: &str) -> FieldElement {
        f.element(s).unwrap()
    }

    #[test]
    fn field_init_examples() {
        let q = FieldSpec::rational();
        assert_eq!(q.discriminant, 1);
        assert_eq!(q.basis_description(), vec!["1"]);

        let k5 = FieldSpec::imag_quadratic(-5).unwrap();
        assert_eq!(k5.discriminant, -20);
        assert_eq!(k5.integral_basis_denom, 1);

        let k3 = FieldSpec::imag_quadratic(-3).unwrap();
        assert_eq!(k3.discriminant, -3);
        assert_eq!(k3.integral_basis_denom, 2);
    }

    #[test]
    fn field_init_rejects_bad_d() {
        assert!(matches!(FieldSpec::imag_quadratic(-4), Err(Error::InvalidField(_))));
        assert!(matches!(FieldSpec::imag_quadratic(-12), Err(Error::InvalidField(_))));
        assert!(matches!(FieldSpec::imag_quadratic(5), Err(Error::InvalidField(_))));
        assert!(matches!(FieldSpec::imag_quadratic(0), Err(Error::InvalidField(_))));
    }

    #[test]
    fn discriminants_are_zero_or_one_mod_four() {
        for d in [-1i64, -2, -3, -5, -6, -7, -10, -11, -15, -23, -163] {
            let s = FieldSpec::imag_quadratic(d).unwrap();
            assert!(matches!(s.discriminant.rem_euclid(4), 0 | 1));
        }
    }

    #[test]
    fn element_arith_examples() {
        let k = NumberField::imag_quadratic(-5).unwrap();
        let x = el(&k, "1+w");
        assert_eq!(k.norm(&x), BigRational::from_integer(6.into()));
        assert_eq!(k.mul(&x, &FieldElement::one()), x);
        assert_eq!(k.trace(&el(&k, "w")), BigRational::zero());
        assert_eq!(k.inv(&FieldElement::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn norm_is_multiplicative_and_inverse_works() {
        for d in [-1, -3, -5, -23] {
            let k = NumberField::imag_quadratic(d).unwrap();
            let x = el(&k, "2-3w");
            let y = el(&k, "1/2+5/7*w");
            assert_eq!(k.norm(&k.mul(&x, &y)), k.norm(&x) * k.norm(&y));
            assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), FieldElement::one());
        }
        let q = NumberField::rational();
        let x = el(&q, "-15/4");
        assert_eq!(q.inv(&x).unwrap(), el(&q, "-4/15"));
    }

    #[test]
    fn omega_satisfies_its_minimal_polynomial() {
        for d in [-1, -3, -5, -7] {
            let k = NumberField::imag_quadratic(d).unwrap();
            let w = k.omega();
            let t = BigRational::from_integer(k.spec().omega_trace());
            let n = BigRational::from_integer(k.spec().omega_norm());
            let lhs = k.mul(&w, &w);
            let rhs = &w.scale(&t) - &FieldElement::from_rational(n);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rational_field_rejects_w() {
        let q = NumberField::rational();
        assert!(q.element("1+w").is_err());
    }
}
