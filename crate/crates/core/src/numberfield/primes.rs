use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{FieldElement, NumberField, RingIdeal};
use crate::adelic::Valuation;
use crate::arith;
use crate::error::{Error, Result};

/// Stable identifier of a prime ideal: the rational prime below it and, for a
/// split prime, the shift `c` in `P = (p, c + w)`.
///
/// Labels print as `P7` (unique prime above 7) or `P3_1` (split, shift 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeRef {
    pub p: u64,
    pub shift: Option<u64>,
}

impl PrimeRef {
    pub fn unique(p: u64) -> Self {
        Self { p, shift: None }
    }

    pub fn split(p: u64, shift: u64) -> Self {
        Self { p, shift: Some(shift) }
    }
}

impl fmt::Display for PrimeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            None => write!(f, "P{}", self.p),
            Some(c) => write!(f, "P{}_{}", self.p, c),
        }
    }
}

impl FromStr for PrimeRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad prime label `{s}` (expected P<p> or P<p>_<c>)"));
        let body = s.trim().strip_prefix('P').ok_or_else(bad)?;
        let (p, shift) = match body.split_once('_') {
            Some((p, c)) => (p, Some(c.parse::<u64>().map_err(|_| bad())?)),
            None => (body, None),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        Ok(Self { p, shift })
    }
}

impl Serialize for PrimeRef {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PrimeRef {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// A prime ideal `P = (p, π)` of `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub id: PrimeRef,
    pub residue_degree: u8,
    pub ramification: u8,
    /// Second member of the generator pair `(p, π)`.
    pub pi: FieldElement,
    pub ideal: RingIdeal,
}

impl PrimeIdeal {
    pub fn p(&self) -> u64 {
        self.id.p
    }

    pub fn label(&self) -> String {
        self.id.to_string()
    }

    pub fn norm(&self) -> BigInt {
        arith::bigint_pow(self.id.p, self.residue_degree as u32)
    }

    pub fn generator_pair(&self) -> (u64, &FieldElement) {
        (self.id.p, &self.pi)
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.id.cmp(&other.id)
    }
}

/// How a rational prime decomposes, with the primes above it in label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSplitting {
    pub p: u64,
    pub kind: SplitType,
    pub primes: Vec<PrimeIdeal>,
}

impl NumberField {
    /// Splitting type of the rational prime `p`. Over `Q` every prime counts as
    /// split (degree one, unramified).
    pub fn split_type(&self, p: u64) -> SplitType {
        if self.is_rational() {
            return SplitType::Split;
        }
        match arith::kronecker(self.discriminant(), p) {
            1 => SplitType::Split,
            -1 => SplitType::Inert,
            _ => SplitType::Ramified,
        }
    }

    pub fn primes_above(&self, p: u64) -> Result<Arc<PrimeSplitting>> {
        if let Some(s) = self.splittings.read().expect("cache lock").get(&p) {
            return Ok(Arc::clone(s));
        }
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let s = Arc::new(self.compute_splitting(p)?);
        self.splittings
            .write()
            .expect("cache lock")
            .insert(p, Arc::clone(&s));
        Ok(s)
    }

    pub(crate) fn insert_splitting(&self, s: PrimeSplitting) {
        self.splittings
            .write()
            .expect("cache lock")
            .insert(s.p, Arc::new(s));
    }

    pub(crate) fn cached_splittings(&self) -> Vec<Arc<PrimeSplitting>> {
        let mut v: Vec<_> = self
            .splittings
            .read()
            .expect("cache lock")
            .values()
            .cloned()
            .collect();
        v.sort_by_key(|s| s.p);
        v
    }

    /// Alias matching the operation name used in the docs.
    pub fn factor_rational_prime(&self, p: u64) -> Result<Arc<PrimeSplitting>> {
        self.primes_above(p)
    }

    pub(crate) fn make_prime(
        &self,
        id: PrimeRef,
        residue_degree: u8,
        ramification: u8,
        pi: FieldElement,
    ) -> Result<PrimeIdeal> {
        let ideal = self.ideal_from_generators(&[FieldElement::from_int(id.p), pi.clone()])?;
        Ok(PrimeIdeal {
            id,
            residue_degree,
            ramification,
            pi,
            ideal,
        })
    }

    fn compute_splitting(&self, p: u64) -> Result<PrimeSplitting> {
        if self.is_rational() {
            let prime = self.make_prime(PrimeRef::unique(p), 1, 1, FieldElement::from_int(p))?;
            return Ok(PrimeSplitting {
                p,
                kind: SplitType::Split,
                primes: vec![prime],
            });
        }
        let kind = self.split_type(p);
        if kind == SplitType::Inert {
            let prime = self.make_prime(PrimeRef::unique(p), 2, 1, FieldElement::from_int(p))?;
            return Ok(PrimeSplitting {
                p,
                kind,
                primes: vec![prime],
            });
        }
        // Kummer-Dedekind on w^2 - t w + n: P = (p, w - ρ) = (p, w + c), c = -ρ mod p.
        let roots = self.omega_roots_mod(p);
        let mut shifts: Vec<u64> = roots.iter().map(|r| (p - r % p) % p).collect();
        shifts.sort_unstable();
        shifts.dedup();
        let primes = match kind {
            SplitType::Ramified => {
                debug_assert_eq!(shifts.len(), 1);
                vec![self.make_prime(
                    PrimeRef::unique(p),
                    1,
                    2,
                    FieldElement::from_ints(shifts[0], 1),
                )?]
            }
            _ => {
                debug_assert_eq!(shifts.len(), 2);
                shifts
                    .iter()
                    .map(|&c| self.make_prime(PrimeRef::split(p, c), 1, 1, FieldElement::from_ints(c, 1)))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(PrimeSplitting { p, kind, primes })
    }

    /// Roots of the minimal polynomial of `w` modulo `p`.
    fn omega_roots_mod(&self, p: u64) -> Vec<u64> {
        let t = self.spec.omega_trace().to_i64().expect("small") as i128;
        let n = self.spec.omega_norm().mod_floor(&BigInt::from(p)).to_u64().expect("reduced") as i128;
        let pp = p as i128;
        let f = |x: i128| (x * x - t * x + n).rem_euclid(pp);
        if p == 2 {
            return (0..2).filter(|&x| f(x) == 0).map(|x| x as u64).collect();
        }
        let disc = (self.discriminant() as i128).rem_euclid(pp) as u64;
        let inv2 = ((pp + 1) / 2) as u128;
        let Some(s) = arith::sqrt_mod_prime(disc, p) else {
            return vec![];
        };
        let half = |v: i128| ((v.rem_euclid(pp) as u128 * inv2) % pp as u128) as u64;
        let mut roots = vec![half(t + s as i128), half(t - s as i128)];
        roots.sort_unstable();
        roots.dedup();
        debug_assert!(roots.iter().all(|&r| f(r as i128) == 0));
        roots
    }

    /// Resolves a label to the prime ideal it names.
    pub fn prime(&self, id: &PrimeRef) -> Result<PrimeIdeal> {
        let s = self.primes_above(id.p)?;
        s.primes
            .iter()
            .find(|q| q.id == *id)
            .cloned()
            .ok_or_else(|| Error::MalformedPrime(format!("{id} is not a prime of {}", self.spec)))
    }

    pub fn prime_by_label(&self, label: &str) -> Result<PrimeIdeal> {
        self.prime(&label.parse()?)
    }

    pub fn prime_power(&self, p: &PrimeIdeal, n: u32) -> RingIdeal {
        if n == 0 {
            return RingIdeal::unit();
        }
        if let Some(i) = self.powers.read().expect("cache lock").get(&(p.id, n)) {
            return i.clone();
        }
        let prev = self.prime_power(p, n - 1);
        let i = self.ideal_mul(&prev, &p.ideal);
        self.powers
            .write()
            .expect("cache lock")
            .insert((p.id, n), i.clone());
        i
    }

    /// `v_P(y)` for nonzero integral `y`.
    pub(crate) fn valuation_integral(&self, y: &FieldElement, p: &PrimeIdeal) -> u32 {
        let (u, v) = y.coords().expect("integral element");
        debug_assert!(!(u.is_zero() && v.is_zero()));
        let norm = self.norm(y).to_integer();
        let pp = BigInt::from(p.p());
        if !norm.is_multiple_of(&pp) {
            return 0;
        }
        if self.is_rational() {
            return arith::valuation_int(&u, p.p());
        }
        if p.residue_degree == 2 {
            return match (u.is_zero(), v.is_zero()) {
                (true, _) => arith::valuation_int(&v, p.p()),
                (_, true) => arith::valuation_int(&u, p.p()),
                _ => arith::valuation_int(&u, p.p()).min(arith::valuation_int(&v, p.p())),
            };
        }
        let bound = arith::valuation_int(&norm, p.p());
        let mut n = 0;
        while n < bound && self.ideal_contains(&self.prime_power(p, n + 1), y) {
            n += 1;
        }
        n
    }

    /// `v_P(I)`: the largest `n` with `I ⊆ P^n`.
    pub fn ideal_valuation(&self, i: &RingIdeal, p: &PrimeIdeal) -> Valuation {
        if i.is_zero() {
            return Valuation::Infinite;
        }
        let norm = self.ideal_norm(i);
        let bound = arith::valuation_int(&norm, p.p()) / p.residue_degree as u32;
        let mut n = 0;
        while n < bound && self.ideal_contains_ideal(&self.prime_power(p, n + 1), i) {
            n += 1;
        }
        Valuation::Finite(n as i64)
    }

    /// Prime factorization of a nonzero ideal, in label order.
    pub fn factor_ideal(&self, i: &RingIdeal) -> Result<Vec<(PrimeIdeal, u32)>> {
        if i.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut out = Vec::new();
        for p in arith::factor_bigint(&self.ideal_norm(i))?.into_keys() {
            for prime in self.primes_above(p)?.primes.iter() {
                if let Valuation::Finite(v) = self.ideal_valuation(i, prime) {
                    if v > 0 {
                        out.push((prime.clone(), v as u32));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `∏ P^e` for nonnegative exponents.
    pub fn ideal_product(&self, factors: &[(PrimeIdeal, u32)]) -> RingIdeal {
        factors.iter().fold(RingIdeal::unit(), |acc, (p, e)| {
            self.ideal_mul(&acc, &self.prime_power(p, *e))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> NumberField {
        NumberField::imag_quadratic(-5).unwrap()
    }

    #[test]
    fn label_roundtrip() {
        for s in ["P2", "P3_1", "P101_57"] {
            assert_eq!(s.parse::<PrimeRef>().unwrap().to_string(), s);
        }
        assert!("Q2".parse::<PrimeRef>().is_err());
        assert!("P3_".parse::<PrimeRef>().is_err());
    }

    #[test]
    fn splitting_examples_in_q_sqrt_minus_5() {
        let k = k5();
        let s2 = k.primes_above(2).unwrap();
        assert_eq!(s2.kind, SplitType::Ramified);
        let p2 = &s2.primes[0];
        let expected = k
            .ideal_from_generators(&[FieldElement::from_int(2), k.element("1+w").unwrap()])
            .unwrap();
        assert_eq!(p2.ideal, expected);
        assert_eq!(p2.pi, k.element("1+w").unwrap());

        let s3 = k.primes_above(3).unwrap();
        assert_eq!(s3.kind, SplitType::Split);
        let want_a = k
            .ideal_from_generators(&[FieldElement::from_int(3), k.element("1+w").unwrap()])
            .unwrap();
        let want_b = k
            .ideal_from_generators(&[FieldElement::from_int(3), k.element("1-w").unwrap()])
            .unwrap();
        let got: Vec<_> = s3.primes.iter().map(|p| p.ideal.clone()).collect();
        assert!(got.contains(&want_a) && got.contains(&want_b));
        assert_eq!(s3.primes[0].label(), "P3_1");
        assert_eq!(s3.primes[0].ideal, want_a);

        assert_eq!(k.primes_above(11).unwrap().kind, SplitType::Inert);
    }

    #[test]
    fn efg_equals_degree() {
        for d in [-1i64, -2, -3, -5, -7, -23] {
            let k = NumberField::imag_quadratic(d).unwrap();
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
                let s = k.primes_above(p).unwrap();
                let g = s.primes.len() as u8;
                for q in &s.primes {
                    assert_eq!(q.ramification * q.residue_degree * g, 2, "d={d} p={p}");
                    assert_eq!(k.ideal_norm(&q.ideal), q.norm());
                    if q.ramification == 2 {
                        assert_eq!(k.discriminant() % p as i64, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn composite_rejected() {
        assert_eq!(k5().primes_above(15).unwrap_err(), Error::NotPrime(15));
        assert_eq!(NumberField::rational().primes_above(1).unwrap_err(), Error::NotPrime(1));
    }

    #[test]
    fn factor_ideal_examples() {
        let k = k5();
        let two = k.principal_ideal(&FieldElement::from_int(2)).unwrap();
        let f = k.factor_ideal(&two).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].0.label(), f[0].1), ("P2".to_string(), 2));

        let x = k.principal_ideal(&k.element("1+w").unwrap()).unwrap();
        let f = k.factor_ideal(&x).unwrap();
        let labels: Vec<_> = f.iter().map(|(p, e)| (p.label(), *e)).collect();
        assert_eq!(labels, vec![("P2".to_string(), 1), ("P3_1".to_string(), 1)]);
        assert_eq!(k.ideal_product(&f), x);

        let q = NumberField::rational();
        let twelve = q.principal_ideal(&FieldElement::from_int(12)).unwrap();
        let f = q.factor_ideal(&twelve).unwrap();
        let labels: Vec<_> = f.iter().map(|(p, e)| (p.label(), *e)).collect();
        assert_eq!(labels, vec![("P2".to_string(), 2), ("P3".to_string(), 1)]);
        assert_eq!(q.factor_ideal(&RingIdeal::zero()).unwrap_err(), Error::ZeroIdeal);
    }

    #[test]
    fn valuation_examples() {
        let q = NumberField::rational();
        let p3 = q.prime_by_label("P3").unwrap();
        assert_eq!(q.valuation(&FieldElement::from_int(12), &p3), Valuation::Finite(1));
        assert_eq!(q.valuation(&FieldElement::zero(), &p3), Valuation::Infinite);

        let k = k5();
        let p2 = k.prime_by_label("P2").unwrap();
        assert_eq!(k.valuation(&FieldElement::from_int(2), &p2), Valuation::Finite(2));
        let half = k.element("1/2").unwrap();
        assert_eq!(k.valuation(&half, &p2), Valuation::Finite(-2));
        // same answer with a non-minimal denominator
        assert_eq!(
            k.valuation_with_denominator(&half, &BigInt::from(6), &p2).unwrap(),
            Valuation::Finite(-2)
        );
        assert!(k
            .valuation_with_denominator(&half, &BigInt::from(3), &p2)
            .is_err());
    }

    #[test]
    fn inert_valuation_uses_content() {
        let k = k5();
        let p11 = k.prime_by_label("P11").unwrap();
        let x = k.element("121+242w").unwrap();
        assert_eq!(k.valuation(&x, &p11), Valuation::Finite(2));
    }

    #[test]
    fn wrong_label_for_field() {
        let k = k5();
        assert!(matches!(k.prime_by_label("P3"), Err(Error::MalformedPrime(_))));
        assert!(matches!(k.prime_by_label("P11_2"), Err(Error::MalformedPrime(_))));
    }
}
