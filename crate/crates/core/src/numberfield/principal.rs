use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{FieldElement, IdealClass, NumberField, PrimeIdeal, RingIdeal};
use crate::adelic::Valuation;
use crate::arith;
use crate::error::{Error, Result};
use crate::primesets::PrimeSetExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Principality {
    /// Normalized generator `g` with `(g) = I`.
    Principal(FieldElement),
    /// Certified by the class of `I` differing from the identity.
    NotPrincipal { class: IdealClass },
}

/// Output of [`NumberField::principal_cofactor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cofactor {
    pub q: PrimeIdeal,
    pub k: FieldElement,
}

impl NumberField {
    /// Integral elements of norm exactly `m > 0` (imaginary quadratic fields only).
    pub fn elements_of_norm(&self, m: &BigInt) -> Vec<FieldElement> {
        assert!(!self.is_rational());
        let absd = BigInt::from(self.discriminant().unsigned_abs());
        let t = self.spec.omega_trace();
        let four_m = BigInt::from(4) * m;
        let vmax = (&four_m / &absd).sqrt();
        let mut out = Vec::new();
        let mut v = -vmax.clone();
        while v <= vmax {
            let rhs = &four_m - &absd * &v * &v;
            if let Some(s) = arith::exact_sqrt(&rhs) {
                for sign in [s.clone(), -s.clone()] {
                    let two_u = sign - &t * &v;
                    if (&two_u % BigInt::from(2)).is_zero() {
                        out.push(FieldElement::from_ints(two_u / 2, v.clone()));
                    }
                }
            }
            v += 1;
        }
        out.sort();
        out.dedup();
        out
    }

    /// The (finite) unit group `R*`.
    pub fn unit_group(&self) -> &[FieldElement] {
        self.units.get_or_init(|| {
            if self.is_rational() {
                vec![FieldElement::from_int(-1), FieldElement::one()]
            } else {
                self.elements_of_norm(&BigInt::from(1))
            }
        })
    }

    pub fn is_unit(&self, x: &FieldElement) -> bool {
        self.unit_group().contains(x)
    }

    /// The associate `u·g` with the lexicographically largest coordinates, so
    /// the first nonzero coordinate is positive.
    pub fn normalize_generator(&self, g: &FieldElement) -> FieldElement {
        self.unit_group()
            .iter()
            .map(|u| self.mul(u, g))
            .max()
            .expect("unit group is nonempty")
    }

    pub fn is_principal(&self, i: &RingIdeal) -> Result<Principality> {
        if i.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_rational() {
            return Ok(Principality::Principal(FieldElement::from_int(i.min_integer().clone())));
        }
        match self.generator_from_reduction(i)? {
            Some(g) => {
                if self.principal_ideal(&g)? != *i {
                    return Err(Error::Internal(format!("generator {g} does not generate {i}")));
                }
                Ok(Principality::Principal(self.normalize_generator(&g)))
            }
            None => Ok(Principality::NotPrincipal {
                class: self.ideal_class(i)?,
            }),
        }
    }

    /// Finds a prime `Q ∉ exclude` (and not among `primes`) in the inverse class
    /// of `∏ P_j^{e_j}`, and a normalized generator `k` of `Q·∏ P_j^{e_j}`.
    ///
    /// Rational primes are scanned in increasing order up to `bound`; primes
    /// above the same `p` are tried in label order. Negative exponents are
    /// allowed and make `k` non-integral.
    pub fn principal_cofactor(
        &self,
        primes: &[PrimeIdeal],
        exps: &[i64],
        exclude: &PrimeSetExpr,
        bound: u64,
    ) -> Result<Cofactor> {
        if primes.len() != exps.len() {
            return Err(Error::Precondition("primes and exponents differ in length".into()));
        }
        for (i, p) in primes.iter().enumerate() {
            if primes[..i].iter().any(|q| q.id == p.id) {
                return Err(Error::Precondition(format!("prime {} listed twice", p.id)));
            }
        }
        let factors: Vec<(PrimeIdeal, i64)> = primes.iter().cloned().zip(exps.iter().copied()).collect();
        let (partial, neg_norm) = self.as_quotient(&factors);
        let target = self.class_inverse(&self.ideal_class(&partial)?);

        let mut p = 2u64;
        while p <= bound {
            for q in self.primes_above(p)?.primes.iter() {
                if primes.iter().any(|x| x.id == q.id) || exclude.contains(self, q) {
                    continue;
                }
                if self.ideal_class(&q.ideal)? != target {
                    continue;
                }
                let m = self.ideal_mul(&partial, &q.ideal);
                let Principality::Principal(g) = self.is_principal(&m)? else {
                    return Err(Error::Internal(format!("{m} should be principal")));
                };
                let k = self.normalize_generator(&g.scale(&neg_norm.recip()));
                for (pj, &e) in primes.iter().zip(exps) {
                    if self.valuation(&k, pj) != Valuation::Finite(e) {
                        return Err(Error::Internal(format!("cofactor valuation mismatch at {}", pj.id)));
                    }
                }
                debug_assert_eq!(self.valuation(&k, q), Valuation::Finite(1));
                return Ok(Cofactor { q: q.clone(), k });
            }
            p = arith::next_prime_after(p);
        }
        Err(Error::SearchExhausted { bound })
    }

    /// Writes `∏ P^{e_P}` as `m / (n)` with `m` integral and `n` a positive integer.
    fn as_quotient(&self, factors: &[(PrimeIdeal, i64)]) -> (RingIdeal, BigRational) {
        let mut m = RingIdeal::unit();
        let mut n = BigInt::from(1);
        for (p, e) in factors {
            let pe = self.prime_power(p, e.unsigned_abs() as u32);
            if *e > 0 {
                m = self.ideal_mul(&m, &pe);
            } else if *e < 0 {
                // P^{-1} = conj(P)/N(P) in degree 2, and (p)^{-1} = 1/p over Q
                if !self.is_rational() {
                    m = self.ideal_mul(&m, &self.ideal_conj(&pe));
                }
                n *= self.ideal_norm(&pe);
            }
        }
        (m, BigRational::from_integer(n))
    }

    /// A normalized generator of the fractional ideal `∏ P^{e_P}`, if it is principal.
    pub fn fractional_generator(&self, factors: &[(PrimeIdeal, i64)]) -> Result<Option<FieldElement>> {
        let (m, n) = self.as_quotient(factors);
        match self.is_principal(&m)? {
            Principality::Principal(g) => Ok(Some(self.normalize_generator(&g.scale(&n.recip())))),
            Principality::NotPrincipal { .. } => Ok(None),
        }
    }

    /// Some `m ∈ K` with `v_P(m - y_P) >= n_P` at each listed prime and
    /// `v_Q(m) >= 0` at every other prime.
    pub fn approximate(&self, targets: &[(PrimeIdeal, FieldElement, i64)]) -> Result<FieldElement> {
        for (i, (p, _, _)) in targets.iter().enumerate() {
            if targets[..i].iter().any(|(q, _, _)| q.id == p.id) {
                return Err(Error::Precondition(format!("prime {} listed twice", p.id)));
            }
        }
        let d = targets
            .iter()
            .fold(BigInt::from(1), |acc, (_, y, _)| num_integer::lcm(acc, y.denominator()));
        let d_el = FieldElement::from_int(d.clone());
        let mut congruences = Vec::new();
        for (p, y, n) in targets {
            let vd = self.valuation(&d_el, p).finite().expect("d is nonzero");
            let e = n + vd;
            if e > 0 {
                let e = e.to_u32().ok_or_else(|| Error::Precondition("precision too large".into()))?;
                congruences.push((self.prime_power(p, e), y.scale_int(&d)));
            }
        }
        if d.abs() > BigInt::from(1) {
            for q in arith::factor_bigint(&d)?.into_keys() {
                for prime in self.primes_above(q)?.primes.iter() {
                    if targets.iter().any(|(t, _, _)| t.id == prime.id) {
                        continue;
                    }
                    let e = self.valuation(&d_el, prime).finite().expect("d is nonzero");
                    if e > 0 {
                        congruences.push((self.prime_power(prime, e as u32), FieldElement::zero()));
                    }
                }
            }
        }
        let x = self.crt(&congruences)?;
        Ok(x.scale(&(BigRational::from_integer(1.into()) / BigRational::from_integer(d))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primesets::PrimeSetExpr;

    #[test]
    fn unit_groups() {
        assert_eq!(NumberField::rational().unit_group().len(), 2);
        assert_eq!(NumberField::imag_quadratic(-1).unwrap().unit_group().len(), 4);
        assert_eq!(NumberField::imag_quadratic(-3).unwrap().unit_group().len(), 6);
        let k5 = NumberField::imag_quadratic(-5).unwrap();
        assert_eq!(
            k5.unit_group(),
            &[FieldElement::from_int(-1), FieldElement::from_int(1)]
        );
    }

    #[test]
    fn units_are_closed_and_have_norm_one() {
        for d in [-1, -3, -7] {
            let k = NumberField::imag_quadratic(d).unwrap();
            let us = k.unit_group();
            for u in us {
                assert_eq!(k.norm(u), BigRational::from_integer(1.into()));
                assert!(u.is_integral());
                assert!(us.contains(&k.inv(u).unwrap()));
                for v in us {
                    assert!(us.contains(&k.mul(u, v)));
                }
            }
        }
    }

    #[test]
    fn principality_examples() {
        let k = NumberField::imag_quadratic(-5).unwrap();
        let p2 = k.prime_by_label("P2").unwrap();
        assert!(matches!(k.is_principal(&p2.ideal).unwrap(), Principality::NotPrincipal { .. }));
        let p2sq = k.ideal_mul(&p2.ideal, &p2.ideal);
        assert_eq!(
            k.is_principal(&p2sq).unwrap(),
            Principality::Principal(FieldElement::from_int(2))
        );
        let q = NumberField::rational();
        let six = q.principal_ideal(&FieldElement::from_int(6)).unwrap();
        assert_eq!(q.is_principal(&six).unwrap(), Principality::Principal(FieldElement::from_int(6)));
        assert_eq!(k.is_principal(&RingIdeal::zero()).unwrap_err(), Error::ZeroIdeal);
    }

    #[test]
    fn cofactor_examples() {
        let q = NumberField::rational();
        let p2 = q.prime_by_label("P2").unwrap();
        let ex = PrimeSetExpr::finite([p2.id]);
        let c = q.principal_cofactor(std::slice::from_ref(&p2), &[1], &ex, 1000).unwrap();
        assert_eq!(c.q.label(), "P3");
        assert_eq!(c.k, FieldElement::from_int(6));

        let k = NumberField::imag_quadratic(-5).unwrap();
        let p2 = k.prime_by_label("P2").unwrap();
        let ex = PrimeSetExpr::finite([p2.id]);
        let c = k.principal_cofactor(std::slice::from_ref(&p2), &[1], &ex, 1000).unwrap();
        assert_eq!(c.q.label(), "P3_1");
        assert_eq!(c.k, k.element("1+w").unwrap());

        // empty product: smallest principal prime outside the exclusion
        let c = k.principal_cofactor(std::slice::from_ref(&p2), &[0], &ex, 1000).unwrap();
        assert_eq!(c.q.label(), "P5");
        assert_eq!(c.k, k.element("w").unwrap());
    }

    #[test]
    fn cofactor_search_exhausted() {
        let k = NumberField::imag_quadratic(-5).unwrap();
        let p2 = k.prime_by_label("P2").unwrap();
        let err = k
            .principal_cofactor(std::slice::from_ref(&p2), &[1], &PrimeSetExpr::All, 100)
            .unwrap_err();
        assert_eq!(err, Error::SearchExhausted { bound: 100 });
    }

    #[test]
    fn cofactor_with_negative_exponent() {
        let k = NumberField::imag_quadratic(-5).unwrap();
        let p2 = k.prime_by_label("P2").unwrap();
        let p3 = k.prime_by_label("P3_2").unwrap();
        let ex = PrimeSetExpr::finite([p2.id, p3.id]);
        let c = k
            .principal_cofactor(&[p2.clone(), p3.clone()], &[-1, 2], &ex, 1000)
            .unwrap();
        assert_eq!(k.valuation(&c.k, &p2), Valuation::Finite(-1));
        assert_eq!(k.valuation(&c.k, &p3), Valuation::Finite(2));
        assert_eq!(k.valuation(&c.k, &c.q), Valuation::Finite(1));
    }

    #[test]
    fn approximation_hits_targets_and_stays_integral() {
        let k = NumberField::imag_quadratic(-5).unwrap();
        let p2 = k.prime_by_label("P2").unwrap();
        let p3a = k.prime_by_label("P3_1").unwrap();
        let p3b = k.prime_by_label("P3_2").unwrap();
        let y1 = k.element("1/3+w").unwrap();
        let y2 = k.element("5/2").unwrap();
        let targets = vec![(p2.clone(), y1.clone(), 3), (p3b.clone(), y2.clone(), 2)];
        let m = k.approximate(&targets).unwrap();
        assert!(k.valuation(&(&m - &y1), &p2) >= Valuation::Finite(3));
        assert!(k.valuation(&(&m - &y2), &p3b) >= Valuation::Finite(2));
        assert!(k.valuation(&m, &p3a) >= Valuation::Finite(0));
        for (p, v) in k.element_support(&m).unwrap() {
            if p.id != p2.id && p.id != p3b.id {
                assert!(v >= 0, "unexpected denominator at {}", p.id);
            }
        }
    }
}
