//! Reference implementations used as oracles by the integration tests.
//!
//! Everything here works from the defining data only: `d`, the coordinates of
//! elements in the basis `1, w`, and prime labels. None of it calls the
//! library's arithmetic.

#![allow(dead_code)]

use adelic_orbit::numberfield::{FieldElement, NumberField, PrimeRef};
use adelic_orbit::primesets::PrimeSetExpr;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `w^2 = t w - n`, and the discriminant.
#[derive(Clone, Debug)]
pub struct Ring {
    pub rational: bool,
    pub t: BigInt,
    pub n: BigInt,
    pub disc: i64,
}

impl Ring {
    pub fn of(field: &NumberField) -> Self {
        match field.spec().d {
            None => Ring {
                rational: true,
                t: BigInt::zero(),
                n: BigInt::zero(),
                disc: 1,
            },
            Some(d) if d.rem_euclid(4) == 1 => Ring {
                rational: false,
                t: BigInt::one(),
                n: BigInt::from((1 - d) / 4),
                disc: d,
            },
            Some(d) => Ring {
                rational: false,
                t: BigInt::zero(),
                n: BigInt::from(-d),
                disc: 4 * d,
            },
        }
    }

    pub fn mul(&self, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let bb = &x.1 * &y.1;
        (&x.0 * &y.0 - &self.n * &bb, &x.0 * &y.1 + &x.1 * &y.0 + &self.t * &bb)
    }

    pub fn norm(&self, x: &(BigInt, BigInt)) -> BigInt {
        if self.rational {
            return x.0.clone();
        }
        &x.0 * &x.0 + &self.t * &x.0 * &x.1 + &self.n * &x.1 * &x.1
    }

    /// `1` split, `0` ramified, `-1` inert.
    pub fn kronecker(&self, p: u64) -> i32 {
        if self.rational {
            return 1;
        }
        let d = self.disc;
        if d % p as i64 == 0 {
            return 0;
        }
        if p == 2 {
            return if d.rem_euclid(8) == 1 { 1 } else { -1 };
        }
        let e = BigInt::from(d).mod_floor(&BigInt::from(p)).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
        if e.is_one() {
            1
        } else {
            -1
        }
    }

    pub fn residue_degree(&self, p: u64) -> u32 {
        if self.kronecker(p) == -1 {
            2
        } else {
            1
        }
    }

    pub fn ramification(&self, p: u64) -> i64 {
        if self.kronecker(p) == 0 && !self.rational {
            2
        } else {
            1
        }
    }

    /// Root of `X^2 - tX + n` modulo `p^e` lifting `-shift` (split primes).
    fn hensel_root(&self, p: u64, shift: u64, e: u32) -> BigInt {
        let pb = BigInt::from(p);
        let mut r = (-BigInt::from(shift)).mod_floor(&pb);
        let mut modulus = pb.clone();
        for _ in 1..e {
            modulus *= &pb;
            let f = &r * &r - &self.t * &r + &self.n;
            let df = BigInt::from(2) * &r - &self.t;
            let inv = df.modinv(&modulus).expect("simple root");
            r = (&r - f * inv).mod_floor(&modulus);
        }
        r
    }

    /// `v_P` of a nonzero integral element.
    fn integral_valuation(&self, x: &(BigInt, BigInt), id: &PrimeRef) -> i64 {
        let p = id.p;
        if self.rational {
            return vp(&x.0, p);
        }
        match self.kronecker(p) {
            -1 => [&x.0, &x.1].iter().filter(|c| !c.is_zero()).map(|c| vp(c, p)).min().expect("nonzero"),
            0 => vp(&self.norm(x), p),
            _ => {
                let shift = id.shift.expect("split primes carry a shift");
                let bound = vp(&self.norm(x), p);
                let mut v = 0;
                while v < bound {
                    let e = v as u32 + 1;
                    let modulus = BigInt::from(p).pow(e);
                    let r = self.hensel_root(p, shift, e);
                    if !(&x.0 + &x.1 * r).mod_floor(&modulus).is_zero() {
                        break;
                    }
                    v += 1;
                }
                v
            }
        }
    }

    /// `v_P(x)`, `None` for `x = 0`.
    pub fn valuation(&self, x: &FieldElement, id: &PrimeRef) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        let d = x.a.denom().lcm(x.b.denom());
        let dq = BigRational::from_integer(d.clone());
        let y = ((&x.a * &dq).to_integer(), (&x.b * &dq).to_integer());
        Some(self.integral_valuation(&y, id) - vp(&d, id.p) * self.ramification(id.p))
    }
}

pub fn vp(x: &BigInt, p: u64) -> i64 {
    assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while (&x % &pb).is_zero() {
        x /= &pb;
        v += 1;
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// A full-rank sublattice of `Z^2` in Hermite normal form
/// `{(A, 0), (B, C)}` with `C > 0`, `0 <= B < A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Lattice {
    pub fn span(vectors: &[(BigInt, BigInt)]) -> Self {
        let mut pivot = (BigInt::zero(), BigInt::zero());
        let mut first = BigInt::zero();
        for v in vectors {
            let (mut p, mut q) = (pivot.clone(), v.clone());
            while !q.1.is_zero() {
                let k = p.1.div_floor(&q.1);
                let r = (&p.0 - &k * &q.0, &p.1 - &k * &q.1);
                p = q;
                q = r;
            }
            // q has second coordinate 0
            first = first.gcd(&q.0);
            pivot = p;
        }
        if pivot.1.is_negative() {
            pivot = (-pivot.0, -pivot.1);
        }
        assert!(!first.is_zero() && !pivot.1.is_zero(), "lattice is not of full rank");
        Lattice {
            b: pivot.0.mod_floor(&first),
            a: first,
            c: pivot.1,
        }
    }

    pub fn basis(&self) -> [(BigInt, BigInt); 2] {
        [(self.a.clone(), BigInt::zero()), (self.b.clone(), self.c.clone())]
    }

    /// Ideal generated by `gens` over `Z[w]`.
    pub fn ideal(ring: &Ring, gens: &[(BigInt, BigInt)]) -> Self {
        let w = (BigInt::zero(), BigInt::one());
        let mut v: Vec<(BigInt, BigInt)> = Vec::new();
        for g in gens {
            v.push(g.clone());
            v.push(ring.mul(g, &w));
        }
        if ring.rational {
            // Z as a lattice in the first coordinate, padded with a unit second axis
            let g = gens.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&x.0));
            return Lattice {
                a: g,
                b: BigInt::zero(),
                c: BigInt::one(),
            };
        }
        Self::span(&v)
    }

    pub fn mul(&self, ring: &Ring, other: &Self) -> Self {
        if ring.rational {
            return Lattice {
                a: &self.a * &other.a,
                b: BigInt::zero(),
                c: BigInt::one(),
            };
        }
        let mut v = Vec::new();
        for x in self.basis() {
            for y in other.basis() {
                v.push(ring.mul(&x, &y));
            }
        }
        Self::span(&v)
    }

    pub fn unit() -> Self {
        Lattice {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }
}

/// Reduced primitive forms `(a, b, c)` of a negative discriminant.
pub fn reduced_forms(disc: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                out.push((a, b, c));
            }
        }
        a += 1;
    }
    out
}

/// Primes below `bound` as labels, with the split ones in both shifts.
pub fn prime_labels(field: &NumberField, bound: u64) -> Vec<PrimeRef> {
    adelic_orbit::primesets::primes_up_to(field, bound)
        .expect("small primes")
        .into_iter()
        .map(|p| p.id)
        .collect()
}

/// `A ⊆ B` tested prime by prime on all primes up to the probe bound.
///
/// For the sampled shapes (finite sets of primes below 40, residue classes
/// modulo divisors of 840, split filters for small discriminants) every
/// nonempty difference contains a prime below the bound.
pub fn subset_by_enumeration(field: &NumberField, probe: &[adelic_orbit::numberfield::PrimeIdeal], a: &PrimeSetExpr, b: &PrimeSetExpr) -> bool {
    probe.iter().all(|p| !a.contains(field, p) || b.contains(field, p))
}
