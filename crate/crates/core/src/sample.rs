//! Seeded random instances for the invariant suites and examples.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adelic::{AdeleSketch, OmegaPoint, SuperIdeal, Valuation};
use crate::dynamics::{BasicNeighborhood, GroupElement};
use crate::error::Result;
use crate::numberfield::{FieldElement, NumberField, PrimeRef};
use crate::primesets::{primes_up_to, PrimeSetExpr, SplitFilter};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero integral element with `|N(x)| <= norm_bound`, drawn by rejection.
pub fn integral_element(field: &NumberField, rng: &mut SampleRng, norm_bound: u64) -> FieldElement {
    let nb = BigRational::from_integer(BigInt::from(norm_bound));
    let span = (norm_bound as f64).sqrt() as i64 + 1;
    loop {
        let a = rng.gen_range(-span..=span);
        let b = if field.is_rational() { 0 } else { rng.gen_range(-span..=span) };
        let x = FieldElement::from_ints(a, b);
        if !x.is_zero() && field.norm(&x) <= nb {
            return x;
        }
    }
}

/// Element with small coordinates and occasional small denominators.
pub fn element(field: &NumberField, rng: &mut SampleRng) -> FieldElement {
    let coord = |rng: &mut SampleRng| {
        let num = BigInt::from(rng.gen_range(-30i64..=30));
        let den = BigInt::from(*[1i64, 1, 1, 2, 3, 4, 5, 9].choose(rng).expect("nonempty"));
        BigRational::new(num, den)
    };
    let a = coord(rng);
    let b = if field.is_rational() {
        BigRational::from_integer(BigInt::from(0))
    } else {
        coord(rng)
    };
    FieldElement::new(a, b)
}

pub fn nonzero_element(field: &NumberField, rng: &mut SampleRng) -> FieldElement {
    loop {
        let x = element(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn group_element(field: &NumberField, rng: &mut SampleRng) -> GroupElement {
    GroupElement::new(element(field, rng), nonzero_element(field, rng)).expect("k is nonzero")
}

/// Prime ideals above rational primes up to 40.
pub fn small_primes(field: &NumberField) -> Result<Vec<PrimeRef>> {
    Ok(primes_up_to(field, 40)?.into_iter().map(|p| p.id).collect())
}

fn finite_subset(primes: &[PrimeRef], rng: &mut SampleRng, max: usize) -> PrimeSetExpr {
    let n = rng.gen_range(1..=max);
    PrimeSetExpr::finite(primes.choose_multiple(rng, n).copied())
}

fn residue_set(field: &NumberField, rng: &mut SampleRng) -> Result<PrimeSetExpr> {
    let m = *[3u64, 4, 5, 7, 8, 12].choose(rng).expect("nonempty");
    let units: Vec<u64> = (1..m).filter(|r| num_integer::gcd(*r, m) == 1).collect();
    let n = rng.gen_range(1..=units.len());
    let cells: Vec<u64> = units.choose_multiple(rng, n).copied().collect();
    let filter = if field.is_rational() || rng.gen_bool(0.5) {
        SplitFilter::Any
    } else {
        SplitFilter::Split
    };
    PrimeSetExpr::residue(m, cells, filter)
}

/// A prime set drawn from the shapes empty, all, finite, cofinite, residue
/// class and residue class with finitely many changes.
pub fn prime_set(field: &NumberField, rng: &mut SampleRng) -> Result<PrimeSetExpr> {
    let primes = small_primes(field)?;
    Ok(match rng.gen_range(0..7) {
        0 => PrimeSetExpr::Empty,
        1 => PrimeSetExpr::All,
        2 => finite_subset(&primes, rng, 4),
        3 => finite_subset(&primes, rng, 3).complement(),
        4 => residue_set(field, rng)?,
        5 => residue_set(field, rng)?.union(finite_subset(&primes, rng, 2)),
        _ => residue_set(field, rng)?.minus(finite_subset(&primes, rng, 2)),
    })
}

/// Superideal with exponent `∞` on `z`, and elsewhere the exponents of `k`.
pub fn superideal_with_zero_set(field: &NumberField, z: &PrimeSetExpr, k: &FieldElement) -> Result<SuperIdeal> {
    let mut pieces = vec![(z.clone(), Valuation::Infinite)];
    let mut rest = z.clone().complement();
    for (p, e) in field.element_support(k)? {
        if !z.contains(field, &p) {
            pieces.push((PrimeSetExpr::single(p.id), Valuation::Finite(e)));
            rest = rest.minus(PrimeSetExpr::single(p.id));
        }
    }
    pieces.push((rest, Valuation::Finite(0)));
    SuperIdeal::new(field, pieces)
}

/// Exact point `ω_{r,a}` with `a` the class of a nonzero element.
pub fn exact_point(field: &NumberField, rng: &mut SampleRng) -> Result<OmegaPoint> {
    OmegaPoint::exact(field, element(field, rng), &nonzero_element(field, rng))
}

/// Exact first coordinate and a superideal with a random zero set.
pub fn point_with_zero_set(field: &NumberField, rng: &mut SampleRng) -> Result<OmegaPoint> {
    let z = prime_set(field, rng)?;
    let k = nonzero_element(field, rng);
    Ok(OmegaPoint::new(
        AdeleSketch::global(element(field, rng)),
        superideal_with_zero_set(field, &z, &k)?,
    ))
}

/// A base point and a neighborhood of a point in its orbit closure.
///
/// The base has exact first coordinate and `Z(a)` a finite set of small
/// primes; the target has `Z(b) ⊇ Z(a)`.
pub fn feasible_neighborhood(field: &NumberField, rng: &mut SampleRng) -> Result<(OmegaPoint, BasicNeighborhood)> {
    let primes = small_primes(field)?;
    let pool: Vec<PrimeRef> = primes.iter().copied().filter(|p| p.p <= 13).collect();
    let za: Vec<PrimeRef> = if rng.gen_bool(0.4) {
        pool.choose_multiple(rng, 1).copied().collect()
    } else {
        Vec::new()
    };
    let mut zb = za.clone();
    for p in &pool {
        if !zb.contains(p) && rng.gen_bool(0.2) {
            zb.push(*p);
        }
    }
    let za_set = PrimeSetExpr::finite(za.iter().copied());
    let zb_set = PrimeSetExpr::finite(zb.iter().copied());
    let base = OmegaPoint::new(
        AdeleSketch::global(element(field, rng)),
        superideal_with_zero_set(field, &za_set, &nonzero_element(field, rng))?,
    );
    let target = OmegaPoint::new(
        AdeleSketch::global(element(field, rng)),
        superideal_with_zero_set(field, &zb_set, &nonzero_element(field, rng))?,
    );

    let mut exact = Vec::new();
    let mut floor = Vec::new();
    let mut first = Vec::new();
    for p in &pool {
        if zb.contains(p) {
            if rng.gen_bool(0.7) {
                floor.push((*p, rng.gen_range(0..=4)));
            }
        } else if rng.gen_bool(0.5) {
            let e = target.a.exponent_at(field, p).finite().expect("outside Z(b)");
            exact.push((*p, e));
        }
        if rng.gen_bool(0.5) {
            first.push((*p, rng.gen_range(-1..=4)));
        }
    }
    let v = BasicNeighborhood::new(field, target, exact, floor, first)?;
    Ok((base, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let q = NumberField::imag_quadratic(-5).unwrap();
        let a: Vec<_> = (0..5).map(|_| 0).scan(rng(7), |r, _| Some(element(&q, r))).collect();
        let b: Vec<_> = (0..5).map(|_| 0).scan(rng(7), |r, _| Some(element(&q, r))).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_sets_are_as_requested() {
        let q = NumberField::rational();
        let mut r = rng(1);
        for _ in 0..20 {
            let z = prime_set(&q, &mut r).unwrap();
            let a = superideal_with_zero_set(&q, &z, &FieldElement::from_int(12)).unwrap();
            assert!(a.zero_set().set_eq(&q, &z).unwrap());
        }
    }
}
