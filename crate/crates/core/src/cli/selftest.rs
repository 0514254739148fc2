//! Randomized invariant suites behind `adelic-orbit selftest`.

use std::thread;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::SliceRandom;
use serde_json::{json, Value};

use crate::adelic::{local_sub, points_equivalent, AdeleSketch, Equivalence, OmegaPoint, ValInterval, DEFAULT_REFINEMENT_CAP};
use crate::dynamics::lattice::{ideal_leq, is_maximal, primitive_ideal};
use crate::dynamics::{
    act, approximate_into, orbit_closure_contains, quasi_orbit, stabilizer, trivial_stabilizer_point, GroupElement,
    StabilizerDescription,
};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, FieldSpec, NumberField};
use crate::primesets::{primes_up_to, PointClosure, PrimeSetExpr};
use crate::sample;

use super::DEFAULT_SEARCH_BOUND;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "cases": self.cases,
            "failures": self.failures,
            "first_failure": self.first_failure,
            "passed": self.failures == 0,
        })
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: Result<bool>, what: impl FnOnce() -> String) {
        self.cases += 1;
        let msg = match ok {
            Ok(true) => return,
            Ok(false) => what(),
            Err(e) => format!("{}: {e}", what()),
        };
        self.failures += 1;
        self.first.get_or_insert(msg);
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first,
        }
    }
}

fn fields(ds: &[i64]) -> Vec<NumberField> {
    ds.iter()
        .map(|&d| {
            let spec = if d == 1 { FieldSpec::rational() } else { FieldSpec::imag_quadratic(d).expect("valid d") };
            NumberField::new(spec)
        })
        .collect()
}

/// Number of reduced primitive forms of discriminant `disc < 0`.
fn count_reduced_forms(disc: i64) -> usize {
    let mut n = 0;
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
            if num_integer::gcd(num_integer::gcd(a, b.abs()), c) == 1 {
                n += 1;
            }
        }
        a += 1;
    }
    n
}

fn class_group_suite() -> SuiteReport {
    let mut t = Tally::new("class_group");
    for d in [-1i64, -5, -23, -3, -15, -21, -47] {
        let field = &fields(&[d])[0];
        let disc = field.discriminant();
        t.record(Ok(field.class_number() == count_reduced_forms(disc)), || format!("h({disc})"));
        // represent every class by a small prime ideal and compare products with the table
        let group = field.class_group().clone();
        let mut reps = vec![None; group.order()];
        if let Ok(primes) = primes_up_to(field, 300) {
            for p in primes {
                if let Ok(c) = field.ideal_class(&p.ideal) {
                    if let Some(i) = group.index_of(&c) {
                        reps[i].get_or_insert(p);
                    }
                }
            }
        }
        for i in 0..group.order() {
            for j in 0..group.order() {
                let ok = match (&reps[i], &reps[j]) {
                    (Some(p), Some(q)) => field
                        .ideal_class(&field.ideal_mul(&p.ideal, &q.ideal))
                        .map(|c| group.index_of(&c) == Some(group.table[i][j])),
                    _ => Ok(false),
                };
                t.record(ok, || format!("class product {i}·{j} for d={d}"));
            }
        }
    }
    t.finish()
}

fn factorization_suite(seed: u64, n: usize) -> SuiteReport {
    let mut t = Tally::new("factorization");
    let mut rng = sample::rng(seed);
    for field in fields(&[1, -1, -5]) {
        for _ in 0..n {
            let x = sample::integral_element(&field, &mut rng, 1_000_000);
            let ok = (|| -> Result<bool> {
                let support = field.element_support(&x)?;
                let mut prod = field.principal_ideal(&FieldElement::one())?;
                let mut norm = BigInt::from(1);
                for (p, e) in &support {
                    let e = u32::try_from(*e).map_err(|_| Error::Internal("negative exponent".into()))?;
                    prod = field.ideal_mul(&prod, &field.prime_power(p, e));
                    norm *= p.norm().pow(e);
                }
                let nx = field.norm(&x).to_integer().abs();
                Ok(prod == field.principal_ideal(&x)? && norm == nx)
            })();
            t.record(ok, || format!("factor {x} in {}", field.spec()));
        }
    }
    t.finish()
}

fn approximation_suite(seed: u64, n: usize) -> SuiteReport {
    let mut t = Tally::new("approximation");
    let mut rng = sample::rng(seed ^ 0x51);
    for field in fields(&[1, -5]) {
        for _ in 0..n {
            let ok = (|| -> Result<bool> {
                let (base, v) = sample::feasible_neighborhood(&field, &mut rng)?;
                let res = approximate_into(&field, &base, &v, DEFAULT_SEARCH_BOUND)?;
                v.contains(&field, &act(&field, &res.g, &base)?)
            })();
            t.record(ok, || format!("approximation in {}", field.spec()));
        }
    }
    t.finish()
}

fn closure_suite(seed: u64, n: usize) -> SuiteReport {
    let mut t = Tally::new("closure");
    let mut rng = sample::rng(seed ^ 0xc1);
    for field in fields(&[1, -5]) {
        for _ in 0..n {
            let ok = (|| -> Result<bool> {
                let b = sample::point_with_zero_set(&field, &mut rng)?;
                let w = sample::point_with_zero_set(&field, &mut rng)?;
                let direct = orbit_closure_contains(&field, &b, &w)?;
                let via_topology = PointClosure::of(quasi_orbit(&b)).contains(&field, &quasi_orbit(&w))?;
                Ok(direct == via_topology)
            })();
            t.record(ok, || format!("closure in {}", field.spec()));
        }
    }
    t.finish()
}

fn action_suite(seed: u64, n: usize) -> SuiteReport {
    let mut t = Tally::new("group_action");
    let mut rng = sample::rng(seed ^ 0xa7);
    for field in fields(&[1, -5]) {
        for _ in 0..n {
            let ok = (|| -> Result<bool> {
                let w = sample::exact_point(&field, &mut rng)?;
                let g = sample::group_element(&field, &mut rng);
                let h = sample::group_element(&field, &mut rng);
                let lhs = act(&field, &g, &act(&field, &h, &w)?)?;
                let rhs = act(&field, &g.compose(&field, &h), &w)?;
                let id = act(&field, &GroupElement::identity(), &w)?;
                Ok(points_equivalent(&field, &lhs, &rhs, DEFAULT_REFINEMENT_CAP)? == Equivalence::Yes
                    && points_equivalent(&field, &id, &w, DEFAULT_REFINEMENT_CAP)? == Equivalence::Yes)
            })();
            t.record(ok, || format!("action law in {}", field.spec()));
        }
    }
    t.finish()
}

fn conjugation_suite(seed: u64, n: usize) -> SuiteReport {
    let mut t = Tally::new("stabilizer_conjugation");
    let mut rng = sample::rng(seed ^ 0x5a);
    for field in fields(&[1, -1, -5]) {
        for _ in 0..n {
            let ok = (|| -> Result<bool> {
                let x = sample::element(&field, &mut rng);
                let bases = [
                    OmegaPoint::exact(&field, FieldElement::zero(), &FieldElement::one())?,
                    OmegaPoint::exact(&field, FieldElement::zero(), &FieldElement::zero())?,
                    OmegaPoint::exact(&field, x, &FieldElement::zero())?,
                ];
                let g = sample::group_element(&field, &mut rng);
                for w in &bases {
                    let s = stabilizer(&field, w, DEFAULT_REFINEMENT_CAP)?;
                    let moved = stabilizer(&field, &act(&field, &g, w)?, DEFAULT_REFINEMENT_CAP)?;
                    if !moved.equivalent(&field, &s.conjugate(&field, &g)?)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            t.record(ok, || format!("conjugation in {}", field.spec()));
        }
    }
    t.finish()
}

fn trivial_suite(seed: u64) -> SuiteReport {
    let mut t = Tally::new("trivial_stabilizer");
    let mut rng = sample::rng(seed ^ 0x77);
    for field in fields(&[1, -5]) {
        let mut sets: Vec<PrimeSetExpr> = vec![PrimeSetExpr::Empty, PrimeSetExpr::All];
        while sets.len() < 20 {
            if let Ok(s) = sample::prime_set(&field, &mut rng) {
                sets.push(s);
            }
        }
        for a in sets {
            let ok = (|| -> Result<bool> {
                let w = trivial_stabilizer_point(&field, &a)?;
                Ok(quasi_orbit(&w).set_eq(&field, &a)?
                    && stabilizer(&field, &w, DEFAULT_REFINEMENT_CAP)? == StabilizerDescription::Trivial)
            })();
            t.record(ok, || format!("trivial point for {a} in {}", field.spec()));
        }
    }
    t.finish()
}

fn order_suite(seed: u64, n: usize) -> SuiteReport {
    let mut t = Tally::new("ideal_order");
    let mut rng = sample::rng(seed ^ 0x0d);
    for field in fields(&[1, -5]) {
        let mut maximal = 0;
        let mut family = vec![PrimeSetExpr::All];
        for _ in 0..n {
            let ok = (|| -> Result<bool> {
                let a = sample::prime_set(&field, &mut rng)?;
                let b = sample::prime_set(&field, &mut rng)?;
                family.push(a.clone());
                let (ia, ib) = (primitive_ideal(&field, &a)?, primitive_ideal(&field, &b)?);
                let empty = primitive_ideal(&field, &PrimeSetExpr::Empty)?;
                Ok(ideal_leq(&field, &ia, &ib)? == a.is_subset(&field, &b)?
                    && ideal_leq(&field, &empty, &ia)?)
            })();
            t.record(ok, || format!("order in {}", field.spec()));
        }
        for a in &family {
            if is_maximal(&field, &primitive_ideal(&field, a).expect("valid set")).unwrap_or(false) {
                maximal += 1;
            }
        }
        let all_count = family
            .iter()
            .filter(|a| a.set_eq(&field, &PrimeSetExpr::All).unwrap_or(false))
            .count();
        t.record(Ok(maximal == all_count), || "maximal elements".into());
    }
    t.finish()
}

fn ultrametric_suite(seed: u64, n: usize) -> SuiteReport {
    let mut t = Tally::new("ultrametric");
    let mut rng = sample::rng(seed ^ 0x99);
    for field in fields(&[1, -5]) {
        let primes = primes_up_to(&field, 40).expect("small primes");
        for _ in 0..n {
            let x = sample::element(&field, &mut rng);
            let y = sample::element(&field, &mut rng);
            let p = primes.choose(&mut rng).expect("nonempty");
            let iv = local_sub(&field, &AdeleSketch::global(x.clone()), &AdeleSketch::global(y.clone()), p);
            let ok = iv == ValInterval::exact(field.valuation(&(&x - &y), p));
            t.record(Ok(ok), || format!("local_sub({x}, {y}, {})", p.label()));
        }
    }
    t.finish()
}

fn boolean_suite(seed: u64, n: usize) -> SuiteReport {
    let mut t = Tally::new("boolean_laws");
    let mut rng = sample::rng(seed ^ 0xb0);
    for field in fields(&[1, -5]) {
        let probe = primes_up_to(&field, 400).expect("small primes");
        for _ in 0..n {
            let ok = (|| -> Result<bool> {
                let s = sample::prime_set(&field, &mut rng)?;
                let u = sample::prime_set(&field, &mut rng)?;
                let v = sample::prime_set(&field, &mut rng)?;
                let de_morgan = s
                    .clone()
                    .union(u.clone())
                    .complement()
                    .set_eq(&field, &s.clone().complement().intersect(u.clone().complement()))?;
                let distrib = s
                    .clone()
                    .intersect(u.clone().union(v.clone()))
                    .set_eq(&field, &s.clone().intersect(u.clone()).union(s.clone().intersect(v.clone())))?;
                let involution = s.clone().complement().complement().set_eq(&field, &s)?;
                let canon = s.canonical(&field)?;
                let pointwise = probe.iter().all(|p| canon.contains(&field, p) == s.contains(&field, p));
                Ok(de_morgan && distrib && involution && pointwise)
            })();
            t.record(ok, || format!("boolean laws in {}", field.spec()));
        }
    }
    t.finish()
}

/// Runs every suite on its own thread. `scale` multiplies the instance counts.
pub fn run_suites(seed: u64, scale: usize) -> Vec<SuiteReport> {
    let scale = scale.max(1);
    thread::scope(|s| {
        let handles = vec![
            s.spawn(class_group_suite),
            s.spawn(move || factorization_suite(seed, 100 * scale)),
            s.spawn(move || approximation_suite(seed, 25 * scale)),
            s.spawn(move || closure_suite(seed, 50 * scale)),
            s.spawn(move || action_suite(seed, 50 * scale)),
            s.spawn(move || conjugation_suite(seed, 10 * scale)),
            s.spawn(move || trivial_suite(seed)),
            s.spawn(move || order_suite(seed, 50 * scale)),
            s.spawn(move || ultrametric_suite(seed, 250 * scale)),
            s.spawn(move || boolean_suite(seed, 50 * scale)),
        ];
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}
