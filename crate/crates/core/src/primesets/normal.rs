use std::collections::{BTreeSet, HashMap};

use super::{Cardinality, PrimeSetExpr, SplitFilter};
use crate::arith;
use crate::error::{Error, Result};
use crate::numberfield::{NumberField, PrimeRef, SplitType};

/// Largest combined modulus the normal form will work with.
pub const MAX_MODULUS: u64 = 1 << 20;

/// Canonical description of a prime set:
/// `{P | p : p ∤ modulus, p mod modulus ∈ cells} ∪ include \ exclude`.
///
/// `modulus` is the least period of the generic part, `include` collects the
/// members that the generic rule misses (always including members over primes
/// dividing `modulus`) and `exclude` the non-members it would wrongly admit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub(crate) modulus: u64,
    pub(crate) cells: BTreeSet<u64>,
    pub(crate) include: BTreeSet<PrimeRef>,
    pub(crate) exclude: BTreeSet<PrimeRef>,
}

fn generic_split_type(field: &NumberField, c: u64) -> SplitType {
    if field.is_rational() {
        return SplitType::Split;
    }
    match arith::kronecker(field.discriminant(), c) {
        1 => SplitType::Split,
        -1 => SplitType::Inert,
        _ => SplitType::Ramified,
    }
}

fn eval_generic(e: &PrimeSetExpr, c: u64, t: SplitType) -> bool {
    match e {
        PrimeSetExpr::Empty | PrimeSetExpr::Finite(_) => false,
        PrimeSetExpr::All => true,
        PrimeSetExpr::Residue {
            modulus,
            residues,
            filter,
        } => residues.contains(&(c % modulus)) && filter.matches(t),
        PrimeSetExpr::Union(v) => v.iter().any(|x| eval_generic(x, c, t)),
        PrimeSetExpr::Intersect(v) => v.iter().all(|x| eval_generic(x, c, t)),
        PrimeSetExpr::Complement(x) => !eval_generic(x, c, t),
    }
}

impl NormalForm {
    pub fn of(field: &NumberField, expr: &PrimeSetExpr) -> Result<Self> {
        let mut moduli = BTreeSet::new();
        expr.moduli(&mut moduli);
        let mut n = field.discriminant().unsigned_abs();
        for m in moduli {
            n = arith::lcm_u64(n, m);
            if n > MAX_MODULUS {
                return Err(Error::ModulusTooLarge(n));
            }
        }

        let classes: Vec<(u64, bool)> = (0..n)
            .filter(|&c| arith::gcd_u64(c, n) == 1)
            .map(|c| (c, eval_generic(expr, c, generic_split_type(field, c))))
            .collect();
        let period = arith::divisors(n)
            .into_iter()
            .find(|&d| {
                let mut seen: HashMap<u64, bool> = HashMap::new();
                classes
                    .iter()
                    .all(|&(c, m)| *seen.entry(c % d).or_insert(m) == m)
            })
            .expect("n is a period of itself");
        let cells: BTreeSet<u64> = classes
            .iter()
            .filter(|(_, m)| *m)
            .map(|(c, _)| c % period)
            .collect();

        let mut special = BTreeSet::new();
        expr.labels(&mut special);
        for id in &special {
            field.prime(id)?;
        }
        for p in arith::factor_u64(n).into_keys() {
            special.extend(field.primes_above(p)?.primes.iter().map(|q| q.id));
        }

        let mut nf = NormalForm {
            modulus: period,
            cells,
            include: BTreeSet::new(),
            exclude: BTreeSet::new(),
        };
        for id in special {
            let member = expr.contains_ref(field, &id);
            let generic = nf.generic_contains(id.p);
            if member && !generic {
                nf.include.insert(id);
            } else if !member && generic {
                nf.exclude.insert(id);
            }
        }
        Ok(nf)
    }

    fn generic_contains(&self, p: u64) -> bool {
        arith::gcd_u64(p, self.modulus) == 1 && self.cells.contains(&(p % self.modulus))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn cells(&self) -> &BTreeSet<u64> {
        &self.cells
    }

    pub fn include(&self) -> &BTreeSet<PrimeRef> {
        &self.include
    }

    pub fn exclude(&self) -> &BTreeSet<PrimeRef> {
        &self.exclude
    }

    pub fn contains(&self, id: &PrimeRef) -> bool {
        if self.include.contains(id) {
            return true;
        }
        !self.exclude.contains(id) && self.generic_contains(id.p)
    }

    pub fn is_finite(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty() && self.include.is_empty()
    }

    pub fn cardinality(&self) -> Cardinality {
        if self.is_finite() {
            Cardinality::Finite(self.include.len())
        } else {
            Cardinality::Infinite
        }
    }

    pub fn first_member(&self, field: &NumberField) -> Result<Option<PrimeRef>> {
        if self.is_empty() {
            return Ok(None);
        }
        if self.is_finite() {
            return Ok(self.include.iter().next().copied());
        }
        let mut p = 2;
        loop {
            for q in field.primes_above(p)?.primes.iter() {
                if self.contains(&q.id) {
                    return Ok(Some(q.id));
                }
            }
            p = arith::next_prime_after(p);
        }
    }

    pub fn to_expr(&self) -> PrimeSetExpr {
        let generic = if self.cells.is_empty() {
            None
        } else if self.modulus == 1 {
            Some(PrimeSetExpr::All)
        } else {
            Some(PrimeSetExpr::Residue {
                modulus: self.modulus,
                residues: self.cells.clone(),
                filter: SplitFilter::Any,
            })
        };
        let inc = (!self.include.is_empty()).then(|| PrimeSetExpr::Finite(self.include.clone()));
        let mut e = match (generic, inc) {
            (None, None) => PrimeSetExpr::Empty,
            (Some(g), None) => g,
            (None, Some(f)) => f,
            (Some(g), Some(f)) => PrimeSetExpr::Union(vec![g, f]),
        };
        if !self.exclude.is_empty() {
            e = e.intersect(PrimeSetExpr::Finite(self.exclude.clone()).complement());
        }
        e
    }
}
