//! Finitely describable sets of prime ideals and the power-cofinite topology
//! on the power set of all primes.
//!
//! A [`PrimeSetExpr`] is a Boolean combination of finite sets of primes and
//! residue classes of the rational prime below (optionally filtered by
//! splitting type). Every expression has a canonical [`NormalForm`], which is
//! what equality, inclusion and cardinality are decided on.
//!
//! Infinitude of a residue class `c mod m` with `gcd(c, m) = 1` is taken from
//! Dirichlet's theorem; the engine never enumerates to check it.

mod normal;
mod text;
mod topology;

use std::collections::BTreeSet;
use std::fmt;

pub use normal::NormalForm;
pub use topology::{PointClosure, PowerCofiniteOpen};

use crate::error::{Error, Result};
use crate::numberfield::{NumberField, PrimeIdeal, PrimeRef, SplitType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitFilter {
    Any,
    Split,
    Inert,
    Ramified,
}

impl SplitFilter {
    pub fn matches(self, t: SplitType) -> bool {
        match self {
            SplitFilter::Any => true,
            SplitFilter::Split => t == SplitType::Split,
            SplitFilter::Inert => t == SplitType::Inert,
            SplitFilter::Ramified => t == SplitType::Ramified,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            SplitFilter::Any => "any",
            SplitFilter::Split => "split",
            SplitFilter::Inert => "inert",
            SplitFilter::Ramified => "ramified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimeSetExpr {
    Empty,
    All,
    Finite(BTreeSet<PrimeRef>),
    /// Primes `P | p` with `p mod modulus ∈ residues` and matching splitting type.
    Residue {
        modulus: u64,
        residues: BTreeSet<u64>,
        filter: SplitFilter,
    },
    Union(Vec<PrimeSetExpr>),
    Intersect(Vec<PrimeSetExpr>),
    Complement(Box<PrimeSetExpr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Finite(usize),
    Infinite,
}

impl PrimeSetExpr {
    pub fn finite(primes: impl IntoIterator<Item = PrimeRef>) -> Self {
        PrimeSetExpr::Finite(primes.into_iter().collect())
    }

    pub fn single(p: PrimeRef) -> Self {
        Self::finite([p])
    }

    pub fn residue(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        filter: SplitFilter,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Parse("residue modulus must be positive".into()));
        }
        Ok(PrimeSetExpr::Residue {
            modulus,
            residues: residues.into_iter().map(|r| r % modulus).collect(),
            filter,
        })
    }

    pub fn union(self, other: PrimeSetExpr) -> Self {
        match (self, other) {
            (PrimeSetExpr::Empty, x) | (x, PrimeSetExpr::Empty) => x,
            (PrimeSetExpr::All, _) | (_, PrimeSetExpr::All) => PrimeSetExpr::All,
            (a, b) => PrimeSetExpr::Union(vec![a, b]),
        }
    }

    pub fn intersect(self, other: PrimeSetExpr) -> Self {
        match (self, other) {
            (PrimeSetExpr::All, x) | (x, PrimeSetExpr::All) => x,
            (PrimeSetExpr::Empty, _) | (_, PrimeSetExpr::Empty) => PrimeSetExpr::Empty,
            (a, b) => PrimeSetExpr::Intersect(vec![a, b]),
        }
    }

    pub fn complement(self) -> Self {
        PrimeSetExpr::Complement(Box::new(self))
    }

    pub fn minus(self, other: PrimeSetExpr) -> Self {
        self.intersect(other.complement())
    }

    pub fn union_all(parts: impl IntoIterator<Item = PrimeSetExpr>) -> Self {
        let v: Vec<_> = parts.into_iter().collect();
        match v.len() {
            0 => PrimeSetExpr::Empty,
            1 => v.into_iter().next().expect("one element"),
            _ => PrimeSetExpr::Union(v),
        }
    }

    /// Membership of a concrete prime, by evaluating the tree.
    pub fn contains(&self, field: &NumberField, p: &PrimeIdeal) -> bool {
        self.contains_ref(field, &p.id)
    }

    pub fn contains_ref(&self, field: &NumberField, id: &PrimeRef) -> bool {
        match self {
            PrimeSetExpr::Empty => false,
            PrimeSetExpr::All => true,
            PrimeSetExpr::Finite(s) => s.contains(id),
            PrimeSetExpr::Residue {
                modulus,
                residues,
                filter,
            } => residues.contains(&(id.p % modulus)) && filter.matches(field.split_type(id.p)),
            PrimeSetExpr::Union(v) => v.iter().any(|e| e.contains_ref(field, id)),
            PrimeSetExpr::Intersect(v) => v.iter().all(|e| e.contains_ref(field, id)),
            PrimeSetExpr::Complement(e) => !e.contains_ref(field, id),
        }
    }

    pub(crate) fn labels(&self, out: &mut BTreeSet<PrimeRef>) {
        match self {
            PrimeSetExpr::Finite(s) => out.extend(s.iter().copied()),
            PrimeSetExpr::Union(v) | PrimeSetExpr::Intersect(v) => v.iter().for_each(|e| e.labels(out)),
            PrimeSetExpr::Complement(e) => e.labels(out),
            _ => {}
        }
    }

    pub(crate) fn moduli(&self, out: &mut BTreeSet<u64>) {
        match self {
            PrimeSetExpr::Residue { modulus, .. } => {
                out.insert(*modulus);
            }
            PrimeSetExpr::Union(v) | PrimeSetExpr::Intersect(v) => v.iter().for_each(|e| e.moduli(out)),
            PrimeSetExpr::Complement(e) => e.moduli(out),
            _ => {}
        }
    }

    pub fn normal_form(&self, field: &NumberField) -> Result<NormalForm> {
        NormalForm::of(field, self)
    }

    /// The canonical expression with the same members.
    pub fn canonical(&self, field: &NumberField) -> Result<PrimeSetExpr> {
        Ok(self.normal_form(field)?.to_expr())
    }

    pub fn set_eq(&self, field: &NumberField, other: &PrimeSetExpr) -> Result<bool> {
        Ok(self.normal_form(field)? == other.normal_form(field)?)
    }

    pub fn cardinality(&self, field: &NumberField) -> Result<Cardinality> {
        Ok(self.normal_form(field)?.cardinality())
    }

    pub fn is_empty(&self, field: &NumberField) -> Result<bool> {
        Ok(self.normal_form(field)?.is_empty())
    }

    pub fn is_subset(&self, field: &NumberField, other: &PrimeSetExpr) -> Result<bool> {
        self.clone().minus(other.clone()).is_empty(field)
    }

    pub fn is_disjoint(&self, field: &NumberField, other: &PrimeSetExpr) -> Result<bool> {
        self.clone().intersect(other.clone()).is_empty(field)
    }

    /// Members when the set is finite, in label order.
    pub fn finite_members(&self, field: &NumberField) -> Result<Option<Vec<PrimeRef>>> {
        let nf = self.normal_form(field)?;
        Ok(nf.is_finite().then(|| nf.include.iter().copied().collect()))
    }

    /// Smallest member in label order, if any.
    pub fn first_member(&self, field: &NumberField) -> Result<Option<PrimeRef>> {
        self.normal_form(field)?.first_member(field)
    }

    /// Splits an infinite set into two disjoint infinite parts by refining its
    /// first residue cell to a multiple of the modulus.
    pub fn split_infinite(&self, field: &NumberField) -> Result<(PrimeSetExpr, PrimeSetExpr)> {
        let nf = self.normal_form(field)?;
        let Some(&first) = nf.cells.iter().next() else {
            return Err(Error::FiniteSet);
        };
        let m = nf.modulus;
        let mut q = 2u64;
        let lift = loop {
            let big = m * q;
            let lifts: Vec<u64> = (0..q)
                .map(|i| first + i * m)
                .filter(|c| crate::arith::gcd_u64(*c, big) == 1)
                .collect();
            if lifts.len() >= 2 {
                break PrimeSetExpr::residue(big, [lifts[0]], SplitFilter::Any)?;
            }
            q += 1;
        };
        let s1 = self.clone().intersect(lift.clone()).canonical(field)?;
        let s2 = self.clone().minus(lift).canonical(field)?;
        Ok((s1, s2))
    }
}

impl fmt::Display for PrimeSetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::print(self))
    }
}

impl std::str::FromStr for PrimeSetExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

/// All prime ideals lying over rational primes `p <= bound`.
pub fn primes_up_to(field: &NumberField, bound: u64) -> Result<Vec<PrimeIdeal>> {
    let mut out = Vec::new();
    let mut p = 2;
    while p <= bound {
        out.extend(field.primes_above(p)?.primes.iter().cloned());
        p = crate::arith::next_prime_after(p);
    }
    Ok(out)
}
