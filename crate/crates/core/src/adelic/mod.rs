//! A finitely presented, partially symbolic model of the space `Ω_A` of
//! classes `ω_{r,a}` of pairs of finite adeles.
//!
//! The second coordinate is recorded only up to `R̂*`, as a [`SuperIdeal`]:
//! an exponent in `Z ∪ {∞}` for every prime, constant on finitely many
//! [`PrimeSetExpr`] pieces. The first coordinate is an [`AdeleSketch`]: an
//! element of `K` with local overrides, where an override is either an exact
//! element of `K` or a [`LocalValue::Generic`] value known only through its
//! valuation and whether it lies outside `K`.
//!
//! Equivalence of points is three-valued and sound: `Yes` and `No` are proofs,
//! `Unknown` means the symbolic data does not decide the question.

mod equivalence;
mod json;
mod sketch;
mod superideal;

use std::cmp::Ordering;
use std::fmt;

pub(crate) use json::element_from_json;
pub(crate) use equivalence::{cell_condition, partition};
pub use equivalence::{local_sub, points_equivalent, Equivalence, DEFAULT_REFINEMENT_CAP};
pub use sketch::{AdeleSketch, OmegaPoint};
pub use superideal::SuperIdeal;

use crate::numberfield::FieldElement;

/// `v_P` of an element, ideal or superideal coordinate: an integer or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

/// Sum with `∞` absorbing.
impl std::ops::Add for Valuation {
    type Output = Valuation;

    fn add(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// What is known about `v_P(x - y)`: a lower bound, and whether it is attained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ValInterval {
    pub lower: Valuation,
    pub exact: bool,
}

impl ValInterval {
    pub fn exact(v: Valuation) -> Self {
        Self { lower: v, exact: true }
    }

    pub fn at_least(v: Valuation) -> Self {
        Self { lower: v, exact: false }
    }

    /// Ultrametric rule for `v(x - y)` from `(v(x), known exactly)` and
    /// `(v(y), known exactly)`.
    pub fn of_difference(x: (Valuation, bool), y: (Valuation, bool)) -> Self {
        match x.0.cmp(&y.0) {
            Ordering::Less if x.1 => Self::exact(x.0),
            Ordering::Greater if y.1 => Self::exact(y.0),
            _ => Self::at_least(x.0.min(y.0)),
        }
    }
}

/// Local coordinate `r_P` of a finite adele.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalValue {
    Exact(FieldElement),
    /// Only the valuation is known: exactly `valuation` when `precise`, at
    /// least `valuation` otherwise. `not_in_k` records that `r_P ∉ K`.
    Generic {
        valuation: i64,
        precise: bool,
        not_in_k: bool,
    },
}

impl LocalValue {
    pub fn generic(valuation: i64, not_in_k: bool) -> Self {
        LocalValue::Generic {
            valuation,
            precise: true,
            not_in_k,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, LocalValue::Exact(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_order_and_sum() {
        assert!(Valuation::Finite(100) < Valuation::Infinite);
        assert!(Valuation::Finite(-1) < Valuation::Finite(0));
        assert_eq!(Valuation::Finite(2) + Valuation::Finite(-3), Valuation::Finite(-1));
        assert_eq!(Valuation::Finite(2) + Valuation::Infinite, Valuation::Infinite);
        assert_eq!(Valuation::Infinite.to_string(), "inf");
    }

    #[test]
    fn difference_rule() {
        let f = Valuation::Finite;
        assert_eq!(ValInterval::of_difference((f(2), true), (f(0), true)), ValInterval::exact(f(0)));
        assert_eq!(ValInterval::of_difference((f(0), true), (f(0), true)), ValInterval::at_least(f(0)));
        assert_eq!(ValInterval::of_difference((f(1), false), (f(3), true)), ValInterval::at_least(f(1)));
        assert_eq!(ValInterval::of_difference((f(1), true), (Valuation::Infinite, true)), ValInterval::exact(f(1)));
    }
}
