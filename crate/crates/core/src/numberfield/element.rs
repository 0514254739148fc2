use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `a + b·w` of the field, where `w` is the integral-basis generator
/// of the ring of integers (`w = sqrt(d)` or `w = (1 + sqrt(d))/2`).
///
/// Multiplication, inversion and norms need the minimal polynomial of `w` and
/// therefore live on [`NumberField`](super::NumberField).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub a: BigRational,
    pub b: BigRational,
}

impl FieldElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        Self::from_ints(a, 0)
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Membership in `Z·1 + Z·w`.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Smallest positive integer `d` with `d·x` integral.
    pub fn denominator(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            a: &self.a * s,
            b: &self.b * s,
        }
    }

    pub fn scale_int(&self, s: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(s.clone()))
    }

    /// Integer coordinates; `None` unless integral.
    pub fn coords(&self) -> Option<(BigInt, BigInt)> {
        if self.is_integral() {
            Some((self.a.to_integer(), self.b.to_integer()))
        } else {
            None
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let coeff = |b: &BigRational| -> String {
            let m = b.abs();
            if m.is_one() {
                "w".to_string()
            } else if m.is_integer() {
                format!("{}w", m.numer())
            } else {
                format!("{}*w", fmt_rational(&m))
            }
        };
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{}", coeff(&self.b))
        } else {
            write!(f, "{}{sign}{}", fmt_rational(&self.a), coeff(&self.b))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for FieldElement {
    type Err = Error;

    /// Accepts `a`, `bw`, `b*w`, `a+bw`, `a-b*w` with rational `a`, `b`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        // split into signed terms at top-level + and -
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = t.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                terms.push(&t[start..i]);
                start = i;
            }
        }
        terms.push(&t[start..]);

        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let value = if let Some(c) = body.strip_suffix('w') {
                let c = c.strip_suffix('*').unwrap_or(c);
                let v = if c.is_empty() {
                    BigRational::one()
                } else {
                    parse_rational(c)?
                };
                b += if neg { -v } else { v };
                continue;
            } else {
                parse_rational(body)?
            };
            a += if neg { -value } else { value };
        }
        Ok(FieldElement { a, b })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parse_roundtrip() {
        for s in ["0", "1", "-3", "w", "-w", "1+w", "3-2w", "1/2+1/3*w", "-1/2*w", "7/4"] {
            let x: FieldElement = s.parse().unwrap();
            assert_eq!(x.to_string(), s, "{s}");
            assert_eq!(x.to_string().parse::<FieldElement>().unwrap(), x);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1+".parse::<FieldElement>().is_err());
        assert!("abc".parse::<FieldElement>().is_err());
        assert_eq!("1/0".parse::<FieldElement>(), Err(Error::DivisionByZero));
    }

    #[test]
    fn denominator_and_integrality() {
        let x: FieldElement = "1/2+1/3*w".parse().unwrap();
        assert_eq!(x.denominator(), BigInt::from(6));
        assert!(!x.is_integral());
        assert!(x.scale_int(&BigInt::from(6)).is_integral());
    }
}
