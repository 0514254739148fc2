//! Ideal class groups of imaginary quadratic fields via reduced positive
//! definite binary quadratic forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{FieldElement, NumberField, RingIdeal};
use crate::arith::ext_gcd;
use crate::error::{Error, Result};

/// The form `a x^2 + b xy + c y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// The principal form of discriminant `disc`.
    pub fn principal(disc: i64) -> Self {
        let delta = disc.rem_euclid(2);
        Self::new(1, delta, (delta * delta - disc) / 4)
    }

    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = self;
        b.abs() <= *a && a <= c && (!(b.abs() == *a || a == c) || !b.is_negative())
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.c.clone()).reduced()
    }

    pub fn reduced(&self) -> Self {
        self.reduce_with_transform().0
    }

    /// Reduction tracking the substitution matrix `[[p, q], [r, s]]`, so that
    /// `reduced(x, y) = self(p x + q y, r x + s y)`.
    pub fn reduce_with_transform(&self) -> (QuadForm, [[BigInt; 2]; 2]) {
        let disc = self.discriminant();
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        let mut m = [
            [BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::one()],
        ];
        let four = BigInt::from(4);
        loop {
            // x -> x + k y brings b into (-a, a]
            let two_a = &a * 2;
            let r: BigInt = (&b + &a - BigInt::one()).mod_floor(&two_a) - &a + BigInt::one();
            if r != b {
                let k = (&r - &b) / &two_a;
                m = [
                    [m[0][0].clone(), &m[0][0] * &k + &m[0][1]],
                    [m[1][0].clone(), &m[1][0] * &k + &m[1][1]],
                ];
                b = r;
                c = (&b * &b - &disc) / (&four * &a);
            }
            let swap = a > c || (a == c && b.is_negative());
            if !swap {
                break;
            }
            // (x, y) -> (-y, x)
            m = [
                [m[0][1].clone(), -&m[0][0]],
                [m[1][1].clone(), -&m[1][0]],
            ];
            std::mem::swap(&mut a, &mut c);
            b = -b;
        }
        (QuadForm { a, b, c }, m)
    }

    /// Gauss composition (Cohen, Algorithm 5.4.7) followed by reduction.
    pub fn compose(&self, other: &QuadForm) -> QuadForm {
        let (f1, f2) = if self.a > other.a {
            (other, self)
        } else {
            (self, other)
        };
        let disc = f1.discriminant();
        let s: BigInt = (&f1.b + &f2.b) / BigInt::from(2);
        let n = &f2.b - &s;
        let (y1, d) = if f2.a.is_multiple_of(&f1.a) {
            (BigInt::zero(), f1.a.clone())
        } else {
            let (d, u, _v) = ext_gcd(&f2.a, &f1.a);
            (u, d)
        };
        let (x2, y2, d1) = if s.is_multiple_of(&d) {
            (BigInt::zero(), BigInt::from(-1), d.clone())
        } else {
            let (d1, u, v) = ext_gcd(&s, &d);
            (u, -v, d1)
        };
        let v1 = &f1.a / &d1;
        let v2 = &f2.a / &d1;
        let r = (&y1 * &y2 * &n - &x2 * &f2.c).mod_floor(&v1);
        let b3 = &f2.b + BigInt::from(2) * &v2 * &r;
        let a3 = &v1 * &v2;
        let c3 = (&b3 * &b3 - &disc) / (BigInt::from(4) * &a3);
        QuadForm {
            a: a3,
            b: b3,
            c: c3,
        }
        .reduced()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// An ideal class, represented by its reduced form. Over `Q` the only class
/// is represented by `(1, 1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdealClass {
    pub form: QuadForm,
}

impl fmt::Display for IdealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.form.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroup {
    /// Reduced forms; index 0 is the identity.
    pub classes: Vec<IdealClass>,
    /// `table[i][j]` is the index of `classes[i]·classes[j]`.
    pub table: Vec<Vec<usize>>,
}

impl ClassGroup {
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    pub fn index_of(&self, c: &IdealClass) -> Option<usize> {
        self.classes.iter().position(|x| x == c)
    }

    pub fn identity(&self) -> &IdealClass {
        &self.classes[0]
    }
}

/// All reduced primitive forms of the negative discriminant `disc`.
pub fn reduced_forms(disc: i64) -> Vec<QuadForm> {
    assert!(disc < 0);
    let absd = disc.unsigned_abs() as i128;
    let mut out = Vec::new();
    let mut a: i128 = 1;
    while 3 * a * a <= absd {
        for b in -a..=a {
            if (b - disc as i128).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc as i128;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = QuadForm::new(a, b, c);
            if f.is_reduced() && a.gcd(&b).gcd(&c) == 1 {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort();
    out
}

impl NumberField {
    fn trivial_class() -> IdealClass {
        IdealClass {
            form: QuadForm::new(1, 1, 0),
        }
    }

    pub fn class_group(&self) -> &ClassGroup {
        self.class_group.get_or_init(|| {
            if self.is_rational() {
                return ClassGroup {
                    classes: vec![Self::trivial_class()],
                    table: vec![vec![0]],
                };
            }
            let disc = self.discriminant();
            let principal = QuadForm::principal(disc);
            let mut forms = reduced_forms(disc);
            forms.retain(|f| *f != principal);
            forms.insert(0, principal);
            let classes: Vec<IdealClass> = forms.into_iter().map(|form| IdealClass { form }).collect();
            let table = classes
                .iter()
                .map(|x| {
                    classes
                        .iter()
                        .map(|y| {
                            let z = IdealClass {
                                form: x.form.compose(&y.form),
                            };
                            classes.iter().position(|c| *c == z).expect("composition closes")
                        })
                        .collect()
                })
                .collect();
            ClassGroup { classes, table }
        })
    }

    pub(crate) fn set_class_group(&self, g: ClassGroup) {
        let _ = self.class_group.set(g);
    }

    pub fn class_number(&self) -> usize {
        self.class_group().order()
    }

    pub fn identity_class(&self) -> IdealClass {
        self.class_group().identity().clone()
    }

    pub fn class_mul(&self, x: &IdealClass, y: &IdealClass) -> IdealClass {
        if self.is_rational() {
            return Self::trivial_class();
        }
        IdealClass {
            form: x.form.compose(&y.form),
        }
    }

    pub fn class_inverse(&self, x: &IdealClass) -> IdealClass {
        if self.is_rational() {
            return Self::trivial_class();
        }
        IdealClass {
            form: x.form.inverse(),
        }
    }

    /// Primitive part of a nonzero ideal as a form, with the content `c` and the
    /// shift `s` of the primitive basis `[A, s + w]`.
    pub(crate) fn ideal_form(&self, i: &RingIdeal) -> Result<(QuadForm, BigInt, BigInt)> {
        if i.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let (a, b, c) = i.parts();
        let big_a = a / c;
        let s = b / c;
        let t = self.spec.omega_trace();
        let big_b = -(BigInt::from(2) * &s + &t);
        let disc = BigInt::from(self.discriminant());
        let big_c = (&big_b * &big_b - &disc) / (BigInt::from(4) * &big_a);
        Ok((QuadForm::new(big_a, big_b, big_c), c.clone(), s))
    }

    pub fn ideal_class(&self, i: &RingIdeal) -> Result<IdealClass> {
        if i.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_rational() {
            return Ok(Self::trivial_class());
        }
        let (f, _, _) = self.ideal_form(i)?;
        Ok(IdealClass { form: f.reduced() })
    }

    /// If the reduced form of `I` is principal, the transform gives a
    /// generator of `I` directly.
    pub(crate) fn generator_from_reduction(&self, i: &RingIdeal) -> Result<Option<FieldElement>> {
        let (f, content, s) = self.ideal_form(i)?;
        // N(x·A + y·(s + w)) = A·(A x^2 + Tr(s + w) xy + ...), i.e. (A, -B, C)
        let norm_form = QuadForm::new(f.a.clone(), -&f.b, f.c.clone());
        let (red, m) = norm_form.reduce_with_transform();
        if red != QuadForm::principal(self.discriminant()) {
            return Ok(None);
        }
        // basis vector (p, r) -> p·A + r·(s + w)
        let p = &m[0][0];
        let r = &m[1][0];
        let g = FieldElement::from_ints(p * &norm_form.a + r * &s, r.clone()).scale_int(&content);
        Ok(Some(g))
    }
}
