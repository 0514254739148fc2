use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FieldElement, NumberField};
use crate::arith::ext_gcd;
use crate::error::{Error, Result};

/// An integral ideal of `R` as the lattice `Z·a + Z·(b + c·w)`, i.e. the
/// lower-triangular HNF `[[a, 0], [b, c]]` with `a, c > 0`, `c | a`, `c | b`
/// and `0 <= b < a`. Over `Q` the ideal is `(a)` and `b = 0`, `c = 1`.
/// The zero ideal has `a = b = c = 0`.
///
/// The HNF is canonical, so equality of ideals is equality of the struct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingIdeal {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl RingIdeal {
    pub fn zero() -> Self {
        Self {
            a: BigInt::zero(),
            b: BigInt::zero(),
            c: BigInt::zero(),
        }
    }

    pub fn unit() -> Self {
        Self {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.a.is_one() && self.c.is_one()
    }

    /// Rows of the HNF: `[[a, 0], [b, c]]`.
    pub fn hnf(&self) -> [[BigInt; 2]; 2] {
        [
            [self.a.clone(), BigInt::zero()],
            [self.b.clone(), self.c.clone()],
        ]
    }

    /// Least positive rational integer in the ideal.
    pub fn min_integer(&self) -> &BigInt {
        &self.a
    }

    pub(crate) fn parts(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }
}

impl fmt::Display for RingIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "[{}, {}+{}w]", self.a, self.b, self.c)
    }
}

#[derive(Clone, Debug)]
struct Row {
    x: BigInt,
    y: BigInt,
    combo: Vec<BigInt>,
}

impl Row {
    fn scaled(&self, s: &BigInt) -> Row {
        Row {
            x: &self.x * s,
            y: &self.y * s,
            combo: self.combo.iter().map(|c| c * s).collect(),
        }
    }

    fn plus(&self, other: &Row) -> Row {
        Row {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
            combo: self
                .combo
                .iter()
                .zip(&other.combo)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn negated(&self) -> Row {
        self.scaled(&BigInt::from(-1))
    }
}

/// Hermite normal form of the Z-span of `vecs` in Z², remembering each basis
/// row as an integer combination of the inputs. Returns the `(a, 0)` row and
/// the `(b, c)` row, either of which may be absent for degenerate spans.
fn hnf2(vecs: &[(BigInt, BigInt)]) -> (Option<Row>, Option<Row>) {
    let n = vecs.len();
    let mut a_row: Option<Row> = None;
    let mut piv: Option<Row> = None;
    for (i, (x, y)) in vecs.iter().enumerate() {
        let mut combo = vec![BigInt::zero(); n];
        combo[i] = BigInt::one();
        let mut row = Row {
            x: x.clone(),
            y: y.clone(),
            combo,
        };
        if !row.y.is_zero() {
            if row.y.is_negative() {
                row = row.negated();
            }
            match piv.take() {
                None => {
                    piv = Some(row);
                    continue;
                }
                Some(p) => {
                    let (g, s, t) = ext_gcd(&p.y, &row.y);
                    let new_piv = p.scaled(&s).plus(&row.scaled(&t));
                    let killed = p.scaled(&(&row.y / &g)).plus(&row.scaled(&-(&p.y / &g)));
                    piv = Some(new_piv);
                    row = killed;
                }
            }
        }
        debug_assert!(row.y.is_zero());
        if row.x.is_zero() {
            continue;
        }
        if row.x.is_negative() {
            row = row.negated();
        }
        a_row = Some(match a_row.take() {
            None => row,
            Some(ar) => {
                let (_, s, t) = ext_gcd(&ar.x, &row.x);
                ar.scaled(&s).plus(&row.scaled(&t))
            }
        });
    }
    if let (Some(ar), Some(p)) = (&a_row, &mut piv) {
        let q = p.x.div_floor(&ar.x);
        *p = p.plus(&ar.scaled(&-q));
    }
    (a_row, piv)
}

fn coords_of(x: &FieldElement) -> Result<(BigInt, BigInt)> {
    x.coords().ok_or_else(|| Error::NotIntegral(x.to_string()))
}

impl NumberField {
    fn lattice_to_ideal(&self, vecs: &[(BigInt, BigInt)]) -> Result<RingIdeal> {
        let (a_row, piv) = hnf2(vecs);
        match (a_row, piv) {
            (None, None) => Ok(RingIdeal::zero()),
            (Some(ar), None) if self.is_rational() => Ok(RingIdeal {
                a: ar.x,
                b: BigInt::zero(),
                c: BigInt::one(),
            }),
            (Some(ar), Some(p)) if !self.is_rational() => Ok(RingIdeal {
                a: ar.x,
                b: p.x,
                c: p.y,
            }),
            _ => Err(Error::Internal("lattice is not of full rank".into())),
        }
    }

    /// Z-basis of the ideal as field elements.
    pub fn ideal_basis(&self, i: &RingIdeal) -> Vec<FieldElement> {
        if i.is_zero() {
            return vec![];
        }
        if self.is_rational() {
            vec![FieldElement::from_int(i.a.clone())]
        } else {
            vec![
                FieldElement::from_int(i.a.clone()),
                FieldElement::from_ints(i.b.clone(), i.c.clone()),
            ]
        }
    }

    /// The ideal generated over `R` by integral elements.
    pub fn ideal_from_generators(&self, gens: &[FieldElement]) -> Result<RingIdeal> {
        let w = self.omega();
        let mut vecs = Vec::with_capacity(gens.len() * 2);
        for g in gens {
            vecs.push(coords_of(g)?);
            if !self.is_rational() {
                vecs.push(coords_of(&self.mul(g, &w))?);
            }
        }
        self.lattice_to_ideal(&vecs)
    }

    pub fn principal_ideal(&self, g: &FieldElement) -> Result<RingIdeal> {
        self.ideal_from_generators(std::slice::from_ref(g))
    }

    pub fn ideal_norm(&self, i: &RingIdeal) -> BigInt {
        if self.is_rational() {
            i.a.clone()
        } else {
            &i.a * &i.c
        }
    }

    pub fn ideal_mul(&self, i: &RingIdeal, j: &RingIdeal) -> RingIdeal {
        if i.is_zero() || j.is_zero() {
            return RingIdeal::zero();
        }
        let bi = self.ideal_basis(i);
        let bj = self.ideal_basis(j);
        let mut vecs = Vec::with_capacity(4);
        for x in &bi {
            for y in &bj {
                vecs.push(self.mul(x, y).coords().expect("product of integral elements"));
            }
        }
        self.lattice_to_ideal(&vecs).expect("product of nonzero ideals has full rank")
    }

    pub fn ideal_pow(&self, i: &RingIdeal, e: u32) -> RingIdeal {
        let mut acc = RingIdeal::unit();
        for _ in 0..e {
            acc = self.ideal_mul(&acc, i);
        }
        acc
    }

    pub fn ideal_add(&self, i: &RingIdeal, j: &RingIdeal) -> RingIdeal {
        let vecs: Vec<_> = self
            .ideal_basis(i)
            .into_iter()
            .chain(self.ideal_basis(j))
            .map(|x| x.coords().expect("ideal basis is integral"))
            .collect();
        self.lattice_to_ideal(&vecs).expect("sum of ideals is an ideal")
    }

    pub fn ideal_conj(&self, i: &RingIdeal) -> RingIdeal {
        if self.is_rational() || i.is_zero() {
            return i.clone();
        }
        let vecs: Vec<_> = self
            .ideal_basis(i)
            .iter()
            .map(|x| self.conj(x).coords().expect("conjugate of integral"))
            .collect();
        self.lattice_to_ideal(&vecs).expect("conjugate ideal")
    }

    pub fn ideal_contains(&self, i: &RingIdeal, x: &FieldElement) -> bool {
        let Some((u, v)) = x.coords() else {
            return false;
        };
        if i.is_zero() {
            return u.is_zero() && v.is_zero();
        }
        if self.is_rational() {
            return u.is_multiple_of(&i.a);
        }
        if !v.is_multiple_of(&i.c) {
            return false;
        }
        let q = &v / &i.c;
        (u - q * &i.b).is_multiple_of(&i.a)
    }

    /// `j ⊆ i`.
    pub fn ideal_contains_ideal(&self, i: &RingIdeal, j: &RingIdeal) -> bool {
        self.ideal_basis(j).iter().all(|x| self.ideal_contains(i, x))
    }

    /// Canonical representative of `x` modulo the nonzero ideal `i`.
    pub fn reduce_mod(&self, i: &RingIdeal, x: &FieldElement) -> Result<FieldElement> {
        let (u, v) = coords_of(x)?;
        if i.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_rational() {
            return Ok(FieldElement::from_int(u.mod_floor(&i.a)));
        }
        let q = v.div_floor(&i.c);
        let v = v - &q * &i.c;
        let u = (u - &q * &i.b).mod_floor(&i.a);
        Ok(FieldElement::from_ints(u, v))
    }

    /// For coprime `i`, `j`: elements `u ∈ i`, `w ∈ j` with `u + w = 1`.
    pub fn coprime_split(&self, i: &RingIdeal, j: &RingIdeal) -> Result<(FieldElement, FieldElement)> {
        let bi = self.ideal_basis(i);
        let bj = self.ideal_basis(j);
        if bi.is_empty() || bj.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let vecs: Vec<_> = bi
            .iter()
            .chain(&bj)
            .map(|x| x.coords().expect("ideal basis is integral"))
            .collect();
        let (a_row, _) = hnf2(&vecs);
        let ar = a_row.ok_or_else(|| Error::Internal("empty lattice".into()))?;
        if !ar.x.is_one() {
            return Err(Error::Precondition(format!("ideals {i} and {j} are not coprime")));
        }
        let combine = |basis: &[FieldElement], coeffs: &[BigInt]| {
            basis
                .iter()
                .zip(coeffs)
                .fold(FieldElement::zero(), |acc, (b, c)| &acc + &b.scale_int(c))
        };
        let u = combine(&bi, &ar.combo[..bi.len()]);
        let w = combine(&bj, &ar.combo[bi.len()..]);
        debug_assert!((&u + &w).is_one());
        Ok((u, w))
    }

    /// Chinese remaindering for pairwise coprime nonzero ideals: an integral
    /// `X` with `X ≡ z_i (mod I_i)`, reduced modulo the product.
    pub fn crt(&self, congruences: &[(RingIdeal, FieldElement)]) -> Result<FieldElement> {
        if congruences.is_empty() {
            return Ok(FieldElement::zero());
        }
        let mut total = RingIdeal::unit();
        for (m, _) in congruences {
            total = self.ideal_mul(&total, m);
        }
        let mut x = FieldElement::zero();
        for (idx, (m, z)) in congruences.iter().enumerate() {
            let others = congruences
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .fold(RingIdeal::unit(), |acc, (_, (mj, _))| self.ideal_mul(&acc, mj));
            let (_, w) = self.coprime_split(m, &others)?;
            x = &x + &self.mul(z, &w);
        }
        self.reduce_mod(&total, &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> NumberField {
        NumberField::imag_quadratic(-5).unwrap()
    }

    #[test]
    fn principal_ideal_hnf_and_norm() {
        let k = k5();
        let i = k.principal_ideal(&k.element("1+w").unwrap()).unwrap();
        assert_eq!(k.ideal_norm(&i), BigInt::from(6));
        let two = k.principal_ideal(&FieldElement::from_int(2)).unwrap();
        assert_eq!(two.hnf(), [[2.into(), 0.into()], [0.into(), 2.into()]]);
    }

    #[test]
    fn hnf_is_canonical_for_different_generators() {
        let k = k5();
        let a = k
            .ideal_from_generators(&[FieldElement::from_int(2), k.element("1+w").unwrap()])
            .unwrap();
        let b = k
            .ideal_from_generators(&[FieldElement::from_int(2), k.element("-1+w").unwrap()])
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(k.ideal_norm(&a), BigInt::from(2));
    }

    #[test]
    fn product_norms_multiply() {
        let k = NumberField::imag_quadratic(-23).unwrap();
        let i = k.principal_ideal(&k.element("3+2w").unwrap()).unwrap();
        let j = k
            .ideal_from_generators(&[FieldElement::from_int(2), k.element("w").unwrap()])
            .unwrap();
        let ij = k.ideal_mul(&i, &j);
        assert_eq!(k.ideal_norm(&ij), k.ideal_norm(&i) * k.ideal_norm(&j));
        assert!(k.ideal_contains_ideal(&i, &ij));
        assert!(k.ideal_contains_ideal(&j, &ij));
    }

    #[test]
    fn conjugate_times_ideal_is_norm() {
        let k = k5();
        let p = k
            .ideal_from_generators(&[FieldElement::from_int(3), k.element("1+w").unwrap()])
            .unwrap();
        let prod = k.ideal_mul(&p, &k.ideal_conj(&p));
        assert_eq!(prod, k.principal_ideal(&FieldElement::from_int(3)).unwrap());
    }

    #[test]
    fn coprime_split_and_crt() {
        let k = k5();
        let p3a = k
            .ideal_from_generators(&[FieldElement::from_int(3), k.element("1+w").unwrap()])
            .unwrap();
        let p3b = k.ideal_conj(&p3a);
        let (u, w) = k.coprime_split(&p3a, &p3b).unwrap();
        assert!(k.ideal_contains(&p3a, &u));
        assert!(k.ideal_contains(&p3b, &w));
        assert!((&u + &w).is_one());

        let z1 = k.element("2+w").unwrap();
        let z2 = k.element("1").unwrap();
        let m1 = k.ideal_mul(&p3a, &p3a);
        let x = k.crt(&[(m1.clone(), z1.clone()), (p3b.clone(), z2.clone())]).unwrap();
        assert!(k.ideal_contains(&m1, &(&x - &z1)));
        assert!(k.ideal_contains(&p3b, &(&x - &z2)));
    }

    #[test]
    fn rational_ideals() {
        let q = NumberField::rational();
        let i = q.principal_ideal(&FieldElement::from_int(-12)).unwrap();
        assert_eq!(q.ideal_norm(&i), BigInt::from(12));
        let j = q.ideal_add(&i, &q.principal_ideal(&FieldElement::from_int(18)).unwrap());
        assert_eq!(q.ideal_norm(&j), BigInt::from(6));
        let x = q
            .crt(&[
                (q.principal_ideal(&FieldElement::from_int(8)).unwrap(), FieldElement::from_int(3)),
                (q.principal_ideal(&FieldElement::from_int(9)).unwrap(), FieldElement::from_int(4)),
            ])
            .unwrap();
        assert_eq!(x, FieldElement::from_int(67));
    }

    #[test]
    fn reduce_mod_is_canonical() {
        let k = k5();
        let i = k.principal_ideal(&k.element("1+w").unwrap()).unwrap();
        let x = k.element("17-4w").unwrap();
        let y = &x + &k.mul(&k.element("1+w").unwrap(), &k.element("3+2w").unwrap());
        assert_eq!(k.reduce_mod(&i, &x).unwrap(), k.reduce_mod(&i, &y).unwrap());
    }
}
