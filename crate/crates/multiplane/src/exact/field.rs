use super::fraction::Fraction;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

use crate::error::Error;

/// A simple algebraic extension of the rationals, presented by a monic
/// irreducible integer polynomial.  Degree 1 is the rationals themselves.
///
/// Irreducibility is verified up to degree 3 (a monic quadratic or cubic is
/// reducible over the rationals iff it has an integer root).  Higher degrees
/// are accepted on trust and flagged by [`NumberField::assumed_irreducible`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    /// Coefficients of the minimal polynomial, lowest degree first,
    /// including the leading 1.
    min_poly: Vec<BigInt>,
}

impl NumberField {
    pub fn new(min_poly: Vec<i64>) -> Result<Self, Error> {
        Self::from_big(min_poly.into_iter().map(BigInt::from).collect())
    }

    pub fn from_big(min_poly: Vec<BigInt>) -> Result<Self, Error> {
        if min_poly.len() < 2 {
            return Err(Error::input("minimal polynomial must have degree >= 1"));
        }
        if min_poly.last().unwrap() != &BigInt::from(1) {
            return Err(Error::input("minimal polynomial must be monic"));
        }
        let degree = min_poly.len() - 1;
        if (2..=3).contains(&degree) {
            if min_poly[0].is_zero() {
                return Err(Error::input("minimal polynomial is divisible by t"));
            }
            if has_integer_root(&min_poly) {
                return Err(Error::input("minimal polynomial has a rational root"));
            }
        }
        Ok(NumberField { min_poly })
    }

    /// The rational field, presented by the polynomial t.
    pub fn rationals() -> Self {
        NumberField { min_poly: vec![BigInt::from(0), BigInt::from(1)] }
    }

    /// The field generated by a primitive cube root of unity, t^2 + t + 1.
    pub fn omega_field() -> Self {
        NumberField::new(vec![1, 1, 1]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// True when the degree exceeds 3 and irreducibility was not verified.
    pub fn assumed_irreducible(&self) -> bool {
        self.degree() > 3
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![Fraction::zero(); self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_fraction(Fraction::one())
    }

    pub fn from_fraction(&self, q: Fraction) -> FieldElement {
        let mut coeffs = vec![Fraction::zero(); self.degree()];
        coeffs[0] = q;
        FieldElement { coeffs }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_fraction(Fraction::from_int(n))
    }

    /// The class of t, a root of the minimal polynomial.  Degree must be > 1.
    pub fn generator(&self) -> FieldElement {
        assert!(self.degree() > 1, "the rational field has no generator");
        let mut coeffs = vec![Fraction::zero(); self.degree()];
        coeffs[1] = Fraction::one();
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: Vec<Fraction>) -> Result<FieldElement, Error> {
        if coeffs.len() != self.degree() {
            return Err(Error::input(format!(
                "element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.degree()
            )));
        }
        Ok(FieldElement { coeffs })
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree();
        if d == 1 {
            return FieldElement { coeffs: vec![&a.coeffs[0] * &b.coeffs[0]] };
        }
        let mut prod = vec![Fraction::zero(); 2 * d - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                prod[i + j] += &(ai * bj);
            }
        }
        self.reduce(prod)
    }

    pub fn scale(&self, a: &FieldElement, q: &Fraction) -> FieldElement {
        FieldElement { coeffs: a.coeffs.iter().map(|x| x * q).collect() }
    }

    /// Reduce a polynomial in the generator modulo the minimal polynomial.
    fn reduce(&self, mut poly: Vec<Fraction>) -> FieldElement {
        let d = self.degree();
        for i in (d..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[i], Fraction::zero());
            if c.is_zero() {
                continue;
            }
            // t^i = -(m_0 t^{i-d} + ... + m_{d-1} t^{i-1}) * c
            for j in 0..d {
                let m = Fraction::from(self.min_poly[j].clone());
                poly[i - d + j] -= &(&c * &m);
            }
        }
        poly.truncate(d);
        FieldElement { coeffs: poly }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, Error> {
        if a.is_zero() {
            return Err(Error::input("inversion of zero field element"));
        }
        if self.degree() == 1 {
            return Ok(FieldElement { coeffs: vec![a.coeffs[0].recip()] });
        }
        // Extended Euclid in Q[t] against the minimal polynomial.
        let modulus: Vec<Fraction> =
            self.min_poly.iter().map(|c| Fraction::from(c.clone())).collect();
        let (g, _, v) = poly_ext_gcd(&modulus, &a.coeffs);
        // g is a nonzero constant since the modulus is irreducible.
        assert_eq!(poly_degree(&g), Some(0), "minimal polynomial not irreducible");
        let ginv = g[0].recip();
        let inv = v.into_iter().map(|c| &c * &ginv).collect::<Vec<_>>();
        Ok(self.reduce(inv))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The rational value of an element of a degree-1 field.
    pub fn to_fraction(&self, a: &FieldElement) -> Fraction {
        assert!(self.is_rational(), "element is not rational");
        a.coeffs[0].clone()
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(")?;
        for (i, c) in self.min_poly.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*t^{i}")?;
        }
        write!(f, ")")
    }
}

/// An element of a [`NumberField`]: coefficients over the power basis of the
/// generator, lowest degree first, length equal to the field degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<Fraction>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[Fraction] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Fraction::is_zero)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*w")?,
                _ => write!(f, "{c}*w^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn has_integer_root(poly: &[BigInt]) -> bool {
    // Monic integer polynomial: any rational root is an integer dividing
    // the constant term.
    let c0 = &poly[0];
    if c0.is_zero() {
        return true;
    }
    let bound = c0.abs();
    let mut d = BigInt::from(1);
    while d <= bound {
        if (c0 % &d).is_zero() {
            for cand in [d.clone(), -d.clone()] {
                let mut val = BigInt::zero();
                for c in poly.iter().rev() {
                    val = val * &cand + c;
                }
                if val.is_zero() {
                    return true;
                }
            }
        }
        d += 1;
    }
    false
}

fn poly_degree(p: &[Fraction]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Fraction>) -> Vec<Fraction> {
    while p.len() > 1 && p.last().map(Fraction::is_zero).unwrap_or(false) {
        p.pop();
    }
    p
}

/// Extended gcd over Q[t]: returns (g, u, v) with u*a + v*b = g.
fn poly_ext_gcd(a: &[Fraction], b: &[Fraction]) -> (Vec<Fraction>, Vec<Fraction>, Vec<Fraction>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut u0 = vec![Fraction::one()];
    let mut u1 = vec![Fraction::zero()];
    let mut v0 = vec![Fraction::zero()];
    let mut v1 = vec![Fraction::one()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_div_rem(&r0, &r1);
        let nu = poly_sub(&u0, &poly_mul(&q, &u1));
        let nv = poly_sub(&v0, &poly_mul(&q, &v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = nu;
        v0 = v1;
        v1 = nv;
    }
    (r0, u0, v0)
}

fn poly_mul(a: &[Fraction], b: &[Fraction]) -> Vec<Fraction> {
    let mut out = vec![Fraction::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[Fraction], b: &[Fraction]) -> Vec<Fraction> {
    let n = a.len().max(b.len());
    let mut out = vec![Fraction::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

fn poly_div_rem(a: &[Fraction], b: &[Fraction]) -> (Vec<Fraction>, Vec<Fraction>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let mut quot = vec![Fraction::zero(); a.len().saturating_sub(db) + 1];
    let lead = b[db].recip();
    loop {
        let da = match poly_degree(&rem) {
            Some(d) if d >= db => d,
            _ => break,
        };
        let c = &rem[da] * &lead;
        quot[da - db] = c.clone();
        for j in 0..=db {
            let t = &b[j] * &c;
            rem[da - db + j] -= &t;
        }
    }
    (poly_trim(quot), poly_trim(rem))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_relations() {
        let k = NumberField::omega_field();
        let w = k.generator();
        let w2 = k.mul(&w, &w);
        // w * w^2 = w^3 = 1
        assert_eq!(k.mul(&w, &w2), k.one());
        // w + w^2 = -1
        assert_eq!(k.add(&w, &w2), k.from_int(-1));
    }

    #[test]
    fn omega_inverse() {
        let k = NumberField::omega_field();
        let w = k.generator();
        // 1 + w has inverse -w: (1+w)(-w) = -w - w^2 = 1.
        let one_plus = k.add(&k.one(), &w);
        let inv = k.inv(&one_plus).unwrap();
        assert_eq!(inv, k.neg(&w));
        assert_eq!(k.mul(&one_plus, &inv), k.one());
    }

    #[test]
    fn reducible_rejected() {
        // t^2 - 1 = (t-1)(t+1)
        assert!(NumberField::new(vec![-1, 0, 1]).is_err());
        // t^3 - 8 has root 2
        assert!(NumberField::new(vec![-8, 0, 0, 1]).is_err());
        // t^2 - 2 is fine
        assert!(NumberField::new(vec![-2, 0, 1]).is_ok());
    }

    #[test]
    fn rational_field_arithmetic() {
        let q = NumberField::rationals();
        let a = q.from_fraction(Fraction::new(2, 3));
        let b = q.from_fraction(Fraction::new(3, 4));
        assert_eq!(q.to_fraction(&q.mul(&a, &b)), Fraction::new(1, 2));
        assert_eq!(q.to_fraction(&q.inv(&a).unwrap()), Fraction::new(3, 2));
    }
}
