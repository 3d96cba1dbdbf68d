use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Arbitrary-precision rational number, always reduced, denominator > 0.
///
/// Every quantity in this crate that is not an integer is a `Fraction`;
/// there is no floating point anywhere.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(BigRational);

impl Fraction {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Fraction(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Fraction(BigRational::new(numer, denom))
    }

    pub fn from_int(n: i64) -> Self {
        Fraction(BigRational::from(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Fraction(BigRational::zero())
    }

    pub fn one() -> Self {
        Fraction(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Fractional part in [0, 1): `self - floor(self)`.
    pub fn fract(&self) -> Fraction {
        Fraction(&self.0 - self.0.floor())
    }

    /// Floor of `self - eps` for an infinitesimal `eps > 0`.
    pub fn left_floor(&self) -> BigInt {
        if self.is_integer() {
            self.0.to_integer() - 1
        } else {
            self.floor()
        }
    }

    /// Floor of the value nudged by an infinitesimal of the given sign.
    /// `sign < 0` gives the left limit, `sign > 0` the right limit and
    /// `sign == 0` the value itself.
    pub fn floor_nudged(&self, sign: i32) -> BigInt {
        if sign < 0 {
            self.left_floor()
        } else {
            self.floor()
        }
    }

    pub fn abs(&self) -> Fraction {
        Fraction(self.0.abs())
    }

    pub fn recip(&self) -> Fraction {
        assert!(!self.is_zero(), "division by zero");
        Fraction(self.0.recip())
    }

    /// Floor as i64; panics if it does not fit.
    pub fn floor_i64(&self) -> i64 {
        i64::try_from(&self.floor()).expect("floor out of i64 range")
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Fraction::from_int(n)
    }
}

impl From<BigInt> for Fraction {
    fn from(n: BigInt) -> Self {
        Fraction(BigRational::from(n))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: Fraction) -> Fraction {
                Fraction((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Fraction> for &'a Fraction {
            type Output = Fraction;
            fn $method(self, rhs: &'a Fraction) -> Fraction {
                Fraction((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Fraction> for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: &'a Fraction) -> Fraction {
                Fraction((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Fraction> for &'a Fraction {
            type Output = Fraction;
            fn $method(self, rhs: Fraction) -> Fraction {
                Fraction((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for Fraction {
    type Output = Fraction;
    fn div(self, rhs: Fraction) -> Fraction {
        assert!(!rhs.is_zero(), "division by zero");
        Fraction(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Fraction> for &'a Fraction {
    type Output = Fraction;
    fn div(self, rhs: &'a Fraction) -> Fraction {
        assert!(!rhs.is_zero(), "division by zero");
        Fraction(&self.0 / &rhs.0)
    }
}

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction(-self.0)
    }
}

impl Neg for &Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction(-&self.0)
    }
}

impl AddAssign<&Fraction> for Fraction {
    fn add_assign(&mut self, rhs: &Fraction) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Fraction> for Fraction {
    fn sub_assign(&mut self, rhs: &Fraction) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Fraction> for Fraction {
    fn mul_assign(&mut self, rhs: &Fraction) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Fraction {
    fn sum<I: Iterator<Item = Fraction>>(iter: I) -> Fraction {
        iter.fold(Fraction::zero(), |a, b| a + b)
    }
}

/// Dot product of a rational vector with an integer vector.
pub fn dot_int(x: &[Fraction], e: &[i64]) -> Fraction {
    assert_eq!(x.len(), e.len());
    let mut acc = Fraction::zero();
    for (xi, &ei) in x.iter().zip(e) {
        if ei != 0 {
            acc += &(xi * &Fraction::from_int(ei));
        }
    }
    acc
}

/// Dot product of two rational vectors.
pub fn dot(x: &[Fraction], y: &[Fraction]) -> Fraction {
    assert_eq!(x.len(), y.len());
    let mut acc = Fraction::zero();
    for (a, b) in x.iter().zip(y) {
        acc += &(a * b);
    }
    acc
}
