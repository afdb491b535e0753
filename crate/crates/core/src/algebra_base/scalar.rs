//! Exact rational scalars. Every number in the crate is one of these;
//! there is no floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::{Error, Result};

/// Arbitrary-precision rational in canonical form (reduced, positive
/// denominator). Wraps `num::BigRational`, which maintains exactly that
/// canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True for a nonnegative integer, the membership test behind Λ⁺.
    pub fn is_nat(&self) -> bool {
        self.is_integer() && !self.is_negative()
    }

    /// Integer value if this scalar is an integer fitting in i64.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::internal("division by zero"));
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc *= self.clone();
        }
        acc
    }

    /// Smallest integer `k ≥ 0` with `k² ≥ self` (self must be ≥ 0).
    /// Used for turning exact norm bounds into enumeration boxes.
    pub fn isqrt_ceil(&self) -> u64 {
        assert!(!self.is_negative(), "isqrt of negative");
        let mut k: u64 = 0;
        let mut kk = Scalar::zero();
        while kk < *self {
            k += 1;
            kk = Scalar::from_int(k as i64) * Scalar::from_int(k as i64);
            assert!(k < 1 << 40, "isqrt bound blow-up");
        }
        k
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses "p", "-p", or "p/q" with arbitrary-precision integers.
    fn from_str(s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::invalid(format!("malformed rational `{s}`"));
        if let Some((num, den)) = s.split_once('/') {
            let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::invalid(format!("zero denominator in `{s}`")));
            }
            Ok(Scalar(BigRational::new(n, d)))
        } else {
            let n = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(Scalar(BigRational::from_integer(n)))
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        Scalar::from_str(&s).map_err(de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(self.0 / rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        self.0 *= rhs.0;
    }
}

impl DivAssign for Scalar {
    fn div_assign(&mut self, rhs: Scalar) {
        assert!(!rhs.is_zero(), "division by zero");
        self.0 /= rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = Scalar::from_frac(2, -4);
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(a, Scalar::from_frac(-1, 2));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["3", "-7/2", "0", "22/7"] {
            let v: Scalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn nat_test() {
        assert!(Scalar::from_int(3).is_nat());
        assert!(Scalar::zero().is_nat());
        assert!(!Scalar::from_int(-1).is_nat());
        assert!(!Scalar::from_frac(1, 2).is_nat());
    }

    #[test]
    fn isqrt_ceil() {
        assert_eq!(Scalar::from_int(0).isqrt_ceil(), 0);
        assert_eq!(Scalar::from_int(1).isqrt_ceil(), 1);
        assert_eq!(Scalar::from_int(2).isqrt_ceil(), 2);
        assert_eq!(Scalar::from_int(4).isqrt_ceil(), 2);
        assert_eq!(Scalar::from_frac(17, 4).isqrt_ceil(), 3);
    }
}
