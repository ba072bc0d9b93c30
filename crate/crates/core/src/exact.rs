//! Exact rational values used for every count, weight and formula value.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, ParseBigIntError};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An arbitrary-precision rational kept in lowest terms.
///
/// Printed as `n` when the denominator is one and `p/q` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactCount(BigRational);

impl ExactCount {
    pub fn zero() -> Self {
        ExactCount(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactCount(BigRational::one())
    }

    pub fn half() -> Self {
        Self::ratio(1, 2)
    }

    pub fn from_int(n: i64) -> Self {
        ExactCount(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ExactCount(BigRational::from_integer(n))
    }

    /// Panics if `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        ExactCount(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_parts(num: BigInt, den: BigInt) -> Self {
        ExactCount(BigRational::new(num, den))
    }

    /// `2^e` for any signed exponent.
    pub fn pow2(e: i64) -> Self {
        let p = BigInt::one() << e.unsigned_abs() as usize;
        if e >= 0 {
            ExactCount::from_bigint(p)
        } else {
            ExactCount(BigRational::new(BigInt::one(), p))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True when the reduced denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        let d = self.0.denom();
        let d = d.magnitude();
        (d & (d - BigUint::one())).is_zero()
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ExactCount(self.0.recip()))
        }
    }

    /// Integer power; negative exponents take the reciprocal.
    pub fn powi(&self, e: i32) -> Self {
        ExactCount(num_traits::pow::Pow::pow(&self.0, e))
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }

    /// Exact value of `numerator / 2^shift`.
    pub(crate) fn from_scaled(num: BigUint, den: BigUint) -> Self {
        ExactCount(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub(crate) fn lcm_denominator<'a>(values: impl Iterator<Item = &'a ExactCount>) -> BigInt {
        values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ParseExactError {
    #[error("invalid integer: {0}")]
    Int(#[from] ParseBigIntError),
    #[error("zero denominator")]
    ZeroDenominator,
}

impl FromStr for ExactCount {
    type Err = ParseExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse()?;
                let q: BigInt = q.trim().parse()?;
                if q.is_zero() {
                    return Err(ParseExactError::ZeroDenominator);
                }
                Ok(ExactCount(BigRational::new(p, q)))
            }
            None => Ok(ExactCount::from_bigint(s.parse()?)),
        }
    }
}

impl Serialize for ExactCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for ExactCount {
    fn from(n: i64) -> Self {
        ExactCount::from_int(n)
    }
}

impl From<BigInt> for ExactCount {
    fn from(n: BigInt) -> Self {
        ExactCount::from_bigint(n)
    }
}

impl From<BigRational> for ExactCount {
    fn from(r: BigRational) -> Self {
        ExactCount(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactCount {
            type Output = ExactCount;
            fn $method(self, rhs: ExactCount) -> ExactCount {
                ExactCount($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactCount> for ExactCount {
            type Output = ExactCount;
            fn $method(self, rhs: &'a ExactCount) -> ExactCount {
                ExactCount($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b ExactCount> for &'a ExactCount {
            type Output = ExactCount;
            fn $method(self, rhs: &'b ExactCount) -> ExactCount {
                ExactCount($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for BigRational.
forward_binop!(Div, div);

impl Neg for ExactCount {
    type Output = ExactCount;
    fn neg(self) -> ExactCount {
        ExactCount(-self.0)
    }
}

impl Sum for ExactCount {
    fn sum<I: Iterator<Item = ExactCount>>(iter: I) -> Self {
        iter.fold(ExactCount::zero(), |a, b| a + b)
    }
}

impl Product for ExactCount {
    fn product<I: Iterator<Item = ExactCount>>(iter: I) -> Self {
        iter.fold(ExactCount::one(), |a, b| a * b)
    }
}

impl<'a> Product<&'a ExactCount> for ExactCount {
    fn product<I: Iterator<Item = &'a ExactCount>>(iter: I) -> Self {
        iter.fold(ExactCount::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        assert_eq!(ExactCount::ratio(6, 4).to_string(), "3/2");
        assert_eq!(ExactCount::ratio(8, 4).to_string(), "2");
        assert_eq!("3/2".parse::<ExactCount>().unwrap(), ExactCount::ratio(3, 2));
        assert_eq!("-7".parse::<ExactCount>().unwrap(), ExactCount::from_int(-7));
        assert!("1/0".parse::<ExactCount>().is_err());
    }

    #[test]
    fn dyadic() {
        assert!(ExactCount::ratio(3, 8).is_dyadic());
        assert!(ExactCount::from_int(5).is_dyadic());
        assert!(!ExactCount::ratio(1, 12).is_dyadic());
        assert_eq!(ExactCount::pow2(-3), ExactCount::ratio(1, 8));
        assert_eq!(ExactCount::pow2(4), ExactCount::from_int(16));
    }

    #[test]
    fn serde_as_string() {
        let v = ExactCount::ratio(5, 4);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "\"5/4\"");
        let back: ExactCount = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
