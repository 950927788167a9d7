//! Scalar traits shared by the symbolic and modular layers.
//!
//! The finite-field element type carries its field by reference, so a
//! context-free `Zero::zero()` is not available for it. The traits here
//! therefore build identities from an existing value (`zero_like`,
//! `one_like`); for the `num-traits` types the prototype is ignored.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commutative ring with an embedding of the integers.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_scalar(&self) -> bool;
    /// Image of an integer under the unique ring map from ℤ.
    fn from_bigint_like(&self, n: &BigInt) -> Self;

    fn from_i64_like(&self, n: i64) -> Self {
        self.from_bigint_like(&BigInt::from(n))
    }
}

/// A scalar ring that is a field.
pub trait FieldScalar: Scalar {
    fn inverse(&self) -> Option<Self>;

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|r| self.clone() * r)
    }
}

macro_rules! impl_scalar_num_traits {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn zero_like(&self) -> Self {
                <$t as Zero>::zero()
            }
            fn one_like(&self) -> Self {
                <$t as One>::one()
            }
            fn is_zero_scalar(&self) -> bool {
                Zero::is_zero(self)
            }
            fn from_bigint_like(&self, n: &BigInt) -> Self {
                <$t as From<BigInt>>::from(n.clone())
            }
        }
    )*};
}

impl_scalar_num_traits!(BigInt, BigRational);

impl Scalar for i64 {
    fn zero_like(&self) -> Self {
        0
    }
    fn one_like(&self) -> Self {
        1
    }
    fn is_zero_scalar(&self) -> bool {
        *self == 0
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        n.to_i64().expect("integer does not fit in i64")
    }
}

impl FieldScalar for BigRational {
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical `num/den` rendering used in JSON output.
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Short rendering for text output: integers without a denominator.
pub fn rational_to_short_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        rational_to_string(q)
    }
}

/// Parses `a` or `a/b` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|_| bad())?;
            let den: BigInt = b.trim().parse().map_err(|_| bad())?;
            if Zero::is_zero(&den) {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Returns the integer value of `q`, or `None` when it has a denominator.
pub fn rational_as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.numer().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("3").unwrap(), rational_int(3));
        assert_eq!(parse_rational("-2/4").unwrap(), rational(-1, 2));
        assert_eq!(rational_to_string(&rational(6, -4)), "-3/2");
        assert_eq!(rational_to_short_string(&rational_int(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn integer_embedding() {
        let q = rational(1, 3);
        assert_eq!(q.from_i64_like(-5), rational_int(-5));
        assert_eq!(BigInt::from(4).one_like(), BigInt::from(1));
        assert_eq!(7i64.from_i64_like(3), 3);
    }
}
