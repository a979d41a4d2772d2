//! Scalar traits shared by the polynomial and matrix code.
//!
//! Everything downstream is written against [`Ring`] (division free) or
//! [`Field`] (exact inverses). The concrete instances are the big rationals,
//! `i64` rationals for quick experiments, and the quadratic extensions in
//! [`crate::quadratic`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The image of an integer under the unique ring map from Z.
    fn from_int(n: i64) -> Self {
        let mut acc = Self::zero();
        let unit = if n < 0 { -Self::one() } else { Self::one() };
        for _ in 0..n.unsigned_abs() {
            acc = acc + unit.clone();
        }
        acc
    }

    fn power(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Commutative ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl Field for BigRational {}
impl Field for Ratio<i64> {}

/// Builds an integer-valued big rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds `num / den` as a big rational. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a"`, `"-a"` or `"a/b"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let trimmed = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match trimmed.split_once('/') {
        Some((n, d)) => {
            let num: BigInt = n.trim().parse().map_err(|_| bad())?;
            let den: BigInt = d.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = trimmed.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Canonical `"num/den"` rendering (the denominator is always written).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational(" -6/8 ").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("5").unwrap(), rat(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(5)), "5/1");
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
    }

    #[test]
    fn from_int_and_pow() {
        assert_eq!(BigRational::from_int(-3), rat(-3));
        assert_eq!(ratio(2, 3).power(3), ratio(8, 27));
        assert_eq!(rat(7).power(0), rat(1));
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&ratio(2, 1)), None);
        assert_eq!(rational_sqrt(&ratio(-1, 1)), None);
        assert_eq!(rational_sqrt(&rat(0)), Some(rat(0)));
    }
}
