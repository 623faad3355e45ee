//! Exact scalar fields.
//!
//! Every computation in the crate is generic over [`Scalar`], a field of
//! characteristic zero with exact arithmetic. Two implementations ship:
//! arbitrary precision rationals ([`BigRational`], the default used by the
//! pipelines) and machine-word rationals ([`Rational64`]), which are faster
//! but panic on overflow.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Parses `"p"` or `"p/q"`; a zero denominator is an error.
    fn parse_exact(s: &str) -> Result<Self, Error>;

    /// Canonical `"p/q"` string (`"p"` when the denominator is one).
    fn to_exact_string(&self) -> String;

    /// Size of the representation; used only to prefer cheap pivots.
    fn height(&self) -> u64;

    fn sign_pow(parity: bool) -> Self {
        if parity {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

fn split_fraction(s: &str) -> Result<(&str, &str), Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty coefficient".into()));
    }
    Ok(match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    })
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_exact(s: &str) -> Result<Self, Error> {
        let (p, q) = split_fraction(s)?;
        let p = BigInt::from_str(p).map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q = BigInt::from_str(q).map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(p, q))
    }

    fn to_exact_string(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn height(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl Scalar for Rational64 {
    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    fn parse_exact(s: &str) -> Result<Self, Error> {
        let (p, q) = split_fraction(s)?;
        let p: i64 = p.parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: i64 = q.parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if q == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational64::new(p, q))
    }

    fn to_exact_string(&self) -> String {
        if *self.denom() == 1 {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn height(&self) -> u64 {
        (64 - self.numer().abs().leading_zeros() as u64) + (64 - self.denom().leading_zeros() as u64)
    }
}

/// `(-1)^parity` as a scalar.
pub fn sign<S: Scalar>(parity: i64) -> S {
    S::sign_pow(parity.rem_euclid(2) == 1)
}

/// True when the scalar is negative (only meaningful for ordered fields).
pub fn is_negative(q: &BigRational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_lowest_terms() {
        let q = BigRational::parse_exact("6/-4").unwrap();
        assert_eq!(q.to_exact_string(), "-3/2");
        assert_eq!(BigRational::parse_exact("7").unwrap().to_exact_string(), "7");
        assert_eq!(Rational64::parse_exact(" 10/5 ").unwrap().to_exact_string(), "2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(BigRational::parse_exact("1/0").is_err());
        assert!(Rational64::parse_exact("1/0").is_err());
        assert!(BigRational::parse_exact("").is_err());
        assert!(BigRational::parse_exact("x/2").is_err());
    }

    #[test]
    fn sign_helper() {
        assert_eq!(sign::<BigRational>(3), -BigRational::one());
        assert_eq!(sign::<BigRational>(-2), BigRational::one());
    }
}
