//! Exact rationals and closed rational intervals.
//!
//! `Ratio` is a thin newtype over `num::BigRational` that fixes the textual
//! form used in certificates and reports: `"numerator/denominator"` in lowest
//! terms with a positive denominator. Reading is lenient about spelling
//! (leading zeros, unreduced fractions) and compares by value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, BigUint, Integer, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ratio(BigRational);

impl Ratio {
    pub fn new(numer: BigInt, denom: BigInt) -> Ratio {
        assert!(!denom.is_zero(), "zero denominator");
        Ratio(BigRational::new(numer, denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Ratio {
        Ratio(BigRational::from_integer(n.into()))
    }

    pub fn from_natural(n: &Natural) -> Ratio {
        Ratio::from_integer(BigInt::from(n.clone()))
    }

    /// `numer / denom` for naturals; panics on a zero denominator.
    pub fn of_naturals(numer: &Natural, denom: &Natural) -> Ratio {
        Ratio::new(BigInt::from(numer.clone()), BigInt::from(denom.clone()))
    }

    pub fn zero() -> Ratio {
        Ratio(BigRational::zero())
    }

    pub fn one() -> Ratio {
        Ratio(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.0.numer()).div_floor(self.0.denom()))
    }

    /// Nearest integer, ties rounded up.
    pub fn round_half_up(&self) -> BigInt {
        let twice: BigInt = self.0.numer() * 2 + self.0.denom();
        let denom: BigInt = self.0.denom() * 2;
        twice.div_floor(&denom)
    }

    pub fn abs(&self) -> Ratio {
        Ratio(self.0.abs())
    }

    pub fn recip(&self) -> Ratio {
        assert!(!self.is_zero(), "reciprocal of zero");
        Ratio(self.0.recip())
    }

    pub fn pow10(exp: u32) -> Ratio {
        Ratio::from_integer(num::pow::<BigInt>(BigInt::from(10u32), exp as usize))
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Ratio {
    fn from(r: BigRational) -> Ratio {
        Ratio(r)
    }
}

impl From<u64> for Ratio {
    fn from(n: u64) -> Ratio {
        Ratio::from_integer(n)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error returned by [`Ratio::from_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {text:?}: {reason}")]
pub struct ParseRatioError {
    pub text: String,
    pub reason: &'static str,
}

impl Ratio {
    /// Accepts only the canonical `"[-]p/q"` spelling: no whitespace, no
    /// leading zeros, `q > 0`, `gcd(p, q) = 1`.
    pub fn parse_canonical(s: &str) -> Result<Ratio, ParseRatioError> {
        let value: Ratio = s.parse()?;
        if value.to_string() != s {
            return Err(ParseRatioError { text: s.to_string(), reason: "not in canonical lowest terms" });
        }
        Ok(value)
    }
}

impl FromStr for Ratio {
    type Err = ParseRatioError;

    /// Accepts `"[-]p/q"` with decimal digits and `q > 0`, reducing to lowest
    /// terms. See [`Ratio::parse_canonical`] for the strict form.
    fn from_str(s: &str) -> Result<Ratio, ParseRatioError> {
        let fail = |reason| ParseRatioError { text: s.to_string(), reason };
        let (num, den) = s.split_once('/').ok_or_else(|| fail("missing '/'"))?;
        let num_digits = num.strip_prefix('-').unwrap_or(num);
        let digits_only = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
        if !digits_only(num_digits) || !digits_only(den) {
            return Err(fail("not a decimal fraction"));
        }
        let numer: BigInt = num.parse().map_err(|_| fail("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| fail("bad denominator"))?;
        if den.is_zero() {
            return Err(fail("zero denominator"));
        }
        Ok(Ratio(BigRational::new(numer, den)))
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Ratio, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Ratio> for &'a Ratio {
            type Output = Ratio;
            fn $method(self, rhs: &'a Ratio) -> Ratio {
                Ratio((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Ratio> for Ratio {
            type Output = Ratio;
            fn $method(self, rhs: Ratio) -> Ratio {
                Ratio(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Ratio> for Ratio {
            type Output = Ratio;
            fn $method(self, rhs: &'a Ratio) -> Ratio {
                Ratio(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio(-self.0)
    }
}

/// Closed interval `[lo, hi]` with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Ratio,
    hi: Ratio,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Ratio, hi: Ratio) -> Interval {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        Interval { lo, hi }
    }

    pub fn point(x: Ratio) -> Interval {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Ratio {
        &self.lo
    }

    pub fn hi(&self) -> &Ratio {
        &self.hi
    }

    pub fn width(&self) -> Ratio {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Ratio {
        (&self.lo + &self.hi) / Ratio::from(2)
    }

    pub fn contains(&self, x: &Ratio) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True iff no integer lies in `[lo, hi]`.
    pub fn is_integer_free(&self) -> bool {
        self.hi.floor() < self.lo.ceil()
    }

    pub fn compare(&self, x: &Ratio) -> Ordering {
        if x < &self.lo {
            Ordering::Less
        } else if x > &self.hi {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Ratio {
        Ratio::new(n.into(), d.into())
    }

    #[test]
    fn floor_ceil_round() {
        assert_eq!(r(7, 2).floor(), 3.into());
        assert_eq!(r(7, 2).ceil(), 4.into());
        assert_eq!(r(-7, 2).floor(), (-4).into());
        assert_eq!(r(-7, 2).ceil(), (-3).into());
        assert_eq!(r(6, 3).ceil(), 2.into());
        assert_eq!(r(5, 2).round_half_up(), 3.into());
        assert_eq!(r(12, 5).round_half_up(), 2.into());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(r(4, 6).to_string(), "2/3");
        assert_eq!(r(3, -1).to_string(), "-3/1");
        assert_eq!(Ratio::parse_canonical("2/3").unwrap(), r(2, 3));
        assert_eq!(Ratio::parse_canonical("0/1").unwrap(), Ratio::zero());
        assert_eq!(Ratio::parse_canonical("-5/2").unwrap(), r(-5, 2));
        for bad in ["4/6", "2/0", "02/3", "2", "2/ 3", "+2/3", "-0/1", "2/-3", "a/3", "0/2", "-/3"] {
            assert!(Ratio::parse_canonical(bad).is_err(), "{bad}");
        }
        // the lenient reader normalizes instead
        assert_eq!("4/6".parse::<Ratio>().unwrap(), r(2, 3));
        assert_eq!("007/3".parse::<Ratio>().unwrap(), r(7, 3));
        assert_eq!("-0/5".parse::<Ratio>().unwrap(), Ratio::zero());
        for bad in ["2/0", "2", "2/ 3", "+2/3", "2/-3", "a/3", "", "/", "1/2/3"] {
            assert!(bad.parse::<Ratio>().is_err(), "{bad}");
        }
    }

    #[test]
    fn integer_freeness() {
        assert!(Interval::new(r(1, 3), r(2, 3)).is_integer_free());
        assert!(Interval::new(r(7, 2), r(37, 10)).is_integer_free());
        assert!(!Interval::new(r(1, 2), r(1, 1)).is_integer_free());
        assert!(!Interval::point(r(0, 1)).is_integer_free());
    }

    proptest! {
        #[test]
        fn add_then_sub_is_exact(a in -10_000i64..10_000, b in 1i64..10_000,
                                 c in -10_000i64..10_000, d in 1i64..10_000) {
            let x = r(a, b);
            let y = r(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x);
        }

        #[test]
        fn text_round_trip(a in any::<i64>(), b in 1i64..i64::MAX) {
            let x = r(a, b);
            prop_assert_eq!(Ratio::parse_canonical(&x.to_string()).unwrap(), x);
        }
    }
}
