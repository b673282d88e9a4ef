//! Dyadic rationals `a / 2^k` with arbitrary-precision numerators.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact dyadic rational `numerator / 2^exponent`.
///
/// Always normalized: either `exponent == 0` or the numerator is odd, so two
/// values are equal exactly when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    /// Builds and normalizes `numerator / 2^exponent`.
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Self {
        let mut numerator = numerator.into();
        let mut exponent = exponent;
        if numerator.is_zero() {
            return Self::zero();
        }
        if exponent > 0 {
            let tz = numerator.trailing_zeros().unwrap_or(0);
            let shift = tz.min(u64::from(exponent)) as u32;
            if shift > 0 {
                numerator >>= shift as usize;
                exponent -= shift;
            }
        }
        Dyadic {
            numerator,
            exponent,
        }
    }

    pub fn from_int(value: i64) -> Self {
        Dyadic::new(value, 0)
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i64) -> Self {
        if k >= 0 {
            Dyadic::new(BigInt::one() << (k as usize), 0)
        } else {
            Dyadic::new(1, (-k) as u32)
        }
    }

    pub fn half() -> Self {
        Dyadic::new(1, 1)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `self * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.numerator.is_zero() {
            return Self::zero();
        }
        if k >= 0 {
            let k = k as u64;
            if k <= u64::from(self.exponent) {
                // Exponent drops; the numerator stays odd unless it hits zero.
                Dyadic {
                    numerator: self.numerator.clone(),
                    exponent: self.exponent - k as u32,
                }
            } else {
                let shift = k - u64::from(self.exponent);
                Dyadic {
                    numerator: &self.numerator << (shift as usize),
                    exponent: 0,
                }
            }
        } else {
            Dyadic::new(self.numerator.clone(), self.exponent + (-k) as u32)
        }
    }

    /// Returns `k` when `self / other == 2^k`.
    pub fn log2_ratio(&self, other: &Self) -> Option<i64> {
        if self.numerator.is_zero() || other.numerator.is_zero() {
            return None;
        }
        if self.numerator.is_negative() != other.numerator.is_negative() {
            return None;
        }
        // Both numerators are odd unless the exponent is zero; peel the even
        // parts off so that only the odd parts need to agree.
        let tz_a = self.numerator.trailing_zeros().unwrap_or(0) as i64;
        let tz_b = other.numerator.trailing_zeros().unwrap_or(0) as i64;
        let odd_a = &self.numerator >> (tz_a as usize);
        let odd_b = &other.numerator >> (tz_b as usize);
        if odd_a != odd_b {
            return None;
        }
        Some((tz_a - i64::from(self.exponent)) - (tz_b - i64::from(other.exponent)))
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            self.numerator.clone(),
            BigInt::one() << (self.exponent as usize),
        )
    }

    /// Exact conversion from a rational whose reduced denominator is a power of two.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        let denom = r.denom();
        let tz = denom.trailing_zeros().unwrap_or(0);
        if denom >> (tz as usize) != BigInt::one() {
            return None;
        }
        Some(Dyadic::new(r.numer().clone(), tz as u32))
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator.to_f64().unwrap_or(f64::NAN) / 2f64.powi(self.exponent as i32)
    }

    /// `0 <= self <= 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.numerator.is_negative() && *self <= Dyadic::one()
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << ((e - self.exponent) as usize);
        let b = &other.numerator << ((e - other.exponent) as usize);
        (a, b, e)
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic {
            numerator: BigInt::zero(),
            exponent: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Dyadic {
            numerator: BigInt::one(),
            exponent: 0,
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.exponent == other.exponent {
            return self.numerator.cmp(&other.numerator);
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &'a Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &'a Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &'a Dyadic) -> Dyadic {
        Dyadic::new(
            &self.numerator * &rhs.numerator,
            self.exponent + rhs.exponent,
        )
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }
}

impl From<i64> for Dyadic {
    fn from(value: i64) -> Self {
        Dyadic::from_int(value)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigInt::one() << (self.exponent as usize))
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"3/8"`, `"5"` or `"-1/2"`; the denominator must be a power of two.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a dyadic rational: {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if !den.is_positive() {
            return Err(bad());
        }
        let r = BigRational::new(num, den);
        Dyadic::from_rational(&r).ok_or_else(bad)
    }
}
