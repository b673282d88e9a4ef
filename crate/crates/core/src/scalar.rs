//! Coordinate scalars for piecewise-linear maps.
//!
//! Everything in [`crate::plmap`] is generic over [`Scalar`]. Two exact
//! implementations ship: [`Dyadic`] (the working type) and [`BigRational`]
//! (an independent arithmetic route used to cross-check the dyadic one).
//! Floating point is intentionally absent: map equality must be exact.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dyadic::Dyadic;

pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Zero + One + Send + Sync + 'static
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;

    /// `self * 2^k`.
    fn mul_pow2(&self, k: i64) -> Self;

    /// `Some(k)` iff `self / other == 2^k`.
    fn log2_ratio(&self, other: &Self) -> Option<i64>;

    fn is_dyadic(&self) -> bool;

    fn from_dyadic(d: &Dyadic) -> Self;

    fn to_rational(&self) -> BigRational;
}

impl Scalar for Dyadic {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn mul_pow2(&self, k: i64) -> Self {
        Dyadic::mul_pow2(self, k)
    }

    fn log2_ratio(&self, other: &Self) -> Option<i64> {
        Dyadic::log2_ratio(self, other)
    }

    fn is_dyadic(&self) -> bool {
        true
    }

    fn from_dyadic(d: &Dyadic) -> Self {
        d.clone()
    }

    fn to_rational(&self) -> BigRational {
        Dyadic::to_rational(self)
    }
}

fn power_of_two_exponent(n: &BigInt) -> Option<i64> {
    if !n.is_positive() {
        return None;
    }
    let tz = n.trailing_zeros()?;
    if n >> (tz as usize) == BigInt::one() {
        Some(tz as i64)
    } else {
        None
    }
}

impl Scalar for BigRational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn mul_pow2(&self, k: i64) -> Self {
        let p = BigInt::one() << (k.unsigned_abs() as usize);
        if k >= 0 {
            self * BigRational::from_integer(p)
        } else {
            self / BigRational::from_integer(p)
        }
    }

    fn log2_ratio(&self, other: &Self) -> Option<i64> {
        if other.is_zero() {
            return None;
        }
        let q = self / other;
        let up = power_of_two_exponent(q.numer())?;
        let down = power_of_two_exponent(q.denom())?;
        Some(up - down)
    }

    fn is_dyadic(&self) -> bool {
        power_of_two_exponent(self.denom()).is_some()
    }

    fn from_dyadic(d: &Dyadic) -> Self {
        d.to_rational()
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// `a / b` as a reduced rational; used for ratios and bounds in reports.
pub fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Renders a rational as `"p/q"`, keeping the slash even for integers.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` (or a bare integer) into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Floor of a non-negative rational as an integer.
pub(crate) fn floor_u64(r: &BigRational) -> Option<u64> {
    let (q, _) = r.numer().div_mod_floor(r.denom());
    u64::try_from(q).ok()
}
