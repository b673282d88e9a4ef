//! Piecewise-linear homeomorphisms of `[0,1]` with power-of-two slopes.
//!
//! A [`PlMap`] is stored as its minimal breakpoint list, so structural
//! equality coincides with equality of functions. Products use the right
//! action: in `f.then(&g)` (also `&f * &g`) the map `f` is applied first.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlMap<S: Scalar = Dyadic> {
    points: Vec<(S, S)>,
    // slopes[k] = log2 of the slope on points[k]..points[k + 1]
    slopes: Vec<i64>,
}

/// An open interval `(lo, hi)` of `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    /// Whether this open interval sits inside the closed interval `[lo, hi]`.
    pub fn within(&self, lo: &BigRational, hi: &BigRational) -> bool {
        &self.lo >= lo && &self.hi <= hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Formats a support list as `[(a, b), (c, d)]`.
pub fn format_support(support: &[Interval]) -> String {
    let parts: Vec<String> = support.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

struct Builder<S: Scalar> {
    points: Vec<(S, S)>,
    slopes: Vec<i64>,
}

impl<S: Scalar> Builder<S> {
    fn with_capacity(n: usize) -> Self {
        Builder {
            points: Vec::with_capacity(n),
            slopes: Vec::with_capacity(n),
        }
    }

    /// Appends a breakpoint reached by a segment of the given slope, merging
    /// it into the previous segment when the slopes agree.
    fn push(&mut self, point: (S, S), slope: i64) {
        if self.slopes.last() == Some(&slope) {
            *self.points.last_mut().unwrap() = point;
        } else {
            self.points.push(point);
            self.slopes.push(slope);
        }
    }

    fn finish(self) -> PlMap<S> {
        PlMap {
            points: self.points,
            slopes: self.slopes,
        }
    }
}

impl<S: Scalar> PlMap<S> {
    pub fn identity() -> Self {
        PlMap {
            points: vec![(S::zero(), S::zero()), (S::one(), S::one())],
            slopes: vec![0],
        }
    }

    /// Validates and canonicalizes a breakpoint list.
    ///
    /// The list must start at `(0,0)`, end at `(1,1)`, be strictly increasing
    /// in both coordinates, use dyadic coordinates and have power-of-two
    /// slopes. Redundant breakpoints are removed.
    pub fn from_breakpoints(points: Vec<(S, S)>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidBreakpoints(msg));
        if points.len() < 2 {
            return bad(format!("need at least 2 breakpoints, got {}", points.len()));
        }
        if points[0] != (S::zero(), S::zero()) {
            return bad(format!("first breakpoint must be (0,0), got {:?}", points[0]));
        }
        if points[points.len() - 1] != (S::one(), S::one()) {
            return bad(format!(
                "last breakpoint must be (1,1), got {:?}",
                points[points.len() - 1]
            ));
        }
        if let Some((x, y)) = points.iter().find(|(x, y)| !x.is_dyadic() || !y.is_dyadic()) {
            return bad(format!("non-dyadic breakpoint ({x}, {y})"));
        }
        let mut builder = Builder::with_capacity(points.len());
        let mut iter = points.into_iter();
        builder.points.push(iter.next().unwrap());
        for p in iter {
            let (x0, y0) = builder.points.last().unwrap();
            if p.0 <= *x0 || p.1 <= *y0 {
                return bad(format!("breakpoints not strictly increasing at ({}, {})", p.0, p.1));
            }
            let dx = p.0.sub_ref(x0);
            let dy = p.1.sub_ref(y0);
            let Some(slope) = dy.log2_ratio(&dx) else {
                return bad(format!("slope {dy}/{dx} is not a power of two"));
            };
            builder.push(p, slope);
        }
        Ok(builder.finish())
    }

    pub fn points(&self) -> &[(S, S)] {
        &self.points
    }

    /// Slope exponents, one per segment.
    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    pub fn breakpoint_count(&self) -> usize {
        self.points.len()
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2
    }

    fn check_domain(t: &S) -> Result<()> {
        if *t < S::zero() || *t > S::one() {
            return Err(Error::Domain(t.to_string()));
        }
        Ok(())
    }

    fn segment_containing_input(&self, t: &S) -> usize {
        let idx = self.points.partition_point(|(x, _)| x <= t);
        idx.clamp(1, self.points.len() - 1) - 1
    }

    fn segment_containing_output(&self, t: &S) -> usize {
        let idx = self.points.partition_point(|(_, y)| y <= t);
        idx.clamp(1, self.points.len() - 1) - 1
    }

    fn eval_in_segment(&self, seg: usize, t: &S) -> S {
        let (x0, y0) = &self.points[seg];
        y0.add_ref(&t.sub_ref(x0).mul_pow2(self.slopes[seg]))
    }

    fn eval_inverse_in_segment(&self, seg: usize, t: &S) -> S {
        let (x0, y0) = &self.points[seg];
        x0.add_ref(&t.sub_ref(y0).mul_pow2(-self.slopes[seg]))
    }

    /// The image `(t)f`.
    pub fn apply(&self, t: &S) -> Result<S> {
        Self::check_domain(t)?;
        Ok(self.eval_in_segment(self.segment_containing_input(t), t))
    }

    /// The preimage of `t`, i.e. `(t)f⁻¹`.
    pub fn apply_inverse(&self, t: &S) -> Result<S> {
        Self::check_domain(t)?;
        Ok(self.eval_inverse_in_segment(self.segment_containing_output(t), t))
    }

    /// The product `fg` under the right action: `(t)fg = ((t)f)g`.
    pub fn then(&self, g: &Self) -> Self {
        let f = self;
        let mut out = Builder::with_capacity(f.points.len() + g.points.len());
        out.points.push((S::zero(), S::zero()));
        let (mut i, mut j) = (1, 1);
        // Merge f's breakpoints with the preimages of g's breakpoints. Both
        // lists end at 1, so they run out together.
        while i < f.points.len() && j < g.points.len() {
            let slope = f.slopes[i - 1] + g.slopes[j - 1];
            let (fx, fy) = &f.points[i];
            let (gx, gy) = &g.points[j];
            match fy.cmp(gx) {
                std::cmp::Ordering::Less => {
                    out.push((fx.clone(), g.eval_in_segment(j - 1, fy)), slope);
                    i += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((fx.clone(), gy.clone()), slope);
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((f.eval_inverse_in_segment(i - 1, gx), gy.clone()), slope);
                    j += 1;
                }
            }
        }
        out.finish()
    }

    pub fn inverse(&self) -> Self {
        PlMap {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
            slopes: self.slopes.iter().map(|s| -s).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    /// `g⁻¹ f g`, written `f^g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().then(self).then(g)
    }

    /// `[f, g] = f⁻¹ g⁻¹ f g`.
    pub fn commutator(&self, g: &Self) -> Self {
        self.inverse().then(&g.inverse()).then(self).then(g)
    }

    pub fn commutes_with(&self, g: &Self) -> bool {
        self.then(g) == g.then(self)
    }

    /// Maximal open intervals on which `(t)f != t`, in increasing order.
    ///
    /// Fixed points inside a segment of slope other than 1 need not be
    /// dyadic, so endpoints are reported as rationals.
    pub fn support(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut open: Option<BigRational> = None;
        for (seg, w) in self.points.windows(2).enumerate() {
            let (x0, y0) = (w[0].0.to_rational(), w[0].1.to_rational());
            let (x1, y1) = (w[1].0.to_rational(), w[1].1.to_rational());
            let d0 = &y0 - &x0;
            let d1 = &y1 - &x1;
            if d0.is_zero() && d1.is_zero() {
                continue;
            }
            if d0.is_zero() {
                open = Some(x0.clone());
            }
            if d0.is_positive() && d1.is_negative() || d0.is_negative() && d1.is_positive() {
                // (t)f - t = d0 + (t - x0)(2^s - 1) vanishes once inside the segment.
                let s = self.slopes[seg];
                let factor = if s >= 0 {
                    BigRational::from_integer(BigInt::one() << (s as usize))
                } else {
                    BigRational::new(BigInt::one(), BigInt::one() << ((-s) as usize))
                } - BigRational::one();
                let cross = &x0 - &d0 / factor;
                out.push(Interval {
                    lo: open.take().expect("support interval opened"),
                    hi: cross.clone(),
                });
                open = Some(cross);
            }
            if d1.is_zero() {
                out.push(Interval {
                    lo: open.take().expect("support interval opened"),
                    hi: x1,
                });
            }
        }
        out
    }

    /// Whether `(t)f = t` for every `t` in the closed interval `[lo, hi]`.
    pub fn is_identity_on(&self, lo: &S, hi: &S) -> Result<bool> {
        if lo > hi {
            return Err(Error::MalformedInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Self::check_domain(lo)?;
        Self::check_domain(hi)?;
        if self.apply(lo)? != *lo || self.apply(hi)? != *hi {
            return Ok(false);
        }
        Ok(self
            .points
            .iter()
            .filter(|(x, _)| x > lo && x < hi)
            .all(|(x, y)| x == y))
    }

    /// The same map with coordinates carried over to another exact scalar.
    pub fn to_scalar<T: Scalar>(&self, convert: impl Fn(&S) -> T) -> PlMap<T> {
        PlMap {
            points: self
                .points
                .iter()
                .map(|(x, y)| (convert(x), convert(y)))
                .collect(),
            slopes: self.slopes.clone(),
        }
    }

    pub fn to_rational_map(&self) -> PlMap<BigRational> {
        self.to_scalar(|s| s.to_rational())
    }
}

impl<'a, S: Scalar> Mul<&'a PlMap<S>> for &'a PlMap<S> {
    type Output = PlMap<S>;

    fn mul(self, rhs: &'a PlMap<S>) -> PlMap<S> {
        self.then(rhs)
    }
}

impl<S: Scalar> Default for PlMap<S> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<S: Scalar> fmt::Debug for PlMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlMap[")?;
        for (k, (x, y)) in self.points.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "]")
    }
}

/// Numerators serialize as JSON integers when they fit in an `i64`, and as
/// decimal strings otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Numerator {
    Small(i64),
    Big(String),
}

impl Numerator {
    fn from_bigint(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => Numerator::Small(v),
            None => Numerator::Big(n.to_string()),
        }
    }

    fn to_bigint(&self) -> std::result::Result<BigInt, String> {
        match self {
            Numerator::Small(v) => Ok(BigInt::from(*v)),
            Numerator::Big(s) => s.parse().map_err(|_| format!("bad numerator {s:?}")),
        }
    }
}

type Quad = (Numerator, u32, Numerator, u32);

impl Serialize for PlMap<Dyadic> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> std::result::Result<Se::Ok, Se::Error> {
        let quads: Vec<Quad> = self
            .points
            .iter()
            .map(|(x, y)| {
                (
                    Numerator::from_bigint(x.numerator()),
                    x.exponent(),
                    Numerator::from_bigint(y.numerator()),
                    y.exponent(),
                )
            })
            .collect();
        quads.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PlMap<Dyadic> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let quads = Vec::<Quad>::deserialize(deserializer)?;
        let mut points = Vec::with_capacity(quads.len());
        for (xn, xe, yn, ye) in quads {
            let x = Dyadic::new(xn.to_bigint().map_err(de::Error::custom)?, xe);
            let y = Dyadic::new(yn.to_bigint().map_err(de::Error::custom)?, ye);
            points.push((x, y));
        }
        PlMap::from_breakpoints(points).map_err(de::Error::custom)
    }
}
