//! Commuting pairs `(u, v)` with supports on opposite sides of a split point.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::generators::{Element, GeneratorTable};
use crate::plmap::format_support;
use crate::word::{Alphabet, GroupWord};

/// Which side of the split point carries the support of the conjugated
/// element `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `u` is the identity on `[0, split]`; `v` on `[split, 1]`.
    Upper,
    /// `u` is the identity on `[split, 1]`; `v` on `[0, split]`.
    Lower,
}

/// A validated pair: `u` is the element that gets conjugated by `z = ξ^ε`,
/// `v` is left alone. Their supports are separated by `split`.
#[derive(Clone, Debug)]
pub struct SupportPair {
    u: GroupWord,
    v: GroupWord,
    split: Dyadic,
    u_map: Element,
    v_map: Element,
    side: Side,
}

impl SupportPair {
    pub fn new(u: GroupWord, v: GroupWord, split: Dyadic) -> Result<Self> {
        let u_map = u.evaluate();
        let v_map = v.evaluate();
        let reject = |reason: &str| Error::InvalidPair {
            reason: reason.to_string(),
            u_support: format_support(&u_map.support()),
            v_support: format_support(&v_map.support()),
        };
        if !Arc::ptr_eq(u.alphabet(), v.alphabet()) && **u.alphabet() != **v.alphabet() {
            return Err(reject("u and v are written over different alphabets"));
        }
        if split <= Dyadic::zero() || split >= Dyadic::one() {
            return Err(reject("split point must lie strictly inside (0,1)"));
        }
        if u_map.is_identity() || v_map.is_identity() {
            return Err(reject("both elements must be nontrivial"));
        }
        let zero = Dyadic::zero();
        let one = Dyadic::one();
        let trivial_low = |m: &Element| m.is_identity_on(&zero, &split).unwrap_or(false);
        let trivial_high = |m: &Element| m.is_identity_on(&split, &one).unwrap_or(false);
        let side = if trivial_low(&u_map) && trivial_high(&v_map) {
            Side::Upper
        } else if trivial_high(&u_map) && trivial_low(&v_map) {
            Side::Lower
        } else {
            return Err(reject("supports are not separated by the split point"));
        };
        if !u_map.commutes_with(&v_map) {
            return Err(reject("u and v do not commute"));
        }
        Ok(SupportPair {
            u,
            v,
            split,
            u_map,
            v_map,
            side,
        })
    }

    pub fn u(&self) -> &GroupWord {
        &self.u
    }

    pub fn v(&self) -> &GroupWord {
        &self.v
    }

    pub fn u_map(&self) -> &Element {
        &self.u_map
    }

    pub fn v_map(&self) -> &Element {
        &self.v_map
    }

    pub fn split(&self) -> &Dyadic {
        &self.split
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.u.alphabet()
    }

    /// `|u| + |v|`, the per-edge cost of the grid part of the tour.
    pub fn length_sum(&self) -> usize {
        self.u.len() + self.v.len()
    }

    /// `(|u| + |v|) / 2`: the ratio bound tends to this as `N` grows.
    pub fn ratio_constant(&self) -> BigRational {
        BigRational::new(self.length_sum().into(), 2.into())
    }
}

/// The three generating sets with their commuting pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `{x0, x1}`, `u = x1`, `v = x0 x1 x0⁻²`.
    Std2,
    /// `{x0, x1, x2}`, `u = x1 x0⁻¹`, `v = x2`.
    X012,
    /// `{x0, x1, x1 x0⁻¹}`, `u = x1 x0⁻¹`, `v = x0⁻¹ x1 x0`.
    Mirror3,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Std2, Preset::X012, Preset::Mirror3];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Std2 => "std2",
            Preset::X012 => "x012",
            Preset::Mirror3 => "mirror3",
        }
    }

    pub fn alphabet_with(self, table: &GeneratorTable) -> Arc<Alphabet> {
        match self {
            Preset::Std2 => Alphabet::std2_with(table),
            Preset::X012 => Alphabet::x012_with(table),
            Preset::Mirror3 => Alphabet::mirror3_with(table),
        }
    }

    pub fn alphabet(self) -> Arc<Alphabet> {
        self.alphabet_with(GeneratorTable::standard())
    }

    fn pair_words(self) -> (&'static str, &'static str, &'static str) {
        match self {
            Preset::Std2 => ("b", "abAA", "1/2"),
            Preset::X012 => ("bA", "c", "3/4"),
            Preset::Mirror3 => ("d", "Aba", "3/4"),
        }
    }

    pub fn pair_over(self, alphabet: &Arc<Alphabet>) -> Result<SupportPair> {
        let (u, v, split) = self.pair_words();
        SupportPair::new(
            GroupWord::parse(alphabet, u)?,
            GroupWord::parse(alphabet, v)?,
            split.parse()?,
        )
    }

    pub fn pair(self) -> Result<SupportPair> {
        self.pair_over(&self.alphabet())
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown alphabet preset {s:?}")))
    }
}

/// One alternative generating set: its pair and the limiting ratio constant.
#[derive(Clone, Debug)]
pub struct RemarkConfig {
    pub preset: Preset,
    pub alphabet: Arc<Alphabet>,
    pub pair: SupportPair,
    pub constant: BigRational,
}

/// The `{x0,x1,x2}` and `{x0,x1,x1x0⁻¹}` configurations, validated.
pub fn remark_pairs() -> Result<Vec<RemarkConfig>> {
    [Preset::X012, Preset::Mirror3]
        .into_iter()
        .map(|preset| {
            let alphabet = preset.alphabet();
            let pair = preset.pair_over(&alphabet)?;
            let constant = pair.ratio_constant();
            Ok(RemarkConfig {
                preset,
                alphabet,
                pair,
                constant,
            })
        })
        .collect()
}
