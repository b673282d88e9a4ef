//! Exact arithmetic in Thompson's group F and ξ-related witness sets with
//! short covering tours on its Cayley graph.
//!
//! Elements are canonical piecewise-linear maps of `[0,1]` acting on the
//! right: in `f.then(&g)`, `f` is applied first.

pub mod check;
pub mod dyadic;
pub mod error;
pub mod generators;
pub mod oracle;
pub mod plmap;
pub mod scalar;
pub mod witness;
pub mod word;

use num_rational::BigRational;

pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use generators::{generator_map, GeneratorTable, Orientation};
pub use plmap::{Interval, PlMap};
pub use scalar::{parse_rational, rational_string, Scalar};
pub use word::{pl_from_word, Alphabet, AlphabetSpec, GroupWord, Letter};

/// An element of F with dyadic coordinates.
pub type Element = PlMap<Dyadic>;
/// The same element over general rationals, for cross-checking.
pub type RationalElement = PlMap<BigRational>;
