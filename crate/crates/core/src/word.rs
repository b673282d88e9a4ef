//! Generating sets and words over them.
//!
//! Words use a compact syntax: each generator has a lowercase letter and the
//! uppercase letter denotes its inverse. The built-in letters are
//! `a` = x0, `b` = x1, `c` = x2 and `d` = x1 x0⁻¹. Whitespace is ignored.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Deserialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::generators::{Element, GeneratorTable};

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub letter: char,
    pub map: Element,
    inverse_map: Element,
}

impl Generator {
    pub fn new(name: impl Into<String>, letter: char, map: Element) -> Self {
        let inverse_map = map.inverse();
        Generator {
            name: name.into(),
            letter,
            map,
            inverse_map,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

#[derive(Debug)]
pub struct Alphabet {
    name: String,
    generators: Vec<Generator>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.generators.len() == other.generators.len()
            && self
                .generators
                .iter()
                .zip(&other.generators)
                .all(|(a, b)| a.letter == b.letter && a.map == b.map)
    }
}

impl Alphabet {
    pub fn new(name: impl Into<String>, generators: Vec<Generator>) -> Result<Arc<Self>> {
        if generators.is_empty() {
            return Err(Error::Parse("an alphabet needs at least one generator".into()));
        }
        for (k, g) in generators.iter().enumerate() {
            if !g.letter.is_ascii_lowercase() {
                return Err(Error::Parse(format!(
                    "generator letters must be lowercase ascii, got {:?}",
                    g.letter
                )));
            }
            if generators[..k].iter().any(|h| h.letter == g.letter) {
                return Err(Error::Parse(format!("duplicate generator letter {:?}", g.letter)));
            }
        }
        Ok(Arc::new(Alphabet {
            name: name.into(),
            generators,
        }))
    }

    /// `{x0, x1}`.
    pub fn std2() -> Arc<Self> {
        Self::std2_with(GeneratorTable::standard())
    }

    /// `{x0, x1, x2}`.
    pub fn x012() -> Arc<Self> {
        Self::x012_with(GeneratorTable::standard())
    }

    /// `{x0, x1, x1 x0⁻¹}`.
    pub fn mirror3() -> Arc<Self> {
        Self::mirror3_with(GeneratorTable::standard())
    }

    pub fn std2_with(table: &GeneratorTable) -> Arc<Self> {
        Self::new(
            "std2",
            vec![
                Generator::new("x0", 'a', table.x0().clone()),
                Generator::new("x1", 'b', table.x1().clone()),
            ],
        )
        .unwrap()
    }

    pub fn x012_with(table: &GeneratorTable) -> Arc<Self> {
        Self::new(
            "x012",
            vec![
                Generator::new("x0", 'a', table.x0().clone()),
                Generator::new("x1", 'b', table.x1().clone()),
                Generator::new("x2", 'c', table.generator(2)),
            ],
        )
        .unwrap()
    }

    pub fn mirror3_with(table: &GeneratorTable) -> Arc<Self> {
        Self::new(
            "mirror3",
            vec![
                Generator::new("x0", 'a', table.x0().clone()),
                Generator::new("x1", 'b', table.x1().clone()),
                Generator::new("x1x0^-1", 'd', table.x1().then(&table.x0().inverse())),
            ],
        )
        .unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn letter_map(&self, letter: Letter) -> &Element {
        let g = &self.generators[letter.generator];
        if letter.inverse {
            &g.inverse_map
        } else {
            &g.map
        }
    }

    pub fn letter_char(&self, letter: Letter) -> char {
        let c = self.generators[letter.generator].letter;
        if letter.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn parse_letter(&self, c: char) -> Result<Letter> {
        let lower = c.to_ascii_lowercase();
        self.generators
            .iter()
            .position(|g| g.letter == lower)
            .map(|k| Letter::new(k, c.is_ascii_uppercase()))
            .ok_or_else(|| Error::UnknownGenerator(format!("{c} (alphabet {})", self.name)))
    }

    /// All letters `s^{±1}`, in generator order with the positive letter first.
    pub fn signed_letters(&self) -> Vec<Letter> {
        (0..self.generators.len())
            .flat_map(|k| [Letter::new(k, false), Letter::new(k, true)])
            .collect()
    }
}

/// A word over an [`Alphabet`], kept exactly as written (no free reduction).
#[derive(Clone, Debug)]
pub struct GroupWord {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl PartialEq for GroupWord {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && Arc::ptr_eq(&self.alphabet, &other.alphabet)
            || (self.letters == other.letters && *self.alphabet == *other.alphabet)
    }
}

impl GroupWord {
    pub fn new(alphabet: Arc<Alphabet>, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.generator >= alphabet.len()) {
            return Err(Error::UnknownGenerator(format!(
                "index {} (alphabet {} has {})",
                l.generator,
                alphabet.name,
                alphabet.len()
            )));
        }
        Ok(GroupWord { alphabet, letters })
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        GroupWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// Parses the compact syntax, e.g. `"abAA"` for x0 x1 x0⁻².
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Self> {
        let letters = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| alphabet.parse_letter(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupWord {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    /// A word of uniformly random length in `0..=max_len` with letters drawn
    /// uniformly from the signed generators.
    pub fn random(alphabet: &Arc<Alphabet>, max_len: usize, rng: &mut impl Rng) -> Self {
        let len = rng.random_range(0..=max_len);
        Self::random_of_length(alphabet, len, rng)
    }

    pub fn random_of_length(alphabet: &Arc<Alphabet>, len: usize, rng: &mut impl Rng) -> Self {
        let k = alphabet.len();
        let letters = (0..len)
            .map(|_| Letter::new(rng.random_range(0..k), rng.random_bool(0.5)))
            .collect();
        GroupWord {
            alphabet: alphabet.clone(),
            letters,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of letters as written.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        assert!(letter.generator < self.alphabet.len());
        self.letters.push(letter);
    }

    pub fn extend_from(&mut self, other: &GroupWord) {
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// The formal inverse: letters reversed and inverted.
    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            alphabet: self.alphabet.clone(),
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::empty(self.alphabet.clone());
        for _ in 0..k.unsigned_abs() {
            out.extend_from(&base);
        }
        out
    }

    /// The map of the word: its letters multiplied left to right.
    pub fn evaluate(&self) -> Element {
        self.letters
            .iter()
            .fold(Element::identity(), |acc, &l| acc.then(self.alphabet.letter_map(l)))
    }

    /// The word with the letter at `index` removed.
    pub fn without_letter(&self, index: usize) -> GroupWord {
        let mut out = self.clone();
        out.letters.remove(index);
        out
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", self.alphabet.letter_char(l))?;
        }
        Ok(())
    }
}

/// `pl_from_word`: the evaluation homomorphism from words to maps.
pub fn pl_from_word(word: &GroupWord) -> Element {
    word.evaluate()
}

/// One generator of a custom alphabet file, given as a word over x0 (`a`)
/// and x1 (`b`).
#[derive(Debug, Deserialize)]
pub struct GeneratorSpec {
    pub letter: char,
    #[serde(default)]
    pub name: Option<String>,
    pub word: String,
}

/// A custom generating set with a commuting pair, as read from JSON:
///
/// ```json
/// {"name": "x012", "generators": [{"letter": "a", "word": "a"}, ...],
///  "u": "bA", "v": "c", "split": "3/4"}
/// ```
#[derive(Debug, Deserialize)]
pub struct AlphabetSpec {
    pub name: String,
    pub generators: Vec<GeneratorSpec>,
    pub u: String,
    pub v: String,
    pub split: String,
}

impl AlphabetSpec {
    pub fn build(&self, table: &GeneratorTable) -> Result<(Arc<Alphabet>, GroupWord, GroupWord, Dyadic)> {
        let base = Alphabet::std2_with(table);
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let word = GroupWord::parse(&base, &g.word)?;
                let name = g.name.clone().unwrap_or_else(|| g.word.clone());
                Ok(Generator::new(name, g.letter, word.evaluate()))
            })
            .collect::<Result<Vec<_>>>()?;
        let alphabet = Alphabet::new(self.name.clone(), generators)?;
        let u = GroupWord::parse(&alphabet, &self.u)?;
        let v = GroupWord::parse(&alphabet, &self.v)?;
        let split: Dyadic = self.split.parse()?;
        Ok((alphabet, u, v, split))
    }
}
