//! Choosing `ε` so that `ξ^ε u ξ^-ε` commutes with `v`, and the mixed
//! identity that follows from it.

use serde::{Serialize, Serializer};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::generators::{Element, GeneratorTable};
use crate::word::GroupWord;

use super::pair::{Side, SupportPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

/// `ε` for a conjugated element supported above `split`: `-1` when
/// `(split)ξ > split`, else `+1`. Then `(split)ξ^ε <= split`.
pub fn choose_epsilon(xi: &Element, split: &Dyadic) -> Sign {
    choose_epsilon_for(xi, split, Side::Upper)
}

/// As [`choose_epsilon`], with the comparison reversed when the conjugated
/// element lives below `split` (then `z` must preserve `[split, 1]`).
pub fn choose_epsilon_for(xi: &Element, split: &Dyadic, side: Side) -> Sign {
    let image = xi.apply(split).expect("split point lies in [0,1]");
    let moves_out = match side {
        Side::Upper => image > *split,
        Side::Lower => image < *split,
    };
    if moves_out {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

#[derive(Clone, Debug)]
pub struct LemmaWitness {
    pub xi: GroupWord,
    pub epsilon: Sign,
    /// `ξ^ε` as a word; same length as `xi`.
    pub z_word: GroupWord,
    pub z: Element,
    /// `z u z⁻¹`.
    pub w: Element,
    pub split: Dyadic,
    pub side: Side,
}

/// Picks `ε`, builds `z` and `w = z u z⁻¹`, and checks every claimed
/// property structurally.
pub fn lemma1_witness(xi: &GroupWord, pair: &SupportPair) -> Result<LemmaWitness> {
    if !std::sync::Arc::ptr_eq(xi.alphabet(), pair.alphabet()) && **xi.alphabet() != **pair.alphabet() {
        return Err(Error::UnknownGenerator(format!(
            "xi is written over {}, the pair over {}",
            xi.alphabet().name(),
            pair.alphabet().name()
        )));
    }
    let xi_map = xi.evaluate();
    let split = pair.split().clone();
    let side = pair.side();
    let epsilon = choose_epsilon_for(&xi_map, &split, side);
    let (z_word, z) = match epsilon {
        Sign::Plus => (xi.clone(), xi_map),
        Sign::Minus => (xi.inverse(), xi_map.inverse()),
    };
    let w = z.then(pair.u_map()).then(&z.inverse());

    let image = z.apply(&split)?;
    let (preserved, trivial_side) = match side {
        Side::Upper => (image <= split, w.is_identity_on(&Dyadic::from_int(0), &split)?),
        Side::Lower => (image >= split, w.is_identity_on(&split, &Dyadic::from_int(1))?),
    };
    if !preserved {
        return Err(Error::CommutationFailed(format!(
            "(split)z = {image} is on the wrong side of {split} for xi = {xi}"
        )));
    }
    if !trivial_side {
        return Err(Error::CommutationFailed(format!(
            "z u z^-1 is not trivial on the {side:?} side's complement for xi = {xi}"
        )));
    }
    if !w.commutes_with(pair.v_map()) {
        return Err(Error::CommutationFailed(format!(
            "z u z^-1 does not commute with v for xi = {xi}"
        )));
    }
    Ok(LemmaWitness {
        xi: xi.clone(),
        epsilon,
        z_word,
        z,
        w,
        split,
        side,
    })
}

/// `[[g x1 g⁻¹, v], [g⁻¹ x1 g, v]]` with `v = x0 x1 x0⁻²`, evaluated exactly.
pub fn mixed_commutator(g: &Element, table: &GeneratorTable) -> Element {
    let x1 = table.x1();
    let v = table.standard_v();
    let g_inv = g.inverse();
    let left = g.then(x1).then(&g_inv).commutator(&v);
    let right = g_inv.then(x1).then(g).commutator(&v);
    left.commutator(&right)
}

/// Whether the mixed identity holds at `g` (it should, for every `g`).
pub fn check_mixed_identity(g: &GroupWord) -> bool {
    mixed_commutator(&g.evaluate(), GeneratorTable::standard()).is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generator_map;
    use crate::witness::pair::Preset;
    use crate::word::Alphabet;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn epsilon_for_identity_is_plus() {
        assert_eq!(choose_epsilon(&Element::identity(), &Dyadic::half()), Sign::Plus);
    }

    #[test]
    fn epsilon_for_x0_and_inverse() {
        // The calibrated x0 sends 1/2 to 3/4, so x0 needs ε = -1.
        let x0 = generator_map(0);
        assert_eq!(choose_epsilon(&x0, &Dyadic::half()), Sign::Minus);
        assert_eq!(choose_epsilon(&x0.inverse(), &Dyadic::half()), Sign::Plus);
    }

    #[test]
    fn lemma_for_identity() {
        let pair = Preset::Std2.pair().unwrap();
        let lw = lemma1_witness(&GroupWord::empty(pair.alphabet().clone()), &pair).unwrap();
        assert_eq!(lw.epsilon, Sign::Plus);
        assert!(lw.z.is_identity());
        assert_eq!(&lw.w, pair.u_map());
    }

    #[test]
    fn lemma_for_x0_gives_x2() {
        let pair = Preset::Std2.pair().unwrap();
        let xi = GroupWord::parse(pair.alphabet(), "a").unwrap();
        let lw = lemma1_witness(&xi, &pair).unwrap();
        assert_eq!(lw.epsilon, Sign::Minus);
        assert_eq!(lw.z_word.to_string(), "A");
        // w = x0⁻¹ x1 x0 = x2
        assert_eq!(lw.w, generator_map(2));
        assert!(lw.w.commutes_with(pair.v_map()));
    }

    #[test]
    fn wrong_epsilon_breaks_commutation() {
        // x0 x1 x0⁻¹ cannot commute with v = (x0 x1 x0⁻¹) x0⁻¹.
        let a = Alphabet::std2();
        let w = GroupWord::parse(&a, "abA").unwrap().evaluate();
        let v = GroupWord::parse(&a, "abAA").unwrap().evaluate();
        assert!(!w.commutes_with(&v));
    }

    #[test]
    fn lemma_random_words_all_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for preset in Preset::ALL {
            let pair = preset.pair().unwrap();
            for _ in 0..40 {
                let xi = GroupWord::random(pair.alphabet(), 12, &mut rng);
                let lw = lemma1_witness(&xi, &pair).unwrap();
                assert_eq!(lw.z_word.len(), xi.len());
            }
        }
    }

    #[test]
    fn mixed_identity_small_cases() {
        let a = Alphabet::std2();
        assert!(check_mixed_identity(&GroupWord::empty(a.clone())));
        assert!(check_mixed_identity(&GroupWord::parse(&a, "a").unwrap()));
        assert!(check_mixed_identity(&GroupWord::parse(&a, "abABab").unwrap()));
    }
}
