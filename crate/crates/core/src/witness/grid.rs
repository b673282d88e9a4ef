//! The two-layer witness set `{v^p w^q} ∪ {v^p w^q z}`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::generators::Element;

use super::lemma::LemmaWitness;
use super::pair::SupportPair;

/// `v^p w^q z = v^p' w^q'`: the layers overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Collision {
    pub shifted: (usize, usize),
    pub base: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct GridSet {
    n: usize,
    // base[p * N + q] = v^p w^q
    base: Vec<Element>,
    shifted: Vec<Element>,
    elements: Vec<Element>,
    collision: Option<Collision>,
}

impl GridSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `N = n + 1`, the side length of each layer.
    pub fn side(&self) -> usize {
        self.n + 1
    }

    /// `v^p w^q`.
    pub fn base_element(&self, p: usize, q: usize) -> &Element {
        &self.base[p * self.side() + q]
    }

    /// `v^p w^q z`.
    pub fn shifted_element(&self, p: usize, q: usize) -> &Element {
        &self.shifted[p * self.side() + q]
    }

    pub fn base_layer(&self) -> &[Element] {
        &self.base
    }

    pub fn shifted_layer(&self) -> &[Element] {
        &self.shifted
    }

    /// The deduplicated union, base layer first.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn card(&self) -> usize {
        self.elements.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.collision.is_some()
    }

    pub fn collision(&self) -> Option<Collision> {
        self.collision
    }
}

/// Powers `m^0, …, m^n`.
pub(crate) fn powers(m: &Element, n: usize) -> Vec<Element> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Element::identity());
    for k in 1..=n {
        let next = out[k - 1].then(m);
        out.push(next);
    }
    out
}

pub fn build_grid_set(lw: &LemmaWitness, pair: &SupportPair, n: usize) -> Result<GridSet> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidEvenN { n, min: 2 });
    }
    let side = n + 1;
    let v_pow = powers(pair.v_map(), n);
    let w_pow = powers(&lw.w, n);

    let mut index: HashMap<Element, (usize, usize)> = HashMap::with_capacity(2 * side * side);
    let mut base = Vec::with_capacity(side * side);
    for (p, vp) in v_pow.iter().enumerate() {
        for (q, wq) in w_pow.iter().enumerate() {
            let g = vp.then(wq);
            if let Some(prev) = index.insert(g.clone(), (p, q)) {
                return Err(Error::CommutationFailed(format!(
                    "v^p w^q repeats at {prev:?} and {:?}; v and w do not have disjoint supports",
                    (p, q)
                )));
            }
            base.push(g);
        }
    }

    let mut shifted = Vec::with_capacity(side * side);
    let mut elements = base.clone();
    let mut collision = None;
    for p in 0..side {
        for q in 0..side {
            let g = base[p * side + q].then(&lw.z);
            match index.get(&g) {
                Some(&hit) => {
                    collision.get_or_insert(Collision {
                        shifted: (p, q),
                        base: hit,
                    });
                }
                None => elements.push(g.clone()),
            }
            shifted.push(g);
        }
    }
    Ok(GridSet {
        n,
        base,
        shifted,
        elements,
        collision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::lemma::lemma1_witness;
    use crate::witness::pair::Preset;
    use crate::word::GroupWord;

    fn grid(xi: &str, n: usize) -> GridSet {
        let pair = Preset::Std2.pair().unwrap();
        let xi = GroupWord::parse(pair.alphabet(), xi).unwrap();
        let lw = lemma1_witness(&xi, &pair).unwrap();
        build_grid_set(&lw, &pair, n).unwrap()
    }

    #[test]
    fn x0_grid_is_full() {
        let g = grid("a", 2);
        assert_eq!(g.card(), 18);
        assert!(!g.is_degenerate());
        assert_eq!(g.base_layer().len(), 9);
    }

    #[test]
    fn x1_grid_is_degenerate() {
        for n in [2, 4] {
            let g = grid("b", n);
            assert!(g.is_degenerate());
            assert!(g.card() < 2 * (n + 1) * (n + 1));
        }
    }

    #[test]
    fn identity_grid_collapses_onto_base() {
        let g = grid("", 2);
        assert!(g.is_degenerate());
        assert_eq!(g.card(), 9);
    }

    #[test]
    fn odd_or_small_n_rejected() {
        let pair = Preset::Std2.pair().unwrap();
        let xi = GroupWord::parse(pair.alphabet(), "a").unwrap();
        let lw = lemma1_witness(&xi, &pair).unwrap();
        for n in [0, 1, 3] {
            assert!(matches!(build_grid_set(&lw, &pair, n), Err(Error::InvalidEvenN { .. })));
        }
    }

    #[test]
    fn degenerate_flag_matches_cardinality() {
        for xi in ["a", "ab", "aaB", "b", "B", "", "abAA", "bb"] {
            let g = grid(xi, 2);
            assert_eq!(g.is_degenerate(), g.card() < 18, "xi = {xi}");
        }
    }
}
