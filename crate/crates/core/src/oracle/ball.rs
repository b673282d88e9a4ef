//! Radius-bounded fragments of the right Cayley graph, with hash-consed
//! elements.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::generators::Element;
use crate::word::{Alphabet, Letter};

pub const DEFAULT_RADIUS_CAP: u32 = 14;

/// Dense ids for canonical maps. Structural equality of canonical maps is
/// group equality, so the map itself is the key.
#[derive(Clone, Debug, Default)]
pub struct ElementInterner {
    ids: HashMap<Arc<Element>, usize>,
    elements: Vec<Arc<Element>>,
}

impl ElementInterner {
    pub fn new() -> Self {
        Self::default()
    }

    /// The id of `g`, and whether it was newly added.
    pub fn intern(&mut self, g: Element) -> (usize, bool) {
        if let Some(&id) = self.ids.get(&g) {
            return (id, false);
        }
        let id = self.elements.len();
        let g = Arc::new(g);
        self.elements.push(g.clone());
        self.ids.insert(g, id);
        (id, true)
    }

    pub fn get(&self, g: &Element) -> Option<usize> {
        self.ids.get(g).copied()
    }

    pub fn element(&self, id: usize) -> &Element {
        &self.elements[id]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CayleyBall {
    alphabet: Arc<Alphabet>,
    radius: u32,
    letters: Vec<Letter>,
    interner: ElementInterner,
    distance: Vec<u32>,
    // adjacency[id][k]: id of g * letters[k], when inside the ball
    adjacency: Vec<Vec<Option<usize>>>,
}

impl CayleyBall {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.interner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interner.is_empty()
    }

    pub fn element(&self, id: usize) -> &Element {
        self.interner.element(id)
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.interner.get(g)
    }

    /// Word length of element `id` (exact, since the ball is complete).
    pub fn distance(&self, id: usize) -> u32 {
        self.distance[id]
    }

    pub fn neighbours(&self, id: usize) -> &[Option<usize>] {
        &self.adjacency[id]
    }

    /// Number of elements at each distance `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius as usize + 1];
        for &d in &self.distance {
            sizes[d as usize] += 1;
        }
        sizes
    }
}

pub fn cayley_ball(alphabet: &Arc<Alphabet>, radius: u32) -> Result<CayleyBall> {
    cayley_ball_capped(alphabet, radius, DEFAULT_RADIUS_CAP)
}

pub fn cayley_ball_capped(alphabet: &Arc<Alphabet>, radius: u32, cap: u32) -> Result<CayleyBall> {
    if radius > cap {
        return Err(Error::CapExceeded {
            what: "ball radius",
            value: radius as usize,
            cap: cap as usize,
        });
    }
    let letters = alphabet.signed_letters();
    let mut interner = ElementInterner::new();
    let mut distance = vec![0];
    interner.intern(Element::identity());
    let mut frontier = vec![0usize];
    for d in 1..=radius {
        let mut next = Vec::new();
        for &id in &frontier {
            for &l in &letters {
                let g = interner.element(id).then(alphabet.letter_map(l));
                let (new_id, fresh) = interner.intern(g);
                if fresh {
                    distance.push(d);
                    next.push(new_id);
                }
            }
        }
        frontier = next;
    }
    let adjacency = (0..interner.len())
        .map(|id| {
            letters
                .iter()
                .map(|&l| interner.get(&interner.element(id).then(alphabet.letter_map(l))))
                .collect()
        })
        .collect();
    Ok(CayleyBall {
        alphabet: alphabet.clone(),
        radius,
        letters,
        interner,
        distance,
        adjacency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_radii() {
        let a = Alphabet::std2();
        assert_eq!(cayley_ball(&a, 0).unwrap().len(), 1);
        let b1 = cayley_ball(&a, 1).unwrap();
        assert_eq!(b1.len(), 5);
        assert_eq!(b1.distance(0), 0);
        assert!(b1.element(0).is_identity());
    }

    #[test]
    fn cap_enforced() {
        let a = Alphabet::std2();
        assert!(matches!(cayley_ball(&a, 15), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn spheres_grow_at_most_threefold() {
        let a = Alphabet::std2();
        let ball = cayley_ball(&a, 6).unwrap();
        let s = ball.sphere_sizes();
        assert_eq!(&s[..3], &[1, 4, 12]);
        for r in 1..s.len() - 1 {
            assert!(s[r + 1] <= 3 * s[r]);
        }
    }

    #[test]
    fn neighbour_distances_are_lipschitz() {
        let a = Alphabet::std2();
        let ball = cayley_ball(&a, 5).unwrap();
        for id in 0..ball.len() {
            for nb in ball.neighbours(id).iter().flatten() {
                assert!(ball.distance(id).abs_diff(ball.distance(*nb)) <= 1);
            }
        }
    }

    #[test]
    fn interner_dedups() {
        let mut i = ElementInterner::new();
        assert_eq!(i.intern(Element::identity()), (0, true));
        assert_eq!(i.intern(Element::identity()), (0, false));
        assert_eq!(i.len(), 1);
    }
}
