//! Exact word metric by bidirectional breadth-first search.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::generators::Element;
use crate::word::Alphabet;

use super::ball::CayleyBall;

/// `|g|`, searched from both ends one full layer at a time; errors once the
/// answer is known to exceed `max_radius`.
pub fn word_length(g: &Element, alphabet: &Alphabet, max_radius: u32) -> Result<u32> {
    if g.is_identity() {
        return Ok(0);
    }
    let steps: Vec<&Element> = alphabet
        .signed_letters()
        .into_iter()
        .map(|l| alphabet.letter_map(l))
        .collect();
    let mut near: HashMap<Element, u32> = HashMap::from([(Element::identity(), 0)]);
    let mut far: HashMap<Element, u32> = HashMap::from([(g.clone(), 0)]);
    let mut near_front = vec![Element::identity()];
    let mut far_front = vec![g.clone()];
    let (mut near_depth, mut far_depth) = (0u32, 0u32);
    loop {
        if near_depth + far_depth >= max_radius {
            return Err(Error::NotFoundWithinRadius(max_radius));
        }
        let grow_near = near_front.len() <= far_front.len();
        let (front, seen, other, depth) = if grow_near {
            (&mut near_front, &mut near, &far, &mut near_depth)
        } else {
            (&mut far_front, &mut far, &near, &mut far_depth)
        };
        *depth += 1;
        let mut best: Option<u32> = None;
        let mut next = Vec::new();
        for x in front.iter() {
            for s in &steps {
                let y = x.then(s);
                if seen.contains_key(&y) {
                    continue;
                }
                if let Some(&d) = other.get(&y) {
                    let total = *depth + d;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                seen.insert(y.clone(), *depth);
                next.push(y);
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
        *front = next;
    }
}

/// `d(a, b) = |a⁻¹ b|`.
pub fn graph_distance(a: &Element, b: &Element, alphabet: &Alphabet, max_radius: u32) -> Result<u32> {
    word_length(&a.inverse().then(b), alphabet, max_radius)
}

/// Word lengths up to twice the radius of a precomputed ball, through the
/// midpoint of a geodesic: `|g| = min |h| + |h⁻¹ g|` over `h` in the ball.
#[derive(Clone, Debug)]
pub struct BallMetric {
    ball: Arc<CayleyBall>,
}

impl BallMetric {
    pub fn new(ball: Arc<CayleyBall>) -> Self {
        BallMetric { ball }
    }

    pub fn ball(&self) -> &CayleyBall {
        &self.ball
    }

    /// `None` when `|g| > 2r`.
    pub fn word_length(&self, g: &Element) -> Option<u32> {
        if let Some(id) = self.ball.index_of(g) {
            return Some(self.ball.distance(id));
        }
        (0..self.ball.len())
            .filter_map(|id| {
                let rest = self.ball.element(id).inverse().then(g);
                self.ball.index_of(&rest).map(|r| self.ball.distance(id) + self.ball.distance(r))
            })
            .min()
    }

    pub fn distance(&self, a: &Element, b: &Element) -> Option<u32> {
        self.word_length(&a.inverse().then(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::ball::cayley_ball;
    use crate::word::GroupWord;

    #[test]
    fn basic_distances() {
        let a = Alphabet::std2();
        let x1 = GroupWord::parse(&a, "b").unwrap().evaluate();
        assert_eq!(graph_distance(&x1, &x1, &a, 4).unwrap(), 0);
        assert_eq!(graph_distance(&Element::identity(), &x1, &a, 4).unwrap(), 1);
        let v = GroupWord::parse(&a, "abAA").unwrap().evaluate();
        assert!(word_length(&v, &a, 8).unwrap() <= 4);
    }

    #[test]
    fn word_length_at_most_expression_length() {
        let a = Alphabet::std2();
        let g = GroupWord::parse(&a, "abAbaB").unwrap().evaluate();
        let d = word_length(&g, &a, 10).unwrap();
        assert!(d <= 6);
    }

    #[test]
    fn radius_limit_reported() {
        let a = Alphabet::std2();
        let g = GroupWord::parse(&a, "aaaaaa").unwrap().evaluate();
        assert!(matches!(word_length(&g, &a, 3), Err(Error::NotFoundWithinRadius(3))));
        assert_eq!(word_length(&g, &a, 6).unwrap(), 6);
    }

    #[test]
    fn ball_metric_matches_bfs() {
        let a = Alphabet::std2();
        let metric = BallMetric::new(Arc::new(cayley_ball(&a, 4).unwrap()));
        for w in ["abAbaB", "aabbAB", "abAA", "bbbaaB", "aBBAbb"] {
            let g = GroupWord::parse(&a, w).unwrap().evaluate();
            assert_eq!(metric.word_length(&g), Some(word_length(&g, &a, 8).unwrap()), "{w}");
        }
    }
}
