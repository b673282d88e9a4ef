//! The closed serpentine path through the two-layer grid graph, and its DOT
//! export.
//!
//! Bottom vertex `(i, j)` stands for `v^i w^j`, top vertex `(i, j)` for
//! `v^i w^j z`. Bottom rows move along `v`, top columns along `u` (since
//! `w z = z u`), and the vertical arrows are `z`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::Element;
use crate::word::GroupWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GridPoint {
    pub i: usize,
    pub j: usize,
    pub top: bool,
}

impl GridPoint {
    pub fn bottom(i: usize, j: usize) -> Self {
        GridPoint { i, j, top: false }
    }

    pub fn top(i: usize, j: usize) -> Self {
        GridPoint { i, j, top: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    V,
    U,
    Z,
}

/// One conceptual edge of the path; `forward` is the arrow's direction
/// (for `Z`, bottom to top).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub from: GridPoint,
    pub to: GridPoint,
    pub kind: EdgeKind,
    pub forward: bool,
}

#[derive(Clone, Debug)]
pub struct TourPath {
    word: GroupWord,
    moves: Vec<Move>,
}

impl TourPath {
    pub fn new(word: GroupWord, moves: Vec<Move>) -> Self {
        TourPath { word, moves }
    }

    pub fn word(&self) -> &GroupWord {
        &self.word
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Length in letters.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn count(&self, kind: EdgeKind) -> usize {
        self.moves.iter().filter(|m| m.kind == kind).count()
    }

    /// Bottom-plane positions `(i, j)` where the path goes up a `z` arrow.
    pub fn z_ascents(&self) -> Vec<(usize, usize)> {
        self.moves
            .iter()
            .filter(|m| m.kind == EdgeKind::Z && m.forward)
            .map(|m| (m.from.i, m.from.j))
            .collect()
    }

    /// Every vertex the walk passes through, one per letter prefix, starting
    /// at the identity.
    pub fn vertex_trace(&self) -> Vec<Element> {
        let alphabet = self.word.alphabet();
        let mut out = Vec::with_capacity(self.word.len() + 1);
        out.push(Element::identity());
        for &l in self.word.letters() {
            let next = out[out.len() - 1].then(alphabet.letter_map(l));
            out.push(next);
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.word.evaluate().is_identity()
    }
}

pub(crate) struct Walker<'a> {
    pos: GridPoint,
    word: GroupWord,
    moves: Vec<Move>,
    // forward and backward letter blocks for U, V, Z
    blocks: [(&'a GroupWord, GroupWord); 3],
}

impl<'a> Walker<'a> {
    pub(crate) fn new(u: &'a GroupWord, v: &'a GroupWord, z: &'a GroupWord) -> Self {
        Walker {
            pos: GridPoint::bottom(0, 0),
            word: GroupWord::empty(u.alphabet().clone()),
            moves: Vec::new(),
            blocks: [(u, u.inverse()), (v, v.inverse()), (z, z.inverse())],
        }
    }

    pub(crate) fn pos(&self) -> GridPoint {
        self.pos
    }

    pub(crate) fn step(&mut self, kind: EdgeKind, forward: bool) {
        let from = self.pos;
        let mut to = from;
        let shift = |x: usize| if forward { x + 1 } else { x - 1 };
        let block = match kind {
            EdgeKind::U => {
                to.j = shift(from.j);
                &self.blocks[0]
            }
            EdgeKind::V => {
                to.i = shift(from.i);
                &self.blocks[1]
            }
            EdgeKind::Z => {
                debug_assert_eq!(from.top, !forward);
                to.top = forward;
                &self.blocks[2]
            }
        };
        if forward {
            self.word.extend_from(block.0);
        } else {
            self.word.extend_from(&block.1);
        }
        self.moves.push(Move {
            from,
            to,
            kind,
            forward,
        });
        self.pos = to;
    }

    pub(crate) fn run(&mut self, kind: EdgeKind, forward: bool, count: usize) {
        for _ in 0..count {
            self.step(kind, forward);
        }
    }

    pub(crate) fn finish(self) -> TourPath {
        TourPath::new(self.word, self.moves)
    }
}

fn check_even(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidEvenN { n, min: 2 });
    }
    Ok(())
}

/// The closed path `r`: a boustrophedon over the bottom rows joined by single
/// top-plane `u` edges, then one over the top columns joined by single
/// bottom-plane `v` edges, back to the start.
pub fn build_serpentine_path(
    n: usize,
    u_word: &GroupWord,
    v_word: &GroupWord,
    z_word: &GroupWord,
) -> Result<TourPath> {
    check_even(n)?;
    let mut walk = Walker::new(u_word, v_word, z_word);
    for j in 0..=n {
        walk.run(EdgeKind::V, j % 2 == 0, n);
        if j < n {
            walk.step(EdgeKind::Z, true);
            walk.step(EdgeKind::U, true);
            walk.step(EdgeKind::Z, false);
        }
    }
    debug_assert_eq!(walk.pos(), GridPoint::bottom(n, n));
    for i in (0..=n).rev() {
        walk.step(EdgeKind::Z, true);
        let up = walk.pos().j == 0;
        walk.run(EdgeKind::U, up, n);
        walk.step(EdgeKind::Z, false);
        if i > 0 {
            walk.step(EdgeKind::V, false);
        }
    }
    debug_assert_eq!(walk.pos(), GridPoint::bottom(0, 0));
    Ok(walk.finish())
}

/// `L (N² - 1) + (4N - 2) |z|` with `L = |u| + |v|`.
pub fn serpentine_length(n: usize, pair_len: usize, z_len: usize) -> usize {
    let big_n = n + 1;
    pair_len * (big_n * big_n - 1) + (4 * big_n - 2) * z_len
}

/// `Γ_n` as a DOT digraph: `2N²` vertices, `2Nn` plane edges and `N²`
/// vertical `z` arrows.
pub fn gamma_dot(n: usize) -> Result<String> {
    check_even(n)?;
    let mut out = String::new();
    writeln!(out, "digraph gamma_{n} {{").unwrap();
    for plane in ['b', 't'] {
        for i in 0..=n {
            for j in 0..=n {
                writeln!(out, "  {plane}_{i}_{j};").unwrap();
            }
        }
    }
    for j in 0..=n {
        for i in 0..n {
            writeln!(out, "  b_{i}_{j} -> b_{}_{j} [label=\"v\"];", i + 1).unwrap();
        }
    }
    for i in 0..=n {
        for j in 0..n {
            writeln!(out, "  t_{i}_{j} -> t_{i}_{} [label=\"u\"];", j + 1).unwrap();
        }
    }
    for i in 0..=n {
        for j in 0..=n {
            writeln!(out, "  b_{i}_{j} -> t_{i}_{j} [label=\"z\"];").unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn words(z: &str) -> (GroupWord, GroupWord, GroupWord) {
        let a = Alphabet::std2();
        (
            GroupWord::parse(&a, "b").unwrap(),
            GroupWord::parse(&a, "abAA").unwrap(),
            GroupWord::parse(&a, z).unwrap(),
        )
    }

    #[test]
    fn n2_length_is_fifty() {
        let (u, v, z) = words("A");
        let path = build_serpentine_path(2, &u, &v, &z).unwrap();
        assert_eq!(path.len(), 50);
        assert_eq!(serpentine_length(2, 5, 1), 50);
    }

    #[test]
    fn edge_counts() {
        let (u, v, z) = words("A");
        for n in [2, 4, 6, 10] {
            let p = build_serpentine_path(n, &u, &v, &z).unwrap();
            assert_eq!(p.count(EdgeKind::Z), 2 * (2 * n + 1));
            assert_eq!(p.count(EdgeKind::V), (n + 1) * n + n);
            assert_eq!(p.count(EdgeKind::U), (n + 1) * n + n);
        }
    }

    #[test]
    fn ascent_positions_n4() {
        let (u, v, z) = words("A");
        let p = build_serpentine_path(4, &u, &v, &z).unwrap();
        assert_eq!(
            p.z_ascents(),
            vec![(4, 0), (0, 1), (4, 2), (0, 3), (4, 4), (3, 0), (2, 4), (1, 0), (0, 4)]
        );
    }

    #[test]
    fn closed_for_x0() {
        let (u, v, z) = words("A");
        for n in [2, 4, 6] {
            assert!(build_serpentine_path(n, &u, &v, &z).unwrap().is_closed());
        }
    }

    #[test]
    fn moves_are_contiguous() {
        let (u, v, z) = words("A");
        let p = build_serpentine_path(6, &u, &v, &z).unwrap();
        for pair in p.moves().windows(2) {
            assert_eq!(pair[0].to, pair[1].from);
        }
        assert_eq!(p.moves()[0].from, p.moves().last().unwrap().to);
    }

    #[test]
    fn odd_n_rejected() {
        let (u, v, z) = words("A");
        assert!(build_serpentine_path(3, &u, &v, &z).is_err());
        assert!(gamma_dot(5).is_err());
    }

    #[test]
    fn gamma_counts() {
        let dot = gamma_dot(4).unwrap();
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        let vertices = dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count();
        assert_eq!((vertices, edges), (50, 65));
        assert_eq!(gamma_dot(2).unwrap().lines().filter(|l| l.starts_with("  b_") && !l.contains("->")).count() * 2, 18);
    }
}
