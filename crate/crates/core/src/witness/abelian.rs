//! The degenerate case: `z` lies in the free abelian group `⟨u, v⟩`, the two
//! layers collide, and a plain grid `{u^p v^q}` with a boustrophedon path is
//! used instead.

use crate::error::{Error, Result};
use crate::generators::Element;
use crate::word::GroupWord;

use super::grid::{build_grid_set, powers};
use super::lemma::{lemma1_witness, LemmaWitness};
use super::pair::SupportPair;
use super::path::{EdgeKind, GridPoint, Move, TourPath};
use super::report::{Branch, LengthParams, WitnessReport};

/// `z = v^b u^a`, recovered from a layer collision and re-checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZExponents {
    pub a: i64,
    pub b: i64,
}

/// Log-slopes at `0` and at `1`: the abelianization `F → Z²`.
pub fn slope_character(m: &Element) -> (i64, i64) {
    let s = m.slopes();
    (s[0], s[s.len() - 1])
}

/// An even grid size at which a collision must show up if `z ∈ ⟨u, v⟩`.
///
/// Any `z = v^b u^a` has `χ(z) = a χ(u) + b χ(v)`, so when `χ(u)` and
/// `χ(v)` are independent the exponents are forced. Otherwise fall back to
/// `2|ξ|`, which suffices for the built-in alphabets.
pub fn probe_n(z: &Element, pair: &SupportPair, xi_len: usize) -> usize {
    let (z0, z1) = slope_character(z);
    let (u0, u1) = slope_character(pair.u_map());
    let (v0, v1) = slope_character(pair.v_map());
    let det = u0 * v1 - u1 * v0;
    let reach = if det != 0 {
        let a = z0 * v1 - z1 * v0;
        let b = u0 * z1 - u1 * z0;
        if a % det == 0 && b % det == 0 {
            (a / det).unsigned_abs().max((b / det).unsigned_abs()) as usize
        } else {
            0
        }
    } else {
        2 * xi_len
    };
    let n = reach.max(2);
    n + n % 2
}

/// Builds the grid at [`probe_n`]. On a collision `v^p w^q z = v^p' w^q'`,
/// checks `w = u` and `z = v^(p'-p) u^(q'-q)`; either failing is an error.
pub fn detect_degeneracy(lw: &LemmaWitness, pair: &SupportPair) -> Result<Option<ZExponents>> {
    let n = probe_n(&lw.z, pair, lw.xi.len());
    let grid = build_grid_set(lw, pair, n)?;
    let Some(hit) = grid.collision() else {
        return Ok(None);
    };
    if &lw.w != pair.u_map() {
        return Err(Error::DegenerateInconsistent(format!(
            "layers collide for xi = {} but z u z^-1 != u",
            lw.xi
        )));
    }
    let b = hit.base.0 as i64 - hit.shifted.0 as i64;
    let a = hit.base.1 as i64 - hit.shifted.1 as i64;
    let expected = pair.v_map().pow(b).then(&pair.u_map().pow(a));
    if expected != lw.z {
        return Err(Error::DegenerateInconsistent(format!(
            "collision suggests z = v^{b} u^{a}, which does not match z for xi = {}",
            lw.xi
        )));
    }
    Ok(Some(ZExponents { a, b }))
}

/// Which element runs along the rows of the boustrophedon. The rows carry
/// `n² + 1` edges and the columns `2n`, so the shorter word goes on the rows.
fn rows_along_u(pair: &SupportPair) -> bool {
    pair.u().len() <= pair.v().len()
}

pub fn abelian_length(n: usize, row_len: usize, col_len: usize) -> usize {
    (n * n + 1) * row_len + 2 * n * col_len
}

/// `r^n c r^(1-n) c r^(n-1) … c r^(n-1) c r^-n c^-n` for odd `n`, with `r`
/// the row element and `c` the column element.
pub fn build_abelian_path(n: usize, pair: &SupportPair) -> Result<TourPath> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidOddN(n));
    }
    let along_u = rows_along_u(pair);
    let (row, col) = if along_u { (pair.u(), pair.v()) } else { (pair.v(), pair.u()) };
    let (row_kind, col_kind) = if along_u { (EdgeKind::U, EdgeKind::V) } else { (EdgeKind::V, EdgeKind::U) };
    let blocks = [(row.clone(), row.inverse()), (col.clone(), col.inverse())];

    let mut word = GroupWord::empty(row.alphabet().clone());
    let mut moves = Vec::new();
    let mut pos = GridPoint::bottom(0, 0);
    let mut step = |is_row: bool, forward: bool, count: usize| {
        for _ in 0..count {
            let from = pos;
            let (block, kind) = if is_row { (&blocks[0], row_kind) } else { (&blocks[1], col_kind) };
            let coord = if is_row { &mut pos.i } else { &mut pos.j };
            *coord = if forward { *coord + 1 } else { *coord - 1 };
            word.extend_from(if forward { &block.0 } else { &block.1 });
            moves.push(Move {
                from,
                to: pos,
                kind,
                forward,
            });
        }
    };
    step(true, true, n);
    for j in 1..=n {
        step(false, true, 1);
        if j < n {
            step(true, j % 2 == 0, n - 1);
        } else {
            step(true, false, n);
        }
    }
    step(false, false, n);
    Ok(TourPath::new(word, moves))
}

/// Grid cells `(p, q)` standing for `u^p v^q` that survive removing
/// elements without a `ξ`-neighbour, repeated until nothing changes.
pub fn prune_grid(n: usize, exps: ZExponents) -> Vec<(usize, usize)> {
    let side = n + 1;
    let mut alive = vec![true; side * side];
    let at = |alive: &[bool], p: i64, q: i64| {
        (0..side as i64).contains(&p) && (0..side as i64).contains(&q) && alive[p as usize * side + q as usize]
    };
    loop {
        let mut changed = false;
        for p in 0..side {
            for q in 0..side {
                if !alive[p * side + q] {
                    continue;
                }
                let (p, q) = (p as i64, q as i64);
                let up = at(&alive, p + exps.a, q + exps.b);
                let down = at(&alive, p - exps.a, q - exps.b);
                if !up && !down {
                    alive[p as usize * side + q as usize] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..side)
        .flat_map(|p| (0..side).map(move |q| (p, q)))
        .filter(|&(p, q)| alive[p * side + q])
        .collect()
}

pub(crate) fn abelian_report(
    lw: &LemmaWitness,
    pair: &SupportPair,
    exps: ZExponents,
    n: usize,
) -> Result<WitnessReport> {
    let path = build_abelian_path(n, pair)?;
    let cells = prune_grid(n, exps);
    let u_pow = powers(pair.u_map(), n);
    let v_pow = powers(pair.v_map(), n);
    let set = cells.iter().map(|&(p, q)| u_pow[p].then(&v_pow[q])).collect();
    Ok(WitnessReport {
        xi: lw.xi.clone(),
        epsilon: lw.epsilon,
        branch: Branch::Abelian,
        n,
        set,
        path,
        lengths: LengthParams {
            u_len: pair.u().len(),
            v_len: pair.v().len(),
            z_len: lw.z_word.len(),
            rows_along_u: rows_along_u(pair),
        },
        ratio_constant: pair.ratio_constant(),
        lambda: None,
        alphabet: pair.alphabet().name().to_string(),
        verdicts: Default::default(),
        oracle: None,
    })
}

/// The fallback construction at a fixed odd `n`. Fails with
/// [`Error::NotDegenerate`] if the layers of the generic grid never collide.
pub fn build_abelian_witness(xi: &GroupWord, pair: &SupportPair, n: usize) -> Result<WitnessReport> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidOddN(n));
    }
    let lw = lemma1_witness(xi, pair)?;
    let exps = detect_degeneracy(&lw, pair)?.ok_or(Error::NotDegenerate)?;
    let mut report = abelian_report(&lw, pair, exps, n)?;
    report.verdicts = super::report::verify_witness(&report, &xi.evaluate());
    Ok(report)
}
