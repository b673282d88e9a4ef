//! Shortest closed walks visiting a finite set, over the metric closure.

use std::collections::{HashMap, HashSet, VecDeque};

use itertools::Itertools;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::Element;
use crate::word::Alphabet;

use super::distance::graph_distance;

pub const EXACT_TOUR_CAP: usize = 18;
pub const BRUTE_FORCE_CAP: usize = 8;

/// Distinct points with their exact pairwise distances.
#[derive(Clone, Debug)]
pub struct TourInstance {
    points: Vec<Element>,
    metric: Vec<Vec<u32>>,
}

impl TourInstance {
    /// Checks the matrix shape and the metric axioms exhaustively.
    pub fn new(points: Vec<Element>, metric: Vec<Vec<u32>>) -> Result<Self> {
        let k = points.len();
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if metric.len() != k || metric.iter().any(|row| row.len() != k) {
            return bad(format!("metric must be {k}×{k}"));
        }
        let distinct: HashSet<&Element> = points.iter().collect();
        if distinct.len() != k {
            return bad("points are not distinct".into());
        }
        for i in 0..k {
            if metric[i][i] != 0 {
                return bad(format!("d({i},{i}) = {} is not zero", metric[i][i]));
            }
            for j in 0..k {
                if metric[i][j] != metric[j][i] {
                    return bad(format!("d({i},{j}) != d({j},{i})"));
                }
                if i != j && metric[i][j] == 0 {
                    return bad(format!("distinct points {i} and {j} at distance 0"));
                }
                for m in 0..k {
                    if metric[i][m] > metric[i][j] + metric[j][m] {
                        return bad(format!("triangle inequality fails for {i},{j},{m}"));
                    }
                }
            }
        }
        Ok(TourInstance { points, metric })
    }

    /// Computes every pairwise distance by bidirectional search.
    pub fn from_points(points: Vec<Element>, alphabet: &Alphabet, max_radius: u32) -> Result<Self> {
        let k = points.len();
        let pairs: Vec<(usize, usize)> = (0..k).tuple_combinations().collect();
        let dists = pairs
            .par_iter()
            .map(|&(i, j)| graph_distance(&points[i], &points[j], alphabet, max_radius))
            .collect::<Result<Vec<_>>>()?;
        let mut metric = vec![vec![0; k]; k];
        for (&(i, j), d) in pairs.iter().zip(dists) {
            metric[i][j] = d;
            metric[j][i] = d;
        }
        Self::new(points, metric)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Element] {
        &self.points
    }

    pub fn metric(&self) -> &[Vec<u32>] {
        &self.metric
    }

    pub fn restrict(&self, indices: &[usize]) -> TourInstance {
        TourInstance {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            metric: indices
                .iter()
                .map(|&i| indices.iter().map(|&j| self.metric[i][j]).collect())
                .collect(),
        }
    }

    /// Length of the closed walk through `order`.
    pub fn cycle_length(&self, order: &[usize]) -> u64 {
        if order.len() < 2 {
            return 0;
        }
        order
            .iter()
            .zip(order.iter().cycle().skip(1))
            .map(|(&a, &b)| self.metric[a][b] as u64)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tour {
    pub order: Vec<usize>,
    pub length: u64,
}

impl Tour {
    /// `τ = length / Card`.
    pub fn tau(&self) -> BigRational {
        if self.order.is_empty() {
            return BigRational::from_integer(0.into());
        }
        BigRational::new(self.length.into(), self.order.len().into())
    }
}

fn check_size(k: usize, cap: usize) -> Result<()> {
    if k > cap {
        return Err(Error::CapExceeded {
            what: "tour size",
            value: k,
            cap,
        });
    }
    Ok(())
}

pub fn exact_tour(inst: &TourInstance) -> Result<Tour> {
    exact_tour_capped(inst, EXACT_TOUR_CAP)
}

/// Held–Karp over subsets of the points other than point 0.
pub fn exact_tour_capped(inst: &TourInstance, cap: usize) -> Result<Tour> {
    let k = inst.len();
    check_size(k, cap)?;
    if k <= 1 {
        return Ok(Tour {
            order: (0..k).collect(),
            length: 0,
        });
    }
    let d = &inst.metric;
    let m = k - 1;
    let full = (1usize << m) - 1;
    const INF: u32 = u32::MAX;
    // dp[mask * m + last]: shortest path 0 → … → last+1 through exactly mask
    let mut dp = vec![INF; (full + 1) * m];
    let mut parent = vec![u8::MAX; (full + 1) * m];
    for last in 0..m {
        dp[(1 << last) * m + last] = d[0][last + 1];
    }
    for mask in 1..=full {
        for last in 0..m {
            let cur = dp[mask * m + last];
            if cur == INF || mask & (1 << last) == 0 {
                continue;
            }
            let mut rest = full & !mask;
            while rest != 0 {
                let next = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let slot = (mask | (1 << next)) * m + next;
                let cand = cur + d[last + 1][next + 1];
                if cand < dp[slot] {
                    dp[slot] = cand;
                    parent[slot] = last as u8;
                }
            }
        }
    }
    let (best_last, best) = (0..m)
        .map(|last| (last, dp[full * m + last] + d[last + 1][0]))
        .min_by_key(|&(_, len)| len)
        .expect("at least two points");
    let mut order = Vec::with_capacity(k);
    let (mut mask, mut last) = (full, best_last);
    loop {
        order.push(last + 1);
        let p = parent[mask * m + last];
        mask &= !(1 << last);
        if p == u8::MAX {
            break;
        }
        last = p as usize;
    }
    order.push(0);
    order.reverse();
    debug_assert_eq!(inst.cycle_length(&order), best as u64);
    Ok(Tour {
        order,
        length: best as u64,
    })
}

/// Every cyclic order with point 0 first.
pub fn brute_force_tour(inst: &TourInstance) -> Result<Tour> {
    let k = inst.len();
    check_size(k, BRUTE_FORCE_CAP)?;
    if k <= 1 {
        return Ok(Tour {
            order: (0..k).collect(),
            length: 0,
        });
    }
    let d = &inst.metric;
    let closed = |rest: &[usize]| -> u64 {
        let inner: u64 = rest.windows(2).map(|w| d[w[0]][w[1]] as u64).sum();
        d[0][rest[0]] as u64 + inner + d[rest[rest.len() - 1]][0] as u64
    };
    let best = (1..k)
        .permutations(k - 1)
        .min_by_key(|rest| closed(rest))
        .expect("k >= 2 has an order");
    let mut order = Vec::with_capacity(k);
    order.push(0);
    order.extend(best);
    let length = inst.cycle_length(&order);
    Ok(Tour { order, length })
}

/// Neighbour lists of the subgraph of the Cayley graph induced on `points`.
pub fn induced_adjacency(points: &[Element], alphabet: &Alphabet) -> Vec<Vec<usize>> {
    let index: HashMap<&Element, usize> = points.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let letters = alphabet.signed_letters();
    points
        .iter()
        .enumerate()
        .map(|(i, g)| {
            letters
                .iter()
                .filter_map(|&l| index.get(&g.then(alphabet.letter_map(l))).copied())
                .filter(|&j| j != i)
                .sorted()
                .dedup()
                .collect()
        })
        .collect()
}

fn components(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adjacency.len()];
    let mut out = Vec::new();
    for start in 0..adjacency.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A closed walk along graph edges: every edge of a spanning tree, twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeTour {
    /// Point indices; first and last are both 0.
    pub walk: Vec<usize>,
}

impl TreeTour {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.walk.len().saturating_sub(1)
    }
}

/// Depth-first double traversal of a BFS spanning tree rooted at point 0.
pub fn spanning_tree_tour(points: &[Element], adjacency: &[Vec<usize>]) -> Result<TreeTour> {
    let k = points.len();
    if k == 0 {
        return Err(Error::EmptySet);
    }
    assert_eq!(adjacency.len(), k, "one neighbour list per point");
    let comps = components(adjacency);
    if comps.len() > 1 {
        return Err(Error::Disconnected { components: comps });
    }
    let mut children = vec![Vec::new(); k];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &y in &adjacency[x] {
            if !seen[y] {
                seen[y] = true;
                children[x].push(y);
                queue.push_back(y);
            }
        }
    }
    let mut walk = vec![0];
    // (vertex, next child to visit)
    let mut stack = vec![(0usize, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (x, next) = *top;
        if next < children[x].len() {
            top.1 += 1;
            let y = children[x][next];
            walk.push(y);
            stack.push((y, 0));
        } else {
            stack.pop();
            if let Some(&(parent, _)) = stack.last() {
                walk.push(parent);
            }
        }
    }
    Ok(TreeTour { walk })
}

/// `∀g ∈ S: gξ ∈ S or gξ⁻¹ ∈ S`.
pub fn is_xi_related(set: &[Element], xi: &Element) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let members: HashSet<&Element> = set.iter().collect();
    let xi_inv = xi.inverse();
    Ok(set
        .iter()
        .all(|g| members.contains(&g.then(xi)) || members.contains(&g.then(&xi_inv))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::GroupWord;
    use std::sync::Arc;

    fn elems(words: &[&str]) -> (Arc<Alphabet>, Vec<Element>) {
        let a = Alphabet::std2();
        let e = words.iter().map(|w| GroupWord::parse(&a, w).unwrap().evaluate()).collect();
        (a, e)
    }

    #[test]
    fn two_points_out_and_back() {
        let (a, pts) = elems(&["", "ab"]);
        let inst = TourInstance::from_points(pts, &a, 6).unwrap();
        assert_eq!(exact_tour(&inst).unwrap().length, 4);
    }

    #[test]
    fn collinear_powers_of_x1() {
        let (a, pts) = elems(&["", "b", "bb"]);
        let inst = TourInstance::from_points(pts, &a, 6).unwrap();
        assert_eq!(inst.metric()[0][2], 2);
        assert_eq!(exact_tour(&inst).unwrap().length, 4);
        assert_eq!(brute_force_tour(&inst).unwrap().length, 4);
    }

    #[test]
    fn singleton_has_zero_tau() {
        let (a, pts) = elems(&[""]);
        let inst = TourInstance::from_points(pts, &a, 6).unwrap();
        let t = exact_tour(&inst).unwrap();
        assert_eq!(t.length, 0);
        assert_eq!(t.tau(), BigRational::from_integer(0.into()));
    }

    #[test]
    fn held_karp_agrees_with_permutations() {
        let (a, pts) = elems(&["", "a", "ab", "abA", "B", "bb", "aab"]);
        let inst = TourInstance::from_points(pts, &a, 10).unwrap();
        let dp = exact_tour(&inst).unwrap();
        let bf = brute_force_tour(&inst).unwrap();
        assert_eq!(dp.length, bf.length);
        assert_eq!(inst.cycle_length(&dp.order), dp.length);
    }

    #[test]
    fn metric_axioms_enforced() {
        let (_, pts) = elems(&["", "a", "b"]);
        let bad = vec![vec![0, 1, 5], vec![1, 0, 1], vec![5, 1, 0]];
        assert!(matches!(TourInstance::new(pts, bad), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn tree_tour_on_a_path() {
        let (a, pts) = elems(&["", "b", "bb", "bbb", "bbbb"]);
        let adj = induced_adjacency(&pts, &a);
        let t = spanning_tree_tour(&pts, &adj).unwrap();
        assert_eq!(t.length(), 8);
        assert_eq!(t.walk.first(), t.walk.last());
        let single = spanning_tree_tour(&pts[..1], &[vec![]]).unwrap();
        assert_eq!(single.length(), 0);
    }

    #[test]
    fn disconnected_reports_components() {
        let (a, pts) = elems(&["", "b", "aa"]);
        let adj = induced_adjacency(&pts, &a);
        match spanning_tree_tour(&pts, &adj) {
            Err(Error::Disconnected { components }) => assert_eq!(components, vec![vec![0, 1], vec![2]]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn xi_related_basics() {
        let (_, pts) = elems(&["b", "ba"]);
        let xi = generator(0);
        assert!(is_xi_related(&pts, &xi).unwrap());
        assert!(!is_xi_related(&pts[..1], &xi).unwrap());
        assert!(matches!(is_xi_related(&[], &xi), Err(Error::EmptySet)));
    }

    fn generator(k: usize) -> Element {
        crate::generators::generator_map(k)
    }

    #[test]
    fn cap_on_exact_tour() {
        let (a, _) = elems(&[]);
        let pts: Vec<Element> = (0..19).map(|k| GroupWord::parse(&a, &"b".repeat(k)).unwrap().evaluate()).collect();
        let metric = (0..19).map(|i: u32| (0..19).map(|j: u32| i.abs_diff(j)).collect()).collect();
        let inst = TourInstance::new(pts, metric).unwrap();
        assert!(matches!(exact_tour(&inst), Err(Error::CapExceeded { .. })));
    }
}
