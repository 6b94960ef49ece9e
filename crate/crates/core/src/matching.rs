//! Perfect matchings, face alternation and face rotation.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::embedded::{EdgeId, EmbeddedGraph, Face, FaceId, VertexId};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("graph has an odd number of vertices ({0}); no perfect matching exists")]
    OddVertexCount(usize),
    #[error("boundary of face {0} is not a cycle")]
    NotACycleBoundary(FaceId),
    #[error("face {0} is not alternating with respect to the matching")]
    NotAlternating(FaceId),
}

/// A set of edge ids, kept sorted. Ordering is lexicographic on the sorted
/// ids, which is the canonical order of enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Matching(Vec<EdgeId>);

impl Matching {
    pub fn from_edges(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut v: Vec<EdgeId> = edges.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Matching(v)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// Symmetric difference with a sorted edge-id slice.
    pub fn symmetric_difference(&self, other: &[EdgeId]) -> Matching {
        Matching(sorted_xor(&self.0, other))
    }

    /// `true` iff the edges are independent and cover every vertex of `g`.
    pub fn is_perfect_in(&self, g: &EmbeddedGraph) -> bool {
        let mut covered = vec![false; g.n_vertices()];
        for &e in &self.0 {
            if e >= g.n_edges() {
                return false;
            }
            let edge = g.edge(e);
            for w in [edge.u, edge.v] {
                if covered[w] {
                    return false;
                }
                covered[w] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }
}

pub(crate) fn sorted_xor(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Incident `(neighbor, edge)` lists sorted by edge id.
fn sorted_adjacency(g: &EmbeddedGraph) -> Vec<Vec<(VertexId, EdgeId)>> {
    (0..g.n_vertices())
        .map(|v| {
            let mut adj: Vec<_> = g.neighbors(v).collect();
            adj.sort_unstable_by_key(|&(_, e)| e);
            adj
        })
        .collect()
}

/// All perfect matchings of `g` in canonical order. Empty when none exist,
/// including the odd-order case.
pub fn enumerate_perfect_matchings(g: &EmbeddedGraph) -> Vec<Matching> {
    enumerate_perfect_matchings_avoiding(g, &vec![false; g.n_vertices()])
}

/// Like [`enumerate_perfect_matchings`] but reports the odd-order case as an
/// error instead of an empty result.
pub fn try_enumerate_perfect_matchings(g: &EmbeddedGraph) -> Result<Vec<Matching>, MatchingError> {
    if g.n_vertices() % 2 == 1 {
        return Err(MatchingError::OddVertexCount(g.n_vertices()));
    }
    Ok(enumerate_perfect_matchings(g))
}

/// Perfect matchings of `g` minus the vertices flagged in `removed`.
pub fn enumerate_perfect_matchings_avoiding(g: &EmbeddedGraph, removed: &[bool]) -> Vec<Matching> {
    let remaining = removed.iter().filter(|&&r| !r).count();
    if remaining % 2 == 1 {
        return Vec::new();
    }
    let adj = sorted_adjacency(g);
    let mut covered = removed.to_vec();
    let mut current = Vec::with_capacity(remaining / 2);
    let mut out = Vec::new();
    extend_matchings(&adj, &mut covered, 0, &mut current, &mut out);
    out.sort_unstable();
    out
}

fn extend_matchings(
    adj: &[Vec<(VertexId, EdgeId)>],
    covered: &mut [bool],
    from: VertexId,
    current: &mut Vec<EdgeId>,
    out: &mut Vec<Matching>,
) {
    let Some(v) = (from..covered.len()).find(|&v| !covered[v]) else {
        out.push(Matching::from_edges(current.iter().copied()));
        return;
    };
    covered[v] = true;
    for &(w, e) in &adj[v] {
        if covered[w] {
            continue;
        }
        covered[w] = true;
        current.push(e);
        extend_matchings(adj, covered, v + 1, current, out);
        current.pop();
        covered[w] = false;
    }
    covered[v] = false;
}

/// Memoized perfect-matching counter for vertex-deleted subgraphs of a
/// fixed graph. The memo is keyed by the covered-vertex bitset, so it is
/// shared across different deletion sets.
pub struct MatchingCounter {
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    memo: HashMap<Vec<u64>, u64>,
}

impl MatchingCounter {
    pub fn new(g: &EmbeddedGraph) -> Self {
        MatchingCounter {
            adj: sorted_adjacency(g),
            memo: HashMap::new(),
        }
    }

    /// Number of perfect matchings of the graph minus `removed` vertices.
    pub fn count(&mut self, removed: &[bool]) -> u64 {
        let n = self.adj.len();
        let mut bits = vec![0u64; n.div_ceil(64)];
        let mut remaining = 0;
        for (v, &r) in removed.iter().enumerate() {
            if r {
                bits[v / 64] |= 1 << (v % 64);
            } else {
                remaining += 1;
            }
        }
        if remaining % 2 == 1 {
            return 0;
        }
        self.count_from(&mut bits)
    }

    fn count_from(&mut self, bits: &mut Vec<u64>) -> u64 {
        let n = self.adj.len();
        let Some(v) = (0..n).find(|&v| bits[v / 64] & (1 << (v % 64)) == 0) else {
            return 1;
        };
        if let Some(&c) = self.memo.get(bits.as_slice()) {
            return c;
        }
        let key = bits.clone();
        bits[v / 64] |= 1 << (v % 64);
        let mut total = 0;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i].0;
            if bits[w / 64] & (1 << (w % 64)) != 0 {
                continue;
            }
            bits[w / 64] |= 1 << (w % 64);
            total += self.count_from(bits);
            bits[w / 64] &= !(1 << (w % 64));
        }
        bits[v / 64] &= !(1 << (v % 64));
        self.memo.insert(key, total);
        total
    }
}

/// Whether the boundary of `f` alternates between `m` and its complement.
pub fn is_alternating_face(m: &Matching, f: &Face) -> Result<bool, MatchingError> {
    if !f.is_cycle {
        return Err(MatchingError::NotACycleBoundary(f.id));
    }
    let n = f.boundary.len();
    if n % 2 == 1 {
        return Ok(false);
    }
    Ok((0..n).all(|i| m.contains(f.boundary[i].1) != m.contains(f.boundary[(i + 1) % n].1)))
}

/// Rotates `m` along an `m`-alternating face: returns `m ⊕ E(f)`.
pub fn rotate_face(m: &Matching, f: &Face) -> Result<Matching, MatchingError> {
    if !is_alternating_face(m, f)? {
        return Err(MatchingError::NotAlternating(f.id));
    }
    Ok(m.symmetric_difference(&f.edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedded::Sign;

    fn cycle(n: usize) -> EmbeddedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, i, (i + 1) % n, Sign::Plus)).collect();
        let rotations = (0..n).map(|i| vec![(i + n - 1) % n, i]).collect();
        EmbeddedGraph::build(n, &edges, rotations).unwrap()
    }

    #[test]
    fn hexagon_matchings_rotate_into_each_other() {
        let g = cycle(6);
        let ms = enumerate_perfect_matchings(&g);
        assert_eq!(ms, vec![Matching::from_edges([0, 2, 4]), Matching::from_edges([1, 3, 5])]);
        let f = &g.faces()[0];
        assert!(is_alternating_face(&ms[0], f).unwrap());
        assert_eq!(rotate_face(&ms[0], f).unwrap(), ms[1]);
        assert_eq!(rotate_face(&ms[1], f).unwrap(), ms[0]);
    }

    #[test]
    fn odd_order_is_empty_or_error() {
        let g = cycle(5);
        assert!(enumerate_perfect_matchings(&g).is_empty());
        assert_eq!(
            try_enumerate_perfect_matchings(&g),
            Err(MatchingError::OddVertexCount(5))
        );
        assert_eq!(MatchingCounter::new(&g).count(&[false; 5]), 0);
    }

    #[test]
    fn rotating_non_alternating_face_fails() {
        let g = cycle(4);
        let m = Matching::from_edges([0]);
        assert_eq!(rotate_face(&m, &g.faces()[0]), Err(MatchingError::NotAlternating(0)));
    }

    #[test]
    fn non_cycle_boundary_is_rejected() {
        let g = EmbeddedGraph::build(2, &[(0, 0, 1, Sign::Plus)], vec![vec![0], vec![0]]).unwrap();
        let m = Matching::from_edges([0]);
        assert_eq!(
            is_alternating_face(&m, &g.faces()[0]),
            Err(MatchingError::NotACycleBoundary(0))
        );
    }

    #[test]
    fn counter_agrees_with_enumeration_under_deletion() {
        let g = cycle(8);
        let mut counter = MatchingCounter::new(&g);
        let mut removed = vec![false; 8];
        assert_eq!(counter.count(&removed), 2);
        removed[0] = true;
        removed[1] = true;
        assert_eq!(counter.count(&removed), 1);
        assert_eq!(enumerate_perfect_matchings_avoiding(&g, &removed).len(), 1);
        removed[3] = true;
        removed[4] = true;
        assert_eq!(counter.count(&removed), 0);
    }

    #[test]
    fn xor_merges_sorted_sets() {
        assert_eq!(sorted_xor(&[1, 3, 5], &[2, 3, 6]), vec![1, 2, 5, 6]);
        assert_eq!(sorted_xor(&[], &[4]), vec![4]);
    }
}
