//! Shortest-path metric tools on small simple graphs: distance matrices,
//! the Djoković–Winkler relation and median triples.

use std::collections::VecDeque;

use serde::Serialize;

use crate::resonance::{Component, ResonanceGraph};

/// Undirected simple graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        SimpleGraph { adj }
    }

    /// The component as a graph on local indices `0..|V(H)|`, in the order
    /// of `h.vertices`.
    pub fn from_component(r: &ResonanceGraph, h: &Component) -> Self {
        let edges = h.edges.iter().map(|&k| {
            let e = r.edges()[k];
            (
                h.position(e.a).expect("edge inside component"),
                h.position(e.b).expect("edge inside component"),
            )
        });
        SimpleGraph::from_edges(h.vertices.len(), edges)
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Self {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }

    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.len()];
        for s in 0..self.len() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub const UNREACHABLE: u32 = u32::MAX;

/// All-pairs distances by breadth-first search from every vertex.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(g: &SimpleGraph) -> Self {
        let n = g.len();
        let mut data = Vec::with_capacity(n * n);
        for s in 0..n {
            data.extend(g.bfs(s));
        }
        DistanceMatrix { n, data }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.data[a * self.n + b]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Whether `g` is a partial cube: bipartite, and the Djoković–Winkler
/// relation on its edges is transitive.
pub fn is_partial_cube(g: &SimpleGraph) -> bool {
    if !g.is_bipartite() {
        return false;
    }
    let d = DistanceMatrix::new(g);
    if (0..g.len()).any(|v| d.get(0, v) == UNREACHABLE) {
        return false;
    }
    let edges = g.edges();
    let theta = |e: (usize, usize), f: (usize, usize)| {
        let (u, v) = e;
        let (x, y) = f;
        d.get(u, x) + d.get(v, y) != d.get(u, y) + d.get(v, x)
    };
    // transitive iff every class of the closure is fully related
    let mut classes = UnionFind::new(edges.len());
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if theta(edges[i], edges[j]) {
                classes.union(i, j);
            }
        }
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for i in 0..edges.len() {
        members[classes.find(i)].push(i);
    }
    members.iter().all(|class| {
        class
            .iter()
            .enumerate()
            .all(|(p, &i)| class[p + 1..].iter().all(|&j| theta(edges[i], edges[j])))
    })
}

/// A vertex triple without exactly one median.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MedianWitness {
    pub triple: [usize; 3],
    pub medians: Vec<usize>,
}

/// `None` when every triple of distinct vertices has exactly one median;
/// otherwise the least triple that fails. Disconnected graphs are never
/// median; the witness then has no medians.
pub fn median_witness(g: &SimpleGraph) -> Option<MedianWitness> {
    let n = g.len();
    let d = DistanceMatrix::new(g);
    let words = n.div_ceil(64);
    // interval[a][b] as bitsets: vertices on some shortest a-b path
    let mut interval = vec![0u64; n * n * words];
    for a in 0..n {
        for b in 0..n {
            let dab = d.get(a, b);
            if dab == UNREACHABLE {
                continue;
            }
            let base = (a * n + b) * words;
            for x in 0..n {
                if d.get(a, x) != UNREACHABLE && d.get(x, b) != UNREACHABLE && d.get(a, x) + d.get(x, b) == dab {
                    interval[base + x / 64] |= 1 << (x % 64);
                }
            }
        }
    }
    let iv = |a: usize, b: usize| &interval[(a * n + b) * words..(a * n + b + 1) * words];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (ab, bc, ac) = (iv(a, b), iv(b, c), iv(a, c));
                let mut count = 0;
                for w in 0..words {
                    count += (ab[w] & bc[w] & ac[w]).count_ones();
                }
                if count != 1 {
                    let medians = (0..n)
                        .filter(|&x| (ab[x / 64] & bc[x / 64] & ac[x / 64]) >> (x % 64) & 1 == 1)
                        .collect();
                    return Some(MedianWitness {
                        triple: [a, b, c],
                        medians,
                    });
                }
            }
        }
    }
    None
}

pub fn is_median_graph(g: &SimpleGraph) -> bool {
    median_witness(g).is_none()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_and_even_cycles_are_partial_cubes() {
        assert!(is_partial_cube(&SimpleGraph::path(3)));
        assert!(is_partial_cube(&SimpleGraph::cycle(4)));
        assert!(is_partial_cube(&SimpleGraph::cycle(6)));
        assert!(!is_partial_cube(&SimpleGraph::cycle(5)));
        assert!(is_partial_cube(&SimpleGraph::path(1)));
    }

    #[test]
    fn k23_is_not_a_partial_cube() {
        let g = SimpleGraph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert!(g.is_bipartite());
        assert!(!is_partial_cube(&g));
    }

    #[test]
    fn median_examples() {
        assert!(is_median_graph(&SimpleGraph::path(2)));
        assert!(is_median_graph(&SimpleGraph::cycle(4)));
        let w = median_witness(&SimpleGraph::cycle(6)).unwrap();
        // 0, 2, 4 are pairwise at distance 2 and share no interval vertex
        assert_eq!(w.triple, [0, 2, 4]);
        assert!(w.medians.is_empty());
    }

    #[test]
    fn six_cycle_median_count_by_enumeration() {
        // independent count: triples of C6 with a unique median
        let g = SimpleGraph::cycle(6);
        let d = |a: usize, b: usize| {
            let k = a.abs_diff(b);
            k.min(6 - k)
        };
        let mut bad = 0;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let m = (0..6)
                        .filter(|&x| d(a, x) + d(x, b) == d(a, b) && d(b, x) + d(x, c) == d(b, c) && d(a, x) + d(x, c) == d(a, c))
                        .count();
                    if m != 1 {
                        bad += 1;
                    }
                }
            }
        }
        assert!(bad > 0);
        assert!(!is_median_graph(&g));
    }
}
