//! Resonance graphs with respect to an even-face set.
//!
//! Vertices are perfect matchings; two matchings are adjacent when their
//! symmetric difference is the edge set of a face in the selected set. Each
//! edge carries the id of that face.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::embedded::{EmbeddedGraph, EvenFaceSet, FaceId};
use crate::matching::{enumerate_perfect_matchings, is_alternating_face, Matching};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ResonanceError {
    #[error("vertex sequence {0:?} is not a cycle of the resonance graph")]
    NotACycle(Vec<usize>),
    #[error("face {0} labels no edge of the component")]
    UnknownFaceClass(FaceId),
    #[error("quotient graph for face {face} is not bipartite (odd cycle through parts {odd_cycle:?})")]
    NonBipartiteQuotient { face: FaceId, odd_cycle: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResonanceEdge {
    pub a: usize,
    pub b: usize,
    pub face: FaceId,
}

impl ResonanceEdge {
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResonanceGraph {
    matchings: Vec<Matching>,
    index: HashMap<Matching, usize>,
    edges: Vec<ResonanceEdge>,
    /// `(neighbor, edge index)`, sorted by neighbor.
    adj: Vec<Vec<(usize, usize)>>,
    face_set: EvenFaceSet,
    /// Matching pairs reachable through more than one face of the set.
    /// Only the least face id is kept as the edge label.
    shared_pairs: usize,
}

/// Builds `R(G; F)` from a fresh perfect-matching enumeration.
pub fn build_resonance_graph(g: &EmbeddedGraph, faces: &EvenFaceSet) -> ResonanceGraph {
    ResonanceGraph::from_matchings(g, faces, enumerate_perfect_matchings(g))
}

impl ResonanceGraph {
    /// Builds the resonance graph over the given canonical matchings.
    ///
    /// Each matching is rotated along each alternating face and the result
    /// looked up by hash, so the cost is linear in `|matchings| * |faces|`.
    pub fn from_matchings(g: &EmbeddedGraph, faces: &EvenFaceSet, matchings: Vec<Matching>) -> Self {
        let index: HashMap<Matching, usize> = matchings
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut pairs: BTreeMap<(usize, usize), FaceId> = BTreeMap::new();
        let mut shared_pairs = 0;
        for (i, m) in matchings.iter().enumerate() {
            for &fid in &faces.face_ids {
                let face = &g.faces()[fid];
                if !is_alternating_face(m, face).unwrap_or(false) {
                    continue;
                }
                let partner = m.symmetric_difference(&face.edges);
                let j = index[&partner];
                if j > i {
                    match pairs.entry((i, j)) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(fid);
                        }
                        std::collections::btree_map::Entry::Occupied(_) => shared_pairs += 1,
                    }
                }
            }
        }
        let edges: Vec<ResonanceEdge> = pairs
            .into_iter()
            .map(|((a, b), face)| ResonanceEdge { a, b, face })
            .collect();
        let mut adj = vec![Vec::new(); matchings.len()];
        for (k, e) in edges.iter().enumerate() {
            adj[e.a].push((e.b, k));
            adj[e.b].push((e.a, k));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        ResonanceGraph {
            matchings,
            index,
            edges,
            adj,
            face_set: faces.clone(),
            shared_pairs,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.matchings.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn matching(&self, v: usize) -> &Matching {
        &self.matchings[v]
    }

    pub fn vertex_of(&self, m: &Matching) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn edges(&self) -> &[ResonanceEdge] {
        &self.edges
    }

    pub fn face_set(&self) -> &EvenFaceSet {
        &self.face_set
    }

    pub fn shared_pairs(&self) -> usize {
        self.shared_pairs
    }

    /// `(neighbor, edge index)` pairs of `v`, sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Index of the edge joining `a` and `b`, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let list = &self.adj[a];
        list.binary_search_by_key(&b, |&(w, _)| w)
            .ok()
            .map(|p| list[p].1)
    }

    /// Connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<Component> {
        let n = self.n_vertices();
        let mut comp_of = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut vertices = vec![start];
            comp_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adj[v] {
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        vertices.push(w);
                        queue.push_back(w);
                    }
                }
            }
            vertices.sort_unstable();
            out.push(Component {
                id,
                vertices,
                edges: Vec::new(),
                face_classes: BTreeMap::new(),
            });
        }
        for (k, e) in self.edges.iter().enumerate() {
            let c = &mut out[comp_of[e.a]];
            c.edges.push(k);
            c.face_classes.entry(e.face).or_default().push(k);
        }
        out
    }

    /// Counts how often each face labels an edge along a closed walk.
    pub fn check_cycle_face_parity(&self, cycle: &[usize]) -> Result<BTreeMap<FaceId, usize>, ResonanceError> {
        let not_cycle = || ResonanceError::NotACycle(cycle.to_vec());
        if cycle.len() < 3 {
            return Err(not_cycle());
        }
        let mut sorted = cycle.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != cycle.len() || sorted.last().is_some_and(|&v| v >= self.n_vertices()) {
            return Err(not_cycle());
        }
        let mut counts = BTreeMap::new();
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            let e = self.edge_between(a, b).ok_or_else(not_cycle)?;
            *counts.entry(self.edges[e].face).or_insert(0) += 1;
        }
        Ok(counts)
    }

    /// Proper 2-coloring, or an odd cycle as a witness.
    pub fn two_coloring(&self) -> Result<Vec<bool>, Vec<usize>> {
        let n = self.n_vertices();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].expect("colored");
                for &(w, _) in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            parent[w] = v;
                            depth[w] = depth[v] + 1;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => {
                            return Err(tree_cycle(&parent, &depth, v, w));
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// One cycle per non-tree edge of a breadth-first spanning tree of `h`.
    pub fn fundamental_cycles(&self, h: &Component) -> Vec<Vec<usize>> {
        let Some(&root) = h.vertices.first() else {
            return Vec::new();
        };
        let n = self.n_vertices();
        let mut parent = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, k) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    parent_edge[w] = k;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        h.edges
            .iter()
            .filter(|&&k| {
                let e = self.edges[k];
                parent_edge[e.a] != k && parent_edge[e.b] != k
            })
            .map(|&k| tree_cycle(&parent, &depth, self.edges[k].a, self.edges[k].b))
            .collect()
    }

    /// Vertex parts of `H \ E_i` for the class of `face`, by least vertex.
    pub fn delete_class_components(&self, h: &Component, face: FaceId) -> Result<Vec<Vec<usize>>, ResonanceError> {
        if !h.face_classes.contains_key(&face) {
            return Err(ResonanceError::UnknownFaceClass(face));
        }
        let mut part_of: HashMap<usize, usize> = HashMap::with_capacity(h.vertices.len());
        let mut parts = Vec::new();
        for &start in &h.vertices {
            if part_of.contains_key(&start) {
                continue;
            }
            let id = parts.len();
            part_of.insert(start, id);
            let mut part = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(w, k) in &self.adj[v] {
                    if self.edges[k].face != face && !part_of.contains_key(&w) {
                        part_of.insert(w, id);
                        part.push(w);
                        stack.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        Ok(parts)
    }

    /// Quotient of `h` by contracting every edge outside the class of
    /// `face`, with its bipartition. Side A holds the part containing the
    /// least matching of the component.
    pub fn quotient_graph(&self, h: &Component, face: FaceId) -> Result<QuotientGraph, ResonanceError> {
        let parts = self.delete_class_components(h, face)?;
        let mut node_of = HashMap::with_capacity(h.vertices.len());
        for (p, part) in parts.iter().enumerate() {
            for &v in part {
                node_of.insert(v, p);
            }
        }
        let mut qadj: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
        let mut edges = Vec::new();
        for &k in &h.face_classes[&face] {
            let e = self.edges[k];
            let (x, y) = (node_of[&e.a], node_of[&e.b]);
            if x != y {
                edges.push((x.min(y), x.max(y)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        for &(x, y) in &edges {
            qadj[x].push(y);
            qadj[y].push(x);
        }

        let mut side: Vec<Option<bool>> = vec![None; parts.len()];
        let mut parent = vec![usize::MAX; parts.len()];
        let mut depth = vec![0usize; parts.len()];
        for start in 0..parts.len() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].expect("colored");
                for &y in &qadj[x] {
                    match side[y] {
                        None => {
                            side[y] = Some(!sx);
                            parent[y] = x;
                            depth[y] = depth[x] + 1;
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => {
                            return Err(ResonanceError::NonBipartiteQuotient {
                                face,
                                odd_cycle: tree_cycle(&parent, &depth, x, y),
                            });
                        }
                        _ => {}
                    }
                }
            }
        }
        let in_b: Vec<bool> = side.into_iter().map(|s| s.unwrap_or(false)).collect();
        Ok(QuotientGraph {
            face,
            parts,
            edges,
            in_b,
            node_of,
        })
    }

    /// Graphviz rendering with edges labeled by face.
    pub fn to_dot(&self, face_name: impl Fn(FaceId) -> String) -> String {
        let mut out = String::from("graph resonance {\n");
        for (v, m) in self.matchings.iter().enumerate() {
            let _ = writeln!(out, "  {v} [label=\"M{v}\", tooltip=\"{:?}\"];", m.edges());
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.a, e.b, face_name(e.face));
        }
        out.push_str("}\n");
        out
    }
}

/// Cycle closed by the non-tree edge `(u, v)`: `u` up to the common
/// ancestor and back down to `v`.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// A connected component `H` of a resonance graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub id: usize,
    /// Sorted vertex ids (matching indices).
    pub vertices: Vec<usize>,
    /// Edge indices into the resonance graph.
    pub edges: Vec<usize>,
    /// Edge class `E_i` for every face labeling an edge of the component.
    pub face_classes: BTreeMap<FaceId, Vec<usize>>,
}

impl Component {
    /// Faces labeling the component's edges, ascending. Position in this
    /// list is the coordinate used by the cube labeling.
    pub fn face_list(&self) -> Vec<FaceId> {
        self.face_classes.keys().copied().collect()
    }

    pub fn dimension(&self) -> usize {
        self.face_classes.len()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

/// Quotient `H_i` for one face class, with its bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    pub face: FaceId,
    /// Components of `H \ E_i`; node `p` is `parts[p]`.
    pub parts: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    /// Side of each node; `false` is side A.
    pub in_b: Vec<bool>,
    node_of: HashMap<usize, usize>,
}

impl QuotientGraph {
    pub fn node_of(&self, v: usize) -> Option<usize> {
        self.node_of.get(&v).copied()
    }

    /// `true` when `v` lies in a part on side B.
    pub fn side_b(&self, v: usize) -> Option<bool> {
        self.node_of(v).map(|p| self.in_b[p])
    }

    pub fn side_sizes(&self) -> (usize, usize) {
        let b = self.in_b.iter().filter(|&&x| x).count();
        (self.in_b.len() - b, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin_instance;

    #[test]
    fn hexagon_inner_face_gives_k2() {
        let inst = builtin_instance("c6").unwrap();
        let r = build_resonance_graph(&inst.graph, &inst.select("inner").unwrap());
        assert_eq!((r.n_vertices(), r.n_edges()), (2, 1));
        let h = &r.components()[0];
        let parts = r.delete_class_components(h, 0).unwrap();
        assert_eq!(parts, vec![vec![0], vec![1]]);
    }

    #[test]
    fn both_hexagon_faces_share_one_pair() {
        let inst = builtin_instance("c6").unwrap();
        let r = build_resonance_graph(&inst.graph, &inst.select("all").unwrap());
        assert_eq!(r.n_edges(), 1);
        assert_eq!(r.edges()[0].face, 0);
        assert_eq!(r.shared_pairs(), 1);
    }

    #[test]
    fn parity_rejects_non_cycles() {
        let inst = builtin_instance("ladder3").unwrap();
        let r = build_resonance_graph(&inst.graph, &inst.select("all").unwrap());
        assert!(matches!(r.check_cycle_face_parity(&[0, 1]), Err(ResonanceError::NotACycle(_))));
        assert!(matches!(r.check_cycle_face_parity(&[0, 1, 0]), Err(ResonanceError::NotACycle(_))));
        let counts = r.check_cycle_face_parity(&[0, 1, 2]).unwrap();
        assert_eq!(counts.values().copied().collect::<Vec<_>>(), vec![1, 1, 1]);
    }

    #[test]
    fn unknown_face_class() {
        let inst = builtin_instance("ladder3").unwrap();
        let r = build_resonance_graph(&inst.graph, &inst.select("inner").unwrap());
        let h = &r.components()[0];
        assert_eq!(
            r.delete_class_components(h, 1),
            Err(ResonanceError::UnknownFaceClass(1))
        );
    }

    #[test]
    fn triangle_is_not_two_colorable() {
        let inst = builtin_instance("ladder3").unwrap();
        let r = build_resonance_graph(&inst.graph, &inst.select("all").unwrap());
        let cycle = r.two_coloring().unwrap_err();
        assert_eq!(cycle.len(), 3);
        assert!(r.check_cycle_face_parity(&cycle).is_ok());
    }

    #[test]
    fn dot_output_lists_edges() {
        let inst = builtin_instance("c6").unwrap();
        let r = build_resonance_graph(&inst.graph, &inst.select("inner").unwrap());
        let dot = r.to_dot(|f| format!("f{f}"));
        assert!(dot.contains("0 -- 1 [label=\"f0\"]"));
    }
}
