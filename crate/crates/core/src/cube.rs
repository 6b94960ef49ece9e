//! Binary labeling of resonance-graph components and the checks that it is
//! an induced hypercube embedding.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::embedded::{EmbeddedGraph, FaceId, VertexId};
use crate::metric::SimpleGraph;
use crate::resonance::{Component, ResonanceError, ResonanceGraph};

/// A fixed-length bit string; bit `i` belongs to the `i`-th face class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitLabel {
    len: usize,
    words: Vec<u64>,
}

impl BitLabel {
    pub fn zeros(len: usize) -> Self {
        BitLabel {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flipped(&self, i: usize) -> BitLabel {
        let mut out = self.clone();
        out.words[i / 64] ^= 1 << (i % 64);
        out
    }

    pub fn hamming(&self, other: &BitLabel) -> u32 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }

    /// Positions where the labels differ.
    pub fn differing_bits(&self, other: &BitLabel) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i) != other.get(i)).collect()
    }
}

impl fmt::Display for BitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitLabel({self})")
    }
}

impl Serialize for BitLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Labeling of one component: bit `i` of a matching is its side in the
/// quotient graph of the `i`-th face class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeLabeling {
    pub component_id: usize,
    /// Face of each coordinate; the dimension is `faces.len()`.
    pub faces: Vec<FaceId>,
    /// Label of each component vertex, in the order of `Component::vertices`.
    pub labels: Vec<BitLabel>,
}

impl CubeLabeling {
    pub fn dimension(&self) -> usize {
        self.faces.len()
    }

    pub fn coordinate_of(&self, face: FaceId) -> Option<usize> {
        self.faces.binary_search(&face).ok()
    }
}

/// Computes the labeling from the quotient bipartitions of every class.
pub fn compute_labeling(r: &ResonanceGraph, h: &Component) -> Result<CubeLabeling, ResonanceError> {
    let faces = h.face_list();
    let mut labels = vec![BitLabel::zeros(faces.len()); h.vertices.len()];
    for (i, &f) in faces.iter().enumerate() {
        let q = r.quotient_graph(h, f)?;
        for (local, &v) in h.vertices.iter().enumerate() {
            labels[local].set(i, q.side_b(v).expect("vertex in quotient"));
        }
    }
    Ok(CubeLabeling {
        component_id: h.id,
        faces,
        labels,
    })
}

/// Outcome of the three induced-embedding checks, with the first failure
/// of each as a witness (component vertex ids).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub injective: bool,
    pub one_bit_edges: bool,
    pub induced: bool,
    pub collision: Option<(usize, usize)>,
    pub bad_edge: Option<(usize, usize)>,
    pub missing_edge: Option<(usize, usize)>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.injective && self.one_bit_edges && self.induced
    }
}

/// Checks injectivity, that each edge flips exactly the bit of its face
/// class, and that every pair of labels at Hamming distance one is an edge.
pub fn verify_induced_embedding(r: &ResonanceGraph, h: &Component, lab: &CubeLabeling) -> EmbeddingReport {
    let mut seen: HashMap<&BitLabel, usize> = HashMap::new();
    let mut collision = None;
    for (local, label) in lab.labels.iter().enumerate() {
        if let Some(&prev) = seen.get(label) {
            collision.get_or_insert((h.vertices[prev], h.vertices[local]));
        } else {
            seen.insert(label, local);
        }
    }

    let mut bad_edge = None;
    for &k in &h.edges {
        let e = r.edges()[k];
        let (la, lb) = (
            &lab.labels[h.position(e.a).expect("in component")],
            &lab.labels[h.position(e.b).expect("in component")],
        );
        let diff = la.differing_bits(lb);
        if diff.len() != 1 || Some(diff[0]) != lab.coordinate_of(e.face) {
            bad_edge = Some((e.a, e.b));
            break;
        }
    }

    let mut missing_edge = None;
    'outer: for (local, label) in lab.labels.iter().enumerate() {
        for bit in 0..label.len() {
            if let Some(&other) = seen.get(&label.flipped(bit)) {
                let (a, b) = (h.vertices[local], h.vertices[other]);
                if r.edge_between(a, b).is_none() {
                    missing_edge = Some((a.min(b), a.max(b)));
                    break 'outer;
                }
            }
        }
    }

    EmbeddingReport {
        injective: collision.is_none(),
        one_bit_edges: bad_edge.is_none(),
        induced: missing_edge.is_none(),
        collision,
        bad_edge,
        missing_edge,
    }
}

/// A pair where graph distance and label Hamming distance disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryWitness {
    pub u: usize,
    pub v: usize,
    pub distance: u32,
    pub hamming: u32,
}

/// Every pair whose resonance distance differs from the Hamming distance of
/// its labels, in lexicographic order of component vertex ids.
pub fn isometry_violations(r: &ResonanceGraph, h: &Component, lab: &CubeLabeling) -> Vec<IsometryWitness> {
    let g = SimpleGraph::from_component(r, h);
    let mut out = Vec::new();
    for a in 0..g.len() {
        let dist = g.bfs(a);
        for b in a + 1..g.len() {
            let hamming = lab.labels[a].hamming(&lab.labels[b]);
            if dist[b] != hamming {
                out.push(IsometryWitness {
                    u: h.vertices[a],
                    v: h.vertices[b],
                    distance: dist[b],
                    hamming,
                });
            }
        }
    }
    out
}

/// `Ok(())` when the labeling is isometric; otherwise the least pair on
/// which it fails.
pub fn is_isometric_labeling(r: &ResonanceGraph, h: &Component, lab: &CubeLabeling) -> Result<(), IsometryWitness> {
    let g = SimpleGraph::from_component(r, h);
    for a in 0..g.len() {
        let dist = g.bfs(a);
        for b in a + 1..g.len() {
            let hamming = lab.labels[a].hamming(&lab.labels[b]);
            if dist[b] != hamming {
                return Err(IsometryWitness {
                    u: h.vertices[a],
                    v: h.vertices[b],
                    distance: dist[b],
                    hamming,
                });
            }
        }
    }
    Ok(())
}

/// The subgraph of `G` induced by the vertices of a component's faces, and
/// whether every matching of the component restricts to a perfect matching
/// of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSubgraphCheck {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<usize>,
    pub passed: bool,
    /// First component vertex whose restriction is not perfect.
    pub failing_matching: Option<usize>,
}

pub fn component_face_subgraph(g: &EmbeddedGraph, r: &ResonanceGraph, h: &Component) -> FaceSubgraphCheck {
    let mut inside = vec![false; g.n_vertices()];
    for f in h.face_list() {
        for &v in &g.faces()[f].vertices {
            inside[v] = true;
        }
    }
    let vertices: Vec<VertexId> = (0..g.n_vertices()).filter(|&v| inside[v]).collect();
    let edges: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| inside[e.u] && inside[e.v])
        .map(|(i, _)| i)
        .collect();
    let failing_matching = h.vertices.iter().copied().find(|&mv| {
        let mut covered = vec![0u8; g.n_vertices()];
        for &e in r.matching(mv).edges() {
            let edge = g.edge(e);
            if inside[edge.u] && inside[edge.v] {
                covered[edge.u] += 1;
                covered[edge.v] += 1;
            }
        }
        vertices.iter().any(|&v| covered[v] != 1)
    });
    FaceSubgraphCheck {
        vertices,
        edges,
        passed: failing_matching.is_none(),
        failing_matching,
    }
}
