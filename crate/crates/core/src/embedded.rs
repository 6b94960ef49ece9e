//! Graphs cellularly embedded in closed surfaces.
//!
//! An embedding is given combinatorially by a rotation system (the cyclic
//! order of edges around each vertex) together with an edge signature. All
//! positive signs describe an orientable surface; negative edges introduce
//! twists and allow non-orientable surfaces. Faces are recovered by the
//! standard dart walk over `(dart, side)` states.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    fn flip_if(self, other: Sign) -> Sign {
        match (self, other) {
            (s, Sign::Plus) => s,
            (Sign::Plus, Sign::Minus) => Sign::Minus,
            (Sign::Minus, Sign::Minus) => Sign::Plus,
        }
    }

    fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub sign: Sign,
}

impl Edge {
    /// The endpoint opposite to `w`.
    pub fn other(&self, w: VertexId) -> VertexId {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    LoopEdge { edge: EdgeId, vertex: VertexId },
    #[error("edges {first} and {second} both join vertices {u} and {v}")]
    ParallelEdge {
        first: EdgeId,
        second: EdgeId,
        u: VertexId,
        v: VertexId,
    },
    #[error("rotation at vertex {vertex} disagrees with incidence: {reason}")]
    RotationMismatch { vertex: VertexId, reason: String },
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge ids must be dense 0..{count}, found {edge}")]
    EdgeIdOutOfRange { edge: EdgeId, count: usize },
    #[error("edge id {0} is defined twice")]
    DuplicateEdgeId(EdgeId),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("face {0} is not an even face")]
    NotEvenFace(FaceId),
    #[error("unknown face id {0}")]
    UnknownFaceId(FaceId),
}

/// One traced face: its boundary closed walk and derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Boundary walk as `(vertex, edge leaving that vertex)` pairs, in
    /// canonical form (least rotation over both traversal directions).
    pub boundary: Vec<(VertexId, EdgeId)>,
    /// Sorted, deduplicated edge ids of the boundary.
    pub edges: Vec<EdgeId>,
    /// Sorted, deduplicated vertices of the boundary.
    pub vertices: Vec<VertexId>,
    pub is_cycle: bool,
    pub is_even: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Edge ids in boundary order.
    pub fn walk_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.boundary.iter().map(|&(_, e)| e)
    }

    pub fn shares_vertex_with(&self, other: &Face) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.vertices.len() && j < other.vertices.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// A validated selection of even faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenFaceSet {
    pub face_ids: Vec<FaceId>,
    /// `true` iff the selection is not the set of all faces of the graph.
    pub is_proper_subset: bool,
}

impl EvenFaceSet {
    pub fn contains(&self, f: FaceId) -> bool {
        self.face_ids.binary_search(&f).is_ok()
    }

    pub fn len(&self) -> usize {
        self.face_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.face_ids.is_empty()
    }
}

/// A simple graph with a rotation system and edge signature.
///
/// Faces are traced once at construction and cached; the value is
/// immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    n_vertices: usize,
    edges: Vec<Edge>,
    rotations: Vec<Vec<EdgeId>>,
    /// Position of each edge in the rotation of `u` and of `v`.
    rotation_pos: Vec<(usize, usize)>,
    faces: Vec<Face>,
}

impl EmbeddedGraph {
    /// Validates and builds an embedded graph.
    ///
    /// Edges are `(edge_id, u, v, sign)`; ids must be exactly `0..edges.len()`
    /// in any order. `rotations[v]` is the cyclic order of edges at `v`.
    pub fn build(
        n_vertices: usize,
        edges: &[(EdgeId, VertexId, VertexId, Sign)],
        rotations: Vec<Vec<EdgeId>>,
    ) -> Result<Self, EmbeddingError> {
        let m = edges.len();
        let mut slots: Vec<Option<Edge>> = vec![None; m];
        let mut seen_pairs: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
        for &(id, u, v, sign) in edges {
            if id >= m {
                return Err(EmbeddingError::EdgeIdOutOfRange { edge: id, count: m });
            }
            for w in [u, v] {
                if w >= n_vertices {
                    return Err(EmbeddingError::VertexOutOfRange {
                        vertex: w,
                        n: n_vertices,
                    });
                }
            }
            if u == v {
                return Err(EmbeddingError::LoopEdge { edge: id, vertex: u });
            }
            if slots[id].is_some() {
                return Err(EmbeddingError::DuplicateEdgeId(id));
            }
            let key = (u.min(v), u.max(v));
            if let Some(&first) = seen_pairs.get(&key) {
                return Err(EmbeddingError::ParallelEdge {
                    first: first.min(id),
                    second: first.max(id),
                    u: key.0,
                    v: key.1,
                });
            }
            seen_pairs.insert(key, id);
            slots[id] = Some(Edge { u, v, sign });
        }
        let edges: Vec<Edge> = slots.into_iter().map(|e| e.expect("dense ids")).collect();

        if rotations.len() != n_vertices {
            return Err(EmbeddingError::RotationMismatch {
                vertex: rotations.len().min(n_vertices),
                reason: format!(
                    "expected {} rotation lists, got {}",
                    n_vertices,
                    rotations.len()
                ),
            });
        }
        let mut incident: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); n_vertices];
        for (id, e) in edges.iter().enumerate() {
            incident[e.u].insert(id);
            incident[e.v].insert(id);
        }
        let mut rotation_pos = vec![(usize::MAX, usize::MAX); m];
        for (v, rot) in rotations.iter().enumerate() {
            let listed: BTreeSet<EdgeId> = rot.iter().copied().collect();
            if listed.len() != rot.len() {
                return Err(EmbeddingError::RotationMismatch {
                    vertex: v,
                    reason: "an edge is listed more than once".into(),
                });
            }
            if listed != incident[v] {
                let extra: Vec<_> = listed.difference(&incident[v]).collect();
                let missing: Vec<_> = incident[v].difference(&listed).collect();
                return Err(EmbeddingError::RotationMismatch {
                    vertex: v,
                    reason: format!("not incident {extra:?}, missing {missing:?}"),
                });
            }
            for (p, &e) in rot.iter().enumerate() {
                if edges[e].u == v {
                    rotation_pos[e].0 = p;
                } else {
                    rotation_pos[e].1 = p;
                }
            }
        }

        let mut g = EmbeddedGraph {
            n_vertices,
            edges,
            rotations,
            rotation_pos,
            faces: Vec::new(),
        };
        g.faces = trace_faces(&g);
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<EdgeId>] {
        &self.rotations
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> Option<&Face> {
        self.faces.get(f)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v].len()
    }

    /// Edges incident to `v`, sorted by id.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        let mut es = self.rotations[v].clone();
        es.sort_unstable();
        es
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return false;
        }
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in &self.rotations[v] {
                let w = self.edges[e].other(v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n_vertices
    }

    /// Euler genus `2 - (V - E + F)` of the surface; requires connectivity.
    pub fn euler_genus(&self) -> Result<usize, EmbeddingError> {
        if !self.is_connected() {
            return Err(EmbeddingError::DisconnectedGraph);
        }
        // an isolated vertex has one face but no darts to trace
        let f = if self.edges.is_empty() {
            1
        } else {
            self.faces.len()
        };
        let chi = self.n_vertices as i64 - self.edges.len() as i64 + f as i64;
        Ok((2 - chi) as usize)
    }

    /// Ids of faces bounded by an even cycle.
    pub fn even_faces(&self) -> Vec<FaceId> {
        self.faces
            .iter()
            .filter(|f| f.is_even)
            .map(|f| f.id)
            .collect()
    }

    pub fn validate_even_face_set(
        &self,
        ids: impl IntoIterator<Item = FaceId>,
    ) -> Result<EvenFaceSet, EmbeddingError> {
        let ids: BTreeSet<FaceId> = ids.into_iter().collect();
        for &f in &ids {
            let face = self.faces.get(f).ok_or(EmbeddingError::UnknownFaceId(f))?;
            if !face.is_even {
                return Err(EmbeddingError::NotEvenFace(f));
            }
        }
        Ok(EvenFaceSet {
            is_proper_subset: ids.len() != self.faces.len(),
            face_ids: ids.into_iter().collect(),
        })
    }

    /// Vertices adjacent through edges, paired with the connecting edge.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.rotations[v].iter().map(move |&e| (self.edges[e].other(v), e))
    }

    fn position(&self, e: EdgeId, at: VertexId) -> usize {
        if self.edges[e].u == at {
            self.rotation_pos[e].0
        } else {
            self.rotation_pos[e].1
        }
    }
}

/// A dart-walk state: an edge, its traversal direction and the side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct State {
    edge: EdgeId,
    /// false: u -> v, true: v -> u
    reversed: bool,
    side: Sign,
}

impl State {
    fn index(self) -> usize {
        (self.edge * 2 + self.reversed as usize) * 2 + (self.side == Sign::Minus) as usize
    }

    fn from_index(i: usize) -> State {
        State {
            edge: i / 4,
            reversed: (i / 2) % 2 == 1,
            side: if i % 2 == 1 { Sign::Minus } else { Sign::Plus },
        }
    }

    fn tail(self, g: &EmbeddedGraph) -> VertexId {
        let e = g.edges[self.edge];
        if self.reversed {
            e.v
        } else {
            e.u
        }
    }

    fn head(self, g: &EmbeddedGraph) -> VertexId {
        let e = g.edges[self.edge];
        if self.reversed {
            e.u
        } else {
            e.v
        }
    }

    fn next(self, g: &EmbeddedGraph) -> State {
        let w = self.head(g);
        let side = self.side.flip_if(g.edges[self.edge].sign);
        let rot = &g.rotations[w];
        let d = rot.len();
        let p = g.position(self.edge, w);
        let next = match side {
            Sign::Plus => rot[(p + 1) % d],
            Sign::Minus => rot[(p + d - 1) % d],
        };
        State {
            edge: next,
            reversed: g.edges[next].u != w,
            side,
        }
    }

    /// The state tracing the same face in the opposite direction.
    fn mirror(self, g: &EmbeddedGraph) -> State {
        State {
            edge: self.edge,
            reversed: !self.reversed,
            side: self.side.negate().flip_if(g.edges[self.edge].sign),
        }
    }
}

/// Least rotation of `walk` over both traversal directions.
fn canonical_walk(walk: &[(VertexId, EdgeId)]) -> Vec<(VertexId, EdgeId)> {
    let n = walk.len();
    // reversed traversal: the pair for edge e_i starts at its far end v_{i+1}
    let rev: Vec<(VertexId, EdgeId)> = (0..n)
        .rev()
        .map(|i| (walk[(i + 1) % n].0, walk[i].1))
        .collect();
    let mut best: Option<Vec<(VertexId, EdgeId)>> = None;
    for seq in [walk, rev.as_slice()] {
        for s in 0..n {
            let cand: Vec<_> = seq[s..].iter().chain(&seq[..s]).copied().collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Traces all faces of an embedding.
///
/// Faces are orbits of the dart walk; the two orbits of a face (one per
/// direction) are merged. Output is sorted by canonical boundary, ties
/// broken by the least state index of the orbit pair.
pub fn trace_faces(g: &EmbeddedGraph) -> Vec<Face> {
    let n_states = g.edges.len() * 4;
    let mut orbit_of = vec![usize::MAX; n_states];
    let mut orbits: Vec<Vec<State>> = Vec::new();
    for start in 0..n_states {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = Vec::new();
        let mut s = State::from_index(start);
        loop {
            orbit_of[s.index()] = id;
            orbit.push(s);
            s = s.next(g);
            if s.index() == start {
                break;
            }
        }
        orbits.push(orbit);
    }

    let mut keyed: Vec<(Vec<(VertexId, EdgeId)>, usize, usize)> = Vec::new();
    for (id, orbit) in orbits.iter().enumerate() {
        let partner = orbit_of[orbit[0].mirror(g).index()];
        if partner < id {
            continue;
        }
        let walk: Vec<(VertexId, EdgeId)> = orbit.iter().map(|s| (s.tail(g), s.edge)).collect();
        let min_state = orbit
            .iter()
            .chain(&orbits[partner])
            .map(|s| s.index())
            .min()
            .unwrap_or(0);
        keyed.push((canonical_walk(&walk), min_state, id));
    }
    keyed.sort();

    keyed
        .into_iter()
        .enumerate()
        .map(|(fid, (boundary, _, _))| {
            let edges: BTreeSet<EdgeId> = boundary.iter().map(|&(_, e)| e).collect();
            let vertices: BTreeSet<VertexId> = boundary.iter().map(|&(v, _)| v).collect();
            let is_cycle = edges.len() == boundary.len() && vertices.len() == boundary.len();
            Face {
                id: fid,
                is_even: is_cycle && boundary.len() % 2 == 0,
                is_cycle,
                edges: edges.into_iter().collect(),
                vertices: vertices.into_iter().collect(),
                boundary,
            }
        })
        .collect()
}
