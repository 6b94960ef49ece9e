//! Bundled fixtures, graph families and seeded random instances.

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::embedded::{EdgeId, EmbeddedGraph, EmbeddingError, EvenFaceSet, FaceId, Sign, VertexId};
use crate::matching::MatchingCounter;

/// Upper bound on the number of perfect matchings of a generated instance.
pub const MAX_GENERATED_MATCHINGS: u64 = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("instance has {count} perfect matchings, above the limit of {limit}")]
    SizeBound { count: u64, limit: u64 },
    #[error("invalid size for {kind}: {reason}")]
    InvalidSize { kind: GeneratorKind, reason: String },
    #[error("unknown generator kind '{0}'")]
    UnknownKind(String),
    #[error("unknown face set '{0}'")]
    UnknownFaceSet(String),
    #[error("invalid face selector '{0}'")]
    BadSelector(String),
    #[error("unknown instance '{0}'")]
    UnknownInstance(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// A named graph with designated face sets and optional frozen results.
#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub name: String,
    pub description: String,
    pub graph: EmbeddedGraph,
    /// Human labels for faces (`f1`, `h7`, `outer`, ...).
    pub face_labels: Vec<(String, FaceId)>,
    pub face_sets: Vec<NamedFaceSet>,
    pub expected: Vec<Expected>,
    /// Set when the fixture is a reconstruction of a drawing rather than
    /// an exactly specified graph.
    pub reconstructed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedFaceSet {
    pub name: String,
    pub faces: Vec<FaceId>,
}

/// Frozen regression values for one face set of a fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub face_set: String,
    pub matchings: usize,
    pub resonance_edges: usize,
    pub components: usize,
    pub zz: Vec<u64>,
    pub cube: Vec<u64>,
}

impl CorpusInstance {
    /// An unlabeled instance with no named face sets, e.g. read from a file.
    pub fn from_graph(name: &str, graph: EmbeddedGraph) -> Self {
        CorpusInstance::new(name, "", graph)
    }

    fn new(name: &str, description: &str, graph: EmbeddedGraph) -> Self {
        CorpusInstance {
            name: name.into(),
            description: description.into(),
            graph,
            face_labels: Vec::new(),
            face_sets: Vec::new(),
            expected: Vec::new(),
            reconstructed: false,
        }
    }

    fn label(mut self, name: &str, face: FaceId) -> Self {
        self.face_labels.push((name.into(), face));
        self
    }

    fn set(mut self, name: &str, faces: impl IntoIterator<Item = FaceId>) -> Self {
        let faces: BTreeSet<FaceId> = faces.into_iter().collect();
        self.face_sets.push(NamedFaceSet {
            name: name.into(),
            faces: faces.into_iter().collect(),
        });
        self
    }

    fn expect(mut self, face_set: &str, counts: (usize, usize, usize), zz: &[u64], cube: &[u64]) -> Self {
        self.expected.push(Expected {
            face_set: face_set.into(),
            matchings: counts.0,
            resonance_edges: counts.1,
            components: counts.2,
            zz: zz.to_vec(),
            cube: cube.to_vec(),
        });
        self
    }

    pub fn face_by_label(&self, label: &str) -> Option<FaceId> {
        self.face_labels.iter().find(|(l, _)| l == label).map(|&(_, f)| f)
    }

    pub fn face_label(&self, face: FaceId) -> Option<&str> {
        self.face_labels.iter().find(|&&(_, f)| f == face).map(|(l, _)| l.as_str())
    }

    /// Resolves a named set first, then falls back to a generic selector.
    pub fn select(&self, selector: &str) -> Result<EvenFaceSet, CorpusError> {
        if let Some(set) = self.face_sets.iter().find(|s| s.name == selector) {
            return Ok(self.graph.validate_even_face_set(set.faces.iter().copied())?);
        }
        let sel: FaceSelector = selector.parse()?;
        sel.resolve(&self.graph)
    }
}

/// How a face set is chosen on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceSelector {
    AllEven,
    AllEvenExcept(FaceId),
    Ids(Vec<FaceId>),
}

impl FromStr for FaceSelector {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "all-even" {
            return Ok(FaceSelector::AllEven);
        }
        if let Some(rest) = s.strip_prefix("all-even-except") {
            let id = rest
                .trim_start_matches([' ', ':', '='])
                .trim()
                .parse()
                .map_err(|_| CorpusError::BadSelector(s.into()))?;
            return Ok(FaceSelector::AllEvenExcept(id));
        }
        if s.is_empty() || s == "none" {
            return Ok(FaceSelector::Ids(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse::<FaceId>())
            .collect::<Result<Vec<_>, _>>()
            .map(FaceSelector::Ids)
            .map_err(|_| CorpusError::BadSelector(s.into()))
    }
}

impl FaceSelector {
    pub fn resolve(&self, g: &EmbeddedGraph) -> Result<EvenFaceSet, CorpusError> {
        let ids = match self {
            FaceSelector::AllEven => g.even_faces(),
            FaceSelector::AllEvenExcept(x) => {
                if *x >= g.faces().len() {
                    return Err(EmbeddingError::UnknownFaceId(*x).into());
                }
                g.even_faces().into_iter().filter(|f| f != x).collect()
            }
            FaceSelector::Ids(ids) => ids.clone(),
        };
        Ok(g.validate_even_face_set(ids)?)
    }
}

/// Plane embedding of a straight-line drawing: rotations follow the
/// counterclockwise order of neighbours around each point.
pub fn planar_from_points(points: &[(f64, f64)], pairs: &[(VertexId, VertexId)]) -> Result<EmbeddedGraph, EmbeddingError> {
    let n = points.len();
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (i, u, v, Sign::Plus))
        .collect();
    let mut rotations: Vec<Vec<(f64, EdgeId)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if u >= n || v >= n {
            return Err(EmbeddingError::VertexOutOfRange { vertex: u.max(v), n });
        }
        let angle = |a: VertexId, b: VertexId| (points[b].1 - points[a].1).atan2(points[b].0 - points[a].0);
        rotations[u].push((angle(u, v), i));
        rotations[v].push((angle(v, u), i));
    }
    let rotations = rotations
        .into_iter()
        .map(|mut r| {
            r.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            r.into_iter().map(|(_, e)| e).collect()
        })
        .collect();
    EmbeddedGraph::build(n, &edges, rotations)
}

/// Face whose boundary is a cycle on exactly `vertices`, lowest id first.
pub fn face_with_vertices(g: &EmbeddedGraph, vertices: &[VertexId]) -> Option<FaceId> {
    let mut want = vertices.to_vec();
    want.sort_unstable();
    want.dedup();
    g.faces()
        .iter()
        .find(|f| f.is_cycle && f.vertices == want)
        .map(|f| f.id)
}

fn longest_face(g: &EmbeddedGraph) -> FaceId {
    g.faces()
        .iter()
        .max_by_key(|f| (f.len(), std::cmp::Reverse(f.id)))
        .map(|f| f.id)
        .expect("graph has faces")
}

/// `rows × cols` grid drawn in the plane; vertex `r * cols + c`.
pub fn grid_plane(rows: usize, cols: usize) -> Result<EmbeddedGraph, EmbeddingError> {
    let idx = |r: usize, c: usize| r * cols + c;
    let points: Vec<_> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (c as f64, -(r as f64))))
        .collect();
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if r + 1 < rows {
                pairs.push((idx(r, c), idx(r + 1, c)));
            }
            if c + 1 < cols {
                pairs.push((idx(r, c), idx(r, c + 1)));
            }
        }
    }
    planar_from_points(&points, &pairs)
}

/// `C_cols × P_rows` drawn as concentric rings joined by spokes.
pub fn grid_cylinder(rows: usize, cols: usize) -> Result<EmbeddedGraph, EmbeddingError> {
    let idx = |r: usize, c: usize| r * cols + c;
    let points: Vec<_> = (0..rows)
        .flat_map(|r| {
            (0..cols).map(move |c| {
                let a = 2.0 * PI * c as f64 / cols as f64;
                let rad = (r + 1) as f64;
                (rad * a.cos(), rad * a.sin())
            })
        })
        .collect();
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            pairs.push((idx(r, c), idx(r, (c + 1) % cols)));
            if r + 1 < rows {
                pairs.push((idx(r, c), idx(r + 1, c)));
            }
        }
    }
    planar_from_points(&points, &pairs)
}

/// `C_rows × C_cols` on the torus, all faces quadrilaterals.
pub fn grid_torus(rows: usize, cols: usize) -> Result<EmbeddedGraph, EmbeddingError> {
    let idx = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    // horizontal edge of (r,c) is 2*idx, vertical is 2*idx+1
    for r in 0..rows {
        for c in 0..cols {
            let i = idx(r, c);
            edges.push((2 * i, i, idx(r, (c + 1) % cols), Sign::Plus));
            edges.push((2 * i + 1, i, idx((r + 1) % rows, c), Sign::Plus));
        }
    }
    let rotations = (0..rows)
        .flat_map(|r| {
            (0..cols).map(move |c| {
                let right = 2 * idx(r, c);
                let down = 2 * idx(r, c) + 1;
                let left = 2 * idx(r, (c + cols - 1) % cols);
                let up = 2 * idx((r + rows - 1) % rows, c) + 1;
                vec![right, up, left, down]
            })
        })
        .collect();
    EmbeddedGraph::build(rows * cols, &edges, rotations)
}

/// Hexagonal cells in axial coordinates; returns the plane graph and, for
/// each cell, its six vertices.
pub fn benzenoid(cells: &[(i32, i32)]) -> Result<(EmbeddedGraph, Vec<Vec<VertexId>>), EmbeddingError> {
    let mut index: HashMap<(i64, i64), VertexId> = HashMap::new();
    let mut points = Vec::new();
    let mut pairs = BTreeSet::new();
    let mut cell_vertices = Vec::new();
    for &(q, r) in cells {
        let cx = 3f64.sqrt() * (q as f64 + r as f64 / 2.0);
        let cy = 1.5 * r as f64;
        let corners: Vec<VertexId> = (0..6)
            .map(|i| {
                let a = PI / 6.0 + PI / 3.0 * i as f64;
                let (x, y) = (cx + a.cos(), cy + a.sin());
                let key = ((x * 1000.0).round() as i64, (y * 1000.0).round() as i64);
                *index.entry(key).or_insert_with(|| {
                    points.push((x, y));
                    points.len() - 1
                })
            })
            .collect();
        for i in 0..6 {
            let (a, b) = (corners[i], corners[(i + 1) % 6]);
            pairs.insert((a.min(b), a.max(b)));
        }
        cell_vertices.push(corners);
    }
    let pairs: Vec<_> = pairs.into_iter().collect();
    Ok((planar_from_points(&points, &pairs)?, cell_vertices))
}

const HEX_DIRECTIONS: [(i32, i32); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];

/// The cycle `C_n` in the plane.
pub fn cycle_graph(n: usize) -> EmbeddedGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, i, (i + 1) % n, Sign::Plus)).collect();
    let rotations = (0..n).map(|i| vec![(i + n - 1) % n, i]).collect();
    EmbeddedGraph::build(n, &edges, rotations).expect("cycle is valid")
}

/// K4 in the projective plane: three quadrilateral faces.
pub fn k4_projective() -> EmbeddedGraph {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (i, u, v, if i == 1 || i == 4 { Sign::Minus } else { Sign::Plus }))
        .collect();
    let rotations = vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 3, 5], vec![2, 4, 5]];
    EmbeddedGraph::build(4, &edges, rotations).expect("projective K4 is valid")
}

fn ladder(n: usize, name: &str, description: &str) -> CorpusInstance {
    let g = grid_plane(2, n).expect("grid is valid");
    let mut inst = CorpusInstance::new(name, description, g);
    let mut squares = Vec::new();
    for c in 0..n - 1 {
        let f = face_with_vertices(&inst.graph, &[c, c + 1, n + c, n + c + 1]).expect("square face");
        inst = inst.label(&format!("f{}", c + 1), f);
        squares.push(f);
    }
    let outer = longest_face(&inst.graph);
    inst.label(&format!("f{n}"), outer)
        .set("inner", squares)
        .set("all", 0..n)
}

/// The bundled fixtures, sorted by name.
pub fn builtin_corpus() -> Vec<CorpusInstance> {
    let mut out = Vec::new();

    let k2 = EmbeddedGraph::build(2, &[(0, 0, 1, Sign::Plus)], vec![vec![0], vec![0]]).expect("K2");
    out.push(
        CorpusInstance::new("k2-sphere", "single edge on the sphere", k2)
            .set("all-even", [])
            .expect("all-even", (1, 0, 1), &[1], &[1]),
    );

    out.push(
        CorpusInstance::new("c6", "hexagon in the plane", cycle_graph(6))
            .label("inner", 0)
            .label("outer", 1)
            .set("inner", [0])
            .set("all", [0, 1])
            .expect("inner", (2, 1, 1), &[2, 1], &[2, 1]),
    );

    out.push(
        ladder(3, "ladder3", "2x3 grid in the plane; triangle resonance graph on all faces")
            .expect("inner", (3, 2, 1), &[3, 2], &[3, 2])
            .expect("all", (3, 3, 1), &[3, 3], &[3, 3]),
    );
    out.push(
        ladder(4, "ladder4", "2x4 grid in the plane; 4-cycle counterexample on all faces")
            .expect("inner", (5, 5, 1), &[5, 5, 1], &[5, 5, 1])
            .expect("all", (5, 6, 1), &[5, 6, 1], &[5, 6, 3]),
    );

    let mut cells = vec![(0, 0)];
    cells.extend(HEX_DIRECTIONS.iter().copied());
    let (g, cell_vertices) = benzenoid(&cells).expect("coronene");
    let mut coronene = CorpusInstance::new(
        "coronene",
        "six hexagons around a central one (reconstructed from a drawing)",
        g,
    );
    coronene.reconstructed = true;
    let mut hexagons = Vec::new();
    // ring hexagons are h1..h6, the central one is h7
    for (i, verts) in cell_vertices.iter().enumerate().skip(1).chain(cell_vertices.iter().enumerate().take(1)) {
        let f = face_with_vertices(&coronene.graph, verts).expect("hexagon face");
        let label = if i == 0 { 7 } else { i };
        coronene = coronene.label(&format!("h{label}"), f);
        hexagons.push(f);
    }
    let outer = longest_face(&coronene.graph);
    let n_faces = coronene.graph.faces().len();
    out.push(
        coronene
            .label("outer", outer)
            .set("inner7", hexagons)
            .set("all", 0..n_faces)
            .expect("inner7", (20, 32, 1), &[20, 32, 15, 2], &[20, 32, 15, 2]),
    );

    let torus = grid_torus(4, 4).expect("torus grid");
    out.push(
        CorpusInstance::new("c4xc4-torus", "4x4 toroidal grid", torus)
            .set("all-even-minus-one", 1..16)
            .set("all", 0..16)
            .expect("all-even-minus-one", (272, 480, 17), &[272, 480, 294, 78, 9], &[272, 480, 294, 78, 9]),
    );

    let cyl = grid_cylinder(2, 6).expect("cylinder");
    let quads: Vec<FaceId> = cyl.faces().iter().filter(|f| f.len() == 4).map(|f| f.id).collect();
    let hexes: Vec<FaceId> = cyl.faces().iter().filter(|f| f.len() == 6).map(|f| f.id).collect();
    let mut cylinder = CorpusInstance::new("c6xp2-cylinder", "hexagonal prism: C6 x P2 as a capped cylinder", cyl)
        .set("quads", quads.iter().copied())
        .set("all-even-minus-one", (0..8).filter(|&f| f != hexes[1]));
    cylinder = cylinder
        .label("cap-inner", hexes[0])
        .label("cap-outer", hexes[1])
        .expect("quads", (20, 30, 3), &[20, 30, 15, 2], &[20, 30, 15, 2])
        .expect("all-even-minus-one", (20, 32, 1), &[20, 32, 15, 2], &[20, 32, 15, 2]);
    out.push(cylinder);

    out.push(
        CorpusInstance::new("k4-projective", "K4 in the projective plane, three quadrilateral faces", k4_projective())
            .set("two", [0, 1])
            .set("all", [0, 1, 2])
            .expect("two", (3, 2, 1), &[3, 2], &[3, 2]),
    );

    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn builtin_instance(name: &str) -> Result<CorpusInstance, CorpusError> {
    builtin_corpus()
        .into_iter()
        .find(|i| i.name == name)
        .ok_or_else(|| CorpusError::UnknownInstance(name.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    GridPlane,
    GridCylinder,
    GridTorus,
    BenzenoidPatch,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] = [
        GeneratorKind::GridPlane,
        GeneratorKind::GridCylinder,
        GeneratorKind::GridTorus,
        GeneratorKind::BenzenoidPatch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::GridPlane => "grid-plane",
            GeneratorKind::GridCylinder => "grid-cylinder",
            GeneratorKind::GridTorus => "grid-torus",
            GeneratorKind::BenzenoidPatch => "benzenoid-patch",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CorpusError::UnknownKind(s.into()))
    }
}

/// Instance size: `rows x cols` for grids, a hexagon count for benzenoids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSize {
    Grid { rows: usize, cols: usize },
    Cells(usize),
}

impl FromStr for GeneratorSize {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CorpusError::BadSelector(format!("size '{s}'"));
        match s.split_once('x') {
            Some((r, c)) => Ok(GeneratorSize::Grid {
                rows: r.trim().parse().map_err(|_| bad())?,
                cols: c.trim().parse().map_err(|_| bad())?,
            }),
            None => Ok(GeneratorSize::Cells(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for GeneratorSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSize::Grid { rows, cols } => write!(f, "{rows}x{cols}"),
            GeneratorSize::Cells(n) => write!(f, "{n}"),
        }
    }
}

/// A random unbranched catacondensed chain of `n` hexagons.
fn random_hexagon_chain(n: usize, rng: &mut ChaCha8Rng) -> Vec<(i32, i32)> {
    'attempt: loop {
        let mut cells = vec![(0, 0)];
        while cells.len() < n {
            let last = *cells.last().expect("non-empty");
            let candidates: Vec<(i32, i32)> = HEX_DIRECTIONS
                .iter()
                .map(|&(dq, dr)| (last.0 + dq, last.1 + dr))
                .filter(|c| {
                    !cells.contains(c)
                        && cells[..cells.len() - 1].iter().all(|&o| {
                            !HEX_DIRECTIONS.iter().any(|&(dq, dr)| (o.0 + dq, o.1 + dr) == *c)
                        })
                })
                .collect();
            match candidates.choose(rng) {
                Some(&c) => cells.push(c),
                None => continue 'attempt,
            }
        }
        return cells;
    }
}

/// Deterministic random instance for `(kind, size, seed)`.
///
/// Besides the graph, the instance carries a face set named `random`: a
/// seeded subset of the even faces that is never the set of all faces.
pub fn generate_random(kind: GeneratorKind, size: GeneratorSize, seed: u64) -> Result<CorpusInstance, CorpusError> {
    let invalid = |reason: &str| CorpusError::InvalidSize {
        kind,
        reason: reason.into(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = match (kind, size) {
        (GeneratorKind::GridPlane, GeneratorSize::Grid { rows, cols }) => {
            if rows < 1 || cols < 1 || rows * cols < 2 {
                return Err(invalid("grid needs at least two vertices"));
            }
            grid_plane(rows, cols)?
        }
        (GeneratorKind::GridCylinder, GeneratorSize::Grid { rows, cols }) => {
            if rows < 1 || cols < 3 {
                return Err(invalid("cylinder needs at least one ring of length >= 3"));
            }
            grid_cylinder(rows, cols)?
        }
        (GeneratorKind::GridTorus, GeneratorSize::Grid { rows, cols }) => {
            if rows < 4 || cols < 4 || rows % 2 == 1 || cols % 2 == 1 {
                return Err(invalid("torus grids must be even x even with both sides >= 4"));
            }
            grid_torus(rows, cols)?
        }
        (GeneratorKind::BenzenoidPatch, GeneratorSize::Cells(n)) => {
            if n < 1 {
                return Err(invalid("need at least one hexagon"));
            }
            benzenoid(&random_hexagon_chain(n, &mut rng))?.0
        }
        _ => return Err(invalid("grids take RxC, benzenoid patches take a hexagon count")),
    };

    let count = MatchingCounter::new(&graph).count(&vec![false; graph.n_vertices()]);
    if count > MAX_GENERATED_MATCHINGS {
        return Err(CorpusError::SizeBound {
            count,
            limit: MAX_GENERATED_MATCHINGS,
        });
    }

    let even = graph.even_faces();
    let mut chosen: Vec<FaceId> = even.iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
    if chosen.len() == graph.faces().len() {
        let drop = rng.gen_range(0..chosen.len());
        chosen.remove(drop);
    }
    let name = format!("{kind}-{size}-s{seed}");
    let description = format!("generated {kind} of size {size} with seed {seed}");
    Ok(CorpusInstance::new(&name, &description, graph)
        .set("random", chosen)
        .set("all-even", even))
}
