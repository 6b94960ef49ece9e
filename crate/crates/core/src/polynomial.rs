//! Zhang–Zhang (Clar covering) polynomial, cube polynomial, and the
//! correspondence between Clar covers and induced hypercubes.
//!
//! Two independent routes are computed here. The Zhang–Zhang side never
//! looks at the resonance graph: it counts perfect matchings of
//! face-deleted subgraphs of `G`. The cube side never looks at `G`: it
//! grows induced hypercubes of `R(G; F)` dimension by dimension.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::embedded::{EdgeId, EmbeddedGraph, EvenFaceSet, Face, FaceId};
use crate::matching::{enumerate_perfect_matchings_avoiding, Matching, MatchingCounter};
use crate::resonance::ResonanceGraph;

/// Polynomial with nonnegative integer coefficients, lowest degree first,
/// trailing zeros trimmed. The zero polynomial has no coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial(Vec<u64>);

impl IntegerPolynomial {
    pub fn new(mut coefficients: Vec<u64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        IntegerPolynomial(coefficients)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn coefficient(&self, degree: usize) -> u64 {
        self.0.get(degree).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: u64) -> u128 {
        self.0
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * x as u128 + c as u128)
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerPolynomial({self})")
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Pairwise vertex-disjoint faces plus a perfect matching of the rest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClarCover {
    pub faces: Vec<FaceId>,
    pub edges: Vec<EdgeId>,
}

/// Search over vertex-disjoint subsets of the face set. A subset whose
/// complement has no perfect matching is never extended: any cover of a
/// superset would alternate along the extra faces into a matching of it.
struct FaceSubsetSearch<'a> {
    faces: Vec<&'a Face>,
    conflicts: Vec<Vec<bool>>,
    removed: Vec<bool>,
    chosen: Vec<usize>,
}

impl<'a> FaceSubsetSearch<'a> {
    fn new(g: &'a EmbeddedGraph, set: &EvenFaceSet) -> Self {
        let faces: Vec<&Face> = set.face_ids.iter().map(|&f| &g.faces()[f]).collect();
        let conflicts = faces
            .iter()
            .map(|a| faces.iter().map(|b| a.shares_vertex_with(b)).collect())
            .collect();
        FaceSubsetSearch {
            faces,
            conflicts,
            removed: vec![false; g.n_vertices()],
            chosen: Vec::new(),
        }
    }

    /// Calls `visit(chosen faces, removed vertices)` for every disjoint
    /// subset whose residual graph passes `alive`.
    fn run(
        &mut self,
        max_size: usize,
        alive: &mut impl FnMut(&[usize], &[bool]) -> bool,
    ) {
        self.descend(0, max_size, alive);
    }

    fn descend(
        &mut self,
        from: usize,
        max_size: usize,
        alive: &mut impl FnMut(&[usize], &[bool]) -> bool,
    ) {
        if !alive(&self.chosen, &self.removed) || self.chosen.len() == max_size {
            return;
        }
        for i in from..self.faces.len() {
            if self.chosen.iter().any(|&j| self.conflicts[i][j]) {
                continue;
            }
            let face = self.faces[i];
            for &v in &face.vertices {
                self.removed[v] = true;
            }
            self.chosen.push(i);
            self.descend(i + 1, max_size, alive);
            self.chosen.pop();
            for &v in &face.vertices {
                self.removed[v] = false;
            }
        }
    }
}

/// `z_k` = number of Clar covers with exactly `k` faces from `set`.
pub fn zz_polynomial(g: &EmbeddedGraph, set: &EvenFaceSet) -> IntegerPolynomial {
    let mut counter = MatchingCounter::new(g);
    let mut z: Vec<u64> = Vec::new();
    let mut search = FaceSubsetSearch::new(g, set);
    search.run(usize::MAX, &mut |chosen, removed| {
        let c = counter.count(removed);
        if c > 0 {
            if z.len() <= chosen.len() {
                z.resize(chosen.len() + 1, 0);
            }
            z[chosen.len()] += c;
        }
        c > 0
    });
    IntegerPolynomial::new(z)
}

/// All Clar covers with exactly `k` faces, in canonical order.
pub fn enumerate_clar_covers(g: &EmbeddedGraph, set: &EvenFaceSet, k: usize) -> Vec<ClarCover> {
    if k > set.len() {
        return Vec::new();
    }
    let mut counter = MatchingCounter::new(g);
    let mut out = Vec::new();
    let ids = set.face_ids.clone();
    let mut search = FaceSubsetSearch::new(g, set);
    search.run(k, &mut |chosen, removed| {
        if counter.count(removed) == 0 {
            return false;
        }
        if chosen.len() == k {
            let faces: Vec<FaceId> = chosen.iter().map(|&i| ids[i]).collect();
            for m in enumerate_perfect_matchings_avoiding(g, removed) {
                out.push(ClarCover {
                    faces: faces.clone(),
                    edges: m.edges().to_vec(),
                });
            }
        }
        true
    });
    out.sort();
    out
}

/// An induced hypercube of the resonance graph. `coords[b]` is the vertex
/// at cube coordinate `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeSubgraph {
    pub dimension: usize,
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    pub coords: Vec<usize>,
}

impl CubeSubgraph {
    fn from_coords(dimension: usize, coords: Vec<usize>) -> Self {
        let mut vertices = coords.clone();
        vertices.sort_unstable();
        CubeSubgraph {
            dimension,
            vertices,
            coords,
        }
    }

    /// Face labels of the cube edges along each coordinate; a proper cube
    /// has one face per coordinate.
    pub fn coordinate_faces(&self, r: &ResonanceGraph) -> Vec<Vec<FaceId>> {
        (0..self.dimension)
            .map(|i| {
                let mut fs: Vec<FaceId> = (0..self.coords.len())
                    .filter(|b| b & (1 << i) == 0)
                    .filter_map(|b| r.edge_between(self.coords[b], self.coords[b | 1 << i]))
                    .map(|k| r.edges()[k].face)
                    .collect();
                fs.sort_unstable();
                fs.dedup();
                fs
            })
            .collect()
    }
}

/// Whether `vertices` induce exactly `dim * 2^(dim-1)` edges.
fn induces_cube_edge_count(r: &ResonanceGraph, vertices: &[usize], dim: usize) -> bool {
    let mut count = 0usize;
    for &v in vertices {
        for &(w, _) in r.neighbors(v) {
            if w > v && vertices.binary_search(&w).is_ok() {
                count += 1;
            }
        }
    }
    let expected = if dim == 0 { 0 } else { dim << (dim - 1) };
    count == expected
}

/// Induced `Q_k` subgraphs of `r`, one per vertex set, sorted by vertex set.
pub fn enumerate_induced_hypercubes(r: &ResonanceGraph, k: usize) -> Vec<CubeSubgraph> {
    let mut level: Vec<CubeSubgraph> = (0..r.n_vertices())
        .map(|v| CubeSubgraph::from_coords(0, vec![v]))
        .collect();
    for dim in 0..k {
        level = extend_cubes(r, &level, dim);
        if level.is_empty() {
            break;
        }
    }
    level
}

/// All induced-hypercube counts `α_0, α_1, ...`.
pub fn cube_polynomial(r: &ResonanceGraph) -> IntegerPolynomial {
    cube_levels(r).iter().map(|l| l.len() as u64).collect::<Vec<_>>().into()
}

/// Induced hypercubes of every dimension until none remain.
pub fn cube_levels(r: &ResonanceGraph) -> Vec<Vec<CubeSubgraph>> {
    let mut levels = Vec::new();
    let mut level: Vec<CubeSubgraph> = (0..r.n_vertices())
        .map(|v| CubeSubgraph::from_coords(0, vec![v]))
        .collect();
    let mut dim = 0;
    while !level.is_empty() {
        let next = extend_cubes(r, &level, dim);
        levels.push(level);
        level = next;
        dim += 1;
    }
    levels
}

impl From<Vec<u64>> for IntegerPolynomial {
    fn from(v: Vec<u64>) -> Self {
        IntegerPolynomial::new(v)
    }
}

/// Grows each induced `Q_dim` by a disjoint partner copy matched to it
/// coordinate by coordinate, keeping new vertex sets that induce `Q_{dim+1}`.
fn extend_cubes(r: &ResonanceGraph, level: &[CubeSubgraph], dim: usize) -> Vec<CubeSubgraph> {
    let size = 1usize << dim;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for cube in level {
        for &(w, _) in r.neighbors(cube.coords[0]) {
            if cube.vertices.binary_search(&w).is_ok() {
                continue;
            }
            let mut partner = vec![usize::MAX; size];
            partner[0] = w;
            extend_partner(r, cube, &mut partner, 1, &mut |partner| {
                let mut coords = cube.coords.clone();
                coords.extend_from_slice(partner);
                let grown = CubeSubgraph::from_coords(dim + 1, coords);
                if seen.insert(grown.vertices.clone()) && induces_cube_edge_count(r, &grown.vertices, dim + 1) {
                    out.push(grown);
                }
            });
        }
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

fn extend_partner(
    r: &ResonanceGraph,
    cube: &CubeSubgraph,
    partner: &mut Vec<usize>,
    b: usize,
    emit: &mut impl FnMut(&[usize]),
) {
    if b == partner.len() {
        emit(partner);
        return;
    }
    let low = b & b.wrapping_neg();
    let anchor = partner[b ^ low];
    for &(x, _) in r.neighbors(cube.coords[b]) {
        if cube.vertices.binary_search(&x).is_ok() || partner[..b].contains(&x) {
            continue;
        }
        if r.edge_between(anchor, x).is_none() {
            continue;
        }
        let mut bits = b ^ low;
        let mut ok = true;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            if r.edge_between(partner[b ^ bit], x).is_none() {
                ok = false;
                break;
            }
            bits ^= bit;
        }
        if ok {
            partner[b] = x;
            extend_partner(r, cube, partner, b + 1, emit);
            partner[b] = usize::MAX;
        }
    }
}

/// The two perfect matchings of an even cycle: boundary edges at even and
/// at odd walk positions.
fn cycle_halves(face: &Face) -> [Vec<EdgeId>; 2] {
    let mut halves = [Vec::new(), Vec::new()];
    for (i, &(_, e)) in face.boundary.iter().enumerate() {
        halves[i % 2].push(e);
    }
    halves
}

/// Image of a Clar cover: the matchings that keep the cover's edges and
/// alternate along each of its faces. Coordinate bit `i` picks the half of
/// the `i`-th face. `None` if some matching is missing from `r`.
pub fn mk_map(g: &EmbeddedGraph, r: &ResonanceGraph, cover: &ClarCover) -> Option<CubeSubgraph> {
    let k = cover.faces.len();
    let halves: Vec<[Vec<EdgeId>; 2]> = cover.faces.iter().map(|&f| cycle_halves(&g.faces()[f])).collect();
    let mut coords = Vec::with_capacity(1 << k);
    for b in 0..1usize << k {
        let mut edges = cover.edges.clone();
        for (i, h) in halves.iter().enumerate() {
            edges.extend_from_slice(&h[(b >> i) & 1]);
        }
        coords.push(r.vertex_of(&Matching::from_edges(edges))?);
    }
    Some(CubeSubgraph::from_coords(k, coords))
}

/// Recovers the Clar cover whose image is `cube`: the faces labeling its
/// edges plus the edges of any of its matchings away from those faces.
/// Returns the cover together with whether the faces were pairwise
/// vertex-disjoint.
pub fn invert_cube(g: &EmbeddedGraph, r: &ResonanceGraph, cube: &CubeSubgraph) -> Option<(ClarCover, bool)> {
    let per_coord = cube.coordinate_faces(r);
    if per_coord.iter().any(|fs| fs.len() != 1) {
        return None;
    }
    let mut faces: Vec<FaceId> = per_coord.into_iter().map(|fs| fs[0]).collect();
    faces.sort_unstable();
    let distinct = faces.windows(2).all(|w| w[0] != w[1]);
    let disjoint = distinct
        && faces.iter().enumerate().all(|(i, &a)| {
            faces[i + 1..]
                .iter()
                .all(|&b| !g.faces()[a].shares_vertex_with(&g.faces()[b]))
        });
    let mut on_face = vec![false; g.n_vertices()];
    for &f in &faces {
        for &v in &g.faces()[f].vertices {
            on_face[v] = true;
        }
    }
    let edges = r
        .matching(cube.coords[0])
        .edges()
        .iter()
        .copied()
        .filter(|&e| !on_face[g.edge(e).u] && !on_face[g.edge(e).v])
        .collect();
    Some((ClarCover { faces, edges }, disjoint))
}

/// Per-degree bijection evidence between Clar covers and induced cubes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub degree: usize,
    pub clar_covers: usize,
    pub cubes: usize,
    /// Every image is an induced cube and no two covers share an image.
    pub injective: bool,
    /// Every induced cube is the image of a cover recovered from it.
    pub surjective: bool,
    /// The faces labeling every induced cube are pairwise vertex-disjoint.
    pub disjoint_faces: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    /// `false` when the face set is all faces; equality is then not implied.
    pub hypothesis_holds: bool,
    pub zz: IntegerPolynomial,
    pub cube: IntegerPolynomial,
    pub equal: bool,
    pub degrees: Vec<DegreeCheck>,
}

impl EquivalenceReport {
    pub fn bijective(&self) -> bool {
        self.degrees.iter().all(|d| d.injective && d.surjective)
    }
}

/// Computes both polynomials independently and checks the cover-to-cube
/// map degree by degree.
pub fn check_equivalence(g: &EmbeddedGraph, set: &EvenFaceSet, r: &ResonanceGraph) -> EquivalenceReport {
    let zz = zz_polynomial(g, set);
    let levels = cube_levels(r);
    let cube: IntegerPolynomial = levels.iter().map(|l| l.len() as u64).collect::<Vec<_>>().into();
    let max_degree = zz.coefficients().len().max(levels.len());
    let mut degrees = Vec::with_capacity(max_degree);
    for k in 0..max_degree {
        let covers = enumerate_clar_covers(g, set, k);
        let empty = Vec::new();
        let cubes = levels.get(k).unwrap_or(&empty);
        let cube_sets: HashMap<&[usize], usize> = cubes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.vertices.as_slice(), i))
            .collect();

        let mut hit = vec![false; cubes.len()];
        let mut injective = true;
        for cover in &covers {
            match mk_map(g, r, cover).and_then(|img| cube_sets.get(img.vertices.as_slice()).copied()) {
                Some(i) if !hit[i] => hit[i] = true,
                _ => injective = false,
            }
        }

        let cover_set: HashSet<&ClarCover> = covers.iter().collect();
        let mut surjective = true;
        let mut disjoint_faces = true;
        for cube in cubes {
            match invert_cube(g, r, cube) {
                Some((cover, disjoint)) => {
                    disjoint_faces &= disjoint;
                    let maps_back = mk_map(g, r, &cover).is_some_and(|img| img.vertices == cube.vertices);
                    surjective &= cover_set.contains(&cover) && maps_back;
                }
                None => {
                    disjoint_faces = false;
                    surjective = false;
                }
            }
        }
        degrees.push(DegreeCheck {
            degree: k,
            clar_covers: covers.len(),
            cubes: cubes.len(),
            injective,
            surjective,
            disjoint_faces,
        });
    }
    EquivalenceReport {
        hypothesis_holds: set.is_proper_subset,
        equal: zz == cube,
        zz,
        cube,
        degrees,
    }
}

/// A 4-cycle `a b c d` of the resonance graph with its edge faces
/// `[ab, bc, cd, da]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourCycle {
    pub vertices: [usize; 4],
    pub faces: [FaceId; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourCycleReport {
    pub hypothesis_holds: bool,
    pub four_cycles: usize,
    /// 4-cycles whose opposite edges carry different faces, or whose two
    /// faces share a vertex.
    pub violations: Vec<FourCycle>,
}

impl FourCycleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every 4-cycle once, rooted at its least vertex with `b < d`.
pub fn four_cycles(r: &ResonanceGraph) -> Vec<FourCycle> {
    let mut out = Vec::new();
    for a in 0..r.n_vertices() {
        let nbrs: Vec<(usize, usize)> = r.neighbors(a).iter().copied().filter(|&(w, _)| w > a).collect();
        for (i, &(b, eab)) in nbrs.iter().enumerate() {
            for &(d, ead) in &nbrs[i + 1..] {
                for &(c, ebc) in r.neighbors(b) {
                    if c <= a || c == d {
                        continue;
                    }
                    if let Some(ecd) = r.edge_between(c, d) {
                        let f = |k: usize| r.edges()[k].face;
                        out.push(FourCycle {
                            vertices: [a, b, c, d],
                            faces: [f(eab), f(ebc), f(ecd), f(ead)],
                        });
                    }
                }
            }
        }
    }
    out
}

/// Checks that opposite edges of every 4-cycle share a face and that the
/// two faces are vertex-disjoint.
pub fn check_4cycle_lemma(g: &EmbeddedGraph, r: &ResonanceGraph) -> FourCycleReport {
    let cycles = four_cycles(r);
    let violations = cycles
        .iter()
        .filter(|c| {
            let [f0, f1, f2, f3] = c.faces;
            f0 != f2 || f1 != f3 || f0 == f1 || g.faces()[f0].shares_vertex_with(&g.faces()[f1])
        })
        .cloned()
        .collect();
    FourCycleReport {
        hypothesis_holds: r.face_set().is_proper_subset,
        four_cycles: cycles.len(),
        violations,
    }
}
