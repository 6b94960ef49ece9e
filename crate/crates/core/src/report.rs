//! One JSON document per (instance, face set) with every check, plus the
//! median search used by `hunt`.
//!
//! Checks whose outcome is a theorem for proper face sets are *asserted*:
//! a failure makes the verdict fail. A face set holding every face is
//! refused unless explicitly allowed; the same checks then run and list
//! what breaks. Isometry, partial-cube and median status are evidence and
//! never affect the verdict.

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{generate_random, CorpusError, CorpusInstance, GeneratorKind, GeneratorSize};
use crate::cube::{
    component_face_subgraph, compute_labeling, isometry_violations, verify_induced_embedding, CubeLabeling,
    EmbeddingReport, FaceSubgraphCheck, IsometryWitness,
};
use crate::embedded::{EmbeddedGraph, EvenFaceSet, FaceId};
use crate::matching::enumerate_perfect_matchings;
use crate::metric::{is_partial_cube, median_witness, MedianWitness, SimpleGraph};
use crate::polynomial::{check_4cycle_lemma, check_equivalence, EquivalenceReport, FourCycleReport, IntegerPolynomial};
use crate::resonance::{Component, ResonanceGraph};

pub const SCHEMA_VERSION: u32 = 1;

/// Components above these sizes skip the cubic metric tests.
pub const DEFAULT_PARTIAL_CUBE_LIMIT: usize = 400;
pub const DEFAULT_MEDIAN_LIMIT: usize = 200;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("face set '{0}' contains every face of the graph")]
    HypothesisViolated(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub allow_full_face_set: bool,
    pub partial_cube_limit: usize,
    pub median_limit: usize,
    /// Include per-vertex labels and matchings.
    pub include_labels: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            allow_full_face_set: false,
            partial_cube_limit: DEFAULT_PARTIAL_CUBE_LIMIT,
            median_limit: DEFAULT_MEDIAN_LIMIT,
            include_labels: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub instance: String,
    pub face_set: FaceSetSummary,
    pub graph: GraphSummary,
    pub faces: Vec<FaceSummary>,
    pub matchings: usize,
    pub resonance: ResonanceSummary,
    pub components: Vec<ComponentReport>,
    pub polynomials: Polynomials,
    pub equivalence: EquivalenceReport,
    pub four_cycle_lemma: FourCycleReport,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceSetSummary {
    pub name: String,
    pub faces: Vec<FaceId>,
    pub labels: Vec<String>,
    pub proper_subset: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_genus: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceSummary {
    pub id: FaceId,
    pub label: Option<String>,
    pub length: usize,
    pub is_cycle: bool,
    pub is_even: bool,
    pub in_set: bool,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResonanceSummary {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub bipartite: bool,
    /// Odd closed walk when not bipartite.
    pub odd_cycle: Option<Vec<usize>>,
    pub shared_pairs: usize,
    pub edge_faces: Vec<(usize, usize, FaceId)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub id: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: Vec<FaceId>,
    /// Fundamental cycles with some face used an odd number of times.
    pub odd_parity_cycles: Vec<Vec<usize>>,
    pub classes: Vec<ClassReport>,
    pub labeling: Option<LabelingSummary>,
    pub labeling_error: Option<String>,
    pub embedding: Option<EmbeddingReport>,
    pub isometry: Status<IsometryWitness>,
    pub isometry_violations: usize,
    pub partial_cube: Status<()>,
    pub median: Status<MedianWitness>,
    pub face_subgraph: FaceSubgraphSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub face: FaceId,
    pub edges: usize,
    pub parts: usize,
    /// Every class edge joins two different parts of `H \ E_i`.
    pub separates: bool,
    pub quotient_bipartite: bool,
    pub sides: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelingSummary {
    pub dimension: usize,
    pub labels: Option<Vec<(usize, String)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceSubgraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub passed: bool,
    pub failing_matching: Option<usize>,
}

impl From<FaceSubgraphCheck> for FaceSubgraphSummary {
    fn from(c: FaceSubgraphCheck) -> Self {
        FaceSubgraphSummary {
            vertices: c.vertices.len(),
            edges: c.edges.len(),
            passed: c.passed,
            failing_matching: c.failing_matching,
        }
    }
}

/// Outcome of an evidence test that may be skipped on large inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "kebab-case")]
pub enum Status<W> {
    Pass,
    Fail(W),
    Skipped,
    /// Not applicable, e.g. no labeling exists.
    Unavailable,
}

impl<W> Status<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail(_))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Polynomials {
    pub zz: IntegerPolynomial,
    pub cube: IntegerPolynomial,
    pub zz_text: String,
    pub cube_text: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    /// The face set is a proper subset of the faces. When false, the
    /// violations below are expected findings rather than contradictions.
    pub hypothesis_holds: bool,
    pub passed: bool,
    pub violations: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Report for a named face set (or generic selector) of an instance.
pub fn run_report(instance: &CorpusInstance, selector: &str, opts: &ReportOptions) -> Result<Report, ReportError> {
    let set = instance.select(selector)?;
    let labels: Vec<Option<String>> = (0..instance.graph.faces().len())
        .map(|f| instance.face_label(f).map(str::to_string))
        .collect();
    report_for(&instance.name, selector, &instance.graph, &set, &labels, opts)
}

/// Report for an arbitrary graph and face set; `face_labels[f]` names face `f`.
pub fn report_for(
    name: &str,
    set_name: &str,
    g: &EmbeddedGraph,
    set: &EvenFaceSet,
    face_labels: &[Option<String>],
    opts: &ReportOptions,
) -> Result<Report, ReportError> {
    if !set.is_proper_subset && !opts.allow_full_face_set {
        return Err(ReportError::HypothesisViolated(set_name.into()));
    }
    let label_of = |f: FaceId| face_labels.get(f).cloned().flatten();
    let r = ResonanceGraph::from_matchings(g, set, enumerate_perfect_matchings(g));

    let faces = g
        .faces()
        .iter()
        .map(|f| FaceSummary {
            id: f.id,
            label: label_of(f.id),
            length: f.len(),
            is_cycle: f.is_cycle,
            is_even: f.is_even,
            in_set: set.contains(f.id),
            vertices: f.vertices.clone(),
        })
        .collect();

    let coloring = r.two_coloring();
    let comps = r.components();
    let resonance = ResonanceSummary {
        vertices: r.n_vertices(),
        edges: r.n_edges(),
        components: comps.len(),
        bipartite: coloring.is_ok(),
        odd_cycle: coloring.err(),
        shared_pairs: r.shared_pairs(),
        edge_faces: r.edges().iter().map(|e| (e.a, e.b, e.face)).collect(),
    };

    let components: Vec<ComponentReport> = comps.iter().map(|h| component_report(g, &r, h, opts)).collect();
    let equivalence = check_equivalence(g, set, &r);
    let four_cycle_lemma = check_4cycle_lemma(g, &r);
    let polynomials = Polynomials {
        zz_text: equivalence.zz.to_string(),
        cube_text: equivalence.cube.to_string(),
        zz: equivalence.zz.clone(),
        cube: equivalence.cube.clone(),
        equal: equivalence.equal,
    };

    let mut failures = Vec::new();
    if !resonance.bipartite {
        failures.push("resonance graph is not bipartite".to_string());
    }
    for c in &components {
        let tag = format!("component {}", c.id);
        if !c.odd_parity_cycles.is_empty() {
            failures.push(format!("{tag}: fundamental cycle with odd face count"));
        }
        for cl in &c.classes {
            if !cl.separates {
                failures.push(format!("{tag}: class of face {} does not separate", cl.face));
            }
            if !cl.quotient_bipartite {
                failures.push(format!("{tag}: quotient of face {} is not bipartite", cl.face));
            }
        }
        match &c.embedding {
            Some(e) if !e.passed() => failures.push(format!("{tag}: labeling is not an induced embedding")),
            None => failures.push(format!("{tag}: no labeling")),
            _ => {}
        }
        if !c.face_subgraph.passed {
            failures.push(format!("{tag}: matching restriction to the face subgraph is not perfect"));
        }
    }
    if !equivalence.equal {
        failures.push("zz and cube polynomials differ".to_string());
    }
    if !equivalence.bijective() {
        failures.push("cover-to-cube map is not a bijection".to_string());
    }
    if !four_cycle_lemma.passed() {
        failures.push(format!("{} four-cycles violate the opposite-face rule", four_cycle_lemma.violations.len()));
    }

    let verdict = Verdict {
        hypothesis_holds: set.is_proper_subset,
        passed: failures.is_empty(),
        violations: failures,
    };

    Ok(Report {
        schema: SCHEMA_VERSION,
        instance: name.into(),
        face_set: FaceSetSummary {
            name: set_name.into(),
            faces: set.face_ids.clone(),
            labels: set
                .face_ids
                .iter()
                .map(|&f| label_of(f).unwrap_or_else(|| f.to_string()))
                .collect(),
            proper_subset: set.is_proper_subset,
        },
        graph: GraphSummary {
            vertices: g.n_vertices(),
            edges: g.n_edges(),
            faces: g.faces().len(),
            euler_genus: g.euler_genus().ok(),
        },
        faces,
        matchings: r.n_vertices(),
        resonance,
        components,
        polynomials,
        equivalence,
        four_cycle_lemma,
        verdict,
    })
}

fn component_report(g: &EmbeddedGraph, r: &ResonanceGraph, h: &Component, opts: &ReportOptions) -> ComponentReport {
    let odd_parity_cycles = r
        .fundamental_cycles(h)
        .into_iter()
        .filter(|c| {
            r.check_cycle_face_parity(c)
                .map_or(true, |counts| counts.values().any(|&n| n % 2 == 1))
        })
        .collect();

    let classes = h
        .face_classes
        .iter()
        .map(|(&face, class)| {
            let parts = r.delete_class_components(h, face).expect("face of component");
            let mut part_of = std::collections::HashMap::new();
            for (p, part) in parts.iter().enumerate() {
                for &v in part {
                    part_of.insert(v, p);
                }
            }
            let separates = class.iter().all(|&k| {
                let e = r.edges()[k];
                part_of[&e.a] != part_of[&e.b]
            });
            let q = r.quotient_graph(h, face);
            ClassReport {
                face,
                edges: class.len(),
                parts: parts.len(),
                separates,
                quotient_bipartite: q.is_ok(),
                sides: q.ok().map(|q| q.side_sizes()),
            }
        })
        .collect();

    let labeling = compute_labeling(r, h);
    let (labeling_summary, labeling_error, embedding, isometry, isometry_count) = match &labeling {
        Ok(lab) => {
            let emb = verify_induced_embedding(r, h, lab);
            let violations = isometry_violations(r, h, lab);
            let status = match violations.first() {
                None => Status::Pass,
                Some(w) => Status::Fail(w.clone()),
            };
            (
                Some(summarize(h, lab, opts.include_labels)),
                None,
                Some(emb),
                status,
                violations.len(),
            )
        }
        Err(e) => (None, Some(e.to_string()), None, Status::Unavailable, 0),
    };

    let sg = SimpleGraph::from_component(r, h);
    let partial_cube = if sg.len() > opts.partial_cube_limit {
        Status::Skipped
    } else if is_partial_cube(&sg) {
        Status::Pass
    } else {
        Status::Fail(())
    };
    let median = if sg.len() > opts.median_limit {
        Status::Skipped
    } else {
        match median_witness(&sg) {
            None => Status::Pass,
            Some(mut w) => {
                for x in w.triple.iter_mut() {
                    *x = h.vertices[*x];
                }
                for x in w.medians.iter_mut() {
                    *x = h.vertices[*x];
                }
                Status::Fail(w)
            }
        }
    };

    ComponentReport {
        id: h.id,
        vertices: h.vertices.len(),
        edges: h.edges.len(),
        faces: h.face_list(),
        odd_parity_cycles,
        classes,
        labeling: labeling_summary,
        labeling_error,
        embedding,
        isometry,
        isometry_violations: isometry_count,
        partial_cube,
        median,
        face_subgraph: component_face_subgraph(g, r, h).into(),
    }
}

fn summarize(h: &Component, lab: &CubeLabeling, include: bool) -> LabelingSummary {
    LabelingSummary {
        dimension: lab.dimension(),
        labels: include.then(|| {
            h.vertices
                .iter()
                .zip(&lab.labels)
                .map(|(&v, l)| (v, l.to_string()))
                .collect()
        }),
    }
}

/// Median status of one component found by [`hunt`].
#[derive(Clone, Debug, Serialize)]
pub struct HuntComponent {
    pub component: usize,
    pub vertices: usize,
    pub median: Status<MedianWitness>,
    pub partial_cube: Status<()>,
    pub induced_embedding: bool,
    /// median => partial cube => induced embedding holds here.
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HuntInstance {
    pub instance: String,
    pub face_set: Vec<FaceId>,
    pub components: Vec<HuntComponent>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HuntReport {
    pub schema: u32,
    pub kind: GeneratorKind,
    pub instances: Vec<HuntInstance>,
    /// `(size, seed, reason)` for sizes the generator rejected.
    pub rejected: Vec<(String, u64, String)>,
    pub components_checked: usize,
    pub non_median: usize,
    pub consistent: bool,
}

/// Sizes from smallest to `max` for a generator kind. Grids are square-ish
/// `r x c` with `r <= c <= max`; patches are `1..=max` hexagons.
pub fn hunt_sizes(kind: GeneratorKind, max: usize) -> Vec<GeneratorSize> {
    match kind {
        GeneratorKind::BenzenoidPatch => (1..=max).map(GeneratorSize::Cells).collect(),
        GeneratorKind::GridTorus => (4..=max)
            .step_by(2)
            .flat_map(|r| (r..=max).step_by(2).map(move |c| GeneratorSize::Grid { rows: r, cols: c }))
            .collect(),
        GeneratorKind::GridCylinder => (1..=max)
            .flat_map(|r| (3..=max).map(move |c| GeneratorSize::Grid { rows: r, cols: c }))
            .collect(),
        GeneratorKind::GridPlane => (1..=max)
            .flat_map(|r| (r..=max).map(move |c| GeneratorSize::Grid { rows: r, cols: c }))
            .filter(|s| matches!(s, GeneratorSize::Grid { rows, cols } if rows * cols >= 2))
            .collect(),
    }
}

/// Median-graph status of every component of `R(G; random)` for one
/// generated instance.
pub fn hunt_instance(instance: &CorpusInstance, opts: &ReportOptions) -> Result<HuntInstance, ReportError> {
    let set = instance.select("random")?;
    let g = &instance.graph;
    let r = ResonanceGraph::from_matchings(g, &set, enumerate_perfect_matchings(g));
    let components = r
        .components()
        .iter()
        .map(|h| {
            let sg = SimpleGraph::from_component(&r, h);
            let median = if sg.len() > opts.median_limit {
                Status::Skipped
            } else {
                match median_witness(&sg) {
                    None => Status::Pass,
                    Some(mut w) => {
                        for x in w.triple.iter_mut().chain(w.medians.iter_mut()) {
                            *x = h.vertices[*x];
                        }
                        Status::Fail(w)
                    }
                }
            };
            let partial_cube = if sg.len() > opts.partial_cube_limit {
                Status::Skipped
            } else if is_partial_cube(&sg) {
                Status::Pass
            } else {
                Status::Fail(())
            };
            let induced_embedding = compute_labeling(&r, h)
                .map(|lab| verify_induced_embedding(&r, h, &lab).passed())
                .unwrap_or(false);
            let consistent = (!median.is_pass() || !partial_cube.is_fail()) && (!partial_cube.is_pass() || induced_embedding);
            HuntComponent {
                component: h.id,
                vertices: h.vertices.len(),
                median,
                partial_cube,
                induced_embedding,
                consistent,
            }
        })
        .collect();
    Ok(HuntInstance {
        instance: instance.name.clone(),
        face_set: set.face_ids,
        components,
    })
}

/// Runs [`hunt_instance`] over every size up to `max` and every seed.
pub fn hunt(kind: GeneratorKind, max: usize, seeds: std::ops::Range<u64>, opts: &ReportOptions) -> HuntReport {
    let mut instances = Vec::new();
    let mut rejected = Vec::new();
    for size in hunt_sizes(kind, max) {
        for seed in seeds.clone() {
            match generate_random(kind, size, seed) {
                Ok(inst) => match hunt_instance(&inst, opts) {
                    Ok(h) => instances.push(h),
                    Err(e) => rejected.push((size.to_string(), seed, e.to_string())),
                },
                Err(e) => rejected.push((size.to_string(), seed, e.to_string())),
            }
        }
    }
    let all: Vec<&HuntComponent> = instances.iter().flat_map(|i| &i.components).collect();
    HuntReport {
        schema: SCHEMA_VERSION,
        kind,
        components_checked: all.len(),
        non_median: all.iter().filter(|c| c.median.is_fail()).count(),
        consistent: all.iter().all(|c| c.consistent),
        instances,
        rejected,
    }
}
