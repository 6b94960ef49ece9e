//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! assertion that every line passed. Run with `--nocapture` to see them.

mod common;

use std::collections::HashMap;

use resonance_core::corpus::{
    builtin_corpus, builtin_instance, generate_random, CorpusInstance, GeneratorKind, GeneratorSize,
};
use resonance_core::cube::{component_face_subgraph, compute_labeling, isometry_violations, verify_induced_embedding};
use resonance_core::matching::enumerate_perfect_matchings;
use resonance_core::metric::SimpleGraph;
use resonance_core::polynomial::{check_4cycle_lemma, check_equivalence, cube_polynomial, zz_polynomial};
use resonance_core::report::{hunt, HuntReport, ReportOptions, Status};
use resonance_core::{build_resonance_graph, EvenFaceSet, ResonanceGraph};

const GENERATED_SEEDS: u64 = 9;

fn generated_sizes() -> Vec<(GeneratorKind, GeneratorSize)> {
    use GeneratorKind::*;
    use GeneratorSize::*;
    let mut out = Vec::new();
    for (r, c) in [(2, 2), (2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 4), (4, 5)] {
        out.push((GridPlane, Grid { rows: r, cols: c }));
    }
    for (r, c) in [(1, 4), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 6)] {
        out.push((GridCylinder, Grid { rows: r, cols: c }));
    }
    for (r, c) in [(4, 4), (4, 6)] {
        out.push((GridTorus, Grid { rows: r, cols: c }));
    }
    for n in [2, 3, 4, 5, 6, 8, 10] {
        out.push((BenzenoidPatch, Cells(n)));
    }
    out
}

/// Bundled fixtures on their proper face sets, plus the generated instances
/// on their seeded random face sets.
fn instances() -> (Vec<(String, CorpusInstance, EvenFaceSet)>, usize) {
    let mut out = Vec::new();
    for inst in builtin_corpus() {
        for set in inst.face_sets.clone() {
            let s = inst.select(&set.name).unwrap();
            if s.is_proper_subset {
                out.push((format!("{}/{}", inst.name, set.name), inst.clone(), s));
            }
        }
    }
    let mut generated = 0;
    for seed in 0..GENERATED_SEEDS {
        for &(kind, size) in &generated_sizes() {
            let inst = generate_random(kind, size, seed).expect("size within bounds");
            let s = inst.select("random").unwrap();
            assert!(s.is_proper_subset);
            out.push((inst.name.clone(), inst, s));
            generated += 1;
        }
    }
    (out, generated)
}

#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    checked: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

struct Line {
    id: u32,
    title: &'static str,
    detail: String,
    failures: Vec<String>,
}

fn line(id: u32, title: &'static str, tally: Tally, extra: Vec<String>, detail: String) -> Line {
    let mut failures = tally.failures;
    failures.extend(extra);
    Line {
        id,
        title,
        detail: if detail.is_empty() {
            format!("{} checks", tally.checked)
        } else {
            format!("{detail}; {} checks", tally.checked)
        },
        failures,
    }
}

#[test]
fn acceptance() {
    let (all, generated) = instances();
    let graphs: Vec<(&str, &CorpusInstance, &EvenFaceSet, ResonanceGraph)> = all
        .iter()
        .map(|(name, inst, s)| (name.as_str(), inst, s, build_resonance_graph(&inst.graph, s)))
        .collect();
    let mut lines = Vec::new();

    // 1. zz = cube on every instance
    let mut t = Tally::default();
    let mut extra = Vec::new();
    if generated < 200 {
        extra.push(format!("only {generated} generated instances"));
    }
    for (name, inst, s, r) in &graphs {
        let eq = check_equivalence(&inst.graph, s, r);
        t.check(eq.equal, || format!("{name}: zz {} vs cube {}", eq.zz, eq.cube));
        t.check(eq.bijective(), || format!("{name}: cover map not bijective"));
    }
    lines.push(line(
        1,
        "zz polynomial equals cube polynomial",
        t,
        extra,
        format!("{} instances ({generated} generated)", graphs.len()),
    ));

    // 2. induced hypercube embedding of every component
    let mut t = Tally::default();
    let mut components = 0;
    for (name, _, _, r) in &graphs {
        for h in r.components() {
            components += 1;
            match compute_labeling(r, &h) {
                Ok(lab) => {
                    let rep = verify_induced_embedding(r, &h, &lab);
                    t.check(rep.injective, || format!("{name} c{}: labels collide", h.id));
                    t.check(rep.one_bit_edges, || format!("{name} c{}: edge flips wrong bit", h.id));
                    t.check(rep.induced, || format!("{name} c{}: not induced", h.id));
                }
                Err(e) => t.check(false, || format!("{name} c{}: {e}", h.id)),
            }
        }
    }
    lines.push(line(2, "labeling is an induced hypercube embedding", t, vec![], format!("{components} components")));

    // 3. bipartite resonance graphs, and the ladder3 triangle
    let mut t = Tally::default();
    for (name, _, _, r) in &graphs {
        t.check(r.two_coloring().is_ok(), || format!("{name}: odd cycle"));
    }
    let l3 = builtin_instance("ladder3").unwrap();
    let tri = build_resonance_graph(&l3.graph, &l3.select("all").unwrap());
    let mut labels: Vec<&str> = tri.edges().iter().map(|e| l3.face_label(e.face).unwrap()).collect();
    labels.sort_unstable();
    t.check((tri.n_vertices(), tri.n_edges()) == (3, 3), || "ladder3/all: not 3 vertices and 3 edges".into());
    t.check(labels == ["f1", "f2", "f3"], || format!("ladder3/all labels {labels:?}"));
    t.check(tri.two_coloring().map_err(|c| c.len()) == Err(3), || "ladder3/all: no triangle witness".into());
    lines.push(line(3, "2-coloring; ladder3/all is the f1,f2,f3 triangle", t, vec![], String::new()));

    // 4. even face counts on fundamental cycles
    let mut t = Tally::default();
    let mut cycles = 0;
    for (name, _, _, r) in &graphs {
        for h in r.components() {
            for c in r.fundamental_cycles(&h) {
                cycles += 1;
                let counts = r.check_cycle_face_parity(&c);
                t.check(
                    counts.as_ref().is_ok_and(|m| m.values().all(|n| n % 2 == 0)),
                    || format!("{name}: cycle {c:?} gives {counts:?}"),
                );
            }
        }
    }
    lines.push(line(4, "every face appears evenly on fundamental cycles", t, vec![], format!("{cycles} cycles")));

    // 5. class deletion separates, quotients 2-color
    let mut t = Tally::default();
    for (name, _, _, r) in &graphs {
        for h in r.components() {
            for (&face, class) in &h.face_classes {
                let parts = r.delete_class_components(&h, face).unwrap();
                let mut part_of = HashMap::new();
                for (p, part) in parts.iter().enumerate() {
                    for &v in part {
                        part_of.insert(v, p);
                    }
                }
                for &k in class {
                    let e = r.edges()[k];
                    t.check(part_of[&e.a] != part_of[&e.b], || format!("{name}: face {face} edge {k} inside a part"));
                }
                t.check(r.quotient_graph(&h, face).is_ok(), || format!("{name}: quotient of {face} not bipartite"));
            }
        }
    }
    lines.push(line(5, "class deletion separates and quotients are bipartite", t, vec![], String::new()));

    // 6. 4-cycle lemma, and the ladder4/all counterexample
    let mut t = Tally::default();
    let mut four = 0;
    for (name, inst, _, r) in &graphs {
        let rep = check_4cycle_lemma(&inst.graph, r);
        four += rep.four_cycles;
        t.check(rep.passed(), || format!("{name}: {} bad 4-cycles", rep.violations.len()));
    }
    let l4 = builtin_instance("ladder4").unwrap();
    let r4 = build_resonance_graph(&l4.graph, &l4.select("all").unwrap());
    let rep = check_4cycle_lemma(&l4.graph, &r4);
    let all_four: Vec<usize> = ["f1", "f2", "f3", "f4"].iter().map(|l| l4.face_by_label(l).unwrap()).collect();
    let reproduced = rep.violations.iter().any(|c| {
        let mut f = c.faces.to_vec();
        f.sort_unstable();
        let mut want = all_four.clone();
        want.sort_unstable();
        f == want
    });
    t.check(!rep.hypothesis_holds && reproduced, || "ladder4/all: no 4-cycle through all four faces".into());
    lines.push(line(
        6,
        "4-cycles have equal opposite, disjoint faces; ladder4/all violates",
        t,
        vec![],
        format!("{four} 4-cycles, ladder4/all violations {}", rep.violations.len()),
    ));

    // 7. coronene non-isometry
    let mut t = Tally::default();
    let cor = builtin_instance("coronene").unwrap();
    let rc = build_resonance_graph(&cor.graph, &cor.select("inner7").unwrap());
    let comps = rc.components();
    let h = &comps[0];
    let lab = compute_labeling(&rc, h).unwrap();
    let bad = isometry_violations(&rc, h, &lab);
    let hit = bad.iter().find(|w| (w.distance, w.hamming) == (8, 6)).cloned();
    t.check(hit.is_some(), || format!("coronene: violations {bad:?}"));
    if let Some(w) = &hit {
        // recheck the witness with the reference distances
        let d = common::distances(&rc);
        let (pu, pv) = (h.position(w.u).unwrap(), h.position(w.v).unwrap());
        t.check(d[w.u][w.v] == 8, || "coronene: reference distance differs".into());
        t.check(lab.labels[pu].hamming(&lab.labels[pv]) == 6, || "coronene: hamming differs".into());
    }
    let h7 = cor.face_by_label("h7").unwrap();
    let parts = rc.delete_class_components(h, h7).unwrap().len();
    t.check(parts == 3, || format!("coronene: h7 deletion gives {parts} parts"));
    lines.push(line(
        7,
        "coronene/inner7 has a distance-8 Hamming-6 pair; h7 leaves 3 parts",
        t,
        vec![],
        format!("{} non-isometric pairs, h7 parts {parts}", bad.len()),
    ));

    // 8. matchings restrict to perfect matchings of G_H
    let mut t = Tally::default();
    for (name, inst, _, r) in &graphs {
        for h in r.components() {
            let c = component_face_subgraph(&inst.graph, r, &h);
            t.check(c.passed, || format!("{name} c{}: matching {:?}", h.id, c.failing_matching));
        }
    }
    lines.push(line(8, "matchings restrict to perfect matchings of G_H", t, vec![], String::new()));

    // 9. worked examples, against the exhaustive references
    let mut t = Tally::default();
    for (name, set, text, shape) in [
        ("c6", "inner", "2 + x", None),
        ("ladder3", "inner", "3 + 2x", Some(SimpleGraph::path(3))),
        (
            "ladder4",
            "inner",
            "5 + 5x + x^2",
            Some(SimpleGraph::from_edges(5, [(0, 1), (1, 4), (4, 3), (3, 0), (0, 2)])),
        ),
    ] {
        let i = builtin_instance(name).unwrap();
        let s = i.select(set).unwrap();
        let r = build_resonance_graph(&i.graph, &s);
        let zz = zz_polynomial(&i.graph, &s);
        let cube = cube_polynomial(&r);
        let ms: Vec<Vec<usize>> = common::brute_matchings(&i.graph);
        let brute = common::brute_zz(&i.graph, &s.face_ids, &ms);
        t.check(zz.to_string() == text && cube.to_string() == text, || format!("{name}: {zz} / {cube}"));
        t.check(zz.coefficients() == brute.as_slice(), || format!("{name}: reference zz {brute:?}"));
        t.check(common::brute_cube_counts(&r, 3) == cube.coefficients(), || format!("{name}: reference cube"));
        if let Some(shape) = shape {
            let got = SimpleGraph::from_edges(r.n_vertices(), r.edges().iter().map(|e| (e.a, e.b)));
            t.check(common::isomorphic(&got, &shape), || format!("{name}: resonance graph shape {:?}", got.edges()));
        }
    }
    let n = enumerate_perfect_matchings(&cor.graph).len();
    let brute = common::brute_matchings(&cor.graph).len();
    t.check(n == 20 && brute == 20, || format!("coronene: {n} matchings, reference {brute}"));
    lines.push(line(9, "worked examples match the exhaustive references", t, vec![], String::new()));

    // 10. median search consistency
    let mut t = Tally::default();
    let opts = ReportOptions::default();
    let reports: Vec<HuntReport> = [
        (GeneratorKind::GridPlane, 4usize, 0..2u64),
        (GeneratorKind::GridCylinder, 4, 0..2),
        (GeneratorKind::GridTorus, 4, 0..3),
        (GeneratorKind::BenzenoidPatch, 7, 0..3),
    ]
    .into_iter()
    .map(|(kind, max, seeds)| hunt(kind, max, seeds, &opts))
    .collect();
    let mut comps_checked = 0;
    let mut non_median = 0;
    for rep in &reports {
        comps_checked += rep.components_checked;
        non_median += rep.non_median;
        t.check(rep.consistent, || format!("{}: median => partial cube => embedding broken", rep.kind));
        for inst in &rep.instances {
            for c in &inst.components {
                if let Status::Fail(w) = &c.median {
                    t.check(w.medians.len() != 1, || format!("{}: witness {w:?} has one median", inst.instance));
                }
            }
        }
    }
    lines.push(line(
        10,
        "median => partial cube => induced embedding on every component",
        t,
        vec![],
        format!("{comps_checked} components, {non_median} not median"),
    ));

    println!();
    let mut all_pass = true;
    for l in &lines {
        let ok = l.failures.is_empty();
        all_pass &= ok;
        println!("[{}] {:>2}. {} ({})", if ok { "PASS" } else { "FAIL" }, l.id, l.title, l.detail);
        for f in l.failures.iter().take(5) {
            println!("         {f}");
        }
    }
    assert!(all_pass, "acceptance criteria failed");
}
