use resonance_core::corpus::builtin_corpus;
use resonance_core::polynomial::{cube_polynomial, zz_polynomial};
use resonance_core::build_resonance_graph;

#[test]
fn frozen_payloads_match_recomputation() {
    for inst in builtin_corpus() {
        for exp in &inst.expected {
            let set = inst.select(&exp.face_set).unwrap();
            let r = build_resonance_graph(&inst.graph, &set);
            let got = (
                r.n_vertices(),
                r.n_edges(),
                r.components().len(),
                zz_polynomial(&inst.graph, &set).coefficients().to_vec(),
                cube_polynomial(&r).coefficients().to_vec(),
            );
            let want = (exp.matchings, exp.resonance_edges, exp.components, exp.zz.clone(), exp.cube.clone());
            assert_eq!(got, want, "{}/{}", inst.name, exp.face_set);
        }
    }
}

#[test]
fn every_fixture_has_a_payload() {
    for inst in builtin_corpus() {
        assert!(!inst.expected.is_empty(), "{}", inst.name);
    }
}

#[test]
fn bundled_emb_files_match_the_fixtures() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    for inst in builtin_corpus() {
        let text = std::fs::read_to_string(format!("{dir}/{}.emb", inst.name)).unwrap();
        let g = resonance_core::emb::parse_emb(&text).unwrap();
        assert_eq!(resonance_core::emb::write_emb(&g), resonance_core::emb::write_emb(&inst.graph), "{}", inst.name);
    }
}

#[test]
fn bundled_file_shapes() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let read = |name: &str| resonance_core::emb::parse_emb(&std::fs::read_to_string(format!("{dir}/{name}.emb")).unwrap()).unwrap();
    let l3 = read("ladder3");
    assert_eq!((l3.n_vertices(), l3.n_edges()), (6, 7));
    let cor = read("coronene");
    assert_eq!((cor.n_vertices(), cor.n_edges()), (24, 30));
    let lens: Vec<usize> = cor.faces().iter().map(|f| f.len()).collect();
    assert_eq!(lens.iter().filter(|&&l| l == 6).count(), 7);
    assert_eq!(lens.iter().filter(|&&l| l == 18).count(), 1);
    assert_eq!(cor.even_faces().len(), 8);
}
