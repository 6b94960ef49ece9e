use resonance_demo::api;
use serde_json::Value;

fn emb(name: &str) -> String {
    let all = api::fixtures();
    all.as_array()
        .unwrap()
        .iter()
        .find(|f| f["name"] == name)
        .map(|f| f["emb"].as_str().unwrap().to_string())
        .unwrap()
}

fn selector(name: &str, set: &str) -> String {
    let all = api::fixtures();
    let inst = all
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["name"] == name)
        .unwrap()
        .clone();
    inst["face_sets"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == set)
        .map(|s| s["selector"].as_str().unwrap().to_string())
        .unwrap()
}

#[test]
fn fixtures_carry_text_and_sets() {
    let all = api::fixtures();
    let all = all.as_array().unwrap();
    assert_eq!(all.len(), 8);
    assert!(all
        .iter()
        .all(|f| f["emb"].as_str().unwrap().contains("vertices")));
    assert_eq!(selector("ladder3", "inner"), "0,2");
}

#[test]
fn faces_of_coronene() {
    let v = api::faces(&emb("coronene")).unwrap();
    assert_eq!(v["vertices"], 24);
    assert_eq!(v["euler_genus"], 0);
    let lens: Vec<u64> = v["faces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["length"].as_u64().unwrap())
        .collect();
    assert_eq!(lens.iter().filter(|&&l| l == 6).count(), 7);
    assert!(lens.contains(&18));
}

#[test]
fn ladder_resonance_drawing() {
    let v = api::resonance(&emb("ladder4"), &selector("ladder4", "inner")).unwrap();
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 5);
    assert_eq!(v["bipartite"], true);
    assert_eq!(v["components"][0]["isometric"], true);
    // adjacent vertices sit one unit apart
    for e in v["edges"].as_array().unwrap() {
        let a = &nodes[e["a"].as_u64().unwrap() as usize];
        let b = &nodes[e["b"].as_u64().unwrap() as usize];
        let d = (a["x"].as_f64().unwrap() - b["x"].as_f64().unwrap())
            .hypot(a["y"].as_f64().unwrap() - b["y"].as_f64().unwrap());
        assert!((d - 1.0).abs() < 1e-9);
        let (la, lb) = (a["label"].as_str().unwrap(), b["label"].as_str().unwrap());
        assert_eq!(
            la.chars().zip(lb.chars()).filter(|(x, y)| x != y).count(),
            1
        );
    }
}

#[test]
fn coronene_is_not_isometric() {
    let v = api::resonance(&emb("coronene"), &selector("coronene", "inner7")).unwrap();
    let iso = &v["components"][0]["isometric"];
    assert_eq!(iso["distance"], 8);
    assert_eq!(iso["hamming"], 6);
    assert_eq!(v["components"][0]["embedding"], true);
}

#[test]
fn full_set_falls_back_to_a_circle() {
    let v = api::resonance(&emb("ladder3"), "all-even").unwrap();
    assert_eq!(v["proper_subset"], false);
    assert_eq!(v["bipartite"], false);
    assert_eq!(v["components"][0]["embedding"], false);
    let nodes = v["nodes"].as_array().unwrap();
    // distinct positions on a circle
    let mut xs: Vec<String> = nodes
        .iter()
        .map(|n| format!("{:.6},{:.6}", n["x"], n["y"]))
        .collect();
    xs.sort();
    xs.dedup();
    assert_eq!(xs.len(), 3);
}

#[test]
fn polynomials_agree() {
    let v = api::polynomials(
        &emb("c4xc4-torus"),
        &selector("c4xc4-torus", "all-even-minus-one"),
    )
    .unwrap();
    assert_eq!(v["zz_text"], v["cube_text"]);
    assert_eq!(v["zz"], serde_json::json!([272, 480, 294, 78, 9]));
    assert_eq!(v["equal"], true);
    assert_eq!(v["bijective"], true);
}

#[test]
fn bad_input_is_an_error() {
    assert!(api::faces("vertices 2\nedge 0 0 x\n").is_err());
    assert!(api::resonance(&emb("ladder3"), "9").is_err());
    let ok: Value = api::polynomials(&emb("c6"), "0").unwrap();
    assert_eq!(ok["zz"], serde_json::json!([2, 1]));
}
