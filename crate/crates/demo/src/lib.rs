//! Browser bindings. Every export takes `.emb` text plus a face selector
//! and returns a JSON string; the plain functions in [`api`] do the work so
//! they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod api {
    use std::f64::consts::PI;

    use serde_json::{json, Value};

    use resonance_core::corpus::{builtin_corpus, CorpusInstance};
    use resonance_core::cube::{
        compute_labeling, is_isometric_labeling, verify_induced_embedding, CubeLabeling,
    };
    use resonance_core::emb::{parse_emb, write_emb};
    use resonance_core::polynomial::check_equivalence;
    use resonance_core::{build_resonance_graph, EmbeddedGraph, EvenFaceSet};

    fn load(text: &str, selector: &str) -> Result<(EmbeddedGraph, EvenFaceSet), String> {
        let g = parse_emb(text).map_err(|e| e.to_string())?;
        let inst = CorpusInstance::from_graph("input", g);
        let set = inst.select(selector).map_err(|e| e.to_string())?;
        Ok((inst.graph, set))
    }

    /// Bundled fixtures with their text and named face sets.
    pub fn fixtures() -> Value {
        let list: Vec<Value> = builtin_corpus()
            .iter()
            .map(|i| {
                let sets: Vec<Value> = i
                    .face_sets
                    .iter()
                    .map(|s| {
                        let ids: Vec<String> = s.faces.iter().map(|f| f.to_string()).collect();
                        json!({ "name": s.name, "selector": ids.join(",") })
                    })
                    .collect();
                json!({
                    "name": i.name,
                    "description": i.description,
                    "emb": write_emb(&i.graph),
                    "face_labels": i.face_labels,
                    "face_sets": sets,
                })
            })
            .collect();
        Value::Array(list)
    }

    pub fn faces(text: &str) -> Result<Value, String> {
        let g = parse_emb(text).map_err(|e| e.to_string())?;
        let faces: Vec<Value> = g
            .faces()
            .iter()
            .map(|f| {
                json!({
                    "id": f.id,
                    "length": f.len(),
                    "is_cycle": f.is_cycle,
                    "is_even": f.is_even,
                    "vertices": f.vertices,
                })
            })
            .collect();
        Ok(json!({
            "vertices": g.n_vertices(),
            "edges": g.n_edges(),
            "euler_genus": g.euler_genus().ok(),
            "faces": faces,
        }))
    }

    /// Resonance graph with cube labels and a drawing: bit `i` of a label
    /// moves a vertex along a fixed direction, so parallel edges share a
    /// face class. Components that do not embed sit on a circle.
    pub fn resonance(text: &str, selector: &str) -> Result<Value, String> {
        let (g, set) = load(text, selector)?;
        let r = build_resonance_graph(&g, &set);
        let n = r.n_vertices();
        let mut label = vec![String::new(); n];
        let mut pos = vec![(0.0f64, 0.0f64); n];
        let mut component_of = vec![0usize; n];
        let mut comps = Vec::new();
        let mut offset = 0.0;
        for h in r.components() {
            for &v in &h.vertices {
                component_of[v] = h.id;
            }
            let mut local: Vec<(f64, f64)> = Vec::new();
            let mut info = json!({ "id": h.id, "size": h.vertices.len(), "faces": h.face_list() });
            match compute_labeling(&r, &h) {
                Ok(lab) => {
                    let emb = verify_induced_embedding(&r, &h, &lab);
                    info["embedding"] = json!(emb.passed());
                    info["isometric"] = match is_isometric_labeling(&r, &h, &lab) {
                        Ok(()) => json!(true),
                        Err(w) => json!(w),
                    };
                    for (idx, l) in lab.labels.iter().enumerate() {
                        label[h.vertices[idx]] = l.to_string();
                    }
                    if emb.passed() {
                        local = cube_layout(&lab);
                    }
                }
                Err(e) => info["error"] = json!(e.to_string()),
            }
            if local.is_empty() {
                local = circle_layout(h.vertices.len());
            }
            let min_x = local.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let max_x = local.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
            for (idx, p) in local.iter().enumerate() {
                pos[h.vertices[idx]] = (p.0 - min_x + offset, p.1);
            }
            offset += max_x - min_x + 1.5;
            comps.push(info);
        }
        let nodes: Vec<Value> = (0..n)
            .map(|v| {
                json!({
                    "id": v,
                    "matching": r.matching(v),
                    "component": component_of[v],
                    "label": label[v],
                    "x": pos[v].0,
                    "y": pos[v].1,
                })
            })
            .collect();
        Ok(json!({
            "face_set": set.face_ids,
            "proper_subset": set.is_proper_subset,
            "bipartite": r.two_coloring().is_ok(),
            "nodes": nodes,
            "edges": r.edges(),
            "components": comps,
        }))
    }

    fn cube_layout(lab: &CubeLabeling) -> Vec<(f64, f64)> {
        let k = lab.dimension().max(1) as f64;
        let dirs: Vec<(f64, f64)> = (0..lab.dimension())
            .map(|i| {
                let t = PI * (i as f64 + 0.5) / k;
                (t.cos(), t.sin())
            })
            .collect();
        lab.labels
            .iter()
            .map(|l| {
                dirs.iter()
                    .enumerate()
                    .filter(|(i, _)| l.get(*i))
                    .fold((0.0, 0.0), |p, (_, d)| (p.0 + d.0, p.1 + d.1))
            })
            .collect()
    }

    fn circle_layout(m: usize) -> Vec<(f64, f64)> {
        (0..m)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / m as f64;
                (t.cos(), t.sin())
            })
            .collect()
    }

    pub fn polynomials(text: &str, selector: &str) -> Result<Value, String> {
        let (g, set) = load(text, selector)?;
        let r = build_resonance_graph(&g, &set);
        let eq = check_equivalence(&g, &set, &r);
        Ok(json!({
            "proper_subset": set.is_proper_subset,
            "zz": eq.zz,
            "cube": eq.cube,
            "zz_text": eq.zz.to_string(),
            "cube_text": eq.cube.to_string(),
            "equal": eq.equal,
            "bijective": eq.bijective(),
        }))
    }
}

fn to_js(r: Result<serde_json::Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fixtures() -> String {
    api::fixtures().to_string()
}

#[wasm_bindgen]
pub fn faces(emb: &str) -> Result<String, JsValue> {
    to_js(api::faces(emb))
}

#[wasm_bindgen]
pub fn resonance(emb: &str, selector: &str) -> Result<String, JsValue> {
    to_js(api::resonance(emb, selector))
}

#[wasm_bindgen]
pub fn polynomials(emb: &str, selector: &str) -> Result<String, JsValue> {
    to_js(api::polynomials(emb, selector))
}
