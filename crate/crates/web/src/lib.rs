//! Browser bindings for the three demo views: S-matrix heatmaps, boundary
//! condensation per subgroup, and the tunneling permutation of the affine wall.
//!
//! Each binding returns a JSON string; the `*_json` functions are plain Rust.

use qdouble::condensation::{condense, equivalence_check, Fold, WallSpec};
use qdouble::cocycles::TwoCocycle;
use qdouble::groups::Subgroup;
use qdouble::io::{self, CondenseJson, MatrixJson, TunnelJson, CATALOG};
use qdouble::quantum_double::QuantumDouble;
use serde::Serialize;
use wasm_bindgen::prelude::*;

type Res = Result<String, String>;

fn err(e: qdouble::Error) -> String {
    e.to_string()
}

#[derive(Serialize)]
struct SubgroupChoice {
    spec: String,
    name: String,
    order: usize,
}

/// Group URIs offered by the demo.
pub fn catalog_json() -> String {
    io::to_json(&CATALOG)
}

/// The S-matrix of `D(G)`, snapped where possible.
pub fn s_matrix_json(group: &str) -> Res {
    let g = io::parse_group(group).map_err(err)?;
    let qd = QuantumDouble::new(&g).map_err(err)?;
    Ok(io::to_json(&MatrixJson::s_matrix(&qd, &qd.s_matrix(), true)))
}

/// Whole, trivial, and the cyclic subgroups generated by class representatives, deduplicated.
pub fn subgroups_json(group: &str) -> Res {
    let g = io::parse_group(group).map_err(err)?;
    let mut out = vec![
        SubgroupChoice { spec: "whole".into(), name: "G".into(), order: g.order() },
        SubgroupChoice { spec: "trivial".into(), name: "{e}".into(), order: 1 },
    ];
    let mut seen = vec![Subgroup::whole(&g).members, vec![0]];
    for &a in &g.conjugacy().reps {
        let k = Subgroup::generated_by(&g, &[a]);
        if !seen.contains(&k.members) {
            out.push(SubgroupChoice { spec: format!("gen:{a}"), name: format!("⟨{a}⟩"), order: k.order() });
            seen.push(k.members);
        }
    }
    Ok(io::to_json(&out))
}

/// Condensation at the boundary `(K, 1)` with `K` given as a subgroup spec.
pub fn condense_json(group: &str, subgroup: &str) -> Res {
    let g = io::parse_group(group).map_err(err)?;
    let qd = QuantumDouble::new(&g).map_err(err)?;
    let k = io::parse_subgroup(&g, subgroup).map_err(err)?;
    let r = condense(&qd, &k, &TwoCocycle::trivial(&k)).map_err(err)?;
    Ok(io::to_json(&CondenseJson::new(&qd, &k, &r)))
}

/// Tunneling through the wall of `H⁺ ⋊ H^×` for `q` a prime power.
pub fn tunnel_json(q: &str) -> Res {
    let ag = io::parse_affine(q).map_err(err)?;
    let wall = WallSpec::wall(&ag).map_err(err)?;
    let fold = Fold::new(&ag.group, &ag.group).map_err(err)?;
    let v = equivalence_check(&fold, &wall).map_err(err)?;
    Ok(io::to_json(&TunnelJson::new(&fold, &wall.u.members, &v)))
}

fn js(r: Res) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn catalog() -> String {
    catalog_json()
}

#[wasm_bindgen]
pub fn s_matrix(group: &str) -> Result<String, JsValue> {
    js(s_matrix_json(group))
}

#[wasm_bindgen]
pub fn subgroups(group: &str) -> Result<String, JsValue> {
    js(subgroups_json(group))
}

#[wasm_bindgen(js_name = condense)]
pub fn condense_js(group: &str, subgroup: &str) -> Result<String, JsValue> {
    js(condense_json(group, subgroup))
}

#[wasm_bindgen]
pub fn tunnel(q: &str) -> Result<String, JsValue> {
    js(tunnel_json(q))
}
