//! Three operations for the static demo page. Each takes plain arguments
//! and returns a JSON string the page draws from; errors come back as
//! thrown strings.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use koptlab_core::favaron::{is_k_dominating, k_optimal_exhaustive, verify_theorem_main};
use koptlab_core::generate::random_chordal_seeded;
use koptlab_core::io::parse_graph6;
use koptlab_core::saturation::chordal_full_degree;
use koptlab_core::tuza::{alpha_k_prime, nu_exact, packing_from_coloring, verify_tuza_connection};
use koptlab_core::{Graph, Orientation};

const FAVARON_MAX_VERTICES: usize = 16;
const TUZA_MAX_VERTICES: usize = 7;
const CHORDAL_MAX_VERTICES: usize = 14;

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "edges": g.edges() })
}

fn parse(graph6: &str, cap: usize) -> Result<Graph, String> {
    let g = parse_graph6(graph6.trim()).map_err(|e| e.to_string())?;
    if g.n() > cap {
        return Err(format!("{} vertices; the demo stops at {cap}", g.n()));
    }
    Ok(g)
}

fn positive(k: usize) -> Result<(), String> {
    if k == 0 {
        return Err("k must be at least 1".into());
    }
    Ok(())
}

/// A k-optimal set `D`, and the cross subgraph guaranteed for the
/// orientation of `G[V − D]` from lower to higher index.
pub fn favaron(graph6: &str, k: usize) -> Result<Value, String> {
    positive(k)?;
    let g = parse(graph6, FAVARON_MAX_VERTICES)?;
    let opt = k_optimal_exhaustive(&g, k).map_err(|e| e.to_string())?;
    let x = opt.d.complement(g.n());
    let inner = g.restrict(x);
    let order: Vec<usize> = (0..g.n()).rev().collect();
    let j = Orientation::toward_earlier(&inner, &order).map_err(|e| e.to_string())?;
    let m = verify_theorem_main(&g, k, opt.d, &j).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph": graph_json(&g),
        "k": k,
        "d": opt.d,
        "phi": opt.phi,
        "dominating": is_k_dominating(&g, k, opt.d),
        "arcs": j.arcs(),
        "cross": m,
    }))
}

/// `I_k ∨ h` for triangle-free `h`: both sides of both equalities, and the
/// packing lifted from a maximum k-edge-colorable subgraph of `h`.
pub fn tuza_join(graph6: &str, k: usize) -> Result<Value, String> {
    positive(k)?;
    let h = parse(graph6, TUZA_MAX_VERTICES)?;
    if !h.is_triangle_free() {
        return Err("h must be triangle-free".into());
    }
    let report = verify_tuza_connection(&h, k).map_err(|e| e.to_string())?;
    let join = Graph::join_independent(k, &h).map_err(|e| e.to_string())?;
    let m = alpha_k_prime(&h, k).map_err(|e| e.to_string())?;
    let lifted = packing_from_coloring(&h, k, &m).map_err(|e| e.to_string())?;
    let exact = nu_exact(&join).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph": graph_json(&join),
        "k": k,
        "report": report,
        "packing": lifted,
        "exact_packing": exact,
    }))
}

/// A seeded random chordal graph with a k-optimal `D` and a
/// k-edge-chromatic subgraph in which every vertex outside `D` has degree `k`.
pub fn chordal_saturate(n: usize, seed: u64, k: usize) -> Result<Value, String> {
    positive(k)?;
    if n == 0 || n > CHORDAL_MAX_VERTICES {
        return Err(format!("n must be between 1 and {CHORDAL_MAX_VERTICES}"));
    }
    let g = random_chordal_seeded(n, seed);
    let d = k_optimal_exhaustive(&g, k).map_err(|e| e.to_string())?.d;
    let m = chordal_full_degree(&g, k, d).map_err(|e| e.to_string())?;
    Ok(json!({ "graph": graph_json(&g), "k": k, "d": d, "subgraph": m }))
}

#[wasm_bindgen]
pub fn favaron_demo(graph6: &str, k: usize) -> Result<String, String> {
    favaron(graph6, k).map(|v| v.to_string())
}

#[wasm_bindgen]
pub fn tuza_join_demo(graph6: &str, k: usize) -> Result<String, String> {
    tuza_join(graph6, k).map(|v| v.to_string())
}

/// The seed arrives from JavaScript as a double.
#[wasm_bindgen]
pub fn chordal_saturate_demo(n: usize, seed: f64, k: usize) -> Result<String, String> {
    chordal_saturate(n, seed as u64, k).map(|v| v.to_string())
}
