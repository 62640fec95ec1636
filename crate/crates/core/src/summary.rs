//! JSON summaries shared by the command line and the browser demo.

use serde_json::{json, Value};

use crate::envy::optimal_efk_two;
use crate::error::{Error, Result};
use crate::graph::{
    bipolar_if_exists, block_tree, complete_bipartite_sides, linkage_counterexample,
    max_components_single_deletion, path_order, star_center, vertex_connectivity, Graph,
};
use crate::valuation::Instance;

/// `Ok(None)` when the search is over its cap, so a summary can go on.
pub fn capped<T>(res: Result<T>) -> Result<Option<T>> {
    match res {
        Ok(v) => Ok(Some(v)),
        Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Names of the recognised graph classes `g` belongs to.
pub fn classes(g: &Graph) -> Vec<&'static str> {
    let mut out = Vec::new();
    if path_order(g).is_some() {
        out.push("path");
    }
    if star_center(g).is_some() {
        out.push("star");
    }
    if g.is_tree() {
        out.push("tree");
    }
    if g.is_complete() {
        out.push("complete");
    }
    if complete_bipartite_sides(g).is_some() {
        out.push("complete-bipartite");
    }
    out
}

/// Structural summary of an instance's graph. The (2, b)-linkedness ladder
/// stops at the first failure or at the search cap.
pub fn analyze(inst: &Instance) -> Result<Value> {
    let g = &inst.graph;
    let m = g.m();
    let connected = g.is_connected();
    let mut doc = json!({
        "n": inst.n,
        "m": m,
        "edges": g.edge_count(),
        "connected": connected,
        "classes": classes(g),
        "vertex_connectivity": vertex_connectivity(g),
    });
    if m >= 2 {
        let (k, v) = max_components_single_deletion(g);
        doc["max_components_single_deletion"] = json!({ "k": k, "vertex": v });
    }
    if !connected {
        return Ok(doc);
    }
    let bt = block_tree(g);
    doc["block_tree"] = json!({
        "blocks": bt.blocks,
        "cut_vertices": bt.cut_vertices,
        "is_path": bt.is_path(),
    });
    doc["bipolar_ordering"] = match bipolar_if_exists(g) {
        Some(o) => json!(o.order),
        None => Value::Null,
    };
    let plan = optimal_efk_two(g)?;
    doc["k_star"] = json!(plan.k_star);
    doc["efk_merge_sets"] = json!(plan.merge_sets);
    let mut ladder = Vec::new();
    for b in 1..=m.saturating_sub(2) {
        match capped(linkage_counterexample(g, 2, b))? {
            None => {
                ladder.push(json!({ "a": 2, "b": b, "linked": Value::Null, "note": "over cap" }));
                break;
            }
            Some(None) => ladder.push(json!({ "a": 2, "b": b, "linked": true })),
            Some(Some((p, q))) => {
                // a counterexample for b also rules out every larger b
                ladder.push(json!({ "a": 2, "b": b, "linked": false, "counterexample": [p, q] }));
                break;
            }
        }
    }
    doc["linkedness"] = json!(ladder);
    Ok(doc)
}
