//! Browser bindings. Every function takes and returns JSON text; failures
//! come back as `{"error": "..."}` so the page never has to catch.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use graphfair::checkers::{check, mms_ratio_report, Criterion};
use graphfair::dispatch::{allocate as dispatch, Algorithm, Goal};
use graphfair::format::{instance_from_json, instance_json, rational_json};
use graphfair::instances::{catalog, random_additive, random_graph, rng, GraphKind, CATALOG};
use graphfair::oracles::{exact_gmms, exact_mms};
use graphfair::summary::{analyze as summarize, capped};
use graphfair::valuation::int;
use graphfair::{Instance, Valuation};

type Out = Result<Value, String>;

fn text(out: Out) -> String {
    out.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn parse(instance: &str) -> Result<Instance, String> {
    let doc: Value = serde_json::from_str(instance).map_err(|e| e.to_string())?;
    instance_from_json(&doc).map_err(|e| e.to_string())
}

fn with_analysis(inst: &Instance) -> Out {
    Ok(json!({
        "instance": instance_json(inst),
        "analysis": summarize(inst).map_err(|e| e.to_string())?,
    }))
}

/// Catalog entries with the parameters the page pre-fills.
pub fn catalog_entries() -> Value {
    let defaults = |name: &str| match name {
        "thm3_cut" => "k=3",
        "thm9_matching" => "m=6",
        "thm12_star" => "n=2,m=5",
        "thm16_path" => "n=3,m=7",
        "prop7_pairs" => "graph=cycle:6",
        "prop9_linked" => "k=2",
        "prop20_star" => "m=5",
        "thm21_efx" => "graph=cycle:5",
        "fig7_k2b" => "b=4",
        _ => "",
    };
    Value::Array(
        CATALOG
            .iter()
            .map(|n| json!({ "name": n, "params": defaults(n) }))
            .collect(),
    )
}

/// Splits `k=v,k=v`; a piece without `=` continues the previous value.
fn split_params(params: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    for piece in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match (piece.split_once('='), out.last_mut()) {
            (Some((k, v)), _) => out.push((k.trim().to_string(), v.trim().to_string())),
            (None, Some((_, v))) => {
                v.push(',');
                v.push_str(piece);
            }
            (None, None) => out.push((piece.to_string(), String::new())),
        }
    }
    out
}

pub fn load_catalog(name: &str, params: &str) -> Out {
    let params = split_params(params);
    let refs: Vec<(&str, &str)> = params
        .iter()
        .map(|(k, v)| (k.as_str(), v.as_str()))
        .collect();
    let inst = catalog(name, &refs).map_err(|e| e.to_string())?;
    with_analysis(&inst)
}

pub fn load_random(kind: &str, m: usize, n: usize, seed: u64) -> Out {
    let kind: GraphKind = kind.parse().map_err(|e: graphfair::Error| e.to_string())?;
    if m > 12 {
        return Err("the demo keeps m <= 12 so the exact oracles stay instant".into());
    }
    let g = random_graph(kind, m, seed).map_err(|e| e.to_string())?;
    let mut r = rng(seed.wrapping_add(1));
    let vals = (0..n.max(1))
        .map(|_| Valuation::Additive(random_additive(m, 9, &mut r)))
        .collect();
    with_analysis(&Instance::new(g, vals))
}

pub fn oracle_values(instance: &str) -> Out {
    let inst = parse(instance)?;
    let mut agents = Vec::new();
    for (i, u) in inst.valuations.iter().enumerate() {
        let mms = exact_mms(u, inst.n).map_err(|e| e.to_string())?;
        let gmms = exact_gmms(&inst.graph, u, inst.n).map_err(|e| e.to_string())?;
        let poc = if mms.value == int(0) {
            int(1)
        } else {
            gmms.value / mms.value
        };
        agents.push(json!({
            "agent": i,
            "mms": rational_json(&mms.value),
            "mms_partition": mms.partition,
            "gmms": rational_json(&gmms.value),
            "gmms_partition": gmms.partition,
            "ratio": rational_json(&poc),
        }));
    }
    Ok(json!({ "agents": agents }))
}

pub fn run_allocation(instance: &str, goal: &str, algorithm: &str) -> Out {
    let inst = parse(instance)?;
    let goal: Goal = goal.parse().map_err(|e: graphfair::Error| e.to_string())?;
    let algorithm = match algorithm {
        "" | "auto" => None,
        name => Some(name.parse::<Algorithm>().map_err(|e| e.to_string())?),
    };
    let out = dispatch(&inst, goal, algorithm).map_err(|e| e.to_string())?;
    let report = capped(mms_ratio_report(&inst, &out.allocation)).map_err(|e| e.to_string())?;
    let agents: Vec<Value> = (0..inst.n)
        .map(|i| {
            let bundle = &out.allocation.bundles[i];
            let mut a = json!({
                "agent": i,
                "bundle": bundle,
                "value": rational_json(&inst.valuations[i].value_of(bundle)),
            });
            if let Some(rep) = &report {
                a["mms"] = rational_json(&rep[i].mms);
                a["ratio"] = rational_json(&rep[i].ratio);
            }
            a
        })
        .collect();
    let mut checks = serde_json::Map::new();
    for c in [Criterion::Connected, Criterion::Efk(1), Criterion::Efx] {
        let res = check(&inst, &out.allocation, &c).map_err(|e| e.to_string())?;
        checks.insert(
            c.to_string(),
            json!({ "pass": res.pass, "violation": res.violation }),
        );
    }
    Ok(json!({
        "algorithm": out.algorithm.name(),
        "guarantee": out.algorithm.guarantee(),
        "k": out.k,
        "agents": agents,
        "checks": checks,
    }))
}

#[wasm_bindgen]
pub fn catalog_json() -> String {
    catalog_entries().to_string()
}

#[wasm_bindgen]
pub fn load(name: &str, params: &str) -> String {
    text(load_catalog(name, params))
}

#[wasm_bindgen]
pub fn random(kind: &str, m: usize, n: usize, seed: u32) -> String {
    text(load_random(kind, m, n, u64::from(seed)))
}

#[wasm_bindgen]
pub fn analyze(instance: &str) -> String {
    text(parse(instance).and_then(|inst| with_analysis(&inst)))
}

#[wasm_bindgen]
pub fn oracle(instance: &str) -> String {
    text(oracle_values(instance))
}

#[wasm_bindgen]
pub fn allocate(instance: &str, goal: &str, algorithm: &str) -> String {
    text(run_allocation(instance, goal, algorithm))
}
