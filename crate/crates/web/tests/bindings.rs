use graphfair_web::{allocate, analyze, catalog_json, load, oracle, random};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn every_listed_entry_loads_with_its_defaults() {
    let entries = parse(&catalog_json());
    for e in entries.as_array().unwrap() {
        let doc = parse(&load(
            e["name"].as_str().unwrap(),
            e["params"].as_str().unwrap(),
        ));
        assert!(doc.get("error").is_none(), "{e}: {doc}");
        assert!(doc["analysis"]["vertex_connectivity"].is_u64());
    }
}

#[test]
fn wheel_oracle_and_allocation() {
    let doc = parse(&load("fig2_wheel", ""));
    let inst = doc["instance"].to_string();
    let o = parse(&oracle(&inst));
    assert_eq!(o["agents"][0]["ratio"], "3/4");
    let a = parse(&allocate(&inst, "mms", "auto"));
    assert_eq!(a["algorithm"], "biconnected");
    assert_eq!(a["checks"]["connected"]["pass"], true);
    assert_eq!(parse(&analyze(&inst))["analysis"], doc["analysis"]);
}

#[test]
fn params_with_commas_and_errors() {
    let doc = parse(&load("prop7_pairs", "graph=kab:2,3"));
    assert!(doc.get("error").is_none(), "{doc}");
    assert!(parse(&load("nope", "")).get("error").is_some());
    assert!(parse(&allocate("{", "mms", "")).get("error").is_some());
    assert!(parse(&random("tree", 30, 2, 1)).get("error").is_some());
    let r = parse(&random("biconnected", 7, 2, 4));
    assert_eq!(r["instance"]["graph"]["m"], 7);
}
