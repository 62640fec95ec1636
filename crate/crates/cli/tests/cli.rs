use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphfair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn wheel_poc_ratio() {
    let o = run(&["oracle", "fig2_wheel", "--what", "poc-ratio"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3/4");
    let doc = json(&["oracle", "fig2_wheel", "--what", "gmms", "--agent", "0"]);
    assert_eq!(doc["agents"][0]["value"], 3);
}

#[test]
fn generated_l5_analyzes_as_three_connected_not_linked() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("l5.json");
    let file = file.to_str().unwrap();
    assert!(run(&["gen", "fig3_L5", "-o", file]).status.success());
    let doc = json(&["analyze", file]);
    assert_eq!(doc["vertex_connectivity"], 3);
    let ladder = doc["linkedness"].as_array().unwrap();
    let two_two = ladder.iter().find(|e| e["b"] == 2).unwrap();
    assert_eq!(two_two["linked"], false);
}

#[test]
fn allocate_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let alloc = dir.path().join("alloc.json");
    let alloc = alloc.to_str().unwrap();
    for (inst, goal) in [
        ("fig2_wheel", "mms"),
        ("thm3_cut:k=4", "mms"),
        ("thm16_path:n=3,m=7", "ips"),
        ("fig6_tree", "mms"),
        ("prop9_linked:graph=wheel:8,k=2", "efk"),
    ] {
        let o = run(&["allocate", inst, "--goal", goal, "-o", alloc]);
        assert!(
            o.status.success(),
            "{inst}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let o = run(&["check", inst, alloc, "--criterion", "connected"]);
        assert_eq!(o.status.code(), Some(0), "{inst}: {}", stdout(&o));
    }
    let o = run(&["check", "thm16_path:n=3,m=7", alloc, "--criterion", "ips"]);
    assert_eq!(
        o.status.code(),
        Some(2),
        "allocation is for a different instance"
    );
}

#[test]
fn allocate_json_reports_ratios() {
    let doc = json(&["allocate", "thm12_star:n=3,m=6", "--goal", "mms"]);
    assert_eq!(doc["algorithm"], "star");
    let agents = doc["agents"].as_array().unwrap();
    assert_eq!(agents.len(), 3);
    assert!(agents.iter().all(|a| a.get("ratio").is_some()));
    assert!(doc["allocation"]["bundles"].is_array());
}

#[test]
fn check_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let alloc = dir.path().join("a.json");
    std::fs::write(&alloc, r#"{"bundles": [[1, 3], [0, 2, 4]]}"#).unwrap();
    let alloc = alloc.to_str().unwrap();
    let o = run(&["check", "fig3_L5", alloc, "--criterion", "connected"]);
    assert_eq!(o.status.code(), Some(1));
    let lopsided = dir.path().join("b.json");
    std::fs::write(&lopsided, r#"{"bundles": [[1], [0, 2, 3, 4]]}"#).unwrap();
    let doc = json(&[
        "check",
        "fig3_L5",
        lopsided.to_str().unwrap(),
        "--criterion",
        "mms:1",
    ]);
    assert_eq!(doc["pass"], false);
    assert!(doc["violation"].as_str().unwrap().contains("agent"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"n": 2, "graph": {"m": 2, "edges": [[1, 1]]}, "valuations": []}"#,
    )
    .unwrap();
    let o = run(&["--json", "analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["kind"], "malformed-input");
    assert_eq!(run(&["analyze", "no_such_instance"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "thm3_cut", "k=one"]).status.code(), Some(2));
    assert_eq!(
        run(&["check", "fig3_L5", "missing.json", "--criterion", "ef"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "check",
            "fig3_L5",
            bad.to_str().unwrap(),
            "--criterion",
            "nope"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn missing_guarantee_exits_three() {
    let o = run(&["allocate", "fig7_k2b:b=4", "--goal", "ef1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.json");
    let file = file.to_str().unwrap();
    let o = run(&[
        "gen",
        "random",
        "kind=tree",
        "m=7",
        "n=3",
        "seed=5",
        "-o",
        file,
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(file).unwrap();
    let again = stdout(&run(&[
        "gen",
        "random",
        "kind=tree",
        "m=7",
        "n=3",
        "seed=5",
    ]));
    assert_eq!(text, again);
    let inst = graphfair::format::parse_instance(&text).unwrap();
    assert_eq!((inst.n, inst.m()), (3, 7));
    assert!(inst.graph.is_tree());
}

#[test]
fn oracle_search_finds_three_quarters_on_c4() {
    let doc = json(&["oracle-search", "cycle:4", "--n", "2", "--max-value", "3"]);
    assert_eq!(doc["ratio"], "3/4");
    assert_eq!(doc["exhaustive"], true);
}

#[test]
fn bench_suite_passes() {
    let doc = json(&["bench", "paper"]);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["criteria"].as_array().unwrap().len(), 15);
    assert!(doc["table"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["expected"] == r["measured"]));
}
