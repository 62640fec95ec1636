use std::process::ExitCode;

use serde_json::{json, Value};

use graphfair::bench::{poc_table, render_table, run_all};
use graphfair::checkers::{check as run_check, mms_ratio_report, Criterion};
use graphfair::dispatch::{allocate as run_allocate, Algorithm, Goal};
use graphfair::format::{allocation_json, rational_json, serialize_allocation, serialize_instance};
use graphfair::instances::{
    random_additive, random_graph, random_tabulated_monotone, rng, GraphKind,
};
use graphfair::oracles::{exact_gmms, exact_mms, poc_ratio, poc_search};
use graphfair::summary;
use graphfair::{Error, Instance, Rational, Valuation};

use crate::input::{
    catalog_from, load_allocation, load_graph, load_instance, parse_params, write_or_print,
    CliError, CliResult,
};

fn r(x: &Rational) -> Value {
    rational_json(x)
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("json values serialize")
    );
}

pub fn analyze(arg: &str, as_json: bool) -> CliResult<ExitCode> {
    let inst = load_instance(arg)?;
    let doc = summary::analyze(&inst)?;
    if as_json {
        print_json(&doc);
        return Ok(ExitCode::SUCCESS);
    }
    let obj = doc.as_object().expect("object");
    for (key, value) in obj {
        let shown = match key.as_str() {
            "linkedness" => value
                .as_array()
                .expect("array")
                .iter()
                .map(|e| {
                    let linked = match &e["linked"] {
                        Value::Bool(true) => "yes".to_string(),
                        Value::Bool(false) => format!("no {}", e["counterexample"]),
                        _ => "over cap".to_string(),
                    };
                    format!("(2,{}): {linked}", e["b"])
                })
                .collect::<Vec<_>>()
                .join("; "),
            _ => value.to_string(),
        };
        println!("{key}: {shown}");
    }
    Ok(ExitCode::SUCCESS)
}

pub fn allocate(
    arg: &str,
    goal: &str,
    algorithm: Option<&str>,
    output: Option<&str>,
    ratios: bool,
    as_json: bool,
) -> CliResult<ExitCode> {
    let inst = load_instance(arg)?;
    let goal: Goal = goal.parse()?;
    let algorithm: Option<Algorithm> = algorithm.map(str::parse).transpose()?;
    let out = run_allocate(&inst, goal, algorithm)?;
    let report = if ratios {
        summary::capped(mms_ratio_report(&inst, &out.allocation))?
    } else {
        None
    };
    let agents: Vec<Value> = (0..inst.n)
        .map(|i| {
            let value = inst.valuations[i].value_of(&out.allocation.bundles[i]);
            let mut a =
                json!({ "agent": i, "bundle": out.allocation.bundles[i], "value": r(&value) });
            if let Some(rep) = &report {
                a["mms"] = r(&rep[i].mms);
                a["ratio"] = r(&rep[i].ratio);
            }
            a
        })
        .collect();
    if let Some(path) = output {
        write_or_print(Some(path), &serialize_allocation(&out.allocation))?;
    }
    if as_json {
        print_json(&json!({
            "algorithm": out.algorithm.name(),
            "guarantee": out.algorithm.guarantee(),
            "k": out.k,
            "allocation": allocation_json(&out.allocation),
            "agents": agents,
        }));
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "algorithm: {} ({})",
        out.algorithm,
        out.algorithm.guarantee()
    );
    if let Some(k) = out.k {
        println!("k: {k}");
    }
    for a in &agents {
        let mut line = format!(
            "agent {}: bundle {} value {}",
            a["agent"], a["bundle"], a["value"]
        );
        if a.get("ratio").is_some() {
            line.push_str(&format!(" mms {} ratio {}", a["mms"], a["ratio"]));
        }
        println!("{}", line.replace('"', ""));
    }
    if ratios && report.is_none() {
        println!("(MMS ratios skipped: instance exceeds the exhaustive-search cap)");
    }
    if output.is_none() {
        print!("{}", serialize_allocation(&out.allocation));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn check(
    inst_arg: &str,
    alloc_arg: &str,
    criterion: &str,
    as_json: bool,
) -> CliResult<ExitCode> {
    let inst = load_instance(inst_arg)?;
    let alloc = load_allocation(alloc_arg)?;
    let c: Criterion = criterion.parse()?;
    let outcome = run_check(&inst, &alloc, &c).map_err(|e| match e {
        Error::Precondition(_) => CliError::malformed(e.to_string()),
        other => other.into(),
    })?;
    if as_json {
        print_json(&json!({
            "criterion": c.to_string(),
            "pass": outcome.pass,
            "violation": outcome.violation,
        }));
    } else if outcome.pass {
        println!("PASS {c}");
    } else {
        println!(
            "FAIL {c}: {}",
            outcome.violation.as_deref().unwrap_or("violated")
        );
    }
    Ok(if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn oracle(arg: &str, what: &str, agent: Option<usize>, as_json: bool) -> CliResult<ExitCode> {
    let inst = load_instance(arg)?;
    let agents: Vec<usize> = match agent {
        Some(i) if i < inst.n => vec![i],
        Some(i) => {
            return Err(CliError::malformed(format!(
                "agent {i} out of range (n = {})",
                inst.n
            )))
        }
        None => (0..inst.n).collect(),
    };
    let mut rows = Vec::new();
    for &i in &agents {
        let u = &inst.valuations[i];
        let row = match what {
            "mms" => {
                let w = exact_mms(u, inst.n)?;
                json!({ "agent": i, "value": r(&w.value), "partition": w.partition })
            }
            "gmms" => {
                let w = exact_gmms(&inst.graph, u, inst.n)?;
                json!({ "agent": i, "value": r(&w.value), "partition": w.partition })
            }
            _ => json!({ "agent": i, "value": r(&poc_ratio(&inst.graph, u, inst.n)?) }),
        };
        rows.push(row);
    }
    if as_json {
        print_json(&json!({ "what": what, "agents": rows }));
        return Ok(ExitCode::SUCCESS);
    }
    let same = agents
        .iter()
        .all(|&i| inst.valuations[i] == inst.valuations[agents[0]]);
    let plain = |v: &Value| v.to_string().replace('"', "");
    if same {
        println!("{}", plain(&rows[0]["value"]));
    } else {
        for row in &rows {
            println!("agent {}: {}", row["agent"], plain(&row["value"]));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn oracle_search(
    arg: &str,
    n: usize,
    max_value: i64,
    budget: u64,
    seed: u64,
    as_json: bool,
) -> CliResult<ExitCode> {
    let g = load_graph(arg)?;
    let found = poc_search(&g, n, max_value, budget, seed)?;
    let witness: Vec<Value> = found.witness.values.iter().map(r).collect();
    if as_json {
        print_json(&json!({
            "ratio": r(&found.ratio),
            "witness": witness,
            "exhaustive": found.exhaustive,
            "evaluated": found.evaluated,
        }));
    } else {
        let mode = if found.exhaustive {
            "exhaustive"
        } else {
            "heuristic upper bound"
        };
        println!(
            "ratio: {} ({mode}, {} valuations)",
            found.ratio, found.evaluated
        );
        let shown: Vec<String> = found
            .witness
            .values
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("witness: [{}]", shown.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

fn random_instance(params: &[(String, String)]) -> CliResult<Instance> {
    let get = |k: &str| {
        params
            .iter()
            .find(|(key, _)| key == k)
            .map(|(_, v)| v.as_str())
    };
    let num = |k: &str, default: u64| -> CliResult<u64> {
        get(k).map_or(Ok(default), |v| {
            v.parse().map_err(|_| {
                CliError::malformed(format!("{k} must be a nonnegative integer, got \"{v}\""))
            })
        })
    };
    let kind: GraphKind = get("kind").unwrap_or("connected").parse()?;
    let m = num("m", 6)? as usize;
    let n = num("n", 2)? as usize;
    let seed = num("seed", 0)?;
    let max = num("max", 9)? as i64;
    let g = random_graph(kind, m, seed)?;
    let mut rand = rng(seed.wrapping_add(1));
    let vals = match get("valuation").unwrap_or("additive") {
        "additive" => (0..n)
            .map(|_| Valuation::Additive(random_additive(m, max, &mut rand)))
            .collect(),
        "tabulated" => {
            if m > 16 {
                return Err(CliError::malformed("tabulated valuations need m <= 16"));
            }
            (0..n)
                .map(|_| Valuation::Tabulated(random_tabulated_monotone(m, max, &mut rand)))
                .collect()
        }
        other => {
            return Err(CliError::malformed(format!(
                "unknown valuation kind \"{other}\""
            )))
        }
    };
    Ok(Instance::new(g, vals))
}

pub fn gen(name: &str, params: &[String], output: Option<&str>) -> CliResult<ExitCode> {
    let params = parse_params(params.iter().map(String::as_str))?;
    let inst = if name == "random" {
        random_instance(&params)?
    } else {
        catalog_from(name, &params)?
    };
    write_or_print(output, &serialize_instance(&inst))?;
    Ok(ExitCode::SUCCESS)
}

pub fn bench_suite(as_json: bool) -> CliResult<ExitCode> {
    let reports = run_all();
    let rows = poc_table()?;
    let pass = reports.iter().all(|c| c.pass) && rows.iter().all(|row| row.matches());
    if as_json {
        let criteria: Vec<Value> = reports
            .iter()
            .map(|c| json!({ "id": c.id, "name": c.name, "pass": c.pass, "detail": c.detail }))
            .collect();
        let table: Vec<Value> = rows
            .iter()
            .map(|row| {
                json!({
                    "class": row.class,
                    "n": row.n,
                    "m": row.m,
                    "bound": row.formula,
                    "expected": r(&row.expected),
                    "measured": r(&row.measured),
                    "instance": row.instance,
                })
            })
            .collect();
        print_json(&json!({ "pass": pass, "criteria": criteria, "table": table }));
    } else {
        for c in &reports {
            println!("{c}");
        }
        println!();
        print!("{}", render_table(&rows));
    }
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
