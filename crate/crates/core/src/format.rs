//! JSON instance and allocation files.
//!
//! Instance:
//! ```json
//! {"n": 2,
//!  "graph": {"m": 3, "edges": [[0, 1], [1, 2]]},
//!  "valuations": {"type": "additive", "values": [[1, "1/2", 0], [0, 1, 1]]}}
//! ```
//! or `"valuations": {"type": "table", "values": [{"0": 0, "1": 1, ...}, ...]}`
//! with one entry per bundle bitmask. Values are JSON integers or `"p/q"`
//! strings in lowest terms (`q >= 2`). Allocation: `{"bundles": [[0, 1], [2]]}`.
//! Serialization is canonical: sorted edges and bundles, table keys in
//! numeric order, two-space pretty printing.

use num_integer::Integer;
use num_traits::Signed;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::graph::Graph;
use crate::valuation::{
    AdditiveValuation, Allocation, Instance, Rational, TabulatedValuation, Valuation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("[E001] malformed document: {0}")]
    Malformed(String),
    #[error("[E002] dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("[E003] negative value: {0}")]
    NegativeValue(String),
    #[error("[E004] non-canonical rational: {0}")]
    NonCanonicalRational(String),
    #[error("[E005] loop edge: {0}")]
    LoopEdge(String),
    #[error("[E006] invalid edge: {0}")]
    InvalidEdge(String),
}

impl FormatError {
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Malformed(_) => "E001",
            FormatError::DimensionMismatch(_) => "E002",
            FormatError::NegativeValue(_) => "E003",
            FormatError::NonCanonicalRational(_) => "E004",
            FormatError::LoopEdge(_) => "E005",
            FormatError::InvalidEdge(_) => "E006",
        }
    }
}

type FResult<T> = std::result::Result<T, FormatError>;

fn malformed(msg: impl Into<String>) -> FormatError {
    FormatError::Malformed(msg.into())
}

fn field<'a>(obj: &'a Value, key: &str) -> FResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| malformed(format!("missing field `{key}`")))
}

fn as_usize(v: &Value, what: &str) -> FResult<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| malformed(format!("{what} must be a nonnegative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> FResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("{what} must be an array")))
}

/// Parses a value: a JSON integer or a `"p/q"` string in lowest terms.
pub fn parse_rational(v: &Value) -> FResult<Rational> {
    let r = match v {
        Value::Number(num) => {
            let x = num.as_i64().ok_or_else(|| {
                FormatError::NonCanonicalRational(format!("{num} is not an integer"))
            })?;
            Rational::from_integer(x as i128)
        }
        Value::String(s) => {
            let (p, q) = s.split_once('/').ok_or_else(|| {
                FormatError::NonCanonicalRational(format!("\"{s}\": integers must be JSON numbers"))
            })?;
            let p: i128 = p
                .parse()
                .map_err(|_| malformed(format!("bad numerator in \"{s}\"")))?;
            let q: i128 = q
                .parse()
                .map_err(|_| malformed(format!("bad denominator in \"{s}\"")))?;
            if q < 2 || p.gcd(&q) != 1 || s != &format!("{p}/{q}") {
                return Err(FormatError::NonCanonicalRational(format!("\"{s}\"")));
            }
            Rational::new_raw(p, q)
        }
        _ => return Err(malformed("value must be an integer or a \"p/q\" string")),
    };
    if r.is_negative() {
        return Err(FormatError::NegativeValue(r.to_string()));
    }
    Ok(r)
}

pub fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        json!(*r.numer() as i64)
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn parse_graph(v: &Value) -> FResult<Graph> {
    let m = as_usize(field(v, "m")?, "graph.m")?;
    let mut edges = Vec::new();
    for e in as_array(field(v, "edges")?, "graph.edges")? {
        let pair = as_array(e, "edge")?;
        if pair.len() != 2 {
            return Err(malformed("edge must have two endpoints"));
        }
        let (i, j) = (
            as_usize(&pair[0], "edge endpoint")?,
            as_usize(&pair[1], "edge endpoint")?,
        );
        if i == j {
            return Err(FormatError::LoopEdge(format!("[{i}, {j}]")));
        }
        if i > j {
            return Err(FormatError::InvalidEdge(format!(
                "[{i}, {j}] must be written with i < j"
            )));
        }
        if j >= m {
            return Err(FormatError::InvalidEdge(format!(
                "[{i}, {j}] out of range for m = {m}"
            )));
        }
        edges.push((i, j));
    }
    Graph::new(m, edges).map_err(|e| FormatError::InvalidEdge(e.to_string()))
}

pub fn graph_json(g: &Graph) -> Value {
    json!({
        "m": g.m(),
        "edges": g.edges().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

pub fn parse_instance(text: &str) -> FResult<Instance> {
    let doc: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    instance_from_json(&doc)
}

pub fn instance_from_json(doc: &Value) -> FResult<Instance> {
    let n = as_usize(field(doc, "n")?, "n")?;
    if n == 0 {
        return Err(malformed("n must be at least 1"));
    }
    let graph = parse_graph(field(doc, "graph")?)?;
    let m = graph.m();
    let vals = field(doc, "valuations")?;
    let kind = field(vals, "type")?
        .as_str()
        .ok_or_else(|| malformed("valuations.type must be a string"))?;
    let rows = as_array(field(vals, "values")?, "valuations.values")?;
    if rows.len() != n {
        return Err(FormatError::DimensionMismatch(format!(
            "{} valuations for n = {n}",
            rows.len()
        )));
    }
    let mut valuations = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let v = match kind {
            "additive" => {
                let entries = as_array(row, "additive valuation")?;
                if entries.len() != m {
                    return Err(FormatError::DimensionMismatch(format!(
                        "agent {i}: {} values for m = {m}",
                        entries.len()
                    )));
                }
                let values = entries
                    .iter()
                    .map(parse_rational)
                    .collect::<FResult<Vec<_>>>()?;
                Valuation::Additive(AdditiveValuation::new(values))
            }
            "table" => {
                let map = row
                    .as_object()
                    .ok_or_else(|| malformed("table valuation must be an object"))?;
                if m > TabulatedValuation::MAX_GOODS {
                    return Err(FormatError::DimensionMismatch(format!(
                        "tables support at most {} goods",
                        TabulatedValuation::MAX_GOODS
                    )));
                }
                let size = 1usize << m;
                let mut table: Vec<Option<Rational>> = vec![None; size];
                for (key, value) in map {
                    let mask: usize = key
                        .parse()
                        .ok()
                        .filter(|k: &usize| k.to_string() == *key)
                        .ok_or_else(|| malformed(format!("bad bundle key \"{key}\"")))?;
                    if mask >= size {
                        return Err(FormatError::DimensionMismatch(format!(
                            "agent {i}: bundle {mask} outside 2^{m}"
                        )));
                    }
                    table[mask] = Some(parse_rational(value)?);
                }
                let table = table
                    .into_iter()
                    .enumerate()
                    .map(|(k, x)| {
                        x.ok_or_else(|| {
                            FormatError::DimensionMismatch(format!("agent {i}: bundle {k} missing"))
                        })
                    })
                    .collect::<FResult<Vec<_>>>()?;
                Valuation::Tabulated(
                    TabulatedValuation::new(m, table)
                        .map_err(|e| FormatError::DimensionMismatch(e.to_string()))?,
                )
            }
            other => return Err(malformed(format!("unknown valuation type \"{other}\""))),
        };
        valuations.push(v);
    }
    Ok(Instance {
        n,
        graph,
        valuations,
    })
}

/// Instance as a JSON value. Mixed valuation types are written as tables.
pub fn instance_json(inst: &Instance) -> Value {
    let values: Vec<Value> = if inst.all_additive() {
        inst.valuations
            .iter()
            .map(|v| {
                let a = v.as_additive().expect("all additive");
                Value::Array(a.values.iter().map(rational_json).collect())
            })
            .collect()
    } else {
        inst.valuations
            .iter()
            .map(|v| {
                let mut map = Map::new();
                for mask in 0..1u64 << v.m() {
                    map.insert(mask.to_string(), rational_json(&v.value_mask(mask)));
                }
                Value::Object(map)
            })
            .collect()
    };
    let kind = if inst.all_additive() {
        "additive"
    } else {
        "table"
    };
    json!({
        "n": inst.n,
        "graph": graph_json(&inst.graph),
        "valuations": {"type": kind, "values": values},
    })
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&instance_json(inst)).expect("json");
    s.push('\n');
    s
}

pub fn parse_allocation(text: &str) -> FResult<Allocation> {
    let doc: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    let bundles = as_array(field(&doc, "bundles")?, "bundles")?
        .iter()
        .map(|b| {
            as_array(b, "bundle")?
                .iter()
                .map(|g| as_usize(g, "good"))
                .collect::<FResult<Vec<_>>>()
        })
        .collect::<FResult<Vec<_>>>()?;
    Ok(Allocation::new(bundles))
}

pub fn allocation_json(a: &Allocation) -> Value {
    json!({ "bundles": a.bundles })
}

pub fn serialize_allocation(a: &Allocation) -> String {
    let mut s = serde_json::to_string_pretty(&allocation_json(&Allocation::new(a.bundles.clone())))
        .expect("json");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{catalog, random_graph, random_tabulated_monotone, GraphKind};
    use proptest::prelude::*;

    const MINIMAL: &str = r#"{"n": 2, "graph": {"m": 2, "edges": [[0, 1]]},
        "valuations": {"type": "additive", "values": [[1, "1/2"], [0, 3]]}}"#;

    #[test]
    fn parses_minimal_document() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.n, 2);
        assert_eq!(inst.valuations[0].value_of(&[1]), Rational::new(1, 2));
    }

    #[test]
    fn distinct_error_codes() {
        let cases = [
            ("{", "E001"),
            (
                r#"{"n": 2, "graph": {"m": 2, "edges": [[0, 1]]}, "valuations": {"type": "additive", "values": [[1, 1]]}}"#,
                "E002",
            ),
            (
                r#"{"n": 1, "graph": {"m": 2, "edges": [[0, 1]]}, "valuations": {"type": "additive", "values": [[1, -1]]}}"#,
                "E003",
            ),
            (
                r#"{"n": 1, "graph": {"m": 2, "edges": [[0, 1]]}, "valuations": {"type": "additive", "values": [[1, "2/4"]]}}"#,
                "E004",
            ),
            (
                r#"{"n": 1, "graph": {"m": 2, "edges": [[0, 0]]}, "valuations": {"type": "additive", "values": [[1, 1]]}}"#,
                "E005",
            ),
            (
                r#"{"n": 1, "graph": {"m": 2, "edges": [[0, 5]]}, "valuations": {"type": "additive", "values": [[1, 1]]}}"#,
                "E006",
            ),
        ];
        for (doc, code) in cases {
            assert_eq!(parse_instance(doc).unwrap_err().code(), code, "{doc}");
        }
        for bad in ["\"3/1\"", "\"4\"", "1.5", "\"-1/2\""] {
            let v: Value = serde_json::from_str(bad).unwrap();
            assert!(parse_rational(&v).is_err(), "{bad}");
        }
    }

    #[test]
    fn catalog_instance_round_trips_bit_exact() {
        let inst = catalog("fig7_k2b", &[("b", "5")]).unwrap();
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn table_round_trip() {
        let g = random_graph(GraphKind::Connected, 4, 3).unwrap();
        let mut rng = crate::instances::rng(9);
        let vals = (0..2)
            .map(|_| Valuation::Tabulated(random_tabulated_monotone(4, 5, &mut rng)))
            .collect();
        let inst = Instance::new(g, vals);
        let back = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(back, inst);
    }

    proptest! {
        #[test]
        fn additive_instances_round_trip(m in 1usize..9, n in 1usize..4, seed in 0u64..1000,
                                         nums in proptest::collection::vec((0i128..40, 1i128..7), 27)) {
            let g = random_graph(GraphKind::Connected, m, seed).unwrap();
            let vals = (0..n)
                .map(|i| Valuation::Additive(AdditiveValuation::new(
                    (0..m).map(|j| { let (p, q) = nums[(i * 9 + j) % nums.len()]; Rational::new(p, q) }).collect())))
                .collect();
            let inst = Instance::new(g, vals);
            let text = serialize_instance(&inst);
            prop_assert_eq!(parse_instance(&text).unwrap(), inst);
        }
    }

    #[test]
    fn allocation_round_trip() {
        let a = Allocation::new(vec![vec![2, 0], vec![1]]);
        let text = serialize_allocation(&a);
        assert_eq!(parse_allocation(&text).unwrap(), a);
    }
}
