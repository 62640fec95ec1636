//! Named instances from the literature and seeded random generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{complete_bipartite_sides, linkage_counterexample, Graph};
use crate::valuation::{int, AdditiveValuation, Instance, Rational, TabulatedValuation};

pub type Rng8 = ChaCha8Rng;

/// Deterministic generator used by every seeded routine in the crate.
pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Names accepted by [`catalog`].
pub const CATALOG: &[&str] = &[
    "fig2_wheel",
    "fig3_L5",
    "thm3_cut",
    "thm9_matching",
    "thm12_star",
    "thm16_path",
    "prop7_pairs",
    "prop9_linked",
    "prop20_star",
    "thm21_efx",
    "fig6_tree",
    "thm22_deg4",
    "fig7_k2b",
];

pub fn path(m: usize) -> Graph {
    Graph::new(m, (1..m).map(|v| (v - 1, v))).expect("path")
}

pub fn cycle(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::InvalidParams(format!("cycle needs m >= 3, got {m}")));
    }
    Graph::new(m, (1..m).map(|v| (v - 1, v)).chain([(0, m - 1)]))
}

/// Star on `m` vertices with centre 0.
pub fn star(m: usize) -> Graph {
    Graph::new(m, (1..m).map(|v| (0, v))).expect("star")
}

pub fn complete(m: usize) -> Graph {
    Graph::new(m, (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b)))).expect("complete")
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::new(a + b, (0..a).flat_map(|l| (a..a + b).map(move |r| (l, r)))).expect("kab")
}

/// Wheel with rim `0..rim` in cyclic order and hub `rim`.
pub fn wheel(rim: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..rim).map(|v| (v, (v + 1) % rim)).collect();
    edges.extend((0..rim).map(|v| (v, rim)));
    Graph::new(
        rim + 1,
        edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))),
    )
    .expect("wheel")
}

/// `K_m` with the disjoint edges `(0,1), (2,3), ...` removed, `k` of them.
pub fn complete_minus_matching(m: usize, k: usize) -> Result<Graph> {
    if k == 0 || 2 * k > m {
        return Err(Error::InvalidParams(format!(
            "cannot remove a matching of size {k} from K_{m}"
        )));
    }
    let missing = |a: usize, b: usize| a.is_multiple_of(2) && b == a + 1 && a < 2 * k;
    Graph::new(
        m,
        (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .filter(|&(a, b)| !missing(a, b)),
    )
}

/// `K_5` minus the disjoint edges `(1,3)` and `(2,4)`.
pub fn l5() -> Graph {
    Graph::new(
        5,
        [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 4),
            (2, 3),
            (3, 4),
        ],
    )
    .expect("l5")
}

fn parse_num(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidParams(format!("{what}: expected a count, got \"{s}\"")))
}

/// Parses a graph description: `path:M`, `cycle:M`, `star:M`, `complete:M`,
/// `wheel:R`, `kab:A,B`, `matching:M,K` or `l5`.
pub fn named_graph(spec: &str) -> Result<Graph> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = || -> Result<Vec<usize>> { arg.split(',').map(|s| parse_num(s, spec)).collect() };
    let one = || -> Result<usize> {
        match nums()?.as_slice() {
            [x] => Ok(*x),
            _ => Err(Error::InvalidParams(format!("{spec}: expected one size"))),
        }
    };
    let positive = |m: usize| {
        if m == 0 {
            Err(Error::InvalidParams(format!(
                "{spec}: size must be positive"
            )))
        } else {
            Ok(m)
        }
    };
    match kind.to_ascii_lowercase().as_str() {
        "path" => Ok(path(positive(one()?)?)),
        "cycle" => cycle(one()?),
        "star" => Ok(star(positive(one()?)?)),
        "complete" => Ok(complete(positive(one()?)?)),
        "wheel" => {
            let r = one()?;
            if r < 3 {
                return Err(Error::InvalidParams(
                    "wheel needs at least 3 rim vertices".into(),
                ));
            }
            Ok(wheel(r))
        }
        "kab" => match nums()?.as_slice() {
            [a, b] if *a > 0 && *b > 0 => Ok(complete_bipartite(*a, *b)),
            _ => Err(Error::InvalidParams(format!(
                "{spec}: expected kab:A,B with A, B >= 1"
            ))),
        },
        "matching" => match nums()?.as_slice() {
            [m, k] => complete_minus_matching(*m, *k),
            _ => Err(Error::InvalidParams(format!(
                "{spec}: expected matching:M,K"
            ))),
        },
        "l5" if arg.is_empty() => Ok(l5()),
        _ => Err(Error::InvalidParams(format!("unknown graph \"{spec}\""))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Connected,
    Tree,
    Biconnected,
    Path,
    Star,
    CompleteBipartite,
}

impl std::str::FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "connected" => GraphKind::Connected,
            "tree" => GraphKind::Tree,
            "biconnected" => GraphKind::Biconnected,
            "path" => GraphKind::Path,
            "star" => GraphKind::Star,
            "complete_bipartite" | "complete-bipartite" => GraphKind::CompleteBipartite,
            _ => return Err(Error::InvalidParams(format!("unknown graph kind \"{s}\""))),
        })
    }
}

fn relabel(m: usize, edges: &[(usize, usize)], perm: &[usize]) -> Result<Graph> {
    Graph::new(
        m,
        edges.iter().map(|&(a, b)| {
            let (x, y) = (perm[a], perm[b]);
            (x.min(y), x.max(y))
        }),
    )
}

fn random_tree_edges(m: usize, rng: &mut Rng8) -> Vec<(usize, usize)> {
    (1..m).map(|v| (rng.gen_range(0..v), v)).collect()
}

/// Random graph of the given kind on `m` vertices, deterministic in `seed`.
///
/// Biconnected graphs are a random cycle followed by random ears; connected
/// graphs are a random tree plus random extra edges. Complete bipartite
/// graphs pick the smaller side size uniformly from `1..=m/2`.
pub fn random_graph(kind: GraphKind, m: usize, seed: u64) -> Result<Graph> {
    let mut rng = rng(seed);
    if m == 0 || m > 64 {
        return Err(Error::InvalidParams(format!(
            "random graphs need 1 <= m <= 64, got {m}"
        )));
    }
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(&mut rng);
    match kind {
        GraphKind::Tree => relabel(m, &random_tree_edges(m, &mut rng), &perm),
        GraphKind::Path => relabel(m, path(m).edges(), &perm),
        GraphKind::Star => relabel(m, star(m).edges(), &perm),
        GraphKind::Connected => {
            let mut edges = random_tree_edges(m, &mut rng);
            let extra = rng.gen_range(0..=m);
            for _ in 0..extra {
                let a = rng.gen_range(0..m);
                let b = rng.gen_range(0..m);
                if a != b {
                    edges.push((a.min(b), a.max(b)));
                }
            }
            edges.sort_unstable();
            edges.dedup();
            relabel(m, &edges, &perm)
        }
        GraphKind::Biconnected => {
            if m < 3 {
                return Err(Error::InvalidParams(format!(
                    "biconnected graphs need m >= 3, got {m}"
                )));
            }
            let first = rng.gen_range(3..=m);
            let mut edges: Vec<(usize, usize)> = (1..first).map(|v| (v - 1, v)).collect();
            edges.push((0, first - 1));
            let mut next = first;
            while next < m {
                // an ear from an existing vertex through fresh vertices back to a
                // different existing vertex
                let len = rng.gen_range(1..=m - next);
                let a = rng.gen_range(0..next);
                let mut b = rng.gen_range(0..next - 1);
                if b >= a {
                    b += 1;
                }
                let mut prev = a;
                for v in next..next + len {
                    edges.push((prev, v));
                    prev = v;
                }
                edges.push((prev, b));
                next += len;
            }
            let chords = rng.gen_range(0..=m / 2);
            for _ in 0..chords {
                let a = rng.gen_range(0..m);
                let b = rng.gen_range(0..m);
                if a != b {
                    edges.push((a, b));
                }
            }
            let mut edges: Vec<(usize, usize)> = edges
                .into_iter()
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            relabel(m, &edges, &perm)
        }
        GraphKind::CompleteBipartite => {
            if m < 2 {
                return Err(Error::InvalidParams(
                    "complete bipartite graphs need m >= 2".into(),
                ));
            }
            let a = rng.gen_range(1..=m / 2);
            relabel(m, complete_bipartite(a, m - a).edges(), &perm)
        }
    }
}

/// Additive valuation with integer entries in `0..=max_value`.
pub fn random_additive(m: usize, max_value: i64, rng: &mut Rng8) -> AdditiveValuation {
    AdditiveValuation::new(
        (0..m)
            .map(|_| int(rng.gen_range(0..=max_value) as i128))
            .collect(),
    )
}

/// Random monotone set function: random integer entries in `0..=max_value`,
/// then each bundle raised to the maximum over its one-smaller subsets.
pub fn random_tabulated_monotone(m: usize, max_value: i64, rng: &mut Rng8) -> TabulatedValuation {
    let size = 1usize << m;
    let mut table: Vec<i64> = (0..size).map(|_| rng.gen_range(0..=max_value)).collect();
    table[0] = 0;
    for mask in 1..size {
        let mut best = table[mask];
        let mut rest = mask;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            best = best.max(table[mask ^ bit]);
            rest ^= bit;
        }
        table[mask] = best;
    }
    TabulatedValuation::new(m, table.into_iter().map(|x| int(x as i128)).collect())
        .expect("table sized for m")
}

fn get<'a>(params: &'a [(&str, &str)], key: &str) -> Option<&'a str> {
    params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

fn need(params: &[(&str, &str)], key: &str, name: &str) -> Result<usize> {
    let v = get(params, key)
        .ok_or_else(|| Error::InvalidParams(format!("{name} needs parameter {key}")))?;
    parse_num(v, key)
}

fn opt(params: &[(&str, &str)], key: &str, default: usize) -> Result<usize> {
    get(params, key).map_or(Ok(default), |v| parse_num(v, key))
}

fn graph_param(params: &[(&str, &str)], default: &str) -> Result<Graph> {
    named_graph(get(params, "graph").unwrap_or(default))
}

fn ints(values: &[i64]) -> AdditiveValuation {
    AdditiveValuation::from_ints(values)
}

/// Builds a named instance. Parameters are `key=value` pairs; see the README
/// for each entry's keys.
pub fn catalog(name: &str, params: &[(&str, &str)]) -> Result<Instance> {
    let invalid = |msg: String| Err(Error::InvalidParams(msg));
    let inst = match name {
        "fig2_wheel" => {
            let mut v = vec![3, 2, 1, 0, 0, 0, 0, 2];
            v.push(0);
            Instance::identical(wheel(8), 2, ints(&v))
        }
        "fig3_L5" | "fig3_l5" => Instance::identical(l5(), 2, ints(&[0, 2, 1, 2, 3])),
        "thm3_cut" => {
            let k = need(params, "k", name)?;
            if k < 2 {
                return invalid(format!("thm3_cut needs k >= 2, got {k}"));
            }
            let mut v = vec![k as i64];
            v.extend(std::iter::repeat_n(1, k));
            Instance::identical(star(k + 1), 2, ints(&v))
        }
        "thm9_matching" => {
            let m = need(params, "m", name)?;
            let k = opt(params, "matching", 1)?;
            if m < 3 {
                return invalid(format!("thm9_matching needs m >= 3, got {m}"));
            }
            let g = complete_minus_matching(m, k)?;
            if m == 5 && k == 2 {
                return invalid("thm9_matching excludes L5".into());
            }
            let mut v = vec![1i64; m];
            v[0] = m as i64 - 2;
            v[1] = m as i64 - 2;
            v[2] = m as i64 - 1;
            Instance::identical(g, 2, ints(&v))
        }
        "thm12_star" => {
            let n = need(params, "n", name)?;
            let m = need(params, "m", name)?;
            if n < 2 || m < n {
                return invalid(format!("thm12_star needs 2 <= n <= m, got n={n}, m={m}"));
            }
            let heavy = (m - n + 1) as i64;
            let mut v = vec![heavy; n - 1];
            v.extend(std::iter::repeat_n(1, m - n + 1));
            Instance::identical(star(m), n, ints(&v))
        }
        "thm16_path" => {
            let n = need(params, "n", name)?;
            let m = need(params, "m", name)?;
            if n < 1 || m < n {
                return invalid(format!("thm16_path needs 1 <= n <= m, got n={n}, m={m}"));
            }
            let mut v = vec![0i64; m];
            if m >= 2 * n - 1 {
                for (i, x) in v.iter_mut().take(2 * n - 1).enumerate() {
                    *x = if i % 2 == 0 { 1 } else { n as i64 };
                }
            } else {
                let heavy = (m - n + 1) as i64;
                let alternating = 2 * (m - n) + 1;
                for (i, x) in v.iter_mut().enumerate() {
                    *x = if i >= alternating {
                        heavy
                    } else if i % 2 == 0 {
                        1
                    } else {
                        heavy
                    };
                }
            }
            Instance::identical(path(m), n, ints(&v))
        }
        "prop7_pairs" => {
            let g = graph_param(params, "l5")?;
            let m = g.m();
            let (a, b, c, d) = match ["a", "b", "c", "d"].map(|k| get(params, k)) {
                [Some(a), Some(b), Some(c), Some(d)] => (
                    parse_num(a, "a")?,
                    parse_num(b, "b")?,
                    parse_num(c, "c")?,
                    parse_num(d, "d")?,
                ),
                [None, None, None, None] => match linkage_counterexample(&g, 2, 2)? {
                    Some((p, q)) => (p[0], p[1], q[0], q[1]),
                    None => return invalid("graph is 2-linked; pass a, b, c, d explicitly".into()),
                },
                _ => return invalid("prop7_pairs needs all of a, b, c, d or none".into()),
            };
            let mut set = [a, b, c, d];
            set.sort_unstable();
            if set[3] >= m || set.windows(2).any(|w| w[0] == w[1]) {
                return invalid("a, b, c, d must be distinct vertices".into());
            }
            let mut v = vec![0i64; m];
            v[a] = 2;
            v[b] = 2;
            v[c] = 3;
            v[d] = 1;
            Instance::identical(g, 2, ints(&v))
        }
        "prop9_linked" => {
            let g = graph_param(params, "wheel:8")?;
            let k = need(params, "k", name)?;
            if k == 0 || k + 2 > g.m() {
                return invalid(format!("prop9_linked needs 1 <= k <= m-2, got k={k}"));
            }
            let Some((a, b)) = linkage_counterexample(&g, 2, k)? else {
                return invalid(format!("graph is (2,{k})-linked"));
            };
            let mut v = vec![0i64; g.m()];
            v[a[0]] = k as i64;
            v[a[1]] = k as i64;
            v[b[0]] = k as i64 + 1;
            for &x in &b[1..] {
                v[x] = 1;
            }
            Instance::identical(g, 2, ints(&v))
        }
        "prop20_star" => {
            let m = need(params, "m", name)?;
            if m < 3 {
                return invalid(format!("prop20_star needs m >= 3, got {m}"));
            }
            Instance::identical(star(m), 2, ints(&vec![1; m]))
        }
        "thm21_efx" => efx_counterexample(&graph_param(params, "cycle:4")?)?,
        "fig6_tree" => {
            let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (0, 4), (0, 5)])?;
            Instance::identical(g, 3, ints(&[2, 3, 4, 0, 2, 2]))
        }
        "thm22_deg4" => Instance::identical(star(5), 3, ints(&[1; 5])),
        "fig7_k2b" => {
            let b = need(params, "b", name)?;
            if b < 4 {
                return invalid(format!("fig7_k2b needs b >= 4, got {b}"));
            }
            let mut v = vec![2, 2, 1, 1, 1, 1];
            v.extend(std::iter::repeat_n(0, b - 4));
            Instance::identical(complete_bipartite(2, b), 3, ints(&v))
        }
        _ => return Err(Error::UnknownInstance(name.to_string())),
    };
    Ok(inst)
}

/// Two identical agents on a connected, non-complete graph with no connected
/// EFX allocation: value 2 on the lowest-index non-adjacent pair, 3 on the
/// lowest other vertex and `1/(2m)` everywhere else.
pub fn efx_counterexample(g: &Graph) -> Result<Instance> {
    let m = g.m();
    let missing = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .find(|&(a, b)| !g.has_edge(a, b));
    let Some((v1, v2)) = missing else {
        return Err(Error::InvalidParams(
            "thm21_efx needs a non-complete graph".into(),
        ));
    };
    if !g.is_connected() {
        return Err(Error::InvalidParams(
            "thm21_efx needs a connected graph".into(),
        ));
    }
    let eps = Rational::new(1, 2 * m as i128);
    let mut v = vec![eps; m];
    v[v1] = int(2);
    v[v2] = int(2);
    if let Some(v3) = (0..m).find(|&x| x != v1 && x != v2) {
        v[v3] = int(3);
    }
    Ok(Instance::identical(g.clone(), 2, AdditiveValuation::new(v)))
}

/// Side sizes `(a, b)` when `g` is complete bipartite.
pub fn bipartite_sizes(g: &Graph) -> Option<(usize, usize)> {
    complete_bipartite_sides(g).map(|(l, r)| (l.len(), r.len()))
}
