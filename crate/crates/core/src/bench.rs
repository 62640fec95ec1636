//! Reproduction suite: the fifteen acceptance checks and the summary table
//! of price-of-connectivity values on extremal instances.
//!
//! Every check is deterministic (fixed seeds) and exact.

use std::fmt;

use rand::Rng;

use crate::checkers::{
    is_connected_allocation, is_efk, is_ips_allocation, mms_ratio_report, Criterion,
};
use crate::envy::{double_round_robin, efk_two_allocate, envy_cycle_bipartite, optimal_efk_two};
use crate::error::{Error, Result};
use crate::graph::{is_ab_linked, max_components_single_deletion, vertex_connectivity, Graph};
use crate::instances::{
    catalog, complete_bipartite, complete_minus_matching, cycle, efx_counterexample, l5,
    named_graph, path, random_additive, random_graph, random_tabulated_monotone, rng, star, wheel,
    GraphKind, Rng8,
};
use crate::mms::{
    allocate_any_graph, allocate_path_ips, allocate_star, bipartition_biconnected,
    bipartition_cut_vertex, ips_threshold, subset_window,
};
use crate::oracles::{
    exact_gmms, exact_gmms_tree, exact_mms, exists_connected_allocation, guaranteed_efk_bruteforce,
    poc_ratio,
};
use crate::valuation::{int, Instance, Rational, Valuation};

/// Outcome of one acceptance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    /// What was checked, or the first failure.
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} [{:>2}] {}: {}",
            self.id, self.name, self.detail
        )
    }
}

struct Fail(String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(e.to_string())
    }
}

type Check = std::result::Result<String, Fail>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(Fail(format!($($fmt)+)));
        }
    };
}

fn report(id: usize, name: &'static str, body: impl FnOnce() -> Check) -> CriterionReport {
    let (pass, detail) = match body() {
        Ok(d) => (true, d),
        Err(Fail(d)) => (false, d),
    };
    CriterionReport {
        id,
        name,
        pass,
        detail,
    }
}

fn min_part(u: &Valuation, parts: &(Vec<usize>, Vec<usize>)) -> Rational {
    u.value_of(&parts.0).min(u.value_of(&parts.1))
}

fn additive(m: usize, max: i64, r: &mut Rng8) -> Valuation {
    Valuation::Additive(random_additive(m, max, r))
}

fn tabulated(m: usize, max: i64, r: &mut Rng8) -> Valuation {
    Valuation::Tabulated(random_tabulated_monotone(m, max, r))
}

pub fn wheel_counterexample() -> CriterionReport {
    report(1, "wheel: MMS 4, G-MMS 3, PoC 3/4", || {
        let inst = catalog("fig2_wheel", &[])?;
        let u = &inst.valuations[0];
        let mms = exact_mms(u, 2)?.value;
        let gmms = exact_gmms(&inst.graph, u, 2)?.value;
        let poc = poc_ratio(&inst.graph, u, 2)?;
        let parts = bipartition_biconnected(&inst.graph, u.as_additive().expect("additive"))?;
        let part = min_part(u, &parts);
        ensure!(mms == int(4), "mms = {mms}");
        ensure!(gmms == int(3), "gmms = {gmms}");
        ensure!(poc == Rational::new(3, 4), "poc = {poc}");
        ensure!(part == int(3), "biconnected min part = {part}");
        Ok(format!(
            "mms {mms}, gmms {gmms}, poc {poc}, min part {part}"
        ))
    })
}

pub fn l5_counterexample() -> CriterionReport {
    report(
        2,
        "L5: connectivity 3, not (2,2)-linked, MMS 4, G-MMS 3",
        || {
            let inst = catalog("fig3_L5", &[])?;
            let u = &inst.valuations[0];
            let kappa = vertex_connectivity(&inst.graph);
            let linked = is_ab_linked(&inst.graph, 2, 2)?;
            let mms = exact_mms(u, 2)?.value;
            let gmms = exact_gmms(&inst.graph, u, 2)?.value;
            ensure!(kappa == 3, "connectivity = {kappa}");
            ensure!(!linked, "L5 reported (2,2)-linked");
            ensure!(mms == int(4), "mms = {mms}");
            ensure!(gmms == int(3), "gmms = {gmms}");
            Ok(format!(
                "connectivity {kappa}, (2,2)-linked {linked}, mms {mms}, gmms {gmms}"
            ))
        },
    )
}

pub fn cut_vertex_bound() -> CriterionReport {
    report(3, "cut-vertex bipartition reaches MMS/k", || {
        let mut r = rng(3);
        for t in 0..100u64 {
            let m = r.gen_range(3..=10);
            let g = random_graph(GraphKind::Tree, m, 3_000 + t)?;
            let (k, _) = max_components_single_deletion(&g);
            let u = additive(m, 9, &mut r);
            let mms = exact_mms(&u, 2)?.value;
            let parts = bipartition_cut_vertex(&g, u.as_additive().expect("additive"))?;
            let part = min_part(&u, &parts);
            ensure!(
                part * int(k as i128) >= mms,
                "tree {t} (m={m}, k={k}): min part {part} < mms {mms} / k"
            );
        }
        for k in 2..=6usize {
            let inst = catalog("thm3_cut", &[("k", &k.to_string())])?;
            let u = &inst.valuations[0];
            let mms = exact_mms(u, 2)?.value;
            let parts = bipartition_cut_vertex(&inst.graph, u.as_additive().expect("additive"))?;
            let part = min_part(u, &parts);
            let gmms = exact_gmms(&inst.graph, u, 2)?.value;
            ensure!(
                part * int(k as i128) == mms && gmms == part,
                "thm3_cut k={k}: min part {part}, gmms {gmms}, mms {mms}"
            );
        }
        Ok("100 random trees; equality on thm3_cut for k = 2..6".into())
    })
}

pub fn biconnected_bound() -> CriterionReport {
    report(4, "biconnected bipartition reaches 3/4 MMS", || {
        let mut r = rng(4);
        for t in 0..100u64 {
            let m = r.gen_range(3..=10);
            let g = random_graph(GraphKind::Biconnected, m, 4_000 + t)?;
            let u = additive(m, 9, &mut r);
            let mms = exact_mms(&u, 2)?.value;
            let parts = bipartition_biconnected(&g, u.as_additive().expect("additive"))?;
            let part = min_part(&u, &parts);
            ensure!(
                part * int(4) >= mms * int(3),
                "graph {t} (m={m}): min part {part} < 3/4 of mms {mms}"
            );
        }
        let inst = catalog("fig2_wheel", &[])?;
        let u = &inst.valuations[0];
        let parts = bipartition_biconnected(&inst.graph, u.as_additive().expect("additive"))?;
        let (part, mms) = (min_part(u, &parts), exact_mms(u, 2)?.value);
        ensure!(
            part * int(4) == mms * int(3),
            "wheel: min part {part}, mms {mms}"
        );
        Ok("100 random biconnected graphs; equality on the wheel".into())
    })
}

pub fn star_poc() -> CriterionReport {
    report(5, "stars: PoC 1/(m-n+1), star allocator meets it", || {
        let mut count = 0;
        for n in 2..=3usize {
            for m in n..=8usize {
                let inst = catalog(
                    "thm12_star",
                    &[("n", &n.to_string()), ("m", &m.to_string())],
                )?;
                let bound = Rational::new(1, (m - n + 1) as i128);
                let poc = poc_ratio(&inst.graph, &inst.valuations[0], n)?;
                ensure!(poc == bound, "n={n}, m={m}: poc {poc} != {bound}");
                let alloc = allocate_star(&inst)?;
                ensure!(
                    is_connected_allocation(&inst.graph, &alloc),
                    "n={n}, m={m}: disconnected"
                );
                for (i, a) in mms_ratio_report(&inst, &alloc)?.iter().enumerate() {
                    ensure!(
                        a.ratio >= bound,
                        "n={n}, m={m}: agent {i} ratio {}",
                        a.ratio
                    );
                }
                count += 1;
            }
        }
        Ok(format!("{count} (n, m) pairs"))
    })
}

pub fn path_poc() -> CriterionReport {
    report(6, "paths: PoC equals the IPS threshold", || {
        let (mut long, mut short) = (0, 0);
        for n in 1..=4usize {
            for m in n..=9usize {
                let inst = catalog(
                    "thm16_path",
                    &[("n", &n.to_string()), ("m", &m.to_string())],
                )?;
                let poc = poc_ratio(&inst.graph, &inst.valuations[0], n)?;
                let want = ips_threshold(n, m);
                ensure!(poc == want, "n={n}, m={m}: poc {poc} != {want}");
                if m + 1 >= 2 * n {
                    long += 1;
                } else {
                    short += 1;
                }
            }
        }
        ensure!(short > 0 && long > 0, "both regimes must be exercised");
        Ok(format!(
            "{long} pairs with m >= 2n-1, {short} with n <= m < 2n-1"
        ))
    })
}

pub fn path_ips() -> CriterionReport {
    report(7, "path allocator is connected and IPS", || {
        let mut r = rng(7);
        for t in 0..200u64 {
            let n = r.gen_range(1..=5);
            let m = r.gen_range(1..=12);
            let g = random_graph(GraphKind::Path, m, 7_000 + t)?;
            let vals = (0..n).map(|_| additive(m, 9, &mut r)).collect();
            let inst = Instance::new(g, vals);
            let (alloc, _) = allocate_path_ips(&inst)?;
            ensure!(
                is_connected_allocation(&inst.graph, &alloc),
                "instance {t}: disconnected"
            );
            ensure!(
                is_ips_allocation(&inst, &alloc)?,
                "instance {t} (n={n}, m={m}): not IPS"
            );
        }
        Ok("200 random path instances".into())
    })
}

pub fn spanning_tree_bound() -> CriterionReport {
    report(8, "spanning-tree allocator reaches MMS/(m-n+1)", || {
        let mut r = rng(8);
        let n = 3usize;
        for t in 0..50u64 {
            let m = r.gen_range(3..=9);
            let g = random_graph(GraphKind::Connected, m, 8_000 + t)?;
            let vals = (0..n).map(|_| additive(m, 9, &mut r)).collect();
            let inst = Instance::new(g, vals);
            let alloc = allocate_any_graph(&inst)?;
            ensure!(
                is_connected_allocation(&inst.graph, &alloc),
                "instance {t}: disconnected"
            );
            let bound = Rational::new(1, (m - n + 1) as i128);
            for (i, a) in mms_ratio_report(&inst, &alloc)?.iter().enumerate() {
                ensure!(
                    a.ratio >= bound,
                    "instance {t}: agent {i} ratio {} < {bound}",
                    a.ratio
                );
            }
        }
        Ok("50 random connected graphs, n = 3".into())
    })
}

/// Name, vertex count, edges.
type EdgeList = (&'static str, usize, &'static [(usize, usize)]);

/// Fixed set of small connected graphs for the two-agent EFk checks.
pub fn efk_test_graphs() -> Result<Vec<(String, Graph)>> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    let mut add = |name: String, g: Graph| out.push((name, g));
    for m in 1..=7 {
        add(format!("path:{m}"), path(m));
    }
    for m in 3..=7 {
        add(format!("star:{m}"), star(m));
    }
    let caterpillars: [(&str, &[(usize, usize)]); 4] = [
        ("caterpillar a", &[(0, 1), (1, 2), (0, 3), (1, 4), (2, 5)]),
        (
            "caterpillar b",
            &[(0, 1), (1, 2), (1, 3), (1, 4), (2, 5), (2, 6)],
        ),
        (
            "caterpillar c",
            &[(0, 1), (1, 2), (2, 3), (1, 4), (1, 5), (2, 6)],
        ),
        ("caterpillar d", &[(0, 1), (1, 2), (0, 3), (0, 4), (2, 5)]),
    ];
    for (name, edges) in caterpillars {
        let m = edges.len() + 1;
        add(name.into(), Graph::new(m, edges.iter().copied())?);
    }
    let pendant_cycles: [EdgeList; 5] = [
        ("triangle + pendant", 4, &[(0, 1), (1, 2), (0, 2), (2, 3)]),
        ("C4 + pendant", 5, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]),
        (
            "C4 + two pendants",
            6,
            &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (2, 5)],
        ),
        (
            "C5 + pendant path",
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (5, 6)],
        ),
        (
            "triangle + three pendants",
            6,
            &[(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (0, 5)],
        ),
    ];
    for (name, m, edges) in pendant_cycles {
        add(name.into(), Graph::new(m, edges.iter().copied())?);
    }
    // chains of blocks with trees hanging off cut vertices
    let composites: [EdgeList; 5] = [
        (
            "two triangles",
            5,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)],
        ),
        (
            "triangle-edge-triangle",
            7,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (3, 5),
                (5, 6),
            ],
        ),
        (
            "triangles with hanging leaves",
            7,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (2, 3),
                (3, 4),
                (2, 4),
                (2, 5),
                (4, 6),
            ],
        ),
        (
            "C4 and triangle",
            7,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (0, 3),
                (3, 4),
                (4, 5),
                (3, 5),
                (1, 6),
            ],
        ),
        (
            "bowtie with tail",
            7,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (0, 3),
                (3, 4),
                (0, 4),
                (4, 5),
                (5, 6),
            ],
        ),
    ];
    for (name, m, edges) in composites {
        add(name.into(), Graph::new(m, edges.iter().copied())?);
    }
    add("cycle:5".into(), cycle(5)?);
    add("K4".into(), named_graph("complete:4")?);
    add("wheel:4".into(), wheel(4));
    add("K2,3".into(), complete_bipartite(2, 3));
    for seed in 0..6u64 {
        let m = 4 + (seed as usize % 4);
        add(
            format!("random tree {seed}"),
            random_graph(GraphKind::Tree, m, 9_000 + seed)?,
        );
        add(
            format!("random connected {seed}"),
            random_graph(GraphKind::Connected, m, 9_100 + seed)?,
        );
    }
    Ok(out)
}

pub fn efk_two_agents() -> CriterionReport {
    report(
        9,
        "two-agent EFk: k* matches brute force, allocator meets it",
        || {
            let graphs = efk_test_graphs()?;
            let mut r = rng(9);
            for (name, g) in &graphs {
                let plan = optimal_efk_two(g)?;
                let brute = guaranteed_efk_bruteforce(g)?;
                ensure!(
                    plan.k_star == brute,
                    "{name}: k* {} but brute force {brute}",
                    plan.k_star
                );
                for t in 0..20 {
                    let m = g.m();
                    let inst = Instance::new(
                        g.clone(),
                        vec![tabulated(m, 9, &mut r), tabulated(m, 9, &mut r)],
                    );
                    let (alloc, k) = efk_two_allocate(&inst)?;
                    ensure!(
                        is_connected_allocation(g, &alloc),
                        "{name} pair {t}: disconnected"
                    );
                    ensure!(is_efk(&inst, &alloc, k), "{name} pair {t}: not EF{k}");
                }
            }
            Ok(format!("{} graphs x 20 tabulated pairs", graphs.len()))
        },
    )
}

pub fn star_efk_tight() -> CriterionReport {
    report(10, "stars: k* = m-2 and no EF(m-3)", || {
        for m in 4..=8usize {
            let k = optimal_efk_two(&star(m))?.k_star;
            ensure!(k == m - 2, "star on {m} vertices: k* = {k}");
            let inst = catalog("prop20_star", &[("m", &m.to_string())])?;
            let found = exists_connected_allocation(&inst, &Criterion::Efk(m - 3))?;
            ensure!(
                found.is_none(),
                "m={m}: found EF{} allocation {:?}",
                m - 3,
                found
            );
        }
        Ok("m = 4..8".into())
    })
}

/// Non-complete connected graphs with at most six vertices.
fn efx_test_graphs() -> Result<Vec<(String, Graph)>> {
    let mut out: Vec<(String, Graph)> = efk_test_graphs()?
        .into_iter()
        .filter(|(_, g)| g.m() >= 3 && g.m() <= 6 && !g.is_complete())
        .collect();
    out.push(("cycle:4".into(), cycle(4)?));
    out.push(("cycle:6".into(), cycle(6)?));
    out.push(("L5".into(), l5()));
    out.push(("wheel:5".into(), wheel(5)));
    out.push(("K6 minus matching".into(), complete_minus_matching(6, 3)?));
    out.push(("K3,3".into(), complete_bipartite(3, 3)));
    Ok(out)
}

pub fn no_efx() -> CriterionReport {
    report(11, "non-complete graphs: no connected EFX", || {
        let graphs = efx_test_graphs()?;
        for (name, g) in &graphs {
            let inst = efx_counterexample(g)?;
            let found = exists_connected_allocation(&inst, &Criterion::Efx)?;
            ensure!(found.is_none(), "{name}: EFX allocation {:?}", found);
        }
        Ok(format!("{} graphs", graphs.len()))
    })
}

pub fn ef1_existence() -> CriterionReport {
    report(
        12,
        "three agents: EF1 counterexamples and bipartite existence",
        || {
            let ef1 = Criterion::Efk(1);
            let mut fixed = vec![catalog("fig6_tree", &[])?, catalog("thm22_deg4", &[])?];
            for b in 4..=6usize {
                fixed.push(catalog("fig7_k2b", &[("b", &b.to_string())])?);
            }
            for inst in &fixed {
                let found = exists_connected_allocation(inst, &ef1)?;
                ensure!(
                    found.is_none(),
                    "EF1 allocation {:?} on a counterexample",
                    found
                );
            }
            let mut r = rng(12);
            let n = 3;
            for t in 0..20 {
                let g = complete_bipartite(2, 3);
                let inst = Instance::new(g, (0..n).map(|_| additive(5, 9, &mut r)).collect());
                ensure!(
                    exists_connected_allocation(&inst, &ef1)?.is_some(),
                    "K2,3 triple {t}: no EF1"
                );
            }
            for (a, b) in [(3, 3), (3, 4), (4, 4)] {
                for t in 0..20 {
                    let g = complete_bipartite(a, b);
                    let inst =
                        Instance::new(g, (0..n).map(|_| additive(a + b, 9, &mut r)).collect());
                    let alloc = envy_cycle_bipartite(&inst)?;
                    ensure!(
                        is_connected_allocation(&inst.graph, &alloc) && is_efk(&inst, &alloc, 1),
                        "K{a},{b} triple {t}: envy-cycle output not connected EF1"
                    );
                }
            }
            Ok("5 counterexamples; K2,3 by search and K3,3 K3,4 K4,4 by envy cycles, 20 triples each".into())
        },
    )
}

pub fn bipartite_ef1() -> CriterionReport {
    report(
        13,
        "complete bipartite graphs: envy cycles and double round-robin are EF1",
        || {
            let mut r = rng(13);
            for (label, tab) in [("envy-cycle", true), ("double round-robin", false)] {
                for t in 0..50 {
                    let n = r.gen_range(1..=4usize);
                    let a = r.gen_range(n..=n + 2);
                    let b = r.gen_range(n..=(n + 2).min(11 - a).max(n));
                    let g = complete_bipartite(a, b);
                    let m = a + b;
                    let vals = (0..n)
                        .map(|_| {
                            if tab {
                                tabulated(m, 12, &mut r)
                            } else {
                                additive(m, 9, &mut r)
                            }
                        })
                        .collect();
                    let inst = Instance::new(g, vals);
                    let alloc = if tab {
                        envy_cycle_bipartite(&inst)?
                    } else {
                        double_round_robin(&inst)?
                    };
                    ensure!(
                        is_connected_allocation(&inst.graph, &alloc),
                        "{label} {t} (n={n}, K{a},{b}): disconnected"
                    );
                    ensure!(
                        is_efk(&inst, &alloc, 1),
                        "{label} {t} (n={n}, K{a},{b}): not EF1"
                    );
                }
            }
            Ok("50 tabulated and 50 additive instances, n <= 4".into())
        },
    )
}

pub fn subset_window_bounds() -> CriterionReport {
    report(14, "subset window lands in [r, r+2]", || {
        let mut r = rng(14);
        let mut done = 0;
        while done < 500 {
            let k = r.gen_range(1..=12usize);
            let q = r.gen_range(1..=6i128);
            let extra: Vec<Rational> = (0..k)
                .map(|_| Rational::new(r.gen_range(0..=3 * q), q))
                .collect();
            let total: Rational = extra.iter().sum();
            let cap = int(k as i128);
            let scale = if total > cap { cap / total } else { int(1) };
            let x: Vec<Rational> = extra.iter().map(|e| int(1) + e * scale).collect();
            let s: Rational = x.iter().sum();
            if s < int(2) {
                continue;
            }
            let steps = r.gen_range(1..=8i128);
            let target = (s - int(2)) * Rational::new(r.gen_range(0..=steps), steps);
            let j = subset_window(&x, target)?;
            let got: Rational = j.iter().map(|&i| x[i]).sum();
            ensure!(
                got >= target && got <= target + int(2),
                "x = {x:?}, r = {target}: subset {j:?} sums to {got}"
            );
            let exists = (0u32..1 << k).any(|mask| {
                let v: Rational = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| x[i]).sum();
                v >= target && v <= target + int(2)
            });
            ensure!(
                exists,
                "exhaustive search finds no window subset for x = {x:?}, r = {target}"
            );
            done += 1;
        }
        Ok("500 random inputs, k <= 12".into())
    })
}

pub fn tree_gmms_oracles() -> CriterionReport {
    report(
        15,
        "tree G-MMS: partition search equals edge-cut search",
        || {
            let mut r = rng(15);
            for t in 0..100u64 {
                let m = r.gen_range(1..=10usize);
                let n = r.gen_range(1..=4usize);
                let g = random_graph(GraphKind::Tree, m, 15_000 + t)?;
                let u = additive(m, 9, &mut r);
                let general = exact_gmms(&g, &u, n)?.value;
                let cuts = exact_gmms_tree(&g, &u, n)?.value;
                ensure!(
                    general == cuts,
                    "tree {t} (m={m}, n={n}): {general} vs {cuts}"
                );
            }
            Ok("100 random trees".into())
        },
    )
}

/// Every acceptance check, in order.
pub fn run_all() -> Vec<CriterionReport> {
    let checks: [fn() -> CriterionReport; 15] = [
        wheel_counterexample,
        l5_counterexample,
        cut_vertex_bound,
        biconnected_bound,
        star_poc,
        path_poc,
        path_ips,
        spanning_tree_bound,
        efk_two_agents,
        star_efk_tight,
        no_efx,
        ef1_existence,
        bipartite_ef1,
        subset_window_bounds,
        tree_gmms_oracles,
    ];
    checks.iter().map(|c| c()).collect()
}

/// One row of the price-of-connectivity summary: the bound for a graph
/// class next to the exact ratio on an instance attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub class: &'static str,
    pub n: usize,
    pub m: usize,
    pub instance: String,
    /// The bound as a formula in `n`, `m` and `k`.
    pub formula: &'static str,
    pub expected: Rational,
    pub measured: Rational,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.expected == self.measured
    }
}

fn row(
    class: &'static str,
    formula: &'static str,
    expected: Rational,
    name: &str,
    params: &[(&str, &str)],
) -> Result<TableRow> {
    let inst = catalog(name, params)?;
    let measured = poc_ratio(&inst.graph, &inst.valuations[0], inst.n)?;
    let shown: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let instance = if shown.is_empty() {
        name.to_string()
    } else {
        format!("{name} {}", shown.join(" "))
    };
    Ok(TableRow {
        class,
        n: inst.n,
        m: inst.m(),
        instance,
        formula,
        expected,
        measured,
    })
}

/// Summary rows for paths and stars (any `n`) and for the connectivity
/// classes with two agents, each on an instance where the bound is tight.
pub fn poc_table() -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for m in 2..=6usize {
        let expected = if m == 2 { int(1) } else { Rational::new(1, 2) };
        let ms = m.to_string();
        rows.push(row(
            "path",
            "1 if m=2, else 1/2",
            expected,
            "thm16_path",
            &[("n", "2"), ("m", &ms)],
        )?);
    }
    for (n, m) in [(3, 3), (3, 4), (3, 5), (3, 7), (4, 6), (4, 8)] {
        let (ns, ms) = (n.to_string(), m.to_string());
        rows.push(row(
            "path",
            "1/(m-n+1) if m<2n-1, else 1/n",
            ips_threshold(n, m),
            "thm16_path",
            &[("n", &ns), ("m", &ms)],
        )?);
    }
    for (n, m) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 6), (4, 7)] {
        let (ns, ms) = (n.to_string(), m.to_string());
        rows.push(row(
            "star",
            "1/(m-n+1)",
            Rational::new(1, (m - n + 1) as i128),
            "thm12_star",
            &[("n", &ns), ("m", &ms)],
        )?);
    }
    for k in 2..=5usize {
        let ks = k.to_string();
        rows.push(row(
            "connectivity 1",
            "1/k",
            Rational::new(1, k as i128),
            "thm3_cut",
            &[("k", &ks)],
        )?);
    }
    for g in ["cycle:4", "cycle:6"] {
        rows.push(row(
            "connectivity 2",
            "3/4",
            Rational::new(3, 4),
            "prop7_pairs",
            &[("graph", g)],
        )?);
    }
    rows.push(row(
        "connectivity >= 3",
        "3/4 (upper)",
        Rational::new(3, 4),
        "fig2_wheel",
        &[],
    )?);
    rows.push(row(
        "connectivity >= 3",
        "3/4 (upper)",
        Rational::new(3, 4),
        "fig3_L5",
        &[],
    )?);
    Ok(rows)
}

/// Plain-text rendering of [`poc_table`].
pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = format!(
        "{:<18} {:>2} {:>2}  {:<31} {:>8} {:>8}  {}\n",
        "class", "n", "m", "bound", "expected", "measured", "instance"
    );
    for r in rows {
        let mark = if r.matches() { "" } else { "  MISMATCH" };
        out.push_str(&format!(
            "{:<18} {:>2} {:>2}  {:<31} {:>8} {:>8}  {}{mark}\n",
            r.class,
            r.n,
            r.m,
            r.formula,
            r.expected.to_string(),
            r.measured.to_string(),
            r.instance
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows_are_tight() {
        let rows = poc_table().unwrap();
        assert!(
            rows.iter().all(TableRow::matches),
            "{}",
            render_table(&rows)
        );
        assert!(render_table(&rows).lines().count() == rows.len() + 1);
    }

    #[test]
    fn test_graph_set_is_large_enough() {
        let graphs = efk_test_graphs().unwrap();
        assert!(graphs.len() >= 30);
        assert!(graphs.iter().all(|(_, g)| g.m() <= 7 && g.is_connected()));
    }

    #[test]
    fn report_line_format() {
        let r = wheel_counterexample();
        assert!(r.pass, "{r}");
        assert!(r.to_string().starts_with("PASS [ 1]"));
    }
}
