//! Envy-based allocators. Two agents are split along a bipolar ordering of
//! a merged graph; complete bipartite graphs get envy-cycle elimination or
//! double round-robin.

use crate::checkers::envy_up_to;
use crate::error::{Error, Result};
use crate::graph::{
    bipolar_if_exists, block_tree, complete_bipartite_sides, merge_vertices, BipolarOrder,
    BlockTreeNode, Graph,
};
use crate::valuation::{Allocation, Instance, Valuation};

/// Best EFk guarantee for two agents on a graph, with the merge that
/// realises it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfkPlan {
    pub k_star: usize,
    /// Block-tree path chosen (alternating blocks and cut vertices).
    pub path: Vec<BlockTreeNode>,
    /// Number of dependents of every vertex (zero unless it guards some).
    pub dependents: Vec<usize>,
    /// Partition of the vertices: each guardian with its dependents, every
    /// other vertex alone. Sorted by smallest member.
    pub merge_sets: Vec<Vec<usize>>,
}

/// Guardian of every vertex off the path, or `None` on the path.
fn guardians(g: &Graph, on_path: &[bool]) -> Result<Vec<Option<usize>>> {
    let m = g.m();
    let mut guardian = vec![None; m];
    for comp in g.components_where(|v| !on_path[v]) {
        let mut attach: Vec<usize> = comp
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|&w| on_path[w])
            .collect();
        attach.sort_unstable();
        attach.dedup();
        let [c] = attach[..] else {
            return Err(Error::GuaranteeViolated(format!(
                "off-path component {comp:?} attaches at {attach:?}"
            )));
        };
        for v in comp {
            guardian[v] = Some(c);
        }
    }
    Ok(guardian)
}

fn plan_for_path(g: &Graph, path: Vec<BlockTreeNode>, blocks: &[Vec<usize>]) -> Result<EfkPlan> {
    let m = g.m();
    let mut on_path = vec![false; m];
    for node in &path {
        if let BlockTreeNode::Block(b) = node {
            for &v in &blocks[*b] {
                on_path[v] = true;
            }
        }
    }
    let guardian = guardians(g, &on_path)?;
    let mut dependents = vec![0usize; m];
    let mut groups: Vec<Vec<usize>> = (0..m).map(|v| vec![v]).collect();
    for (v, c) in guardian.iter().enumerate() {
        if let Some(c) = *c {
            dependents[c] += 1;
            groups[c].push(v);
        }
    }
    let mut merge_sets: Vec<Vec<usize>> = (0..m)
        .filter(|&v| on_path[v])
        .map(|v| {
            let mut s = std::mem::take(&mut groups[v]);
            s.sort_unstable();
            s
        })
        .collect();
    merge_sets.sort_unstable();
    Ok(EfkPlan {
        k_star: 1 + dependents.iter().copied().max().unwrap_or(0),
        path,
        dependents,
        merge_sets,
    })
}

/// Smallest `k` for which the graph guarantees EFk to two agents, found by
/// minimising `1 + max dependents` over all maximal block-tree paths. Ties
/// keep the first pair of leaf blocks in index order.
pub fn optimal_efk_two(g: &Graph) -> Result<EfkPlan> {
    if g.m() == 0 || !g.is_connected() {
        return Err(Error::InvalidGraph(
            "graph must be nonempty and connected".into(),
        ));
    }
    let bt = block_tree(g);
    let leaves = bt.leaf_blocks();
    let mut best: Option<EfkPlan> = None;
    let candidates: Vec<(usize, usize)> = if bt.blocks.len() == 1 {
        vec![(0, 0)]
    } else {
        leaves
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| leaves[i + 1..].iter().map(move |&b| (a, b)))
            .collect()
    };
    for (a, b) in candidates {
        let path = bt.path_between(BlockTreeNode::Block(a), BlockTreeNode::Block(b));
        let plan = plan_for_path(g, path, &bt.blocks)?;
        if best.as_ref().is_none_or(|p| plan.k_star < p.k_star) {
            best = Some(plan);
        }
    }
    Ok(best.expect("at least one block"))
}

/// Two-agent split along a bipolar order: the first cut (lowest index,
/// agent 0 on the prefix first) that is EF1 for both agents.
pub fn ef1_two_on_bipolar(
    order: &BipolarOrder,
    u1: &Valuation,
    u2: &Valuation,
) -> Result<Allocation> {
    let m = order.len();
    let cuts: Vec<usize> = if m < 2 {
        (0..=m).collect()
    } else {
        (1..m).collect()
    };
    for cut in cuts {
        let prefix = order.order[..cut].to_vec();
        let suffix = order.order[cut..].to_vec();
        for (a, b) in [(&prefix, &suffix), (&suffix, &prefix)] {
            if envy_up_to(u1, a, b, 1) && envy_up_to(u2, b, a, 1) {
                return Ok(Allocation::new(vec![a.clone(), b.clone()]));
            }
        }
    }
    Err(Error::GuaranteeViolated(
        "no EF1 cut along the bipolar order".into(),
    ))
}

/// Connected EF(k*) allocation for two agents: merge each guardian with its
/// dependents, split the merged graph along a bipolar order, expand.
pub fn efk_two_allocate(inst: &Instance) -> Result<(Allocation, usize)> {
    if inst.n != 2 {
        return Err(Error::pre("EFk allocation is for two agents"));
    }
    let plan = optimal_efk_two(&inst.graph)?;
    let (merged, map) = merge_vertices(&inst.graph, &plan.merge_sets)?;
    let order = bipolar_if_exists(&merged)
        .ok_or_else(|| Error::GuaranteeViolated("merged graph has no bipolar ordering".into()))?;
    let u1 = inst.valuations[0].lift(&map)?;
    let u2 = inst.valuations[1].lift(&map)?;
    let merged_alloc = ef1_two_on_bipolar(&order, &u1, &u2)?;
    let bundles = merged_alloc
        .bundles
        .iter()
        .map(|b| b.iter().flat_map(|&x| map[x].iter().copied()).collect())
        .collect();
    Ok((Allocation::new(bundles), plan.k_star))
}

/// Who envies whom under a (partial) allocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvyGraph {
    pub n: usize,
    /// `envies[i][j]`: agent `i` strictly prefers `j`'s bundle to her own.
    pub envies: Vec<Vec<bool>>,
}

impl EnvyGraph {
    pub fn new(vals: &[Valuation], bundles: &[Vec<usize>]) -> Self {
        let n = bundles.len();
        let envies = (0..n)
            .map(|i| {
                let own = vals[i].value_of(&bundles[i]);
                (0..n)
                    .map(|j| j != i && vals[i].value_of(&bundles[j]) > own)
                    .collect()
            })
            .collect();
        EnvyGraph { n, envies }
    }

    /// Lowest-index agent nobody envies.
    pub fn unenvied(&self) -> Option<usize> {
        (0..self.n).find(|&j| (0..self.n).all(|i| !self.envies[i][j]))
    }

    /// Lexicographically smallest cycle, written from its smallest agent.
    pub fn smallest_cycle(&self) -> Option<Vec<usize>> {
        fn extend(g: &EnvyGraph, start: usize, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let last = *path.last().expect("nonempty");
            for next in 0..g.n {
                if !g.envies[last][next] {
                    continue;
                }
                if next == start {
                    return true;
                }
                if next > start && !used[next] {
                    used[next] = true;
                    path.push(next);
                    if extend(g, start, path, used) {
                        return true;
                    }
                    path.pop();
                    used[next] = false;
                }
            }
            false
        }
        (0..self.n).find_map(|s| {
            let mut path = vec![s];
            let mut used = vec![false; self.n];
            used[s] = true;
            extend(self, s, &mut path, &mut used).then_some(path)
        })
    }

    pub fn is_acyclic(&self) -> bool {
        self.smallest_cycle().is_none()
    }
}

/// One step of envy-cycle elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PickRecord {
    pub agent: usize,
    pub good: usize,
    /// Whether the envy graph was acyclic just before this pick.
    pub acyclic_before: bool,
    /// Cycles rotated away after the pick, in order.
    pub rotations: Vec<Vec<usize>>,
    pub bundles_after: Vec<Vec<usize>>,
}

fn bipartite_sides_for(inst: &Instance) -> Result<(Vec<usize>, Vec<usize>)> {
    let (l, r) = complete_bipartite_sides(&inst.graph)
        .ok_or_else(|| Error::pre("graph is not complete bipartite"))?;
    if l.len() < inst.n || r.len() < inst.n {
        return Err(Error::pre(format!(
            "both sides need at least n = {} goods (sides {} and {})",
            inst.n,
            l.len(),
            r.len()
        )));
    }
    Ok((l, r))
}

/// Envy-cycle elimination on `K_{a,b}` with `a, b >= n`, ordered so every
/// bundle stays connected: see [`envy_cycle_bipartite_traced`].
pub fn envy_cycle_bipartite(inst: &Instance) -> Result<Allocation> {
    Ok(envy_cycle_bipartite_traced(inst)?.0)
}

/// Seeds every agent with one good of the side holding vertex 0 (`L`), then
/// repeatedly serves the lowest-index unenvied agent: from `L` if her bundle
/// already has a good of `R` (and `L` is not exhausted), otherwise from `R`
/// while it lasts. Envy cycles are rotated away after each pick, smallest
/// first. Goods are taken in index order within a side.
pub fn envy_cycle_bipartite_traced(inst: &Instance) -> Result<(Allocation, Vec<PickRecord>)> {
    let (l, r) = bipartite_sides_for(inst)?;
    let n = inst.n;
    let in_r: Vec<bool> = {
        let mut v = vec![false; inst.m()];
        for &x in &r {
            v[x] = true;
        }
        v
    };
    let mut left = l.into_iter().peekable();
    let mut right = r.into_iter().peekable();
    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut trace = Vec::new();
    let mut seeded = 0;
    while left.peek().is_some() || right.peek().is_some() {
        let graph = EnvyGraph::new(&inst.valuations, &bundles);
        let acyclic_before = graph.is_acyclic();
        let (agent, good) = if seeded < n {
            // agents with empty bundles are never envied
            seeded += 1;
            (seeded - 1, left.next().expect("a >= n"))
        } else {
            let agent = graph
                .unenvied()
                .ok_or_else(|| Error::GuaranteeViolated("every agent is envied".into()))?;
            let has_r = bundles[agent].iter().any(|&x| in_r[x]);
            let good = if has_r {
                left.next().or_else(|| right.next())
            } else {
                right.next().or_else(|| left.next())
            };
            (agent, good.expect("goods remain"))
        };
        bundles[agent].push(good);
        let rotations = eliminate_cycles(&inst.valuations, &mut bundles);
        trace.push(PickRecord {
            agent,
            good,
            acyclic_before,
            rotations,
            bundles_after: bundles.clone(),
        });
    }
    Ok((Allocation::new(bundles), trace))
}

/// Rotates bundles along envy cycles, smallest cycle first, until none is
/// left. Returns the cycles in the order they were removed.
fn eliminate_cycles(vals: &[Valuation], bundles: &mut [Vec<usize>]) -> Vec<Vec<usize>> {
    let mut rotations = Vec::new();
    while let Some(cycle) = EnvyGraph::new(vals, bundles).smallest_cycle() {
        let moved: Vec<Vec<usize>> = (0..cycle.len())
            .map(|i| bundles[cycle[(i + 1) % cycle.len()]].clone())
            .collect();
        for (&i, b) in cycle.iter().zip(moved) {
            bundles[i] = b;
        }
        rotations.push(cycle);
    }
    rotations
}

/// Round-robin over `L` in agent order, then over `R` in reverse agent
/// order, each agent taking her most valuable remaining good (lowest index
/// on ties). Additive valuations only.
pub fn double_round_robin(inst: &Instance) -> Result<Allocation> {
    let (l, r) = bipartite_sides_for(inst)?;
    if !inst.all_additive() {
        return Err(Error::pre("double round-robin needs additive valuations"));
    }
    let n = inst.n;
    let mut bundles = vec![Vec::new(); n];
    let agents_fwd: Vec<usize> = (0..n).collect();
    let agents_rev: Vec<usize> = (0..n).rev().collect();
    for (mut side, order) in [(l, agents_fwd), (r, agents_rev)] {
        let mut turn = order.iter().cycle();
        while !side.is_empty() {
            let i = *turn.next().expect("cycle");
            let u = inst.valuations[i].as_additive().expect("checked additive");
            let pos = (0..side.len())
                .max_by(|&a, &b| {
                    u.values[side[a]]
                        .cmp(&u.values[side[b]])
                        .then(side[b].cmp(&side[a]))
                })
                .expect("nonempty side");
            bundles[i].push(side.remove(pos));
        }
    }
    Ok(Allocation::new(bundles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::{is_connected_allocation, is_ef, is_efk};
    use crate::instances::{
        complete_bipartite, named_graph, random_additive, random_graph, random_tabulated_monotone,
        rng, GraphKind,
    };
    use crate::oracles::guaranteed_efk_bruteforce;
    use crate::valuation::AdditiveValuation;

    fn identical(g: Graph, n: usize, values: &[i64]) -> Instance {
        Instance::identical(g, n, AdditiveValuation::from_ints(values))
    }

    #[test]
    fn ef1_on_orders() {
        let p = BipolarOrder { order: vec![0, 1] };
        let u = Valuation::Additive(AdditiveValuation::from_ints(&[1, 1]));
        let a = ef1_two_on_bipolar(&p, &u, &u).unwrap();
        assert_eq!(a.bundles, vec![vec![0], vec![1]]);
        let c5 = named_graph("cycle:5").unwrap();
        let order = bipolar_if_exists(&c5).unwrap();
        let inst = identical(c5, 2, &[1; 5]);
        let a = ef1_two_on_bipolar(&order, &inst.valuations[0], &inst.valuations[1]).unwrap();
        assert!(is_efk(&inst, &a, 1));
        assert!(is_connected_allocation(&inst.graph, &a));
    }

    #[test]
    fn k_star_examples() {
        assert_eq!(
            optimal_efk_two(&named_graph("path:5").unwrap())
                .unwrap()
                .k_star,
            1
        );
        assert_eq!(
            optimal_efk_two(&named_graph("cycle:5").unwrap())
                .unwrap()
                .k_star,
            1
        );
        for m in 4..=8 {
            let plan = optimal_efk_two(&named_graph(&format!("star:{m}")).unwrap()).unwrap();
            assert_eq!(plan.k_star, m - 2);
        }
    }

    #[test]
    fn k_star_matches_bruteforce_on_random_graphs() {
        for seed in 0..60 {
            let m = 1 + seed as usize % 7;
            let kind = [GraphKind::Tree, GraphKind::Connected][seed as usize % 2];
            let g = random_graph(kind, m, seed).unwrap();
            let plan = optimal_efk_two(&g).unwrap();
            assert_eq!(plan.k_star, guaranteed_efk_bruteforce(&g).unwrap(), "{g:?}");
            let (merged, _) = merge_vertices(&g, &plan.merge_sets).unwrap();
            assert!(bipolar_if_exists(&merged).is_some());
            assert!(plan
                .merge_sets
                .iter()
                .all(|s| s.len() <= plan.k_star && g.is_connected_subset(s)));
        }
    }

    #[test]
    fn efk_allocations_with_tabulated_valuations() {
        let mut r = rng(2);
        for seed in 0..40 {
            let m = 1 + seed as usize % 8;
            let g = random_graph(GraphKind::Connected, m, seed).unwrap();
            let vals = (0..2)
                .map(|_| Valuation::Tabulated(random_tabulated_monotone(m, 9, &mut r)))
                .collect();
            let inst = Instance::new(g, vals);
            let (a, k) = efk_two_allocate(&inst).unwrap();
            assert!(is_connected_allocation(&inst.graph, &a));
            assert!(is_efk(&inst, &a, k));
        }
        let star = identical(named_graph("star:4").unwrap(), 2, &[1; 4]);
        let (a, k) = efk_two_allocate(&star).unwrap();
        assert_eq!(k, 2);
        assert!(is_efk(&star, &a, 2));
    }

    #[test]
    fn envy_graph_cycles() {
        let vals: Vec<Valuation> = vec![
            Valuation::Additive(AdditiveValuation::from_ints(&[0, 1, 0])),
            Valuation::Additive(AdditiveValuation::from_ints(&[1, 0, 0])),
            Valuation::Additive(AdditiveValuation::from_ints(&[0, 0, 1])),
        ];
        let g = EnvyGraph::new(&vals, &[vec![0], vec![1], vec![2]]);
        assert_eq!(g.smallest_cycle(), Some(vec![0, 1]));
        assert_eq!(g.unenvied(), Some(2));
    }

    #[test]
    fn envy_cycle_examples() {
        let inst = identical(complete_bipartite(3, 3), 3, &[1; 6]);
        let a = envy_cycle_bipartite(&inst).unwrap();
        assert!(a.bundles.iter().all(|b| b.len() == 2));
        assert!(is_efk(&inst, &a, 1));
        let zero = identical(complete_bipartite(2, 2), 2, &[0; 4]);
        assert!(is_ef(&zero, &envy_cycle_bipartite(&zero).unwrap()));
        assert!(envy_cycle_bipartite(&identical(complete_bipartite(2, 3), 3, &[1; 5])).is_err());
    }

    #[test]
    fn envy_cycle_invariants_with_tabulated_valuations() {
        let mut r = rng(13);
        for seed in 0..50u64 {
            let n = 2 + seed as usize % 2;
            let (a, b) = (n + seed as usize % 2, n + (seed as usize / 2) % 2);
            let g = complete_bipartite(a, b);
            let vals = (0..n)
                .map(|_| Valuation::Tabulated(random_tabulated_monotone(a + b, 9, &mut r)))
                .collect();
            let inst = Instance::new(g, vals);
            let (alloc, trace) = envy_cycle_bipartite_traced(&inst).unwrap();
            assert!(is_connected_allocation(&inst.graph, &alloc));
            assert!(is_efk(&inst, &alloc, 1));
            for step in &trace {
                assert!(step.acyclic_before);
                for bundle in &step.bundles_after {
                    let l_goods = bundle.iter().filter(|&&x| x < a).count();
                    let r_goods = bundle.len() - l_goods;
                    assert!(!(l_goods >= 2 && r_goods == 0));
                }
            }
        }
    }

    #[test]
    fn double_round_robin_examples() {
        let vals = vec![Valuation::Additive(AdditiveValuation::from_ints(&[3, 1, 1, 3])); 2];
        let inst = Instance::new(complete_bipartite(2, 2), vals);
        let a = double_round_robin(&inst).unwrap();
        assert_eq!(a.bundles, vec![vec![0, 2], vec![1, 3]]);
        assert!(is_efk(&inst, &a, 1));
        let mut r = rng(6);
        for seed in 0..50 {
            let n = 2 + seed % 3;
            let (la, lb) = (n + seed % 2, n + 1);
            let vals = (0..n)
                .map(|_| Valuation::Additive(random_additive(la + lb, 9, &mut r)))
                .collect();
            let inst = Instance::new(complete_bipartite(la, lb), vals);
            let a = double_round_robin(&inst).unwrap();
            assert!(is_connected_allocation(&inst.graph, &a));
            assert!(is_efk(&inst, &a, 1));
            assert!(a
                .bundles
                .iter()
                .all(|b| b.iter().any(|&x| x < la) && b.iter().any(|&x| x >= la)));
        }
    }
}
