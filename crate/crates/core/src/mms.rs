//! Constructive maximin-share allocators and the IPS machinery.

use itertools::Itertools;
use num_traits::Zero;

use crate::caps::{self, Caps};
use crate::error::{Error, Result};
use crate::graph::{
    bfs_spanning_tree, bipolar_between, path_order, star_center, vertex_connectivity, Graph,
};
use crate::oracles::exact_gmms;
use crate::valuation::{int, AdditiveValuation, Allocation, Instance, Rational, Valuation};

/// Indivisible proportional share threshold.
pub fn ips_threshold(n: usize, m: usize) -> Rational {
    if m < n {
        Rational::zero()
    } else if m >= 2 * n - 1 {
        Rational::new(1, n as i128)
    } else {
        Rational::new(1, (m - n + 1) as i128)
    }
}

/// Evidence that a bundle is IPS: `u(bundle) >= threshold * u(M \ removed)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpsCertificate {
    pub removed: Vec<usize>,
    pub threshold: Rational,
}

/// Certificate for bundle `a` when it is IPS under `u`. The removed set is
/// the `n - 1` most valuable goods outside `a`, which is optimal for additive
/// valuations.
pub fn is_ips_bundle(
    u: &AdditiveValuation,
    a: &[usize],
    n: usize,
    m: usize,
) -> Option<IpsCertificate> {
    let threshold = ips_threshold(n, m);
    let mut inside = vec![false; m];
    for &g in a {
        inside[g] = true;
    }
    let mut outside: Vec<usize> = (0..m).filter(|&g| !inside[g]).collect();
    outside.sort_by(|&x, &y| u.values[y].cmp(&u.values[x]).then(x.cmp(&y)));
    let mut removed: Vec<usize> = outside.into_iter().take(n.saturating_sub(1)).collect();
    removed.sort_unstable();
    let rest = u.total() - u.value_of(&removed);
    (u.value_of(a) >= threshold * rest).then_some(IpsCertificate { removed, threshold })
}

fn additive_all(inst: &Instance) -> Result<Vec<&AdditiveValuation>> {
    inst.valuations
        .iter()
        .map(|v| {
            v.as_additive()
                .ok_or_else(|| Error::pre("this allocator needs additive valuations"))
        })
        .collect()
}

/// Connected IPS allocation on a path: grow a bundle from the vertex-0 end
/// one good at a time and hand it to the lowest-index remaining agent for
/// whom it is IPS; the last agent takes everything left. The certificate at
/// index `i` belongs to agent `i`.
pub fn allocate_path_ips(inst: &Instance) -> Result<(Allocation, Vec<IpsCertificate>)> {
    let order = path_order(&inst.graph).ok_or_else(|| Error::pre("graph is not a path"))?;
    let vals = additive_all(inst)?;
    let (n, m) = (inst.n, inst.m());
    let mut bundles = vec![Vec::new(); n];
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut current = Vec::new();
    let mut next = 0;
    while remaining.len() > 1 {
        if let Some(pos) = remaining
            .iter()
            .position(|&i| is_ips_bundle(vals[i], &current, n, m).is_some())
        {
            let agent = remaining.remove(pos);
            bundles[agent] = std::mem::take(&mut current);
            continue;
        }
        if next == m {
            return Err(Error::GuaranteeViolated(
                "path IPS procedure ran out of goods".into(),
            ));
        }
        current.push(order[next]);
        next += 1;
    }
    current.extend_from_slice(&order[next..]);
    bundles[remaining[0]] = current;
    let alloc = Allocation::new(bundles);
    let certs = (0..n)
        .map(|i| {
            is_ips_bundle(vals[i], &alloc.bundles[i], n, m)
                .ok_or_else(|| Error::GuaranteeViolated(format!("bundle of agent {i} is not IPS")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((alloc, certs))
}

/// Star allocator: agents `0..n-1` pick their favourite remaining leaf in
/// turn, the last agent takes the centre and every leaf left over.
pub fn allocate_star(inst: &Instance) -> Result<Allocation> {
    let center = star_center(&inst.graph).ok_or_else(|| Error::pre("graph is not a star"))?;
    let vals = additive_all(inst)?;
    let (n, m) = (inst.n, inst.m());
    if n < 2 || m < n {
        return Err(Error::pre(format!(
            "star allocator needs 2 <= n <= m, got n={n}, m={m}"
        )));
    }
    let mut leaves: Vec<usize> = (0..m).filter(|&v| v != center).collect();
    let mut bundles = Vec::with_capacity(n);
    for u in vals.iter().take(n - 1) {
        let pos = (0..leaves.len())
            .max_by(|&a, &b| {
                u.values[leaves[a]]
                    .cmp(&u.values[leaves[b]])
                    .then(b.cmp(&a))
            })
            .expect("m >= n leaves remain");
        bundles.push(vec![leaves.remove(pos)]);
    }
    leaves.push(center);
    bundles.push(leaves);
    Ok(Allocation::new(bundles))
}

/// Two-part split for graphs with connectivity exactly 1 in which both parts
/// are connected and the poorer part is worth at least `MMS / k`, `k` being
/// the largest number of components left by deleting one vertex.
pub fn bipartition_cut_vertex(
    g: &Graph,
    u: &AdditiveValuation,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if vertex_connectivity(g) != 1 {
        return Err(Error::pre("graph must have connectivity exactly 1"));
    }
    let m = g.m();
    let total = u.total();
    let tree = bfs_spanning_tree(g, 0);

    // walk towards the heavy side until every subtree is worth at most half
    let mut v = 0;
    let subtrees = loop {
        let parts = tree.components_where(|x| x != v);
        match parts.iter().find(|p| u.value_of(p) * int(2) > total) {
            Some(heavy) => {
                v = *tree
                    .neighbors(v)
                    .iter()
                    .find(|w| heavy.contains(w))
                    .expect("a subtree touches the centre");
            }
            None => break parts,
        }
    };

    let mut candidates: Vec<Vec<usize>> = subtrees.clone();
    let mut group: Vec<usize> = vec![usize::MAX; m];
    for (i, p) in subtrees.iter().enumerate() {
        for &x in p {
            group[x] = i;
        }
    }
    let mut members: Vec<Vec<usize>> = subtrees;
    for &(a, b) in g.edges() {
        if a == v || b == v || tree.has_edge(a, b) {
            continue;
        }
        let (ga, gb) = (group[a], group[b]);
        if ga == gb {
            continue;
        }
        let moved = std::mem::take(&mut members[gb]);
        for &x in &moved {
            group[x] = ga;
        }
        members[ga].extend(moved);
        members[ga].sort_unstable();
        candidates.push(members[ga].clone());
    }
    if let Some(max) = members
        .iter()
        .filter(|p| !p.is_empty())
        .max_by(|a, b| u.value_of(a).cmp(&u.value_of(b)))
    {
        candidates.push(max.clone());
    }

    let mut best: Option<(Rational, Vec<usize>)> = None;
    for s in candidates {
        let value = {
            let vs = u.value_of(&s);
            vs.min(total - vs)
        };
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, s));
        }
    }
    let (_, s) = best.expect("a cut vertex leaves at least two subtrees");
    Ok(split(m, s))
}

fn split(m: usize, mut s: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    s.sort_unstable();
    let mut inside = vec![false; m];
    for &x in &s {
        inside[x] = true;
    }
    let rest = (0..m).filter(|&x| !inside[x]).collect();
    (s, rest)
}

/// Best prefix cut over bipolar orderings between every ordered pair of
/// goods. For biconnected graphs the poorer part is worth at least three
/// quarters of the two-agent MMS.
pub fn bipartition_biconnected(
    g: &Graph,
    u: &AdditiveValuation,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let m = g.m();
    if m < 3 || vertex_connectivity(g) < 2 {
        return Err(Error::NotBiconnected);
    }
    let total = u.total();
    let mut orders: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; m]; m];
    for (a, b) in (0..m).tuple_combinations() {
        let order = bipolar_between(g, a, b)?.order;
        let mut reversed = order.clone();
        reversed.reverse();
        orders[a][b] = Some(order);
        orders[b][a] = Some(reversed);
    }
    let mut best: Option<(Rational, Vec<usize>)> = None;
    // ordered pairs (a, b) in lexicographic order
    for order in orders.iter().flatten().flatten() {
        let mut prefix = Rational::zero();
        for cut in 1..m {
            prefix += u.values[order[cut - 1]];
            let value = prefix.min(total - prefix);
            if best.as_ref().is_none_or(|(v, _)| value > *v) {
                best = Some((value, order[..cut].to_vec()));
            }
        }
    }
    let (_, s) = best.expect("m >= 3");
    Ok(split(m, s))
}

/// Agent 1 (index 1) takes the part she weakly prefers, `S` on ties; agent 0
/// gets the other part.
pub fn cut_and_choose(parts: (Vec<usize>, Vec<usize>), u2: &Valuation) -> Allocation {
    let (s, c) = parts;
    if u2.value_of(&s) >= u2.value_of(&c) {
        Allocation::new(vec![c, s])
    } else {
        Allocation::new(vec![s, c])
    }
}

/// Connected allocation on a tree giving every agent at least her own
/// G-MMS, by trying every edge cut and every assignment of the pieces.
pub fn allocate_tree_gmms(inst: &Instance) -> Result<Allocation> {
    let g = &inst.graph;
    if !g.is_tree() {
        return Err(Error::pre("graph is not a tree"));
    }
    let (n, m) = (inst.n, inst.m());
    if n == 0 {
        return Err(Error::pre("need at least one agent"));
    }
    caps::check("tree allocation search", m, Caps::current().mms_for(n))?;
    if n > m {
        let mut bundles: Vec<Vec<usize>> = (0..m).map(|x| vec![x]).collect();
        bundles.resize(n, Vec::new());
        return Ok(Allocation::new(bundles));
    }
    let targets: Vec<Rational> = inst
        .valuations
        .iter()
        .map(|u| Ok(exact_gmms(g, u, n)?.value))
        .collect::<Result<_>>()?;
    for cuts in (0..n).rev() {
        for cut in g.edges().iter().combinations(cuts) {
            let keep: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .filter(|e| !cut.contains(e))
                .copied()
                .collect();
            let parts = Graph::new(m, keep)?.components_where(|_| true);
            // injective maps from pieces to agents; unmatched agents get nothing
            for agents in (0..n).permutations(parts.len()) {
                let mut bundles = vec![Vec::new(); n];
                for (p, &i) in parts.iter().zip(&agents) {
                    bundles[i] = p.clone();
                }
                if (0..n).all(|i| inst.valuations[i].value_of(&bundles[i]) >= targets[i]) {
                    return Ok(Allocation::new(bundles));
                }
            }
        }
    }
    Err(Error::GuaranteeViolated(
        "no connected allocation gives every agent her G-MMS on this tree".into(),
    ))
}

/// Runs [`allocate_tree_gmms`] on the BFS spanning tree rooted at vertex 0.
/// Each agent gets at least `MMS / (m - n + 1)`.
pub fn allocate_any_graph(inst: &Instance) -> Result<Allocation> {
    if !inst.graph.is_connected() {
        return Err(Error::InvalidGraph("graph is not connected".into()));
    }
    let tree = bfs_spanning_tree(&inst.graph, 0);
    let on_tree = Instance {
        n: inst.n,
        graph: tree,
        valuations: inst.valuations.clone(),
    };
    allocate_tree_gmms(&on_tree)
}

/// Subset `J` of indices with `r <= sum(x[J]) <= r + 2`, for values `x_j >= 1`
/// with sum `s`, `2 <= s <= 2k`, and `0 <= r <= s - 2`.
pub fn subset_window(x: &[Rational], r: Rational) -> Result<Vec<usize>> {
    let k = x.len();
    let one = int(1);
    let two = int(2);
    let s: Rational = x.iter().sum();
    if k == 0 || x.iter().any(|v| *v < one) {
        return Err(Error::pre("need at least one value, each at least 1"));
    }
    if s < two || s > two * int(k as i128) {
        return Err(Error::pre(format!("sum {s} outside [2, 2k]")));
    }
    if r < Rational::zero() || r > s - two {
        return Err(Error::pre(format!("r = {r} outside [0, s - 2]")));
    }
    let idx: Vec<usize> = (0..k).collect();
    let mut j = window(x, &idx, r);
    j.sort_unstable();
    Ok(j)
}

fn window(x: &[Rational], idx: &[usize], r: Rational) -> Vec<usize> {
    let two = int(2);
    if idx.len() == 1 {
        return idx.to_vec();
    }
    let s: Rational = idx.iter().map(|&i| x[i]).sum();
    let top = *idx
        .iter()
        .max_by(|&&a, &&b| x[a].cmp(&x[b]).then(b.cmp(&a)))
        .expect("nonempty");
    let rest: Vec<usize> = idx.iter().copied().filter(|&i| i != top).collect();
    if x[top] <= two {
        // prefix sums grow by at most 2, so one of them lands in the window
        let walk: Vec<usize> = std::iter::once(top).chain(rest).collect();
        let mut y = Rational::zero();
        for i in 0..=walk.len() {
            if y >= r && y <= r + two {
                return walk[..i].to_vec();
            }
            if i < walk.len() {
                y += x[walk[i]];
            }
        }
        unreachable!("prefix walk always hits the window");
    }
    if r >= s / two - int(1) {
        if x[top] >= r {
            return vec![top];
        }
        let mut j = window(x, &rest, r - x[top]);
        j.push(top);
        j
    } else {
        let outside = window(x, idx, s - r - two);
        idx.iter()
            .copied()
            .filter(|i| !outside.contains(i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::{is_connected_allocation, is_ips_allocation, mms_ratio_report};
    use crate::graph::max_components_single_deletion;
    use crate::instances::{catalog, named_graph, random_additive, random_graph, rng, GraphKind};
    use crate::oracles::{exact_gmms_tree, exact_mms};
    use crate::valuation::ratio;
    use rand::Rng;

    fn add(values: &[i64]) -> AdditiveValuation {
        AdditiveValuation::from_ints(values)
    }

    #[test]
    fn thresholds() {
        assert_eq!(ips_threshold(3, 5), ratio(1, 3));
        assert_eq!(ips_threshold(4, 5), ratio(1, 2));
        assert_eq!(ips_threshold(5, 3), int(0));
    }

    #[test]
    fn ips_bundles() {
        let u = add(&[1, 2, 1]);
        let c = is_ips_bundle(&u, &[0], 2, 3).unwrap();
        assert_eq!(c.removed, vec![1]);
        assert!(is_ips_bundle(&u, &[], 2, 3).is_none());
        assert_eq!(
            is_ips_bundle(&u, &[0, 1, 2], 2, 3).unwrap().removed,
            Vec::<usize>::new()
        );
    }

    /// Independent check: some removal set of size at most n - 1 works.
    fn ips_by_enumeration(u: &AdditiveValuation, a: &[usize], n: usize, m: usize) -> bool {
        let t = ips_threshold(n, m);
        let outside: Vec<usize> = (0..m).filter(|g| !a.contains(g)).collect();
        (0..n.min(outside.len() + 1)).any(|size| {
            outside.iter().combinations(size).any(|b| {
                let b: Vec<usize> = b.into_iter().copied().collect();
                u.value_of(a) >= t * (u.total() - u.value_of(&b))
            })
        })
    }

    #[test]
    fn greedy_removal_matches_enumeration() {
        let mut r = rng(3);
        for _ in 0..300 {
            let m = r.gen_range(1..8);
            let n = r.gen_range(1..5);
            let u = random_additive(m, 5, &mut r);
            let a: Vec<usize> = (0..m).filter(|_| r.gen_bool(0.4)).collect();
            assert_eq!(
                is_ips_bundle(&u, &a, n, m).is_some(),
                ips_by_enumeration(&u, &a, n, m)
            );
        }
    }

    #[test]
    fn path_ips_examples() {
        let inst = Instance::identical(named_graph("path:3").unwrap(), 2, add(&[1, 2, 1]));
        let (a, certs) = allocate_path_ips(&inst).unwrap();
        assert!(is_connected_allocation(&inst.graph, &a));
        assert_eq!(certs.len(), 2);
        let single = Instance::identical(named_graph("path:3").unwrap(), 1, add(&[1, 2, 1]));
        assert_eq!(
            allocate_path_ips(&single).unwrap().0.bundles,
            vec![vec![0, 1, 2]]
        );
        let few = Instance::identical(named_graph("path:2").unwrap(), 4, add(&[1, 2]));
        let (a, _) = allocate_path_ips(&few).unwrap();
        assert!(is_ips_allocation(&few, &a).unwrap());
        assert!(allocate_path_ips(&Instance::identical(
            named_graph("star:4").unwrap(),
            2,
            add(&[1; 4])
        ))
        .is_err());
    }

    #[test]
    fn random_paths_get_ips() {
        let mut r = rng(8);
        for seed in 0..100 {
            let m = r.gen_range(1..11);
            let n = r.gen_range(1..5);
            let g = random_graph(GraphKind::Path, m, seed).unwrap();
            let vals = (0..n)
                .map(|_| Valuation::Additive(random_additive(m, 6, &mut r)))
                .collect();
            let inst = Instance::new(g, vals);
            let (a, _) = allocate_path_ips(&inst).unwrap();
            assert!(is_connected_allocation(&inst.graph, &a));
            assert!(is_ips_allocation(&inst, &a).unwrap());
        }
    }

    #[test]
    fn star_allocations() {
        for n in 2..=3 {
            for m in n..=7 {
                let inst = catalog(
                    "thm12_star",
                    &[("n", &n.to_string()), ("m", &m.to_string())],
                )
                .unwrap();
                let a = allocate_star(&inst).unwrap();
                assert!(is_connected_allocation(&inst.graph, &a));
                let worst = mms_ratio_report(&inst, &a)
                    .unwrap()
                    .iter()
                    .map(|x| x.ratio)
                    .min()
                    .unwrap();
                assert_eq!(worst, ratio(1, (m - n + 1) as i128));
            }
        }
        let k2 = Instance::identical(named_graph("star:2").unwrap(), 2, add(&[3, 1]));
        assert_eq!(
            allocate_star(&k2)
                .unwrap()
                .bundles
                .iter()
                .map(Vec::len)
                .collect::<Vec<_>>(),
            vec![1, 1]
        );
        assert!(allocate_star(&Instance::identical(
            named_graph("star:3").unwrap(),
            4,
            add(&[1; 3])
        ))
        .is_err());
    }

    #[test]
    fn cut_vertex_examples() {
        for k in 2..=6 {
            let inst = catalog("thm3_cut", &[("k", &k.to_string())]).unwrap();
            let u = inst.valuations[0].as_additive().unwrap();
            let (s, c) = bipartition_cut_vertex(&inst.graph, u).unwrap();
            assert_eq!(u.value_of(&s).min(u.value_of(&c)), int(1));
        }
        let (s, c) =
            bipartition_cut_vertex(&named_graph("path:2").unwrap(), &add(&[1, 1])).unwrap();
        assert_eq!((s.len(), c.len()), (1, 1));
        assert!(bipartition_cut_vertex(&named_graph("cycle:4").unwrap(), &add(&[1; 4])).is_err());
    }

    #[test]
    fn cut_vertex_bound_on_random_graphs() {
        let mut r = rng(21);
        for seed in 0..150 {
            let m = r.gen_range(2..10);
            let kind = if seed % 2 == 0 {
                GraphKind::Tree
            } else {
                GraphKind::Connected
            };
            let g = random_graph(kind, m, seed).unwrap();
            if vertex_connectivity(&g) != 1 {
                continue;
            }
            let u = random_additive(m, 9, &mut r);
            let (s, c) = bipartition_cut_vertex(&g, &u).unwrap();
            assert!(g.is_connected_subset(&s) && g.is_connected_subset(&c));
            let k = max_components_single_deletion(&g).0 as i128;
            let mms = exact_mms(&Valuation::Additive(u.clone()), 2).unwrap().value;
            assert!(u.value_of(&s).min(u.value_of(&c)) * int(k) >= mms);
        }
    }

    #[test]
    fn biconnected_examples() {
        let inst = catalog("fig2_wheel", &[]).unwrap();
        let u = inst.valuations[0].as_additive().unwrap();
        let parts = bipartition_biconnected(&inst.graph, u).unwrap();
        assert_eq!(u.value_of(&parts.0).min(u.value_of(&parts.1)), int(3));
        let a = cut_and_choose(parts, &inst.valuations[1]);
        assert!(a.bundles.iter().all(|b| u.value_of(b) >= int(3)));
        let (s, c) =
            bipartition_biconnected(&named_graph("cycle:4").unwrap(), &add(&[1; 4])).unwrap();
        assert_eq!((s.len(), c.len()), (2, 2));
        assert!(matches!(
            bipartition_biconnected(&named_graph("path:4").unwrap(), &add(&[1; 4])),
            Err(Error::NotBiconnected)
        ));
    }

    #[test]
    fn cut_and_choose_ties_go_to_s() {
        let u = Valuation::Additive(add(&[1, 1]));
        let a = cut_and_choose((vec![0], vec![1]), &u);
        assert_eq!(a.bundles, vec![vec![1], vec![0]]);
    }

    #[test]
    fn tree_allocations_meet_own_gmms() {
        let mut r = rng(4);
        for seed in 0..60 {
            let m = r.gen_range(1..9);
            let n = r.gen_range(1..4);
            let kind = if seed % 3 == 0 {
                GraphKind::Star
            } else {
                GraphKind::Tree
            };
            let g = random_graph(if m < 2 { GraphKind::Tree } else { kind }, m, seed).unwrap();
            let vals: Vec<Valuation> = (0..n)
                .map(|_| Valuation::Additive(random_additive(m, 7, &mut r)))
                .collect();
            let inst = Instance::new(g.clone(), vals);
            let a = allocate_tree_gmms(&inst).unwrap();
            assert!(is_connected_allocation(&g, &a));
            for i in 0..n {
                let own = exact_gmms_tree(&g, &inst.valuations[i], n).unwrap().value;
                assert!(inst.valuations[i].value_of(&a.bundles[i]) >= own);
            }
        }
    }

    #[test]
    fn any_graph_fig2() {
        let inst = catalog("fig2_wheel", &[]).unwrap();
        let a = allocate_any_graph(&inst).unwrap();
        assert!(is_connected_allocation(&inst.graph, &a));
        let worst = mms_ratio_report(&inst, &a)
            .unwrap()
            .iter()
            .map(|x| x.value)
            .min()
            .unwrap();
        assert!(worst >= ratio(1, 2));
    }

    #[test]
    fn subset_window_examples() {
        assert_eq!(subset_window(&[int(2)], int(0)).unwrap(), vec![0]);
        let j = subset_window(&[int(1), int(1), int(3)], int(2)).unwrap();
        let sum: Rational = j.iter().map(|&i| [int(1), int(1), int(3)][i]).sum();
        assert!(sum >= int(2) && sum <= int(4));
        assert_eq!(
            subset_window(&[int(1), int(1)], int(0)).unwrap(),
            Vec::<usize>::new()
        );
        assert!(subset_window(&[int(1)], int(0)).is_err());
        assert!(subset_window(&[int(1), int(1)], int(1)).is_err());
    }
}
