use std::collections::VecDeque;

use super::Graph;

/// Residual network with unit-ish capacities and integer costs.
pub(crate) struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
}

impl FlowNet {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
        }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let id = self.to.len();
        self.head[from].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.cost.push(cost);
        self.head[to].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
        self.cost.push(-cost);
        id
    }

    pub(crate) fn flow_on(&self, arc: usize) -> i64 {
        self.cap[arc ^ 1]
    }

    /// Edmonds-Karp max flow, stopping early once `limit` units are routed.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                if v == t {
                    break;
                }
                for &e in &self.head[v] {
                    let w = self.to[e];
                    if self.cap[e] > 0 && !seen[w] {
                        seen[w] = true;
                        via[w] = e;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            push = push.min(limit - total);
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.to[e ^ 1];
            }
            total += push;
        }
        total
    }

    /// Successive shortest paths (Bellman-Ford) for `amount` units.
    /// Returns the routed amount.
    pub(crate) fn min_cost_flow(&mut self, s: usize, t: usize, amount: i64) -> i64 {
        let n = self.head.len();
        let mut routed = 0;
        while routed < amount {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[s] = 0;
            for _ in 0..n {
                let mut changed = false;
                for v in 0..n {
                    if dist[v] == i64::MAX {
                        continue;
                    }
                    for &e in &self.head[v] {
                        let w = self.to[e];
                        if self.cap[e] > 0 && dist[v] + self.cost[e] < dist[w] {
                            dist[w] = dist[v] + self.cost[e];
                            via[w] = e;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut push = amount - routed;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.to[e ^ 1];
            }
            routed += push;
        }
        routed
    }

    pub(crate) fn arcs_from(&self, v: usize) -> &[usize] {
        &self.head[v]
    }

    pub(crate) fn target(&self, arc: usize) -> usize {
        self.to[arc]
    }
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths for
/// non-adjacent `s`, `t` (Menger), via vertex splitting.
fn local_connectivity(g: &Graph, s: usize, t: usize, limit: i64) -> i64 {
    let m = g.m();
    let inf = m as i64 + 1;
    let mut net = FlowNet::new(2 * m);
    for v in 0..m {
        let cap = if v == s || v == t { inf } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap, 0);
    }
    for &(a, b) in g.edges() {
        net.add_arc(2 * a + 1, 2 * b, inf, 0);
        net.add_arc(2 * b + 1, 2 * a, inf, 0);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Minimum number of vertices whose removal disconnects `g`; `m - 1` for a
/// complete graph. A disconnected graph has connectivity 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let m = g.m();
    if m == 0 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    if g.is_complete() {
        return m - 1;
    }
    let mut best = (m - 1) as i64;
    for s in 0..m {
        for t in s + 1..m {
            if g.has_edge(s, t) {
                continue;
            }
            best = best.min(local_connectivity(g, s, t, best));
        }
    }
    best as usize
}

/// Largest number of components left after deleting a single vertex,
/// together with the lowest-index vertex attaining it.
pub fn max_components_single_deletion(g: &Graph) -> (usize, usize) {
    assert!(g.m() >= 2, "needs at least two vertices");
    let mut best = (0, 0);
    for v in 0..g.m() {
        let k = g.components_where(|w| w != v).len();
        if k > best.0 {
            best = (k, v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{named_graph, wheel};

    /// Smallest deletion set found by trying every vertex subset.
    fn connectivity_by_deletion(g: &Graph) -> usize {
        let m = g.m();
        if g.is_complete() {
            return m - 1;
        }
        let mut best = m;
        for mask in 0u64..(1 << m) {
            let size = mask.count_ones() as usize;
            if size >= best || size + 2 > m {
                continue;
            }
            if g.components_where(|v| mask & (1 << v) == 0).len() > 1 {
                best = size;
            }
        }
        best
    }

    #[test]
    fn named_instance_connectivities() {
        assert_eq!(vertex_connectivity(&wheel(8)), 3);
        assert_eq!(vertex_connectivity(&named_graph("path:3").unwrap()), 1);
        assert_eq!(vertex_connectivity(&named_graph("l5").unwrap()), 3);
        assert_eq!(vertex_connectivity(&named_graph("complete:5").unwrap()), 4);
        assert_eq!(vertex_connectivity(&named_graph("cycle:6").unwrap()), 2);
    }

    #[test]
    fn flow_matches_deletion_oracle() {
        use crate::instances::{random_graph, GraphKind};
        for seed in 0..40 {
            for kind in [
                GraphKind::Connected,
                GraphKind::Biconnected,
                GraphKind::Tree,
            ] {
                let m = 3 + (seed as usize % 7);
                let g = random_graph(kind, m, seed).unwrap();
                assert_eq!(
                    vertex_connectivity(&g),
                    connectivity_by_deletion(&g),
                    "{g:?}"
                );
            }
        }
    }

    #[test]
    fn single_deletion_components() {
        let star = named_graph("star:6").unwrap();
        assert_eq!(max_components_single_deletion(&star), (5, 0));
        let cycle = named_graph("cycle:5").unwrap();
        assert_eq!(max_components_single_deletion(&cycle), (1, 0));
    }
}
