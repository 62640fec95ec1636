//! Undirected simple graphs over goods and the structural algorithms the
//! allocators depend on.

mod blocks;
mod classes;
mod connectivity;
mod ears;
mod linked;

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub use blocks::{block_tree, BlockTree, BlockTreeNode};
pub use classes::{
    bfs_spanning_tree, complete_bipartite_sides, merge_vertices, path_order, star_center,
};
pub use connectivity::{max_components_single_deletion, vertex_connectivity};
pub use ears::{
    bipolar_between, bipolar_if_exists, open_ear_decomposition, BipolarOrder, EarDecomposition,
};
pub use linked::{is_ab_linked, linkage_counterexample};

/// A simple undirected graph whose vertices are the goods `0..m`.
///
/// Edges are stored normalized (`i < j`) and sorted. Connectivity is not
/// enforced at construction so that malformed instances can still be loaded
/// and reported on; algorithms that need it check it themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    m: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    bits: Vec<u64>,
}

impl Graph {
    pub fn new(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut norm = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if a >= m || b >= m {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {m} vertices"
                )));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); m];
        for &(a, b) in &norm {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let bits = if m <= 64 {
            adj.iter()
                .map(|l| l.iter().fold(0u64, |acc, &v| acc | (1 << v)))
                .collect()
        } else {
            Vec::new()
        };
        Ok(Graph {
            m,
            edges: norm,
            adj,
            bits,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.m && self.adj[a].binary_search(&b).is_ok()
    }

    /// Neighbourhood bitmasks; only available for `m <= 64`.
    pub fn adjacency_masks(&self) -> &[u64] {
        assert!(self.m <= 64, "bitmask view needs m <= 64");
        &self.bits
    }

    /// Mask of all vertices, for `m <= 64`.
    pub fn full_mask(&self) -> u64 {
        full_mask(self.m)
    }

    pub fn is_connected(&self) -> bool {
        self.m == 0 || self.reach(0, |_| true).iter().all(|&r| r)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.m * self.m.saturating_sub(1) / 2
    }

    pub fn is_tree(&self) -> bool {
        self.m >= 1 && self.edges.len() == self.m - 1 && self.is_connected()
    }

    /// True iff the subgraph induced by `s` is connected. The empty set and
    /// singletons count as connected.
    pub fn is_connected_subset(&self, s: &[usize]) -> bool {
        let Some(&start) = s.first() else {
            return true;
        };
        let mut inside = vec![false; self.m];
        for &v in s {
            inside[v] = true;
        }
        let seen = self.reach(start, |v| inside[v]);
        s.iter().all(|&v| seen[v])
    }

    /// Mask form of [`Graph::is_connected_subset`].
    pub fn is_connected_mask(&self, mask: u64) -> bool {
        connected_mask(&self.bits, mask)
    }

    /// Vertices reachable from `start` through vertices accepted by `allow`.
    pub(crate) fn reach(&self, start: usize, allow: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.m];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] && allow(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Connected components of the subgraph induced by vertices accepted by
    /// `allow`, each sorted, ordered by smallest vertex.
    pub(crate) fn components_where(&self, allow: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.m];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.m {
            if comp[s] != usize::MAX || !allow(s) {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX && allow(w) {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.m];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| index[*a] != usize::MAX && index[*b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]));
        Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph is simple")
    }
}

pub(crate) fn full_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

pub(crate) fn mask_to_vec(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

pub(crate) fn vec_to_mask(v: &[usize]) -> u64 {
    v.iter().fold(0, |acc, &g| acc | (1u64 << g))
}

/// Connectivity of the subgraph induced by `mask`, by flood fill on bitmasks.
pub(crate) fn connected_mask(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let mut seen = mask & mask.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & mask & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == mask
}
