use itertools::Itertools;

use super::{connected_mask, full_mask, mask_to_vec, vec_to_mask, Graph};
use crate::caps::{self, Caps};
use crate::error::{Error, Result};

/// Can `m1` and `m2` be placed in disjoint connected subgraphs?
///
/// Tries every connected `S ⊇ m1` avoiding `m2` (smallest extensions first)
/// and asks whether `m2` lies in one component of `G - S`.
fn separable(adj: &[u64], all: u64, m1: u64, m2: u64) -> bool {
    let free = all & !m1 & !m2;
    let free_list = mask_to_vec(free);
    let k = free_list.len();
    for size in 0..=k {
        for extra in free_list.iter().combinations(size) {
            let s = m1 | extra.iter().fold(0u64, |acc, &&v| acc | (1 << v));
            if !connected_mask(adj, s) {
                continue;
            }
            if m2_linked_outside(adj, all & !s, m2) {
                return true;
            }
        }
    }
    false
}

/// Is `m2` inside a single connected component of the subgraph on `rest`?
fn m2_linked_outside(adj: &[u64], rest: u64, m2: u64) -> bool {
    if m2 == 0 {
        return true;
    }
    let start = m2 & m2.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & rest & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen & m2 == m2
}

/// First pair `(M1, M2)` with `|M1| = a`, `|M2| = b` that cannot be separated
/// into disjoint connected subgraphs, in lexicographic order; `None` when
/// the graph is `(a, b)`-linked.
pub fn linkage_counterexample(
    g: &Graph,
    a: usize,
    b: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let m = g.m();
    if a == 0 || b == 0 || a + b > m {
        return Err(Error::pre(format!(
            "need a, b >= 1 and a + b <= m (a={a}, b={b}, m={m})"
        )));
    }
    caps::check("linkedness search", m, Caps::current().linked)?;
    let adj = g.adjacency_masks();
    let all = full_mask(m);
    for m1 in (0..m).combinations(a) {
        let m1_mask = vec_to_mask(&m1);
        let others: Vec<usize> = (0..m).filter(|v| m1_mask & (1 << v) == 0).collect();
        for m2 in others.into_iter().combinations(b) {
            if !separable(adj, all, m1_mask, vec_to_mask(&m2)) {
                return Ok(Some((m1, m2)));
            }
        }
    }
    Ok(None)
}

/// `(a, b)`-linkedness by exhaustive search, capped by [`Caps::linked`].
pub fn is_ab_linked(g: &Graph, a: usize, b: usize) -> Result<bool> {
    Ok(linkage_counterexample(g, a, b)?.is_none())
}
