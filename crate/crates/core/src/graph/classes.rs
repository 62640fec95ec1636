use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

/// Vertex sequence of a path graph, starting at vertex 0 when it is an end
/// and otherwise at the lowest-index end. `None` if `g` is not a path.
pub fn path_order(g: &Graph) -> Option<Vec<usize>> {
    let m = g.m();
    if m == 0 || !g.is_tree() || (0..m).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (0..m).find(|&v| g.degree(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Centre of a star (a tree with a vertex adjacent to all others); the
/// lowest such vertex. `None` for non-stars and for `m < 2`.
pub fn star_center(g: &Graph) -> Option<usize> {
    let m = g.m();
    if m < 2 || !g.is_tree() {
        return None;
    }
    (0..m).find(|&v| g.degree(v) == m - 1)
}

/// Sides `(L, R)` of a complete bipartite graph, `L` being the side that
/// holds vertex 0. `None` if `g` is not complete bipartite with both sides
/// nonempty.
pub fn complete_bipartite_sides(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let m = g.m();
    if m < 2 || !g.is_connected() {
        return None;
    }
    let mut side = vec![u8::MAX; m];
    side[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if side[w] == u8::MAX {
                side[w] = 1 - side[v];
                queue.push_back(w);
            } else if side[w] == side[v] {
                return None;
            }
        }
    }
    let left: Vec<usize> = (0..m).filter(|&v| side[v] == 0).collect();
    let right: Vec<usize> = (0..m).filter(|&v| side[v] == 1).collect();
    (g.edge_count() == left.len() * right.len()).then_some((left, right))
}

/// BFS spanning tree rooted at `root`, visiting neighbours in ascending order.
pub fn bfs_spanning_tree(g: &Graph, root: usize) -> Graph {
    let m = g.m();
    let mut seen = vec![false; m];
    let mut edges = Vec::new();
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                edges.push((v, w));
                queue.push_back(w);
            }
        }
    }
    Graph::new(m, edges).expect("tree edges are simple")
}

/// Contracts each part to a single vertex. Merged vertex `i` stands for
/// `parts[i]`; two merged vertices are adjacent iff some original edge
/// crosses between their parts.
pub fn merge_vertices(g: &Graph, parts: &[Vec<usize>]) -> Result<(Graph, Vec<Vec<usize>>)> {
    let m = g.m();
    let mut owner = vec![usize::MAX; m];
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::pre(format!("merge part {i} is empty")));
        }
        for &v in part {
            if v >= m {
                return Err(Error::pre(format!("vertex {v} out of range")));
            }
            if owner[v] != usize::MAX {
                return Err(Error::pre(format!("vertex {v} appears in two merge parts")));
            }
            owner[v] = i;
        }
        if !g.is_connected_subset(part) {
            return Err(Error::pre(format!("merge part {i} is not connected")));
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::pre(format!("vertex {v} not covered by merge parts")));
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|(a, b)| owner[*a] != owner[*b])
        .map(|&(a, b)| (owner[a].min(owner[b]), owner[a].max(owner[b])))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let mapping = parts
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.sort_unstable();
            p
        })
        .collect();
    Ok((Graph::new(parts.len(), edges)?, mapping))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::block_tree;
    use crate::instances::{named_graph, random_graph, GraphKind};

    #[test]
    fn classes() {
        assert_eq!(
            path_order(&named_graph("path:4").unwrap()),
            Some(vec![0, 1, 2, 3])
        );
        assert_eq!(path_order(&named_graph("star:4").unwrap()), None);
        assert_eq!(star_center(&named_graph("star:5").unwrap()), Some(0));
        assert_eq!(star_center(&named_graph("path:4").unwrap()), None);
        let (l, r) = complete_bipartite_sides(&named_graph("kab:2,3").unwrap()).unwrap();
        assert_eq!((l, r), (vec![0, 1], vec![2, 3, 4]));
        assert!(complete_bipartite_sides(&named_graph("cycle:5").unwrap()).is_none());
    }

    #[test]
    fn merge_identity_and_pair() {
        let g = named_graph("cycle:5").unwrap();
        let singles: Vec<Vec<usize>> = (0..5).map(|v| vec![v]).collect();
        let (h, map) = merge_vertices(&g, &singles).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, singles);

        let p = named_graph("path:3").unwrap();
        let (h, map) = merge_vertices(&p, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(h.edges(), &[(0, 1)]);
        assert_eq!(map, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn merge_rejects_bad_parts() {
        let p = named_graph("path:3").unwrap();
        assert!(merge_vertices(&p, &[vec![0, 2], vec![1]]).is_err());
        assert!(merge_vertices(&p, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(merge_vertices(&p, &[vec![0, 1]]).is_err());
    }

    #[test]
    fn merged_connected_sets_expand_to_connected_sets() {
        for seed in 0..30 {
            let g = random_graph(GraphKind::Connected, 8, seed).unwrap();
            // merge along a BFS tree: every vertex paired with its parent when possible
            let t = bfs_spanning_tree(&g, 0);
            let mut used = [false; 8];
            let mut parts = Vec::new();
            for &(a, b) in t.edges() {
                if !used[a] && !used[b] {
                    used[a] = true;
                    used[b] = true;
                    parts.push(vec![a, b]);
                }
            }
            parts.extend((0..8).filter(|&v| !used[v]).map(|v| vec![v]));
            let (h, map) = merge_vertices(&g, &parts).unwrap();
            assert!(h.is_connected());
            for mask in 1u64..(1 << h.m()) {
                if h.is_connected_mask(mask) {
                    let expanded: Vec<usize> = (0..h.m())
                        .filter(|i| mask & (1 << i) != 0)
                        .flat_map(|i| map[i].clone())
                        .collect();
                    assert!(g.is_connected_subset(&expanded));
                }
            }
            let _ = block_tree(&h);
        }
    }
}
