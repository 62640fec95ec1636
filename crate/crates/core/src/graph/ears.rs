use std::collections::VecDeque;

use super::blocks::{block_tree, BlockTreeNode};
use super::connectivity::{vertex_connectivity, FlowNet};
use super::Graph;
use crate::error::{Error, Result};

/// A cycle followed by open ears (paths whose endpoints, and only those, lie
/// on earlier ears). The first ear lists the cycle once, without repeating
/// its start; later ears include both endpoints. Single-edge ears have no
/// interior vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    pub ears: Vec<Vec<usize>>,
}

impl EarDecomposition {
    /// Checks every structural requirement against `g`: the first ear is a
    /// cycle, each later ear is an open path attached at its endpoints only,
    /// and the ears cover every vertex and use every edge exactly once.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let m = g.m();
        let Some(cycle) = self.ears.first() else {
            return Err("no ears".into());
        };
        check_cycle(g, cycle).map_err(|e| e.to_string())?;
        let mut covered = vec![false; m];
        let mut used = std::collections::HashSet::new();
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            covered[a] = true;
            used.insert((a.min(b), a.max(b)));
        }
        for (idx, ear) in self.ears.iter().enumerate().skip(1) {
            if ear.len() < 2 {
                return Err(format!("ear {idx} too short"));
            }
            let (first, last) = (ear[0], *ear.last().unwrap());
            if first == last {
                return Err(format!("ear {idx} is closed"));
            }
            if !covered[first] || !covered[last] {
                return Err(format!("ear {idx} endpoints not on earlier ears"));
            }
            for &v in &ear[1..ear.len() - 1] {
                if covered[v] {
                    return Err(format!("ear {idx} interior vertex {v} already covered"));
                }
                covered[v] = true;
            }
            for w in ear.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("ear {idx} uses non-edge ({}, {})", w[0], w[1]));
                }
                if !used.insert((w[0].min(w[1]), w[0].max(w[1]))) {
                    return Err(format!("ear {idx} reuses edge ({}, {})", w[0], w[1]));
                }
            }
        }
        if covered.iter().any(|c| !c) {
            return Err("ears do not cover every vertex".into());
        }
        if used.len() != g.edge_count() {
            return Err("ears do not use every edge".into());
        }
        Ok(())
    }
}

/// A vertex ordering in which every prefix and every suffix induces a
/// connected subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipolarOrder {
    pub order: Vec<usize>,
}

impl BipolarOrder {
    /// Checks the permutation and all prefix/suffix connectivity conditions.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let m = g.m();
        if self.order.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &v in &self.order {
            if v >= m || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        (0..=m).all(|i| {
            g.is_connected_subset(&self.order[..i]) && g.is_connected_subset(&self.order[i..])
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

fn check_cycle(g: &Graph, cycle: &[usize]) -> Result<()> {
    if cycle.len() < 3 {
        return Err(Error::InvalidCycle("fewer than three vertices".into()));
    }
    let mut seen = vec![false; g.m()];
    for &v in cycle {
        if v >= g.m() || seen[v] {
            return Err(Error::InvalidCycle(format!(
                "vertex {v} repeated or out of range"
            )));
        }
        seen[v] = true;
    }
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        if !g.has_edge(a, b) {
            return Err(Error::InvalidCycle(format!("missing edge ({a}, {b})")));
        }
    }
    Ok(())
}

fn require_biconnected(g: &Graph) -> Result<()> {
    if g.m() < 3 || vertex_connectivity(g) < 2 {
        return Err(Error::NotBiconnected);
    }
    Ok(())
}

/// Open ear decomposition with `first_cycle` as the first ear.
///
/// Remaining edges are processed in sorted order: an edge between two covered
/// vertices becomes a single-edge ear; an edge leaving the covered part is
/// extended by BFS through uncovered vertices to the nearest covered vertex
/// other than its start.
pub fn open_ear_decomposition(g: &Graph, first_cycle: &[usize]) -> Result<EarDecomposition> {
    require_biconnected(g)?;
    check_cycle(g, first_cycle)?;
    let m = g.m();
    let mut covered = vec![false; m];
    let mut used = std::collections::HashSet::new();
    for i in 0..first_cycle.len() {
        let (a, b) = (first_cycle[i], first_cycle[(i + 1) % first_cycle.len()]);
        covered[a] = true;
        used.insert((a.min(b), a.max(b)));
    }
    let mut ears = vec![first_cycle.to_vec()];
    loop {
        let next = g
            .edges()
            .iter()
            .copied()
            .find(|&(a, b)| !used.contains(&(a, b)) && (covered[a] || covered[b]));
        let Some((a, b)) = next else { break };
        let ear = if covered[a] && covered[b] {
            vec![a, b]
        } else {
            let (start, first) = if covered[a] { (a, b) } else { (b, a) };
            let tail = path_to_covered(g, &covered, start, first).ok_or(Error::NotBiconnected)?;
            let mut ear = vec![start];
            ear.extend(tail);
            ear
        };
        for w in ear.windows(2) {
            used.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &ear {
            covered[v] = true;
        }
        ears.push(ear);
    }
    if used.len() != g.edge_count() {
        // only possible for a disconnected input, excluded above
        return Err(Error::NotBiconnected);
    }
    Ok(EarDecomposition { ears })
}

/// BFS from uncovered `first` through uncovered vertices to a covered vertex
/// other than `avoid`. Returns the path `first, ..., covered`.
fn path_to_covered(g: &Graph, covered: &[bool], avoid: usize, first: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.m()];
    parent[first] = first;
    let mut queue = VecDeque::from([first]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if covered[w] {
                if w != avoid {
                    let mut path = vec![w, v];
                    let mut cur = v;
                    while parent[cur] != cur {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
            } else if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Shortest cycle through `g1` and `g2`: two internally disjoint paths of
/// minimum total length, by min-cost flow on the vertex-split graph.
/// Returned as `g1, h1, .., hi, g2, h(i+1), .., hj`.
fn shortest_cycle_through(g: &Graph, g1: usize, g2: usize) -> Option<Vec<usize>> {
    let m = g.m();
    let mut net = FlowNet::new(2 * m);
    for v in 0..m {
        let cap = if v == g1 || v == g2 { 2 } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap, 0);
    }
    for &(a, b) in g.edges() {
        net.add_arc(2 * a + 1, 2 * b, 1, 1);
        net.add_arc(2 * b + 1, 2 * a, 1, 1);
    }
    if net.min_cost_flow(2 * g1 + 1, 2 * g2, 2) < 2 {
        return None;
    }
    // Walk each unit of flow from g1 to g2.
    let mut paths = Vec::new();
    let mut spent = std::collections::HashSet::new();
    for _ in 0..2 {
        let mut path = vec![g1];
        let mut node = 2 * g1 + 1;
        while node != 2 * g2 {
            let arc = net
                .arcs_from(node)
                .iter()
                .copied()
                .find(|&e| e % 2 == 0 && net.flow_on(e) > 0 && !spent.contains(&e))?;
            spent.insert(arc);
            let to = net.target(arc);
            if to.is_multiple_of(2) {
                path.push(to / 2);
                node = if to == 2 * g2 { to } else { to + 1 };
            } else {
                node = to;
            }
        }
        paths.push(path);
    }
    paths.sort();
    let (p, q) = (&paths[0], &paths[1]);
    let mut cycle = p.clone();
    cycle.extend(q[1..q.len() - 1].iter().rev());
    Some(cycle)
}

/// Bipolar ordering of a biconnected graph that starts at `g1` and ends at
/// `g2`.
///
/// The first ear is the cycle `g1, h1..hi, g2, h(i+1)..hj`, laid out as
/// `g1, h1..hi, hj..h(i+1), g2`. Each later ear with attachment points
/// `h` (earlier in the current order) and `h'` has its interior inserted
/// directly after `h`, in path order from `h` to `h'`.
pub fn bipolar_between(g: &Graph, g1: usize, g2: usize) -> Result<BipolarOrder> {
    require_biconnected(g)?;
    if g1 == g2 || g1 >= g.m() || g2 >= g.m() {
        return Err(Error::pre("bipolar endpoints must be distinct vertices"));
    }
    let cycle = shortest_cycle_through(g, g1, g2).ok_or(Error::NotBiconnected)?;
    let ears = open_ear_decomposition(g, &cycle)?;
    Ok(BipolarOrder {
        order: order_from_ears(&ears, g1, g2, g.m()),
    })
}

fn order_from_ears(ears: &EarDecomposition, g1: usize, g2: usize, m: usize) -> Vec<usize> {
    let cycle = &ears.ears[0];
    debug_assert_eq!(cycle[0], g1);
    let split = cycle
        .iter()
        .position(|&v| v == g2)
        .expect("g2 on the first ear");
    let mut order: Vec<usize> = cycle[..split].to_vec();
    order.extend(cycle[split + 1..].iter().rev());
    order.push(g2);

    let mut pos = vec![usize::MAX; m];
    for ear in &ears.ears[1..] {
        if ear.len() <= 2 {
            continue;
        }
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let (a, b) = (ear[0], *ear.last().unwrap());
        let (at, interior): (usize, Vec<usize>) = if pos[a] < pos[b] {
            (pos[a], ear[1..ear.len() - 1].to_vec())
        } else {
            (
                pos[b],
                ear[1..ear.len() - 1].iter().rev().copied().collect(),
            )
        };
        order.splice(at + 1..at + 1, interior);
    }
    order
}

/// A bipolar ordering if one exists, i.e. iff the block tree is a path.
///
/// Blocks are chained along the path: the first block runs from its
/// lowest non-cut vertex to the shared cut vertex, each middle block from
/// cut vertex to cut vertex, and the last block ends at its lowest non-cut
/// vertex.
pub fn bipolar_if_exists(g: &Graph) -> Option<BipolarOrder> {
    let m = g.m();
    if m == 0 || !g.is_connected() {
        return None;
    }
    if m <= 2 {
        return Some(BipolarOrder {
            order: (0..m).collect(),
        });
    }
    let tree = block_tree(g);
    if !tree.is_path() {
        return None;
    }
    if tree.blocks.len() == 1 {
        let end = (1..m).max().unwrap();
        return bipolar_between(g, 0, end).ok();
    }
    let leaves = tree.leaf_blocks();
    debug_assert_eq!(leaves.len(), 2);
    let lowest_free = |b: usize| {
        tree.blocks[b]
            .iter()
            .copied()
            .find(|v| tree.cut_vertices.binary_search(v).is_err())
    };
    let (start_block, end_block) = if lowest_free(leaves[0]) <= lowest_free(leaves[1]) {
        (leaves[0], leaves[1])
    } else {
        (leaves[1], leaves[0])
    };
    let path = tree.path_between(
        BlockTreeNode::Block(start_block),
        BlockTreeNode::Block(end_block),
    );
    let mut order = Vec::with_capacity(m);
    for (i, node) in path.iter().enumerate() {
        let BlockTreeNode::Block(b) = *node else {
            continue;
        };
        let enter = if i == 0 {
            lowest_free(b)?
        } else {
            let BlockTreeNode::Cut(c) = path[i - 1] else {
                unreachable!()
            };
            c
        };
        let leave = if i + 1 == path.len() {
            tree.blocks[b]
                .iter()
                .copied()
                .find(|&v| v != enter && tree.cut_vertices.binary_search(&v).is_err())?
        } else {
            let BlockTreeNode::Cut(c) = path[i + 1] else {
                unreachable!()
            };
            c
        };
        let verts = &tree.blocks[b];
        let local = if verts.len() == 2 {
            vec![enter, leave]
        } else {
            let sub = g.induced(verts);
            let idx = |v: usize| verts.binary_search(&v).unwrap();
            bipolar_between(&sub, idx(enter), idx(leave))
                .ok()?
                .order
                .into_iter()
                .map(|i| verts[i])
                .collect()
        };
        let skip = usize::from(i > 0);
        order.extend(local.into_iter().skip(skip));
    }
    Some(BipolarOrder { order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{named_graph, random_graph, wheel, GraphKind};

    #[test]
    fn single_cycle_is_one_ear() {
        let c4 = named_graph("cycle:4").unwrap();
        let d = open_ear_decomposition(&c4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(d.ears.len(), 1);
        d.validate(&c4).unwrap();
    }

    #[test]
    fn wheel_and_k4_decompositions() {
        let w = wheel(8);
        let d = open_ear_decomposition(&w, &[0, 1, 8]).unwrap();
        assert_eq!(d.ears[0], vec![0, 1, 8]);
        d.validate(&w).unwrap();
        let k4 = named_graph("complete:4").unwrap();
        let d = open_ear_decomposition(&k4, &[0, 1, 2]).unwrap();
        d.validate(&k4).unwrap();
        assert_eq!(d.ears.iter().skip(1).filter(|e| e.len() > 2).count(), 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = named_graph("path:4").unwrap();
        assert!(matches!(
            open_ear_decomposition(&p, &[0, 1, 2]),
            Err(Error::NotBiconnected)
        ));
        let c4 = named_graph("cycle:4").unwrap();
        assert!(matches!(
            open_ear_decomposition(&c4, &[0, 1, 3]),
            Err(Error::InvalidCycle(_))
        ));
        assert!(matches!(
            bipolar_between(&p, 0, 3),
            Err(Error::NotBiconnected)
        ));
    }

    #[test]
    fn bipolar_between_small() {
        let c3 = named_graph("cycle:3").unwrap();
        assert_eq!(bipolar_between(&c3, 0, 1).unwrap().order, vec![0, 2, 1]);
        let c4 = named_graph("cycle:4").unwrap();
        let o = bipolar_between(&c4, 0, 2).unwrap();
        assert_eq!((o.order[0], o.order[3]), (0, 2));
        assert!(o.is_valid_for(&c4));
        let w = wheel(8);
        let o = bipolar_between(&w, 2, 6).unwrap();
        assert!(o.is_valid_for(&w));
    }

    #[test]
    fn bipolar_between_all_pairs_random() {
        for seed in 0..25 {
            let g = random_graph(GraphKind::Biconnected, 3 + seed as usize % 7, seed).unwrap();
            for a in 0..g.m() {
                for b in 0..g.m() {
                    if a == b {
                        continue;
                    }
                    let o = bipolar_between(&g, a, b).unwrap();
                    assert_eq!(o.order[0], a);
                    assert_eq!(*o.order.last().unwrap(), b);
                    assert!(o.is_valid_for(&g), "{g:?} {a} {b} {:?}", o.order);
                }
            }
        }
    }

    #[test]
    fn bipolar_existence() {
        let p = named_graph("path:5").unwrap();
        assert_eq!(bipolar_if_exists(&p).unwrap().order, vec![0, 1, 2, 3, 4]);
        assert!(bipolar_if_exists(&named_graph("star:4").unwrap()).is_none());
        let c5 = named_graph("cycle:5").unwrap();
        assert!(bipolar_if_exists(&c5).unwrap().is_valid_for(&c5));
    }

    #[test]
    fn bipolar_exists_iff_block_path() {
        for seed in 0..80 {
            let g = random_graph(GraphKind::Connected, 2 + seed as usize % 9, seed).unwrap();
            let order = bipolar_if_exists(&g);
            assert_eq!(order.is_some(), block_tree(&g).is_path(), "{g:?}");
            if let Some(o) = order {
                assert!(o.is_valid_for(&g), "{g:?} {:?}", o.order);
            }
        }
    }
}
