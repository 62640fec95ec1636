use super::Graph;

/// A node of the block tree: either a block (by index) or a cut vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockTreeNode {
    Block(usize),
    Cut(usize),
}

/// Block/cut-vertex decomposition of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    /// Vertex set of every block, sorted; blocks ordered by their vertex lists.
    pub blocks: Vec<Vec<usize>>,
    /// Cut vertices, ascending.
    pub cut_vertices: Vec<usize>,
    /// Bipartite edges `(block index, cut vertex)`.
    pub adjacency: Vec<(usize, usize)>,
}

impl BlockTree {
    pub fn neighbors(&self, node: BlockTreeNode) -> Vec<BlockTreeNode> {
        match node {
            BlockTreeNode::Block(b) => self
                .adjacency
                .iter()
                .filter(|(bb, _)| *bb == b)
                .map(|&(_, c)| BlockTreeNode::Cut(c))
                .collect(),
            BlockTreeNode::Cut(c) => self
                .adjacency
                .iter()
                .filter(|(_, cc)| *cc == c)
                .map(|&(b, _)| BlockTreeNode::Block(b))
                .collect(),
        }
    }

    pub fn nodes(&self) -> Vec<BlockTreeNode> {
        (0..self.blocks.len())
            .map(BlockTreeNode::Block)
            .chain(self.cut_vertices.iter().map(|&c| BlockTreeNode::Cut(c)))
            .collect()
    }

    /// True iff the bipartite block tree is itself a path.
    pub fn is_path(&self) -> bool {
        self.nodes()
            .into_iter()
            .all(|v| self.neighbors(v).len() <= 2)
    }

    /// Leaves of the tree (always blocks); the lone block when there is one.
    pub fn leaf_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.neighbors(BlockTreeNode::Block(b)).len() <= 1)
            .collect()
    }

    /// Unique tree path between two nodes, endpoints included.
    pub fn path_between(&self, from: BlockTreeNode, to: BlockTreeNode) -> Vec<BlockTreeNode> {
        use std::collections::{HashMap, VecDeque};
        let mut parent: HashMap<BlockTreeNode, BlockTreeNode> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        parent.insert(from, from);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for w in self.neighbors(v) {
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(w) {
                    e.insert(v);
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// Biconnected components via Hopcroft-Tarjan with an explicit edge stack.
/// A single edge is a block; an isolated vertex forms a block on its own.
pub fn block_tree(g: &Graph) -> BlockTree {
    let m = g.m();
    let mut disc = vec![usize::MAX; m];
    let mut low = vec![0usize; m];
    let mut timer = 0;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();

    for root in 0..m {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![root]);
            continue;
        }
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < g.degree(v) {
                let w = g.neighbors(v)[*next];
                *next += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut verts = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            verts.push(a);
                            verts.push(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        blocks.push(verts);
                    }
                }
            }
        }
    }

    blocks.sort();
    let mut count = vec![0usize; m];
    for b in &blocks {
        for &v in b {
            count[v] += 1;
        }
    }
    let cut_vertices: Vec<usize> = (0..m).filter(|&v| count[v] >= 2).collect();
    let mut adjacency = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            if count[v] >= 2 {
                adjacency.push((i, v));
            }
        }
    }
    BlockTree {
        blocks,
        cut_vertices,
        adjacency,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vertex_connectivity;
    use crate::instances::{named_graph, random_graph, GraphKind};

    #[test]
    fn small_cases() {
        let k2 = named_graph("path:2").unwrap();
        let t = block_tree(&k2);
        assert_eq!(t.blocks, vec![vec![0, 1]]);
        assert!(t.cut_vertices.is_empty());

        let star = named_graph("star:4").unwrap();
        let t = block_tree(&star);
        assert_eq!(t.blocks.len(), 3);
        assert_eq!(t.cut_vertices, vec![0]);
        assert!(!t.is_path());

        let p4 = named_graph("path:4").unwrap();
        let t = block_tree(&p4);
        assert_eq!(t.blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(t.cut_vertices, vec![1, 2]);
        assert!(t.is_path());
    }

    fn check_tree(g: &Graph) {
        let t = block_tree(g);
        // every edge lies in exactly one block
        for &(a, b) in g.edges() {
            let hits = t
                .blocks
                .iter()
                .filter(|bl| bl.binary_search(&a).is_ok() && bl.binary_search(&b).is_ok())
                .count();
            assert_eq!(hits, 1, "edge ({a},{b}) in {hits} blocks");
        }
        // blocks share at most one vertex, which is a cut vertex
        for i in 0..t.blocks.len() {
            for j in i + 1..t.blocks.len() {
                let shared: Vec<_> = t.blocks[i]
                    .iter()
                    .filter(|v| t.blocks[j].contains(v))
                    .collect();
                assert!(shared.len() <= 1);
                if let Some(v) = shared.first() {
                    assert!(t.cut_vertices.contains(v));
                }
            }
        }
        // tree: connected with nodes - 1 edges
        let nodes = t.blocks.len() + t.cut_vertices.len();
        assert_eq!(t.adjacency.len() + 1, nodes);
        let first = BlockTreeNode::Block(0);
        for v in t.nodes() {
            assert_eq!(*t.path_between(first, v).last().unwrap(), v);
        }
        if g.m() >= 3 {
            assert_eq!(vertex_connectivity(g) >= 2, t.blocks.len() == 1);
        }
    }

    #[test]
    fn random_graphs_satisfy_block_invariants() {
        for seed in 0..60 {
            for kind in [
                GraphKind::Connected,
                GraphKind::Tree,
                GraphKind::Biconnected,
            ] {
                let g = random_graph(kind, 3 + seed as usize % 9, seed).unwrap();
                check_tree(&g);
            }
        }
    }
}
