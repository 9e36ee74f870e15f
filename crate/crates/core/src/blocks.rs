//! Block decomposition, block-cut tree, block-set closure and cut-vertex splits.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::blockset::BlockSubset;
use crate::error::{CbpError, Result};
use crate::graph::Graph;

/// A block: a maximal 2-connected subgraph, or a bridge with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn is_cycle(&self) -> bool {
        self.edges.len() >= 3 && self.edges.len() == self.vertices.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum TreeNode {
    Block(usize),
    Cut(usize),
}

/// Bipartite tree on blocks and cut vertices. Block node `i` has position `i`;
/// cut nodes follow in increasing vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    nodes: Vec<TreeNode>,
    adjacency: Vec<Vec<usize>>,
    block_count: usize,
}

impl BlockCutTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn position(&self, node: TreeNode) -> Option<usize> {
        match node {
            TreeNode::Block(b) if b < self.block_count => Some(b),
            TreeNode::Block(_) => None,
            TreeNode::Cut(_) => self.nodes[self.block_count..]
                .binary_search(&node)
                .ok()
                .map(|p| p + self.block_count),
        }
    }

    pub fn neighbors(&self, position: usize) -> &[usize] {
        &self.adjacency[position]
    }

    pub fn node(&self, position: usize) -> TreeNode {
        self.nodes[position]
    }

    pub fn edges(&self) -> Vec<(TreeNode, TreeNode)> {
        let mut out = Vec::new();
        for (p, adj) in self.adjacency.iter().enumerate() {
            for &q in adj {
                if p < q {
                    out.push((self.nodes[p], self.nodes[q]));
                }
            }
        }
        out
    }

    pub fn is_path(&self) -> bool {
        self.adjacency.iter().all(|a| a.len() <= 2)
    }
}

#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    graph: Graph,
    blocks: Vec<Block>,
    cut_vertices: Vec<usize>,
    block_index_of_edge: Vec<usize>,
    blocks_at_vertex: Vec<Vec<usize>>,
    tree: BlockCutTree,
}

impl BlockDecomposition {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn cut_vertices(&self) -> &[usize] {
        &self.cut_vertices
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    /// Block index of the `i`-th edge of the graph (in the graph's sorted edge order).
    pub fn block_of_edge(&self, edge_index: usize) -> usize {
        self.block_index_of_edge[edge_index]
    }

    pub fn blocks_at_vertex(&self, v: usize) -> &[usize] {
        &self.blocks_at_vertex[v]
    }

    pub fn tree(&self) -> &BlockCutTree {
        &self.tree
    }

    pub fn all_blocks(&self) -> BlockSubset {
        (0..self.blocks.len()).collect()
    }

    pub fn share_vertex(&self, a: usize, b: usize) -> bool {
        a != b
            && self.blocks[a]
                .vertices
                .iter()
                .any(|&v| self.blocks[b].contains_vertex(v))
    }

    /// Blocks sharing a vertex with `b`.
    pub fn block_neighbors(&self, b: usize) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for &v in &self.blocks[b].vertices {
            for &other in &self.blocks_at_vertex[v] {
                if other != b {
                    out.insert(other);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn is_independent(&self, set: &BlockSubset) -> bool {
        let m = set.members();
        m.iter()
            .enumerate()
            .all(|(i, &a)| m[i + 1..].iter().all(|&b| !self.share_vertex(a, b)))
    }

    pub fn check_subset(&self, set: &BlockSubset) -> Result<()> {
        match set.max_index() {
            Some(b) if b >= self.blocks.len() => Err(CbpError::BlockOutOfRange {
                index: b,
                blocks: self.blocks.len(),
            }),
            _ => Ok(()),
        }
    }

    pub fn edges_of(&self, set: &BlockSubset) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = set
            .members()
            .iter()
            .flat_map(|&b| self.blocks[b].edges.iter().copied())
            .collect();
        edges.sort_unstable();
        edges
    }
}

/// Computes blocks and cut vertices with a single iterative low-link DFS.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition> {
    if g.edge_count() == 0 {
        return Err(CbpError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(CbpError::NotConnected);
    }
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut raw_blocks: Vec<Vec<(usize, usize)>> = Vec::new();

    // (vertex, parent, next neighbour position)
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some(top) = stack.last_mut() {
        let (u, parent, pos) = *top;
        if pos < adj[u].len() {
            top.2 += 1;
            let w = adj[u][pos];
            if w == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                edge_stack.push((u, w));
                stack.push((w, u, 0));
            } else if disc[w] < disc[u] {
                low[u] = low[u].min(disc[w]);
                edge_stack.push((u, w));
            }
        } else {
            stack.pop();
            if let Some(&(pu, _, _)) = stack.last() {
                low[pu] = low[pu].min(low[u]);
                if low[u] >= disc[pu] {
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push((e.0.min(e.1), e.0.max(e.1)));
                        if e == (pu, u) {
                            break;
                        }
                    }
                    raw_blocks.push(block);
                }
            }
        }
    }

    let mut blocks: Vec<Block> = raw_blocks
        .into_iter()
        .map(|mut edges| {
            edges.sort_unstable();
            let vertices: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            Block {
                vertices: vertices.into_iter().collect(),
                edges,
            }
        })
        .collect();
    blocks.sort_by(|a, b| {
        a.vertices[0]
            .cmp(&b.vertices[0])
            .then_with(|| a.vertices.cmp(&b.vertices))
    });

    let mut blocks_at_vertex = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            blocks_at_vertex[v].push(i);
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| blocks_at_vertex[v].len() >= 2).collect();

    let mut block_index_of_edge = vec![usize::MAX; g.edge_count()];
    for (i, b) in blocks.iter().enumerate() {
        for &(u, v) in &b.edges {
            let idx = g.edge_index(u, v).expect("block edge is a graph edge");
            block_index_of_edge[idx] = i;
        }
    }

    let tree = build_tree(blocks.len(), &cut_vertices, &blocks_at_vertex);
    Ok(BlockDecomposition {
        graph: g.clone(),
        blocks,
        cut_vertices,
        block_index_of_edge,
        blocks_at_vertex,
        tree,
    })
}

fn build_tree(block_count: usize, cuts: &[usize], blocks_at_vertex: &[Vec<usize>]) -> BlockCutTree {
    let mut nodes: Vec<TreeNode> = (0..block_count).map(TreeNode::Block).collect();
    nodes.extend(cuts.iter().map(|&v| TreeNode::Cut(v)));
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for (k, &v) in cuts.iter().enumerate() {
        let cp = block_count + k;
        for &b in &blocks_at_vertex[v] {
            adjacency[cp].push(b);
            adjacency[b].push(cp);
        }
    }
    for a in &mut adjacency {
        a.sort_unstable();
    }
    BlockCutTree {
        nodes,
        adjacency,
        block_count,
    }
}

/// Returns the block-cut tree of a decomposition.
pub fn block_cut_tree(d: &BlockDecomposition) -> &BlockCutTree {
    d.tree()
}

/// Smallest superset of `a` inducing a connected subgraph: the block nodes of
/// the Steiner subtree spanned by `a` in the block-cut tree.
pub fn blockset_closure(d: &BlockDecomposition, a: &BlockSubset) -> BlockSubset {
    if a.is_empty() {
        return BlockSubset::empty();
    }
    let tree = d.tree();
    let n = tree.node_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|p| tree.neighbors(p).len()).collect();
    let terminal = |p: usize| p < tree.block_count() && a.contains(p);
    let mut queue: VecDeque<usize> = (0..n).filter(|&p| degree[p] <= 1 && !terminal(p)).collect();
    while let Some(p) = queue.pop_front() {
        if !alive[p] {
            continue;
        }
        alive[p] = false;
        for &q in tree.neighbors(p) {
            if alive[q] {
                degree[q] -= 1;
                if degree[q] <= 1 && !terminal(q) {
                    queue.push_back(q);
                }
            }
        }
    }
    (0..tree.block_count()).filter(|&b| alive[b]).collect()
}

/// Splits all blocks into the parts of G − v (with v added back to each part).
pub fn split_components_at(d: &BlockDecomposition, v: usize) -> Result<Vec<BlockSubset>> {
    if v >= d.graph().vertex_count() || !d.is_cut_vertex(v) {
        return Err(CbpError::NotCutVertex(v));
    }
    let tree = d.tree();
    let cut_pos = tree.position(TreeNode::Cut(v)).expect("cut vertex has a tree node");
    let mut parts = Vec::new();
    for &start in tree.neighbors(cut_pos) {
        let mut seen = BTreeSet::from([cut_pos, start]);
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(p) = stack.pop() {
            if p < tree.block_count() {
                members.push(p);
            }
            for &q in tree.neighbors(p) {
                if seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        parts.push(BlockSubset::from(members));
    }
    parts.sort_by(|a, b| a.members().cmp(b.members()));
    Ok(parts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphClass {
    pub is_tree: bool,
    pub is_cactus: bool,
    pub is_eulerian_cactus: bool,
    pub is_block_path: bool,
    pub cut_vertex_count: usize,
}

pub fn classify(g: &Graph) -> Result<GraphClass> {
    if !g.is_connected() {
        return Err(CbpError::NotConnected);
    }
    let d = block_decomposition(g)?;
    Ok(classify_decomposition(&d))
}

pub fn classify_decomposition(d: &BlockDecomposition) -> GraphClass {
    let g = d.graph();
    let is_cactus = d.blocks().iter().all(|b| b.is_bridge() || b.is_cycle());
    GraphClass {
        is_tree: g.edge_count() + 1 == g.vertex_count(),
        is_cactus,
        is_eulerian_cactus: is_cactus && d.blocks().iter().all(Block::is_cycle),
        is_block_path: d.tree().is_path(),
        cut_vertex_count: d.cut_vertices().len(),
    }
}
