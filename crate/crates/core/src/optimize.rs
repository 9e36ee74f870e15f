//! Maximum-weight connected block subsets by dynamic programming on the block-cut tree,
//! with the subtree (trees) and Eulerian-subgraph (Eulerian cacti) applications.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use crate::blocks::{classify_decomposition, BlockDecomposition};
use crate::blockset::BlockSubset;
use crate::error::{CbpError, Result};
use crate::graph::{is_eulerian_edge_set, Graph};
use crate::num::{rat, Rational};
use crate::vertices::enumerate_vertices_capped;

pub const BRUTE_FORCE_BLOCK_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub blocks: BlockSubset,
    #[serde(with = "crate::num::serde_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeSolution {
    pub blocks: BlockSubset,
    pub edges: Vec<(usize, usize)>,
    #[serde(with = "crate::num::serde_rational")]
    pub value: Rational,
}

/// Larger value wins; on equal value the smaller set wins.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Key {
    value: Rational,
    size: usize,
}

impl Key {
    fn zero() -> Key {
        Key {
            value: rat(0),
            size: 0,
        }
    }

    fn add(&self, o: &Key) -> Key {
        Key {
            value: &self.value + &o.value,
            size: self.size + o.size,
        }
    }
}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.value.cmp(&o.value).then(o.size.cmp(&self.size))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

struct Rooted {
    /// Tree positions in BFS order from block 0.
    order: Vec<usize>,
    children: Vec<Vec<usize>>,
    block_count: usize,
}

fn rooted(d: &BlockDecomposition) -> Rooted {
    let tree = d.tree();
    let n = tree.node_count();
    let mut children = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let mut order = vec![0];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let p = order[i];
        for &q in tree.neighbors(p) {
            if !seen[q] {
                seen[q] = true;
                children[p].push(q);
                order.push(q);
            }
        }
        i += 1;
    }
    Rooted {
        order,
        children,
        block_count: d.block_count(),
    }
}

/// Best key over connected sets containing `required` and avoiding `forbidden`.
fn best_with(t: &Rooted, w: &[Rational], required: &[bool], forbidden: &[bool]) -> Option<Key> {
    let n = t.children.len();
    let is_block = |p: usize| p < t.block_count;
    // required blocks in each subtree
    let mut req = vec![0usize; n];
    // best key of a set whose top is this block node, or of the optional choices below a cut node
    let mut f: Vec<Option<Key>> = vec![None; n];
    for &p in t.order.iter().rev() {
        req[p] = t.children[p].iter().map(|&c| req[c]).sum::<usize>() + usize::from(is_block(p) && required[p]);
        if is_block(p) {
            if forbidden[p] {
                continue;
            }
            let mut key = Key {
                value: w[p].clone(),
                size: 1,
            };
            let mut ok = true;
            for &c in &t.children[p] {
                match &f[c] {
                    Some(k) => key = key.add(k),
                    None => ok = false,
                }
            }
            if ok {
                f[p] = Some(key);
            }
        } else {
            let mut key = Key::zero();
            let mut ok = true;
            for &c in &t.children[p] {
                match (&f[c], req[c] > 0) {
                    (Some(k), true) => key = key.add(k),
                    (Some(k), false) => key = key.add(k.max(&Key::zero())),
                    (None, true) => ok = false,
                    (None, false) => {}
                }
            }
            if ok {
                f[p] = Some(key);
            }
        }
    }
    let total = req[0];
    let mut best: Option<Key> = (total == 0).then(Key::zero);
    let mut offer = |k: Key| {
        if best.as_ref().is_none_or(|b| k > *b) {
            best = Some(k);
        }
    };
    for p in 0..n {
        if req[p] != total {
            continue;
        }
        if is_block(p) {
            if let Some(k) = &f[p] {
                offer(k.clone());
            }
        } else if let Some(k) = &f[p] {
            // top at a cut vertex with the parent block excluded: at least one child block chosen
            if k.size > 0 {
                offer(k.clone());
            }
        }
    }
    best
}

fn check_weights(d: &BlockDecomposition, w: &[Rational]) -> Result<()> {
    if w.len() != d.block_count() {
        return Err(CbpError::DimensionMismatch {
            expected: d.block_count(),
            got: w.len(),
        });
    }
    Ok(())
}

/// Exact optimum over connected block subsets (the empty set included).
/// Ties go to the smallest set in canonical (cardinality, lexicographic) order.
pub fn max_weight_connected_blockset(d: &BlockDecomposition, w: &[Rational]) -> Result<Solution> {
    check_weights(d, w)?;
    let t = rooted(d);
    let n = d.block_count();
    let mut required = vec![false; n];
    let mut forbidden = vec![false; n];
    let target = best_with(&t, w, &required, &forbidden).expect("the empty set is always feasible");
    for b in 0..n {
        required[b] = true;
        if best_with(&t, w, &required, &forbidden).as_ref() == Some(&target) {
            continue;
        }
        required[b] = false;
        forbidden[b] = true;
    }
    let blocks: BlockSubset = (0..n).filter(|&b| required[b]).collect();
    debug_assert_eq!(blocks.len(), target.size);
    Ok(Solution {
        blocks,
        value: target.value,
    })
}

pub fn brute_force_optimum(d: &BlockDecomposition, w: &[Rational]) -> Result<Solution> {
    check_weights(d, w)?;
    if d.block_count() > BRUTE_FORCE_BLOCK_CAP {
        return Err(CbpError::CountOverflow {
            cap: BRUTE_FORCE_BLOCK_CAP,
        });
    }
    let mut best = Solution {
        blocks: BlockSubset::empty(),
        value: rat(0),
    };
    for v in enumerate_vertices_capped(d, 1 << BRUTE_FORCE_BLOCK_CAP)? {
        let value: Rational = v.members().iter().map(|&b| w[b].clone()).sum();
        if value > best.value {
            best = Solution { blocks: v, value };
        }
    }
    Ok(best)
}

fn block_weights(d: &BlockDecomposition, g: &Graph, edge_weights: &[Rational]) -> Result<Vec<Rational>> {
    if edge_weights.len() != g.edge_count() {
        return Err(CbpError::DimensionMismatch {
            expected: g.edge_count(),
            got: edge_weights.len(),
        });
    }
    Ok(d.blocks()
        .iter()
        .map(|b| {
            b.edges
                .iter()
                .map(|&(u, v)| edge_weights[g.edge_index(u, v).expect("block edges belong to the graph")].clone())
                .fold(Rational::zero(), |a, x| a + x)
        })
        .collect())
}

fn lift(d: &BlockDecomposition, s: Solution) -> EdgeSolution {
    EdgeSolution {
        edges: d.edges_of(&s.blocks),
        blocks: s.blocks,
        value: s.value,
    }
}

/// Maximum-weight Eulerian subgraph of an Eulerian cactus.
pub fn eulerian_adapter(d: &BlockDecomposition, edge_weights: &[Rational]) -> Result<EdgeSolution> {
    if !classify_decomposition(d).is_eulerian_cactus {
        return Err(CbpError::NotEulerianCactus);
    }
    let w = block_weights(d, d.graph(), edge_weights)?;
    let out = lift(d, max_weight_connected_blockset(d, &w)?);
    if !is_eulerian_edge_set(d.graph(), &out.edges) {
        return Err(CbpError::AssertionFailure(format!("edge set {:?} is not Eulerian", out.edges)));
    }
    Ok(out)
}

/// Maximum-weight subtree of a tree.
pub fn tree_adapter(d: &BlockDecomposition, edge_weights: &[Rational]) -> Result<EdgeSolution> {
    if !classify_decomposition(d).is_tree {
        return Err(CbpError::NotTree);
    }
    let w = block_weights(d, d.graph(), edge_weights)?;
    Ok(lift(d, max_weight_connected_blockset(d, &w)?))
}
