//! Vertices of CBP(G): the connected block subsets, including the empty set.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::blocks::BlockDecomposition;
use crate::blockset::BlockSubset;
use crate::error::{CbpError, Result};
use crate::hull::affine_rank;
use crate::num::Rational;

pub const DEFAULT_VERTEX_CAP: usize = 1 << 24;

/// True iff the blocks in `a` induce a connected subgraph. The empty set counts as connected.
pub fn is_connected_blockset(d: &BlockDecomposition, a: &BlockSubset) -> bool {
    let Some(&start) = a.members().first() else {
        return true;
    };
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(b) = stack.pop() {
        for n in d.block_neighbors(b) {
            if a.contains(n) && !seen.contains(&n) {
                seen.push(n);
                stack.push(n);
            }
        }
    }
    seen.len() == a.len()
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
}

struct Grower<'a> {
    neighbors: &'a [Vec<usize>],
    root: usize,
    cap: usize,
    emitted: &'a AtomicUsize,
}

impl Grower<'_> {
    fn extend(
        &self,
        set: &mut Vec<usize>,
        in_set: &mut Bits,
        mut ext: Vec<usize>,
        forbidden: &Bits,
        out: &mut Vec<BlockSubset>,
    ) -> Result<()> {
        if self.emitted.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(CbpError::CountOverflow { cap: self.cap });
        }
        out.push(BlockSubset::from(set.clone()));
        let mut forbidden = forbidden.clone();
        while let Some(v) = ext.pop() {
            let mut next = ext.clone();
            for &u in &self.neighbors[v] {
                if u > self.root && !in_set.get(u) && !forbidden.get(u) && u != v && !ext.contains(&u) {
                    next.push(u);
                }
            }
            set.push(v);
            in_set.set(v);
            self.extend(set, in_set, next, &forbidden, out)?;
            set.pop();
            in_set.clear(v);
            forbidden.set(v);
        }
        Ok(())
    }
}

/// All connected block subsets in canonical (cardinality, lex) order.
pub fn enumerate_vertices(d: &BlockDecomposition) -> Result<Vec<BlockSubset>> {
    enumerate_vertices_capped(d, DEFAULT_VERTEX_CAP)
}

/// Grows connected sets on the block adjacency graph, each from its least block.
pub fn enumerate_vertices_capped(d: &BlockDecomposition, cap: usize) -> Result<Vec<BlockSubset>> {
    let n = d.block_count();
    let neighbors: Vec<Vec<usize>> = (0..n).map(|b| d.block_neighbors(b)).collect();
    let emitted = AtomicUsize::new(1);
    if cap == 0 {
        return Err(CbpError::CountOverflow { cap });
    }
    let per_root: Vec<Result<Vec<BlockSubset>>> = (0..n)
        .into_par_iter()
        .map(|root| {
            let grower = Grower {
                neighbors: &neighbors,
                root,
                cap,
                emitted: &emitted,
            };
            let mut out = Vec::new();
            let mut in_set = Bits::new(n);
            in_set.set(root);
            let ext: Vec<usize> = neighbors[root].iter().copied().filter(|&u| u > root).collect();
            grower.extend(&mut vec![root], &mut in_set, ext, &Bits::new(n), &mut out)?;
            Ok(out)
        })
        .collect();
    let mut all = vec![BlockSubset::empty()];
    for r in per_root {
        all.extend(r?);
    }
    all.par_sort_unstable();
    Ok(all)
}

pub fn incidence_points(d: &BlockDecomposition, verts: &[BlockSubset]) -> Vec<Vec<Rational>> {
    verts
        .iter()
        .map(|v| v.incidence(d.block_count()).to_rational())
        .collect()
}

/// Affine rank of all vertex incidence vectors.
pub fn polytope_dimension_check(d: &BlockDecomposition) -> Result<usize> {
    let verts = enumerate_vertices(d)?;
    affine_rank(&incidence_points(d, &verts))
}
