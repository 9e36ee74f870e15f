//! Deterministic test corpus: named families plus seeded random block-cut-tree shapes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::families::*;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub id: String,
    pub seed: u64,
    pub graph: Graph,
}

pub const RANDOM_PER_BLOCK: usize = 10;

/// Block paths, stars, triangle chains, spiders, a few single blocks, the bowtie
/// with a pendant, the eight-block example when it fits, then random gluings of
/// edges, triangles and 4-cycles. Every graph has at most `max_blocks` blocks.
pub fn corpus(max_blocks: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut named: Vec<(String, Graph, usize)> = Vec::new();
    for k in 1..=max_blocks {
        named.push((format!("path-{k}"), path(k), k));
    }
    for k in 2..=max_blocks {
        named.push((format!("star-{k}"), star(k), k));
    }
    for k in 1..=max_blocks {
        named.push((format!("triangles-{k}"), triangle_chain(k), k));
    }
    named.push(("cycle-4".into(), cycle(4), 1));
    named.push(("complete-4".into(), complete(4), 1));
    named.push(("bowtie-pendant".into(), bowtie_pendant(), 3));
    for k in 3..=5 {
        named.push((format!("spider-{k}"), spider(k), 4));
    }
    named.push(("eight-blocks".into(), eight_blocks(), 8));

    let mut out: Vec<CorpusEntry> = Vec::new();
    let push = |id: String, graph: Graph, out: &mut Vec<CorpusEntry>| {
        if !out.iter().any(|e| e.graph == graph) {
            out.push(CorpusEntry { id, seed, graph });
        }
    };
    for (id, g, blocks) in named {
        if blocks <= max_blocks {
            push(id, g, &mut out);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..RANDOM_PER_BLOCK * max_blocks {
        let blocks = rng.gen_range(1..=max_blocks.max(1));
        let shapes: Vec<(u8, usize)> = (0..blocks)
            .map(|_| (rng.gen_range(0..3u8), rng.gen_range(0..1024usize)))
            .collect();
        push(format!("random-{seed}-{i}"), glued(&shapes), &mut out);
    }
    out
}
