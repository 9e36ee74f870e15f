//! Named graph families used by the corpus generator and the tests.

use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges.iter().copied()).expect("family graphs are simple")
}

/// Path with `k` edges on vertices `0..=k`.
pub fn path(k: usize) -> Graph {
    let edges: Vec<_> = (0..k).map(|i| (i, i + 1)).collect();
    build(k + 1, &edges)
}

/// Star with `k` edges around center `0`.
pub fn star(k: usize) -> Graph {
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    build(k + 1, &edges)
}

pub fn cycle(k: usize) -> Graph {
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    build(k, &edges)
}

pub fn triangle() -> Graph {
    cycle(3)
}

pub fn complete(k: usize) -> Graph {
    let edges: Vec<_> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    build(k, &edges)
}

/// Triangles `0,1,2` and `2,3,4`.
pub fn bowtie() -> Graph {
    build(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
}

/// Bowtie with a pendant edge `4-5`.
pub fn bowtie_pendant() -> Graph {
    build(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)])
}

/// `k` triangles glued in a chain, consecutive ones sharing one vertex.
pub fn triangle_chain(k: usize) -> Graph {
    let mut edges = Vec::new();
    for t in 0..k {
        let a = 2 * t;
        edges.extend([(a, a + 1), (a + 1, a + 2), (a, a + 2)]);
    }
    build(2 * k + 1, &edges)
}

/// Cycle `C_k` on `0..k` with a pendant edge at each of the first three vertices.
pub fn spider(k: usize) -> Graph {
    assert!(k >= 3);
    let mut edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    edges.extend([(0, k), (1, k + 1), (2, k + 2)]);
    build(k + 3, &edges)
}

/// The 19-vertex graph with eight blocks and five cut vertices, numbered so that
/// canonical block order is B1, ..., B8.
pub fn eight_blocks() -> Graph {
    build(
        19,
        &[
            (0, 1), (1, 2), (0, 2),
            (2, 3), (2, 6), (3, 4), (4, 5), (5, 6), (2, 4), (2, 7), (5, 7), (6, 7),
            (2, 8), (2, 10), (9, 10), (8, 9), (8, 10),
            (9, 11),
            (9, 12),
            (12, 13), (12, 14), (13, 15), (14, 15), (13, 14),
            (14, 16), (16, 17), (14, 17),
            (15, 18),
        ],
    )
}

/// Connected graph built by attaching blocks one at a time. Each `(kind, at)`
/// attaches an edge (`kind % 3 == 0`), a triangle (`1`) or a 4-cycle (`2`) at
/// existing vertex `at % n`.
pub fn glued(shapes: &[(u8, usize)]) -> Graph {
    let mut n = 1;
    let mut edges = Vec::new();
    for &(kind, at) in shapes {
        let a = at % n;
        let size = (kind % 3) as usize + 1;
        let mut ring = vec![a];
        ring.extend(n..n + size);
        n += size;
        for w in ring.windows(2) {
            edges.push((w[0], w[1]));
        }
        if ring.len() > 2 {
            edges.push((a, ring[ring.len() - 1]));
        }
    }
    build(n, &edges)
}
