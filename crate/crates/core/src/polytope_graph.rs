//! Edges of CBP(G) by the combinatorial rule and by tight-facet geometry,
//! diameter, the Hirsch bound, and simplicity.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::BlockDecomposition;
use crate::blockset::BlockSubset;
use crate::error::{CbpError, Result};
use crate::hull::RationalPolyhedron;
use crate::num::Rational;
use crate::vertices::{enumerate_vertices, incidence_points, is_connected_blockset};

pub const POLYTOPE_GRAPH_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolytopeGraph {
    pub vertices: Vec<BlockSubset>,
    adjacency: Vec<Vec<bool>>,
}

impl PolytopeGraph {
    pub fn from_matrix(vertices: Vec<BlockSubset>, adjacency: Vec<Vec<bool>>) -> Self {
        PolytopeGraph { vertices, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&j| self.adjacency[i][j]).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().filter(|&&a| a).count()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        (0..n)
            .flat_map(|i| (i + 1..n).filter(move |&j| self.adjacency[i][j]).map(move |j| (i, j)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.vertices.len()).map(|i| self.neighbors(i)).collect()
    }

    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let lists = self.adjacency_lists();
        bfs(&lists, source)
    }
}

fn bfs(lists: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; lists.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have distances");
        for &w in &lists[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Edge test from the structure of the two block sets.
pub fn adjacent_combinatorial(d: &BlockDecomposition, a1: &BlockSubset, a2: &BlockSubset) -> Result<bool> {
    for a in [a1, a2] {
        d.check_subset(a)?;
        if !is_connected_blockset(d, a) {
            return Err(CbpError::NotConnectedSubset(a.members().to_vec()));
        }
    }
    if a1 == a2 {
        return Ok(false);
    }
    if a1.is_empty() || a2.is_empty() {
        return Ok(a1.len() + a2.len() == 1);
    }
    if !is_connected_blockset(d, &a1.union(a2)) {
        return Ok(true);
    }
    let (small, large) = if a1.len() <= a2.len() { (a1, a2) } else { (a2, a1) };
    if !small.is_subset(large) {
        return Ok(false);
    }
    let touching = large
        .difference(small)
        .members()
        .iter()
        .filter(|&&b| small.members().iter().any(|&s| d.share_vertex(s, b)))
        .count();
    Ok(touching == 1)
}

/// Edge test from the faces: the pair is an edge iff the only vertices tight on
/// every row tight at both are the pair themselves.
pub fn adjacent_geometric(h: &RationalPolyhedron, verts: &[Vec<Rational>], i: usize, j: usize) -> Result<bool> {
    if i >= verts.len() || j >= verts.len() {
        return Err(CbpError::NotAVertex);
    }
    let ti = h.tight_rows(&verts[i]);
    let tj = h.tight_rows(&verts[j]);
    let common: Vec<usize> = ti.into_iter().filter(|r| tj.contains(r)).collect();
    // a vertex lies on at least dim facets
    if [&verts[i], &verts[j]].iter().any(|v| h.tight_rows(v).len() < h.dim) {
        return Err(CbpError::NotAVertex);
    }
    if i == j {
        return Ok(false);
    }
    let face: Vec<usize> = (0..verts.len())
        .filter(|&k| common.iter().all(|&r| h.inequalities[r].is_tight(&verts[k])))
        .collect();
    Ok(face == [i.min(j), i.max(j)])
}

fn check_cap(n: usize) -> Result<()> {
    if n > POLYTOPE_GRAPH_CAP {
        return Err(CbpError::CountOverflow { cap: POLYTOPE_GRAPH_CAP });
    }
    Ok(())
}

pub fn polytope_graph(d: &BlockDecomposition) -> Result<PolytopeGraph> {
    let verts = enumerate_vertices(d)?;
    check_cap(verts.len())?;
    let adjacency: Vec<Vec<bool>> = (0..verts.len())
        .into_par_iter()
        .map(|i| {
            (0..verts.len())
                .map(|j| adjacent_combinatorial(d, &verts[i], &verts[j]))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    Ok(PolytopeGraph { vertices: verts, adjacency })
}

pub fn polytope_graph_geometric(
    d: &BlockDecomposition,
    h: &RationalPolyhedron,
) -> Result<PolytopeGraph> {
    let verts = enumerate_vertices(d)?;
    check_cap(verts.len())?;
    let points = incidence_points(d, &verts);
    let adjacency: Vec<Vec<bool>> = (0..verts.len())
        .into_par_iter()
        .map(|i| {
            (0..verts.len())
                .map(|j| adjacent_geometric(h, &points, i, j))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    Ok(PolytopeGraph { vertices: verts, adjacency })
}

/// Largest BFS distance over all vertex pairs.
pub fn diameter(pg: &PolytopeGraph) -> usize {
    let lists = pg.adjacency_lists();
    (0..lists.len())
        .into_par_iter()
        .map(|s| {
            bfs(&lists, s)
                .into_iter()
                .map(|d| d.expect("polytope graphs are connected"))
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HirschReport {
    pub diameter: usize,
    pub dimension: usize,
    pub facets: usize,
    pub hirsch_bound: usize,
}

/// Checks diameter <= #facets - dim, diameter <= dim, and #facets >= 2 dim.
pub fn hirsch_check(d: &BlockDecomposition, pg: &PolytopeGraph, h: &RationalPolyhedron) -> Result<HirschReport> {
    let dimension = d.block_count();
    let facets = h.len();
    let diam = diameter(pg);
    let report = HirschReport {
        diameter: diam,
        dimension,
        facets,
        hirsch_bound: facets.saturating_sub(dimension),
    };
    let graph = serde_json::to_string(d.graph()).expect("graphs serialize");
    if facets < 2 * dimension {
        return Err(CbpError::AssertionFailure(format!(
            "{facets} facets is fewer than twice the dimension {dimension} for {graph}"
        )));
    }
    if diam > dimension {
        return Err(CbpError::AssertionFailure(format!(
            "diameter {diam} exceeds dimension {dimension} for {graph}"
        )));
    }
    if diam > report.hirsch_bound {
        return Err(CbpError::AssertionFailure(format!(
            "diameter {diam} exceeds the Hirsch bound {} for {graph}",
            report.hirsch_bound
        )));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub is_simple: bool,
    pub is_simplicial: bool,
    pub predicted_simple: bool,
    pub predicted_simplicial: bool,
}

pub fn simplicity_report(d: &BlockDecomposition, pg: &PolytopeGraph, h: &RationalPolyhedron) -> SimplicityReport {
    let dim = d.block_count();
    let points = incidence_points(d, &pg.vertices);
    let is_simple = (0..pg.vertex_count()).all(|i| pg.degree(i) == dim);
    let is_simplicial = h
        .inequalities
        .iter()
        .all(|r| points.iter().filter(|p| r.is_tight(p)).count() == dim);
    SimplicityReport {
        is_simple,
        is_simplicial,
        predicted_simple: d.cut_vertices().len() <= 1,
        predicted_simplicial: dim <= 2,
    }
}
