//! Simple undirected graphs, the edge-list text format, and the JSON form
//! `{"n": int, "edges": [[u, v], ...]}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{CbpError, Result};

/// An undirected simple graph. Edges are stored with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = CbpError;

    fn try_from(j: GraphJson) -> Result<Self> {
        Graph::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.vertex_count,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(CbpError::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(CbpError::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(CbpError::InvalidGraph(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
        }
        Ok(Graph {
            vertex_count,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Connected components of the graph with `removed` deleted.
    pub fn components_without(&self, removed: Option<usize>) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        if let Some(r) = removed {
            seen[r] = true;
        }
        let mut comps = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.components_without(None).len() == 1
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.vertex_count);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Parses whitespace-separated `u v` lines, with an optional `n <count>` header.
///
/// Blank lines and `#` comments are skipped. Vertices that no edge touches are
/// dropped (remaining ids are compacted in order) and a warning is logged.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<usize> = None;
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 || header.is_some() || !raw.is_empty() {
                return Err(CbpError::Parse {
                    line: line_no,
                    message: "header must be a single leading line `n <vertex_count>`".into(),
                });
            }
            header = Some(tokens[1].parse().map_err(|_| CbpError::Parse {
                line: line_no,
                message: format!("malformed vertex count `{}`", tokens[1]),
            })?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(CbpError::Parse {
                line: line_no,
                message: format!("expected two vertex ids, found {} tokens", tokens.len()),
            });
        }
        let parse = |t: &str| {
            t.parse::<usize>().map_err(|_| CbpError::Parse {
                line: line_no,
                message: format!("malformed vertex id `{t}`"),
            })
        };
        raw.push((parse(tokens[0])?, parse(tokens[1])?));
    }

    let max_id = raw.iter().map(|&(u, v)| u.max(v)).max();
    let n = match (header, max_id) {
        (Some(n), Some(m)) if m >= n => {
            return Err(CbpError::InvalidGraph(format!(
                "vertex id {m} exceeds declared vertex count {n}"
            )))
        }
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };

    let mut used = vec![false; n];
    for &(u, v) in &raw {
        used[u] = true;
        used[v] = true;
    }
    let isolated = used.iter().filter(|&&u| !u).count();
    if isolated == 0 {
        return Graph::new(n, raw);
    }
    log::warn!("dropping {isolated} isolated vertices and relabelling the rest");
    let mut relabel = BTreeMap::new();
    for (old, _) in used.iter().enumerate().filter(|(_, &u)| u) {
        let next = relabel.len();
        relabel.insert(old, next);
    }
    // self-loops are still reported against the original ids
    if let Some(&(u, _)) = raw.iter().find(|&&(u, v)| u == v) {
        return Err(CbpError::InvalidGraph(format!("self-loop at vertex {u}")));
    }
    Graph::new(
        relabel.len(),
        raw.into_iter().map(|(u, v)| (relabel[&u], relabel[&v])),
    )
}

/// Accepts either the edge-list format or the JSON graph form.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| CbpError::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    } else {
        parse_edge_list(text)
    }
}

/// True iff the edge subset is connected once isolated vertices are ignored and
/// every vertex has even degree. The empty edge set counts as Eulerian.
pub fn is_eulerian_edge_set(g: &Graph, edges: &[(usize, usize)]) -> bool {
    let mut degree = vec![0usize; g.vertex_count()];
    for &(u, v) in edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    if degree.iter().any(|d| d % 2 == 1) {
        return false;
    }
    edge_set_is_connected(g.vertex_count(), edges)
}

pub fn edge_set_is_connected(vertex_count: usize, edges: &[(usize, usize)]) -> bool {
    if edges.is_empty() {
        return true;
    }
    let mut adj = vec![Vec::new(); vertex_count];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let start = edges[0].0;
    let mut seen = vec![false; vertex_count];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    edges.iter().all(|&(u, _)| seen[u])
}
