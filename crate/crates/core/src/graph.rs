//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// An undirected edge in canonical orientation `u < v`.
///
/// Edges order lexicographically by `(u, v)`, which is the canonical edge
/// order used by every serializer in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Canonicalizes the pair. Returns `None` for a loop.
    pub fn new(a: usize, b: usize) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn contains(self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    /// The endpoint that is not `w`. `w` must be an endpoint.
    pub fn other(self, w: usize) -> usize {
        debug_assert!(self.contains(w));
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = String;

    fn try_from([u, v]: [usize; 2]) -> Result<Self, Self::Error> {
        if u < v {
            Ok(Edge { u, v })
        } else {
            Err(format!("edge [{u},{v}] is not canonical (need u < v)"))
        }
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

/// Renumbering produced by vertex surgery: old id -> new id, or `None` if
/// the vertex no longer exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    map: Vec<Option<usize>>,
}

impl VertexMap {
    pub fn get(&self, old: usize) -> Option<usize> {
        self.map.get(old).copied().flatten()
    }

    pub fn source_len(&self) -> usize {
        self.map.len()
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.map
    }

    /// Inverse image: for each new id, the old ids mapping onto it.
    pub fn preimages(&self, target_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); target_len];
        for (old, new) in self.map.iter().enumerate() {
            if let Some(new) = new {
                out[*new].push(old);
            }
        }
        out
    }
}

/// For every edge incident to a merged vertex, the original edges that
/// collapsed into it. Several originals are listed when parallel edges were
/// merged.
pub type EdgeOrigin = BTreeMap<Edge, Vec<Edge>>;

/// A simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are errors.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::EndpointOutOfRange { u: a, v: b, n });
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Builds from canonical edges known to be in range.
    pub(crate) fn from_edges_unchecked(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| Edge { u, v })
        })
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    /// Induced subgraph on the vertices not in `removed`. Survivors keep
    /// their relative order.
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, VertexMap) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let mut map = vec![None; self.n()];
        let mut next = 0;
        for v in 0..self.n() {
            if !gone[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges = self.edges().filter_map(|e| {
            let (a, b) = (map[e.u]?, map[e.v]?);
            Edge::new(a, b)
        });
        (Graph::from_edges_unchecked(next, edges), VertexMap { map })
    }

    /// Graph without the given edges; vertex ids unchanged.
    pub fn remove_edges(&self, removed: &[Edge]) -> Graph {
        let edges = self.edges().filter(|e| !removed.contains(e));
        Graph::from_edges_unchecked(self.n(), edges)
    }

    /// Merges every vertex of `merged` into one new vertex, which takes the
    /// last id `n' - 1`; the other vertices keep their relative order.
    /// Edges inside `merged` are dropped and parallel edges collapse.
    ///
    /// Panics if `merged` is empty.
    pub fn identify_vertices(&self, merged: &[usize]) -> (Graph, VertexMap, EdgeOrigin) {
        assert!(!merged.is_empty(), "identify_vertices needs a nonempty set");
        let mut inside = vec![false; self.n()];
        for &v in merged {
            inside[v] = true;
        }
        let mut map = vec![None; self.n()];
        let mut next = 0;
        for v in 0..self.n() {
            if !inside[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let merged_id = next;
        for v in 0..self.n() {
            if inside[v] {
                map[v] = Some(merged_id);
            }
        }
        let mut origin = EdgeOrigin::new();
        let mut edges = Vec::with_capacity(self.edge_count());
        for e in self.edges() {
            let (a, b) = (map[e.u].unwrap(), map[e.v].unwrap());
            let Some(new_edge) = Edge::new(a, b) else {
                continue;
            };
            if inside[e.u] || inside[e.v] {
                origin.entry(new_edge).or_default().push(e);
            }
            edges.push(new_edge);
        }
        (
            Graph::from_edges_unchecked(merged_id + 1, edges),
            VertexMap { map },
            origin,
        )
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}
