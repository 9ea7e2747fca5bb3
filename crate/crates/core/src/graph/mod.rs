//! Simple undirected graphs with dense vertex identifiers.
//!
//! A [`Graph`] is immutable once built. Structural edits (vertex deletion,
//! contraction) return a new graph together with a [`Relabeling`] so that
//! matchings found on the smaller graph can be mapped back.

mod edge_list;
mod generators;
mod graph6;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use edge_list::{parse_edge_list, write_edge_list, EdgeListError};
pub use generators::{
    complete_bipartite, cycle, degree_sorted_connected_graphs, gk_gadget, path, petersen, random_graph,
    random_graph_with, robertson, GenerationError, RandomGraphParams, ENUMERATION_LIMIT,
};
pub use graph6::{parse_graph6, write_graph6, Graph6Error};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set does not induce a connected subgraph")]
    DisconnectedSet,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph must have at least two vertices")]
    Trivial,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Normalizes `(u, v)`. Panics on a loop; use [`Edge::try_new`] for
    /// untrusted input.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        Self::try_new(u, v).expect("edge endpoints must be distinct")
    }

    pub fn try_new(u: Vertex, v: Vertex) -> Result<Self, GraphError> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge(u, v)),
            std::cmp::Ordering::Greater => Ok(Edge(v, u)),
            std::cmp::Ordering::Equal => Err(GraphError::Loop(u)),
        }
    }

    pub fn low(self) -> Vertex {
        self.0
    }

    pub fn high(self) -> Vertex {
        self.1
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(self, v: Vertex) -> Option<Vertex> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }

    pub fn map(self, f: impl Fn(Vertex) -> Vertex) -> Edge {
        Edge::new(f(self.0), f(self.1))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl std::str::FromStr for Edge {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .trim()
            .split_once('-')
            .ok_or_else(|| format!("expected \"u-v\", got {s:?}"))?;
        let u = a.trim().parse().map_err(|_| format!("bad vertex in {s:?}"))?;
        let v = b.trim().parse().map_err(|_| format!("bad vertex in {s:?}"))?;
        Edge::try_new(u, v).map_err(|e| e.to_string())
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

/// Length of a shortest cycle; forests have infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_at_least(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub max_degree: usize,
    pub min_degree: usize,
    /// Vertices of degree zero or one.
    pub count_degree_le1: usize,
    pub isolated_count: usize,
}

/// Old-to-new vertex map produced by [`Graph::delete_vertices`] and
/// [`Graph::contract_set`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    pub old_to_new: Vec<Option<Vertex>>,
    pub new_to_old: Vec<Vertex>,
    /// Index of the merged vertex after a contraction.
    pub merged: Option<Vertex>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, order: n });
                }
            }
            Edge::try_new(u, v)?;
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(Edge::new(u, w[0])));
            }
        }
        Ok(Graph { adjacency, edge_count })
    }

    /// Builds a graph from edges known to be valid and distinct.
    pub(crate) fn from_edge_set(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for e in edges {
            adjacency[e.0].push(e.1);
            adjacency[e.1].push(e.0);
            edge_count += 1;
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let degree_sum: usize = adjacency.iter().map(Vec::len).sum();
        debug_assert_eq!(degree_sum, 2 * edge_count, "duplicate edges in from_edge_set");
        Graph {
            adjacency,
            edge_count: degree_sum / 2,
        }
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.order()
    }

    /// Edges in lexicographic order of their normalized endpoints.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| Edge(u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adjacency.iter().all(|l| l.len() == d)
    }

    pub fn degree_profile(&self) -> Result<DegreeProfile, GraphError> {
        if self.order() == 0 {
            return Err(GraphError::Empty);
        }
        Ok(DegreeProfile {
            max_degree: self.max_degree(),
            min_degree: self.min_degree(),
            count_degree_le1: self.adjacency.iter().filter(|l| l.len() <= 1).count(),
            isolated_count: self.adjacency.iter().filter(|l| l.is_empty()).count(),
        })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let labels = self.component_labels();
        let count = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); count];
        for (v, &l) in labels.iter().enumerate() {
            blocks[l].push(v);
        }
        blocks
    }

    /// Component index per vertex; indices follow increasing smallest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        const UNSEEN: usize = usize::MAX;
        let mut label = vec![UNSEEN; self.order()];
        let mut next = 0;
        let mut stack = Vec::new();
        for root in self.vertices() {
            if label[root] != UNSEEN {
                continue;
            }
            label[root] = next;
            stack.push(root);
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if label[w] == UNSEEN {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |l| l + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.size() + self.component_count() == self.order()
    }

    /// Shortest cycle length via one breadth-first search per vertex.
    pub fn girth(&self) -> Girth {
        let n = self.order();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in self.vertices() {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                if 2 * dist[v] + 1 >= best {
                    break;
                }
                for &w in &self.adjacency[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        best = best.min(dist[v] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Induced subgraph on the vertices outside `removed`, densely relabeled.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> Result<(Graph, Relabeling), GraphError> {
        let n = self.order();
        let mut gone = vec![false; n];
        for &v in removed {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            gone[v] = true;
        }
        let mut old_to_new = vec![None; n];
        let mut new_to_old = Vec::with_capacity(n);
        for v in self.vertices().filter(|&v| !gone[v]) {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
        let edges = self
            .edges()
            .filter_map(|e| Some(Edge(old_to_new[e.0]?, old_to_new[e.1]?)));
        let g = Graph::from_edge_set(new_to_old.len(), edges);
        Ok((
            g,
            Relabeling {
                old_to_new,
                new_to_old,
                merged: None,
            },
        ))
    }

    /// Merges the connected vertex set `set` into one vertex, placed last.
    /// Loops vanish and parallel edges collapse.
    pub fn contract_set(&self, set: &[Vertex]) -> Result<(Graph, Relabeling), GraphError> {
        let n = self.order();
        if set.is_empty() {
            return Err(GraphError::EmptySet);
        }
        let mut inside = vec![false; n];
        for &v in set {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            inside[v] = true;
        }
        // g[set] must be connected
        let mut seen = vec![false; n];
        let mut stack = vec![set[0]];
        seen[set[0]] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        let set_size = inside.iter().filter(|&&b| b).count();
        if reached != set_size {
            return Err(GraphError::DisconnectedSet);
        }
        let merged = n - set_size;
        let mut old_to_new = vec![None; n];
        let mut new_to_old = Vec::with_capacity(merged);
        for v in self.vertices() {
            if inside[v] {
                old_to_new[v] = Some(merged);
            } else {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let mut edges: Vec<Edge> = self
            .edges()
            .filter(|e| !(inside[e.0] && inside[e.1]))
            .map(|e| e.map(|v| old_to_new[v].unwrap()))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let g = Graph::from_edge_set(merged + 1, edges);
        Ok((
            g,
            Relabeling {
                old_to_new,
                new_to_old,
                merged: Some(merged),
            },
        ))
    }

    /// A vertex whose removal leaves the graph connected: the last vertex
    /// discovered by a breadth-first search, which is a leaf of the search tree.
    pub fn spanning_tree_endvertex(&self) -> Result<Vertex, GraphError> {
        if self.order() < 2 {
            return Err(GraphError::Trivial);
        }
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut last = 0;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            last = v;
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        if count != self.order() {
            return Err(GraphError::Disconnected);
        }
        Ok(last)
    }

    /// Subgraph induced by `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adjacency[v]
                .iter()
                .filter(move |&&w| index[w] != usize::MAX && index[w] > i)
                .map(move |&w| Edge(i, index[w]))
        });
        Graph::from_edge_set(vertices.len(), edges.collect::<Vec<_>>())
    }

    /// Adds edges that are not yet present; used for splice reductions.
    pub fn with_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        if e.1 >= self.order() {
            return Err(GraphError::VertexOutOfRange {
                vertex: e.1,
                order: self.order(),
            });
        }
        if self.has_edge(e.0, e.1) {
            return Err(GraphError::DuplicateEdge(e));
        }
        Ok(Graph::from_edge_set(self.order(), self.edges().chain([e])))
    }

    /// Disjoint union, second graph shifted past the first.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let edges = self
            .edges()
            .chain(other.edges().map(|e| Edge(e.0 + shift, e.1 + shift)));
        Graph::from_edge_set(shift + other.order(), edges.collect::<Vec<_>>())
    }

    /// Proper 2-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side = vec![None; self.order()];
        for root in self.vertices() {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let s = side[v].unwrap();
                for &w in &self.adjacency[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!s);
                            stack.push(w);
                        }
                        Some(t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }
}
