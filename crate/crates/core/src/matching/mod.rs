//! Matchings, the uniquely restricted and acyclic predicates, and
//! partitions of a matching into acyclic classes.

mod partition;
mod predicates;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::augment::NONE;
use crate::graph::{Edge, Graph, Vertex};

pub use partition::{
    exhaustive_acyclic_partition, partition_into_acyclic, AcyclicPartition, ExhaustivePartition, PartitionOutcome,
};
pub(crate) use predicates::{acyclic_with, closes_alternating_cycle};
pub use predicates::{
    is_acyclic_matching, is_uniquely_restricted_fast, is_uniquely_restricted_oracle, AlternatingCycleWitness, UrStatus,
    ORACLE_GUARD,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(Edge),
    #[error("vertex {0} is covered twice")]
    SharedEndpoint(Vertex),
    #[error("{covered} covered vertices exceed the exhaustive guard of {limit}")]
    GuardExceeded { covered: usize, limit: usize },
}

/// A set of pairwise disjoint edges, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Matching::from_edges_unchecked(Vec::<Edge>::deserialize(d)?))
    }
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    /// Validates membership in `g` and disjointness.
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = Edge>) -> Result<Self, MatchingError> {
        let m = Matching::from_edges_unchecked(edges);
        m.validate(g)?;
        Ok(m)
    }

    pub(crate) fn from_edges_unchecked(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        Matching { edges }
    }

    pub(crate) fn from_mates(mate: &[usize]) -> Self {
        Matching {
            edges: mate
                .iter()
                .enumerate()
                .filter(|&(v, &w)| w != NONE && v < w)
                .map(|(v, &w)| Edge::new(v, w))
                .collect(),
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), MatchingError> {
        let mut seen = vec![false; g.order()];
        for &e in &self.edges {
            if !g.has_edge(e.low(), e.high()) {
                return Err(MatchingError::EdgeNotInGraph(e));
            }
            for v in [e.low(), e.high()] {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(MatchingError::SharedEndpoint(v));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Partner of every vertex of a graph of order `n`, or `usize::MAX`.
    pub fn mates(&self, n: usize) -> Vec<usize> {
        let mut mate = vec![NONE; n];
        for e in &self.edges {
            mate[e.low()] = e.high();
            mate[e.high()] = e.low();
        }
        mate
    }

    /// Sorted endpoints of all matched edges.
    pub fn covered_vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.edges.iter().flat_map(|e| [e.low(), e.high()]).collect();
        out.sort_unstable();
        out
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Matching {
        Matching::from_edges_unchecked(self.edges.iter().map(|e| e.map(&f)))
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }
}

impl FromIterator<Edge> for Matching {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        Matching::from_edges_unchecked(iter)
    }
}

/// Every matching of `g`, including the empty one. Exponential; meant for
/// small graphs and test oracles.
pub fn all_matchings(g: &Graph) -> Vec<Matching> {
    let edges: Vec<Edge> = g.edges().collect();
    let mut used = vec![false; g.order()];
    let mut current = Vec::new();
    let mut out = Vec::new();
    fn rec(i: usize, edges: &[Edge], used: &mut [bool], current: &mut Vec<Edge>, out: &mut Vec<Matching>) {
        if i == edges.len() {
            out.push(Matching { edges: current.clone() });
            return;
        }
        let e = edges[i];
        if !used[e.low()] && !used[e.high()] {
            used[e.low()] = true;
            used[e.high()] = true;
            current.push(e);
            rec(i + 1, edges, used, current, out);
            current.pop();
            used[e.low()] = false;
            used[e.high()] = false;
        }
        rec(i + 1, edges, used, current, out);
    }
    rec(0, &edges, &mut used, &mut current, &mut out);
    out
}
