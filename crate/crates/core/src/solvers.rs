//! Exact matching numbers with witnesses.
//!
//! `ν` is computed with Edmonds' blossom algorithm. `ν_ur` and `ν_ac` use a
//! branch and bound over the edges in sorted order. Both properties are
//! hereditary, so a branch is cut as soon as the partial matching violates
//! the predicate, and only the newly added edge needs to be checked.

use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::augment::{augment, AugmentingSearch, NONE};
use crate::graph::{Edge, Graph, Vertex};
use crate::matching::{acyclic_with, closes_alternating_cycle, Matching};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub value: usize,
    /// False when the node budget ran out; `value` is then the best found.
    pub optimal: bool,
    pub witness: Matching,
    #[serde(rename = "nodes")]
    pub nodes_explored: u64,
    #[serde(rename = "millis", serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Matching,
    UniquelyRestricted,
    Acyclic,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::Matching => "nu",
            Objective::UniquelyRestricted => "nu_ur",
            Objective::Acyclic => "nu_ac",
        }
    }

    /// Whether adding `ab` keeps a matching with this property.
    fn admits(self, g: &Graph, mate: &[usize], a: Vertex, b: Vertex) -> bool {
        match self {
            Objective::Matching => true,
            Objective::UniquelyRestricted => !closes_alternating_cycle(g, mate, a, b),
            Objective::Acyclic => acyclic_with(g, |v| mate[v] != NONE || v == a || v == b),
        }
    }
}

pub fn solve(g: &Graph, objective: Objective, budget: u64) -> SolveResult {
    match objective {
        Objective::Matching => max_matching(g),
        other => branch_and_bound(g, other, budget),
    }
}

/// Maximum matching by repeated augmenting path search from each exposed
/// vertex, after a greedy start.
pub fn max_matching(g: &Graph) -> SolveResult {
    let start = Instant::now();
    let n = g.order();
    let mut mate = vec![NONE; n];
    for e in g.edges() {
        if mate[e.low()] == NONE && mate[e.high()] == NONE {
            mate[e.low()] = e.high();
            mate[e.high()] = e.low();
        }
    }
    let mut searches = 0;
    for root in 0..n {
        if mate[root] != NONE || g.degree(root) == 0 {
            continue;
        }
        searches += 1;
        let found = AugmentingSearch::new(g, &mate, |_| true, None).run(root);
        if let Some(path) = found {
            augment(&mut mate, &path);
        }
    }
    let witness = Matching::from_mates(&mate);
    debug_assert!(witness.validate(g).is_ok());
    SolveResult {
        value: witness.len(),
        optimal: true,
        witness,
        nodes_explored: searches,
        elapsed: start.elapsed(),
    }
}

pub fn nu_ur_exact(g: &Graph, budget: u64) -> SolveResult {
    branch_and_bound(g, Objective::UniquelyRestricted, budget)
}

pub fn nu_ac_exact(g: &Graph, budget: u64) -> SolveResult {
    branch_and_bound(g, Objective::Acyclic, budget)
}

/// Maximal matching with the property, taking edges in sorted order.
pub fn greedy_maximal(g: &Graph, objective: Objective) -> Matching {
    let mut mate = vec![NONE; g.order()];
    for e in g.edges() {
        let (a, b) = e.endpoints();
        if mate[a] == NONE && mate[b] == NONE && objective.admits(g, &mate, a, b) {
            mate[a] = b;
            mate[b] = a;
        }
    }
    Matching::from_mates(&mate)
}

struct BranchAndBound<'a> {
    g: &'a Graph,
    objective: Objective,
    edges: Vec<Edge>,
    mate: Vec<usize>,
    current: Vec<Edge>,
    best: Vec<Edge>,
    mark: Vec<bool>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl BranchAndBound<'_> {
    /// Free vertices that still have a remaining edge to a free vertex.
    fn live_vertices(&mut self, from: usize) -> usize {
        self.mark.iter_mut().for_each(|m| *m = false);
        let mut count = 0;
        for e in &self.edges[from..] {
            let (a, b) = e.endpoints();
            if self.mate[a] == NONE && self.mate[b] == NONE {
                for v in [a, b] {
                    if !self.mark[v] {
                        self.mark[v] = true;
                        count += 1;
                    }
                }
            }
        }
        count
    }

    fn search(&mut self, from: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.current.len() + self.live_vertices(from) / 2 <= self.best.len() {
            return;
        }
        let Some(offset) = self.edges[from..]
            .iter()
            .position(|e| self.mate[e.low()] == NONE && self.mate[e.high()] == NONE)
        else {
            return;
        };
        let i = from + offset;
        let (a, b) = self.edges[i].endpoints();
        if self.objective.admits(self.g, &self.mate, a, b) {
            self.mate[a] = b;
            self.mate[b] = a;
            self.current.push(self.edges[i]);
            self.search(i + 1);
            self.current.pop();
            self.mate[a] = NONE;
            self.mate[b] = NONE;
        }
        self.search(i + 1);
    }
}

fn branch_and_bound(g: &Graph, objective: Objective, budget: u64) -> SolveResult {
    let start = Instant::now();
    let mut state = BranchAndBound {
        g,
        objective,
        edges: g.edges().collect(),
        mate: vec![NONE; g.order()],
        current: Vec::new(),
        best: Vec::new(),
        mark: vec![false; g.order()],
        nodes: 0,
        budget,
        exhausted: false,
    };
    state.search(0);
    let witness = Matching::from_edges_unchecked(state.best);
    assert!(
        witness_satisfies(g, &witness, objective),
        "{} solver produced an invalid witness",
        objective.name()
    );
    SolveResult {
        value: witness.len(),
        optimal: !state.exhausted,
        witness,
        nodes_explored: state.nodes,
        elapsed: start.elapsed(),
    }
}

fn witness_satisfies(g: &Graph, m: &Matching, objective: Objective) -> bool {
    use crate::matching::{is_acyclic_matching, is_uniquely_restricted_fast};
    match objective {
        Objective::Matching => m.validate(g).is_ok(),
        Objective::UniquelyRestricted => is_uniquely_restricted_fast(g, m).is_ok_and(|s| s.is_uniquely_restricted()),
        Objective::Acyclic => is_acyclic_matching(g, m).unwrap_or(false),
    }
}
