use serde::Serialize;

use super::{Matching, MatchingError};
use crate::augment::{AugmentingSearch, NONE};
use crate::graph::{Edge, Graph, Vertex};

/// Largest covered-vertex count accepted by the exhaustive oracle.
pub const ORACLE_GUARD: usize = 24;

/// An `M`-alternating cycle. `cycle[0]cycle[1]` is matched, edges then
/// alternate, and the closing edge `cycle[last]cycle[0]` is unmatched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternatingCycleWitness {
    pub cycle: Vec<Vertex>,
}

impl AlternatingCycleWitness {
    /// Checks the witness against `g` and `m` without reference to how it
    /// was found.
    pub fn validate(&self, g: &Graph, m: &Matching) -> Result<(), String> {
        let c = &self.cycle;
        if c.len() < 4 || !c.len().is_multiple_of(2) {
            return Err(format!("cycle length {} is not even and at least 4", c.len()));
        }
        let mut seen = vec![false; g.order()];
        for &v in c {
            if v >= g.order() || std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} repeated or out of range"));
            }
        }
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            if !g.has_edge(a, b) {
                return Err(format!("{a}-{b} is not an edge"));
            }
            let matched = m.contains(Edge::new(a, b));
            if matched != (i % 2 == 0) {
                return Err(format!("edge {a}-{b} breaks the alternation"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum UrStatus {
    UniquelyRestricted,
    AlternatingCycle(AlternatingCycleWitness),
}

impl UrStatus {
    pub fn is_uniquely_restricted(&self) -> bool {
        matches!(self, UrStatus::UniquelyRestricted)
    }

    pub fn witness(&self) -> Option<&AlternatingCycleWitness> {
        match self {
            UrStatus::AlternatingCycle(w) => Some(w),
            UrStatus::UniquelyRestricted => None,
        }
    }
}

/// Searches for an alternating cycle through the matched edge `ab`: a path
/// from `a` to `b` that is augmenting for `M - ab` inside `G[V(M)] - ab`.
/// Returns the cycle in witness order starting with `a, b`.
fn cycle_through(g: &Graph, mate: &[usize], a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    let mut reduced = mate.to_vec();
    reduced[a] = NONE;
    reduced[b] = NONE;
    let covered = |v: Vertex| mate[v] != NONE;
    let path = AugmentingSearch::new(g, &reduced, covered, Some(Edge::new(a, b))).run(a)?;
    debug_assert_eq!(path.first(), Some(&b));
    debug_assert_eq!(path.last(), Some(&a));
    // path runs b .. a; witness is a, b, ..., with closing edge back into a
    let mut cycle = Vec::with_capacity(path.len());
    cycle.push(a);
    cycle.extend(path[..path.len() - 1].iter().copied());
    Some(cycle)
}

/// Whether adding the edge `ab` (both endpoints exposed) to a uniquely
/// restricted matching given by `mate` creates an alternating cycle. Any
/// such cycle must pass through `ab`.
pub(crate) fn closes_alternating_cycle(g: &Graph, mate: &[usize], a: Vertex, b: Vertex) -> bool {
    debug_assert!(mate[a] == NONE && mate[b] == NONE);
    let allowed = |v: Vertex| mate[v] != NONE || v == a || v == b;
    AugmentingSearch::new(g, mate, allowed, Some(Edge::new(a, b)))
        .run(a)
        .is_some()
}

/// Decides whether `m` is uniquely restricted, returning an alternating
/// cycle otherwise. One augmenting path search per matched edge.
pub fn is_uniquely_restricted_fast(g: &Graph, m: &Matching) -> Result<UrStatus, MatchingError> {
    m.validate(g)?;
    let mate = m.mates(g.order());
    for e in m.iter() {
        if let Some(cycle) = cycle_through(g, &mate, e.low(), e.high()) {
            return Ok(UrStatus::AlternatingCycle(AlternatingCycleWitness { cycle }));
        }
    }
    Ok(UrStatus::UniquelyRestricted)
}

/// Definition-based check: `m` is uniquely restricted iff it is the only
/// perfect matching of `g[V(m)]`.
pub fn is_uniquely_restricted_oracle(g: &Graph, m: &Matching) -> Result<bool, MatchingError> {
    m.validate(g)?;
    let covered = m.covered_vertices();
    if covered.len() > ORACLE_GUARD {
        return Err(MatchingError::GuardExceeded {
            covered: covered.len(),
            limit: ORACLE_GUARD,
        });
    }
    let h = g.induced(&covered);
    let mut used = vec![false; h.order()];
    Ok(count_perfect_matchings(&h, &mut used, 2) == 1)
}

/// Counts perfect matchings of the unused part, stopping at `cap`. Branches
/// on the lowest-indexed unused vertex.
fn count_perfect_matchings(h: &Graph, used: &mut [bool], cap: usize) -> usize {
    let Some(v) = used.iter().position(|&u| !u) else {
        return 1;
    };
    used[v] = true;
    let mut total = 0;
    for &w in h.neighbors(v) {
        if used[w] {
            continue;
        }
        used[w] = true;
        total += count_perfect_matchings(h, used, cap - total);
        used[w] = false;
        if total >= cap {
            break;
        }
    }
    used[v] = false;
    total
}

/// Whether the vertices selected by `inside` induce a forest.
pub(crate) fn acyclic_with(g: &Graph, inside: impl Fn(Vertex) -> bool) -> bool {
    let mut parent: Vec<usize> = (0..g.order()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in g.edges() {
        if !inside(e.low()) || !inside(e.high()) {
            continue;
        }
        let (ra, rb) = (find(&mut parent, e.low()), find(&mut parent, e.high()));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Whether `g[V(m)]` is a forest.
pub fn is_acyclic_matching(g: &Graph, m: &Matching) -> Result<bool, MatchingError> {
    m.validate(g)?;
    let mate = m.mates(g.order());
    Ok(acyclic_with(g, |v| mate[v] != NONE))
}
