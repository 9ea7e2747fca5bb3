use serde::Serialize;

use super::{acyclic_with, Matching};
use crate::graph::{Edge, Graph};

/// Classes partitioning a matching, each an acyclic matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcyclicPartition {
    pub classes: Vec<Matching>,
}

impl AcyclicPartition {
    /// Independent re-check: disjoint classes covering `m`, each acyclic.
    pub fn verify(&self, g: &Graph, m: &Matching, bound: usize) -> Result<(), String> {
        if self.classes.len() > bound {
            return Err(format!("{} classes exceed bound {bound}", self.classes.len()));
        }
        let mut all: Vec<Edge> = self.classes.iter().flat_map(|c| c.iter()).collect();
        all.sort_unstable();
        if all != m.edges() {
            return Err("classes do not partition the matching".into());
        }
        for (i, class) in self.classes.iter().enumerate() {
            if !super::is_acyclic_matching(g, class).map_err(|e| e.to_string())? {
                return Err(format!("class {i} is not acyclic"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PartitionOutcome {
    Partitioned(AcyclicPartition),
    /// Greedy placement found no admissible class for `unplaced`.
    Failed {
        placed: AcyclicPartition,
        unplaced: Edge,
    },
}

fn admits(g: &Graph, covered: &[bool], e: Edge) -> bool {
    acyclic_with(g, |v| covered[v] || e.contains(v))
}

/// Greedy first-fit: edges in sorted order, each into the first class whose
/// covered vertices still induce a forest. With `bound >= Δ(g)` this never
/// fails, since an edge is blocked by a class only through two edges from
/// its endpoints into that class.
pub fn partition_into_acyclic(g: &Graph, m: &Matching, bound: usize) -> PartitionOutcome {
    let mut classes: Vec<Vec<Edge>> = Vec::new();
    let mut covered: Vec<Vec<bool>> = Vec::new();
    for e in m.iter() {
        let slot = (0..classes.len()).find(|&i| admits(g, &covered[i], e));
        let slot = match slot {
            Some(i) => i,
            None if classes.len() < bound.max(1) => {
                classes.push(Vec::new());
                covered.push(vec![false; g.order()]);
                classes.len() - 1
            }
            None => {
                return PartitionOutcome::Failed {
                    placed: AcyclicPartition {
                        classes: classes.into_iter().map(Matching::from_iter).collect(),
                    },
                    unplaced: e,
                };
            }
        };
        classes[slot].push(e);
        covered[slot][e.low()] = true;
        covered[slot][e.high()] = true;
    }
    PartitionOutcome::Partitioned(AcyclicPartition {
        classes: classes.into_iter().map(Matching::from_iter).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ExhaustivePartition {
    Found(AcyclicPartition),
    /// No partition into at most `bound` acyclic classes exists.
    Impossible,
    GuardExceeded,
}

/// Backtracking search over all assignments of edges to at most `bound`
/// classes, with classes opened in order to skip relabelings.
pub fn exhaustive_acyclic_partition(g: &Graph, m: &Matching, bound: usize, node_guard: u64) -> ExhaustivePartition {
    struct State<'a> {
        g: &'a Graph,
        edges: &'a [Edge],
        bound: usize,
        classes: Vec<Vec<Edge>>,
        covered: Vec<Vec<bool>>,
        nodes: u64,
        guard: u64,
    }

    fn rec(s: &mut State<'_>, i: usize) -> Option<bool> {
        s.nodes += 1;
        if s.nodes > s.guard {
            return None;
        }
        if i == s.edges.len() {
            return Some(true);
        }
        let e = s.edges[i];
        let open = s.classes.len();
        for c in 0..=open.min(s.bound.saturating_sub(1)) {
            if c == open {
                s.classes.push(Vec::new());
                s.covered.push(vec![false; s.g.order()]);
            }
            if admits(s.g, &s.covered[c], e) {
                s.classes[c].push(e);
                s.covered[c][e.low()] = true;
                s.covered[c][e.high()] = true;
                let found = rec(s, i + 1)?;
                if found {
                    return Some(true);
                }
                s.classes[c].pop();
                s.covered[c][e.low()] = false;
                s.covered[c][e.high()] = false;
            }
            if c == open {
                s.classes.pop();
                s.covered.pop();
            }
        }
        Some(false)
    }

    let edges: Vec<Edge> = m.iter().collect();
    if bound == 0 {
        return if edges.is_empty() {
            ExhaustivePartition::Found(AcyclicPartition { classes: Vec::new() })
        } else {
            ExhaustivePartition::Impossible
        };
    }
    let mut state = State {
        g,
        edges: &edges,
        bound,
        classes: Vec::new(),
        covered: Vec::new(),
        nodes: 0,
        guard: node_guard,
    };
    match rec(&mut state, 0) {
        Some(true) => ExhaustivePartition::Found(AcyclicPartition {
            classes: state.classes.into_iter().map(Matching::from_iter).collect(),
        }),
        Some(false) => ExhaustivePartition::Impossible,
        None => ExhaustivePartition::GuardExceeded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, random_graph};
    use crate::matching::all_matchings;

    #[test]
    fn single_edge_one_class() {
        let g = cycle(5);
        let m = Matching::new(&g, [Edge::new(0, 1)]).unwrap();
        match partition_into_acyclic(&g, &m, 1) {
            PartitionOutcome::Partitioned(p) => assert_eq!(p.classes.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn six_cycle_two_classes() {
        let g = cycle(6);
        let m = Matching::new(&g, [Edge::new(0, 1), Edge::new(2, 3), Edge::new(4, 5)]).unwrap();
        let PartitionOutcome::Partitioned(p) = partition_into_acyclic(&g, &m, 2) else {
            panic!("C6 perfect matching splits into two acyclic classes");
        };
        assert_eq!(p.classes.len(), 2);
        p.verify(&g, &m, 2).unwrap();
        // one class is not enough: all six vertices induce C6
        assert!(matches!(
            partition_into_acyclic(&g, &m, 1),
            PartitionOutcome::Failed { .. }
        ));
        assert_eq!(
            exhaustive_acyclic_partition(&g, &m, 1, 1000),
            ExhaustivePartition::Impossible
        );
    }

    #[test]
    fn k44_perfect_matching_within_four() {
        let g = complete_bipartite(4, 4).unwrap();
        let m = Matching::new(&g, (0..4).map(|i| Edge::new(i, 4 + i))).unwrap();
        let PartitionOutcome::Partitioned(p) = partition_into_acyclic(&g, &m, 4) else {
            panic!("bound Δ always suffices");
        };
        p.verify(&g, &m, 4).unwrap();
    }

    #[test]
    fn bound_delta_never_fails_on_small_random_graphs() {
        for seed in 0..60 {
            let g = random_graph(8, 3 + (seed as usize % 3), None, seed).unwrap();
            let delta = g.max_degree();
            for m in all_matchings(&g) {
                match partition_into_acyclic(&g, &m, delta) {
                    PartitionOutcome::Partitioned(p) => p.verify(&g, &m, delta).unwrap(),
                    other => panic!("seed {seed}: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn exhaustive_agrees_with_greedy_success() {
        for seed in 0..20 {
            let g = random_graph(8, 3, None, seed).unwrap();
            for m in all_matchings(&g) {
                let greedy = partition_into_acyclic(&g, &m, 2);
                let full = exhaustive_acyclic_partition(&g, &m, 2, 1_000_000);
                if let PartitionOutcome::Partitioned(_) = greedy {
                    assert!(matches!(full, ExhaustivePartition::Found(_)));
                }
                if let ExhaustivePartition::Found(p) = full {
                    p.verify(&g, &m, 2).unwrap();
                }
            }
        }
    }
}
