//! Minimum-degree peeling: `ν_ur(G) ≥ n/Δ − m/Δ²` for graphs without
//! isolated vertices.

use num_rational::Rational64;

use super::{Builder, ConstructError, ConstructOptions, ReductionStep, ReductionTrace, Rule, Work};
use crate::graph::{Edge, Graph, Relabeling, Vertex};

pub fn construct_theorem1(g: &Graph, delta: usize) -> Result<ReductionTrace, ConstructError> {
    construct_theorem1_with(g, delta, ConstructOptions::default())
}

pub fn construct_theorem1_with(
    g: &Graph,
    delta: usize,
    options: ConstructOptions,
) -> Result<ReductionTrace, ConstructError> {
    if delta == 0 {
        return Err(ConstructError::Precondition("delta must be at least 1".into()));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Err(ConstructError::Precondition(format!("vertex {v} is isolated")));
    }
    if g.max_degree() > delta {
        return Err(ConstructError::Precondition(format!(
            "maximum degree {} exceeds {delta}",
            g.max_degree()
        )));
    }
    let mut b = Builder::new(g, options);
    b.delta = Some(delta);
    let edges = solve(&mut b, &Work::root(g))?;
    let d = delta as i64;
    let bound = Rational64::new(g.order() as i64, d) - Rational64::new(g.size() as i64, d * d);
    b.finish(g, 1, edges, bound)
}

fn solve(b: &mut Builder, w: &Work) -> Result<Vec<Edge>, ConstructError> {
    let g = &w.g;
    if g.order() == 0 {
        return Ok(Vec::new());
    }
    let u = g.vertices().min_by_key(|&v| g.degree(v)).expect("nonempty graph");
    let delta_min = g.degree(u);
    let v = g.neighbors(u)[0];

    let mut closed = vec![false; g.order()];
    closed[u] = true;
    for &x in g.neighbors(u) {
        closed[x] = true;
    }
    // edges of G - u with an endpoint in N(u)
    let mut e_u = 0;
    for e in g.edges() {
        if !e.contains(u) && (closed[e.low()] || closed[e.high()]) {
            e_u += 1;
        }
    }
    let mut removed: Vec<Vertex> = g.vertices().filter(|&x| closed[x]).collect();
    let isolated: Vec<Vertex> = g
        .vertices()
        .filter(|&x| !closed[x] && g.neighbors(x).iter().all(|&y| closed[y]))
        .collect();
    removed.extend(&isolated);
    removed.sort_unstable();

    let delta = b.delta.expect("delta set");
    if !(delta_min * isolated.len() <= e_u && e_u <= delta_min * (delta - 1)) {
        return Err(ConstructError::Certification {
            rule: Rule::MinDegreePeel,
            detail: format!("peel inequality fails: {delta_min}*{} vs {e_u}", isolated.len()),
            reproducer: w.reproducer(),
        });
    }

    let mut step = ReductionStep::new(Rule::MinDegreePeel);
    step.removed = removed.iter().map(|&x| w.label(x)).collect();
    step.lifted_edges = vec![w.edge(u, v)];
    step.isolated = Some(isolated.len());
    step.incident_edges = Some(e_u);
    step.min_degree = Some(delta_min);
    b.open(step);

    let (rest, _) = w.delete(&removed);
    let mut m = solve(b, &rest)?;
    m.push(w.edge(u, v));
    b.check(w, &m, Rule::MinDegreePeel)?;
    Ok(m)
}

/// Removes isolated vertices; the relabeling maps the result back.
pub fn strip_isolated(g: &Graph) -> (Graph, Relabeling) {
    let isolated: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) == 0).collect();
    g.delete_vertices(&isolated).expect("vertices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, path};
    use crate::solvers::{nu_ur_exact, DEFAULT_BUDGET};

    #[test]
    fn k32_meets_bound_with_equality() {
        let g = complete_bipartite(3, 2).unwrap();
        let t = construct_theorem1(&g, 3).unwrap();
        assert_eq!(t.guarantee, Rational64::from_integer(1));
        assert_eq!(t.size(), 1);
        t.verify(&g).unwrap();
    }

    #[test]
    fn single_edge() {
        let t = construct_theorem1(&path(2), 1).unwrap();
        assert_eq!((t.size(), t.guarantee), (1, Rational64::from_integer(1)));
    }

    #[test]
    fn two_four_cycles() {
        let g = cycle(4).disjoint_union(&cycle(4));
        let t = construct_theorem1(&g, 2).unwrap();
        assert_eq!(t.guarantee, Rational64::from_integer(2));
        assert!(t.size() >= 2);
        assert_eq!(nu_ur_exact(&g, DEFAULT_BUDGET).value, 2);
        t.verify(&g).unwrap();
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            construct_theorem1(&Graph::empty(2), 1),
            Err(ConstructError::Precondition(_))
        ));
        assert!(matches!(
            construct_theorem1(&path(3), 1),
            Err(ConstructError::Precondition(_))
        ));
        assert!(matches!(
            construct_theorem1(&path(3), 0),
            Err(ConstructError::Precondition(_))
        ));
    }

    #[test]
    fn strip_then_construct() {
        let g = path(3).disjoint_union(&Graph::empty(2));
        let (h, map) = strip_isolated(&g);
        assert_eq!(h.order(), 3);
        assert_eq!(map.new_to_old, vec![0, 1, 2]);
        construct_theorem1(&h, 2).unwrap().verify(&h).unwrap();
    }
}
