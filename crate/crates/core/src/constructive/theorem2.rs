//! Subcubic graphs: `ν_ur(G) ≥ (n − c)/2 − m/6`.
//!
//! Rules are tried in a fixed order on each component, each at its
//! lowest-indexed qualifying vertex. A component reaching the end of the
//! list is cubic and is handed to the exact solver.

use num_rational::Rational64;

use super::{
    common_neighbor, is_bridge, Builder, ConstructError, ConstructOptions, ReductionStep, ReductionTrace, Rule, Work,
};
use crate::graph::{Edge, Graph, Vertex};
use crate::solvers::{greedy_maximal, nu_ur_exact, Objective};

pub fn construct_theorem2(g: &Graph) -> Result<ReductionTrace, ConstructError> {
    construct_theorem2_with(g, ConstructOptions::default())
}

pub fn construct_theorem2_with(g: &Graph, options: ConstructOptions) -> Result<ReductionTrace, ConstructError> {
    if g.max_degree() > 3 {
        return Err(ConstructError::Precondition(format!(
            "maximum degree {} exceeds 3",
            g.max_degree()
        )));
    }
    let mut b = Builder::new(g, options);
    let edges = solve(&mut b, &Work::root(g))?;
    let bound = Rational64::new((g.order() - g.component_count()) as i64, 2) - Rational64::new(g.size() as i64, 6);
    b.finish(g, 2, edges, bound)
}

fn solve(b: &mut Builder, w: &Work) -> Result<Vec<Edge>, ConstructError> {
    let mut out = Vec::new();
    for part in w.components() {
        out.extend(connected(b, &part)?);
    }
    Ok(out)
}

fn other_neighbor(g: &Graph, v: Vertex, not: Vertex) -> Vertex {
    g.neighbors(v).iter().copied().find(|&x| x != not).expect("degree two")
}

fn pair(g: &Graph, u: Vertex) -> (Vertex, Vertex) {
    let n = g.neighbors(u);
    (n[0], n[1])
}

fn failure(w: &Work, rule: Rule, detail: &str) -> ConstructError {
    ConstructError::Certification {
        rule,
        detail: detail.into(),
        reproducer: w.reproducer(),
    }
}

fn connected(b: &mut Builder, w: &Work) -> Result<Vec<Edge>, ConstructError> {
    let g = &w.g;
    if g.order() <= 1 {
        return Ok(Vec::new());
    }
    if let Some(u) = g.vertices().find(|&u| g.degree(u) == 1) {
        let v = g.neighbors(u)[0];
        return b.peel(w, Rule::Deg1, &[u, v], &[(u, v)], solve);
    }
    let deg2: Vec<Vertex> = g.vertices().filter(|&u| g.degree(u) == 2).collect();
    for &u in &deg2 {
        if let Some(&v) = g.neighbors(u).iter().find(|&&v| g.degree(v) == 2) {
            return adjacent_pair(b, w, u, v);
        }
    }
    for &u in &deg2 {
        let (v, x) = pair(g, u);
        if g.has_edge(v, x) {
            let (rest, _) = w.delete(&[u, v]);
            let removed: &[Vertex] = if rest.g.component_count() >= 2 {
                &[u, v]
            } else {
                &[u, v, x]
            };
            return b.peel(w, Rule::Deg2Triangle, removed, &[(u, v)], solve);
        }
    }
    for &u in &deg2 {
        let (v, x) = pair(g, u);
        if let Some(y) = common_neighbor(g, v, x, Some(u)) {
            return four_cycle(b, w, u, v, y, x);
        }
    }
    for &u in &deg2 {
        let (v, x) = pair(g, u);
        let (rest, map) = w.delete(&[u, v, x]);
        if rest.g.component_count() <= 3 {
            return few_components(b, w, u, v, x, &rest, &map.old_to_new);
        }
    }
    if let Some(&u) = deg2.first() {
        return splice(b, w, u);
    }
    cubic_base(b, w)
}

/// Two adjacent vertices of degree two.
fn adjacent_pair(b: &mut Builder, w: &Work, u: Vertex, v: Vertex) -> Result<Vec<Edge>, ConstructError> {
    let g = &w.g;
    if is_bridge(g, u, v) || common_neighbor(g, u, v, None).is_some() {
        return b.peel(w, Rule::Deg2AdjacentBridgeOrTriangle, &[u, v], &[(u, v)], solve);
    }
    let z = other_neighbor(g, u, v);
    let (rest, map) = w.delete(&[u, v, z]);
    if rest.g.component_count() <= 1 {
        return b.peel(w, Rule::Deg2AdjacentCycle, &[u, v, z], &[(u, v)], solve);
    }
    // x: a neighbor of z away from the component holding the rest of the cycle
    let y = other_neighbor(g, v, u);
    let labels = rest.g.component_labels();
    let y_comp = labels[map.old_to_new[y].expect("y survives")];
    let x = g
        .neighbors(z)
        .iter()
        .copied()
        .filter(|&x| x != u)
        .find(|&x| map.old_to_new[x].is_some_and(|i| labels[i] != y_comp))
        .ok_or_else(|| failure(w, Rule::Deg2AdjacentCycle, "no neighbor in a second component"))?;
    b.peel(w, Rule::Deg2AdjacentCycle, &[u, v, z, x], &[(u, v), (z, x)], solve)
}

/// `u` of degree two on the cycle `u v x z u`.
fn four_cycle(
    b: &mut Builder,
    w: &Work,
    u: Vertex,
    v: Vertex,
    x: Vertex,
    z: Vertex,
) -> Result<Vec<Edge>, ConstructError> {
    let (rest, _) = w.delete(&[u, v, z]);
    if rest.g.component_count() <= 2 {
        return b.peel(w, Rule::Deg2C4Contract, &[u, v, z], &[(u, v)], solve);
    }
    let members = [u, v, x, z];
    let merged = b.fresh_label();
    let mut step = ReductionStep::new(Rule::Deg2C4Contract);
    let mut contracted: Vec<Vertex> = members.iter().map(|&c| w.label(c)).collect();
    contracted.sort_unstable();
    step.contracted = contracted;
    step.merged_vertex = Some(merged);
    let at = b.open(step);
    let reduced = w.contract(&members, merged);
    let m = solve(b, &reduced)?;
    // the covered C-vertex must not be the one matched to u
    b.resolve_contraction(w, Rule::Deg2C4Contract, at, m, merged, &[v, x, z], |c| match c {
        Some(c) if c == v => vec![(u, z)],
        Some(_) => vec![(u, v)],
        None => vec![(u, v), (u, z)],
    })
}

/// `u` of degree two whose closed neighborhood leaves at most three
/// components.
fn few_components(
    b: &mut Builder,
    w: &Work,
    u: Vertex,
    v: Vertex,
    z: Vertex,
    rest: &Work,
    old_to_new: &[Option<Vertex>],
) -> Result<Vec<Edge>, ConstructError> {
    let g = &w.g;
    let labels = rest.g.component_labels();
    let outside = |s: Vertex| -> Vec<usize> {
        g.neighbors(s)
            .iter()
            .filter_map(|&t| old_to_new[t].map(|i| labels[i]))
            .collect()
    };
    if is_bridge(g, u, v) {
        let same = |s: Vertex| outside(s).windows(2).all(|p| p[0] == p[1]);
        let side = if same(v) { v } else { z };
        return b.peel(w, Rule::Deg2FewComponents, &[u, side], &[(u, side)], solve);
    }
    let (from_v, from_z) = (outside(v), outside(z));
    let h = (0..rest.g.component_count())
        .find(|c| from_v.contains(c) && from_z.contains(c))
        .ok_or_else(|| failure(w, Rule::Deg2FewComponents, "no component meets both neighbors"))?;
    let h_local: Vec<Vertex> = g
        .vertices()
        .filter(|&t| old_to_new[t].is_some_and(|i| labels[i] == h))
        .collect();
    let mut members = vec![u, v, z];
    members.extend(&h_local);
    members.sort_unstable();

    let merged = b.fresh_label();
    let mut step = ReductionStep::new(Rule::Deg2FewComponents);
    step.contracted = members.iter().map(|&c| w.label(c)).collect();
    step.merged_vertex = Some(merged);
    let at = b.open(step);
    let reduced = w.contract(&members, merged);
    let mut m = solve(b, &reduced)?;
    m.extend(solve(b, &w.keep(&h_local))?);
    b.resolve_contraction(w, Rule::Deg2FewComponents, at, m, merged, &[v, z], |c| match c {
        Some(c) if c == v => vec![(u, z)],
        Some(_) => vec![(u, v)],
        None => vec![(u, v), (u, z)],
    })
}

/// Replaces `u, v` by the edge `zx` and undoes it on the way back.
fn splice(b: &mut Builder, w: &Work, u: Vertex) -> Result<Vec<Edge>, ConstructError> {
    let g = &w.g;
    let (v, z) = pair(g, u);
    let x = other_neighbor(g, v, u);
    let aux = w.edge(z, x);
    let mut step = ReductionStep::new(Rule::Deg2EdgeSplice);
    step.removed = vec![w.label(u), w.label(v)];
    step.added_aux_edges = vec![aux];
    let at = b.open(step);

    let (rest, map) = w.delete(&[u, v]);
    let (zn, xn) = (map.old_to_new[z].expect("kept"), map.old_to_new[x].expect("kept"));
    let spliced = Work {
        g: rest
            .g
            .with_edge(Edge::new(zn, xn))
            .map_err(|e| failure(w, Rule::Deg2EdgeSplice, &e.to_string()))?,
        labels: rest.labels,
    };
    let mut m = solve(b, &spliced)?;
    if let Some(pos) = m.iter().position(|&e| e == aux) {
        m.remove(pos);
        let lifted = vec![w.edge(u, z), w.edge(v, x)];
        m.extend(lifted.iter().copied());
        b.steps[at].dropped_edges = vec![aux];
        b.steps[at].lifted_edges = lifted;
    } else {
        m.push(w.edge(u, v));
        b.steps[at].lifted_edges = vec![w.edge(u, v)];
    }
    b.check(w, &m, Rule::Deg2EdgeSplice)?;
    Ok(m)
}

fn cubic_base(b: &mut Builder, w: &Work) -> Result<Vec<Edge>, ConstructError> {
    let g = &w.g;
    let local = if g.order() <= b.options.base_exact_limit {
        let r = nu_ur_exact(g, b.options.budget);
        if !r.optimal {
            b.guaranteed = false;
        }
        r.witness
    } else {
        b.guaranteed = false;
        greedy_maximal(g, Objective::UniquelyRestricted)
    };
    let m: Vec<Edge> = local.iter().map(|e| w.edge(e.low(), e.high())).collect();
    let mut step = ReductionStep::new(Rule::CubicBase);
    step.removed = w.labels.clone();
    step.lifted_edges = m.clone();
    b.open(step);
    b.check(w, &m, Rule::CubicBase)?;
    Ok(m)
}
