//! Girth at least five: `ν_ur(G) ≥ (n − c)/Δ` for `Δ ≥ 4`.

use std::collections::VecDeque;

use num_rational::Rational64;

use super::{Builder, ConstructError, ConstructOptions, ReductionStep, ReductionTrace, Rule, Work};
use crate::graph::{Edge, Graph, Vertex};

pub fn construct_theorem3(g: &Graph, delta: usize) -> Result<ReductionTrace, ConstructError> {
    construct_theorem3_with(g, delta, ConstructOptions::default())
}

pub fn construct_theorem3_with(
    g: &Graph,
    delta: usize,
    options: ConstructOptions,
) -> Result<ReductionTrace, ConstructError> {
    if delta < 4 {
        return Err(ConstructError::Precondition(format!("delta {delta} is below 4")));
    }
    if g.max_degree() > delta {
        return Err(ConstructError::Precondition(format!(
            "maximum degree {} exceeds {delta}",
            g.max_degree()
        )));
    }
    if !g.girth().is_at_least(5) {
        return Err(ConstructError::Precondition(format!("girth {} is below 5", g.girth())));
    }
    let mut b = Builder::new(g, options);
    b.delta = Some(delta);
    let edges = solve(&mut b, &Work::root(g))?;
    let bound = Rational64::new((g.order() - g.component_count()) as i64, delta as i64);
    b.finish(g, 3, edges, bound)
}

fn solve(b: &mut Builder, w: &Work) -> Result<Vec<Edge>, ConstructError> {
    let mut out = Vec::new();
    for part in w.components() {
        out.extend(connected(b, &part)?);
    }
    Ok(out)
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
    let delta = b.delta.expect("delta set");
    if g.is_regular(delta) {
        return drop_endvertex(b, w);
    }
    reduce_irregular(b, w)
}

/// Deletes a vertex whose removal keeps the component connected and breaks
/// regularity. Nothing is lifted.
fn drop_endvertex(b: &mut Builder, w: &Work) -> Result<Vec<Edge>, ConstructError> {
    let u = w.g.spanning_tree_endvertex().expect("nonempty component");
    let mut step = ReductionStep::new(Rule::RegularVertexDrop);
    step.removed = vec![w.label(u)];
    b.open(step);
    let (rest, _) = w.delete(&[u]);
    let m = reduce_all(b, &rest)?;
    b.check(w, &m, Rule::RegularVertexDrop)?;
    Ok(m)
}

fn reduce_all(b: &mut Builder, w: &Work) -> Result<Vec<Edge>, ConstructError> {
    let mut out = Vec::new();
    for part in w.components() {
        out.extend(reduce_irregular(b, &part)?);
    }
    Ok(out)
}

/// One component without a `Δ`-regular part.
fn reduce_irregular(b: &mut Builder, w: &Work) -> Result<Vec<Edge>, ConstructError> {
    let g = &w.g;
    if g.order() <= 1 {
        return Ok(Vec::new());
    }
    if let Some(u) = g.vertices().find(|&u| g.degree(u) == 1) {
        let v = g.neighbors(u)[0];
        return b.peel(w, Rule::Deg1, &[u, v], &[(u, v)], reduce_all);
    }
    if g.is_regular(b.delta.expect("delta set")) {
        return drop_endvertex(b, w);
    }
    if let Some(s) = g.vertices().find(|&u| g.degree(u) == 2) {
        let path = degree_two_path(g, s);
        let lifted: Vec<(Vertex, Vertex)> = (1..path.len() - 1).step_by(2).map(|i| (path[i], path[i + 1])).collect();
        return b.peel(w, Rule::Deg2PathPeel, &path, &lifted, reduce_all);
    }
    let u = g.vertices().min_by_key(|&v| g.degree(v)).expect("nonempty");
    let v = g.neighbors(u)[0];
    let mut closed = vec![u];
    closed.extend_from_slice(g.neighbors(u));
    b.peel(w, Rule::MinDegPeelGirth5, &closed, &[(u, v)], reduce_all)
}

/// A maximal path `u1 v1 u2 ... v_{k-1} u_k` through `s` in which every
/// `v_i` has degree two. Grown greedily at both ends.
fn degree_two_path(g: &Graph, s: Vertex) -> Vec<Vertex> {
    let mut on_path = vec![false; g.order()];
    let (a, c) = (g.neighbors(s)[0], g.neighbors(s)[1]);
    let mut path: VecDeque<Vertex> = VecDeque::from([a, s, c]);
    for &x in &path {
        on_path[x] = true;
    }
    let extend = |end: Vertex, on_path: &[bool]| -> Option<(Vertex, Vertex)> {
        g.neighbors(end).iter().copied().find_map(|v| {
            if on_path[v] || g.degree(v) != 2 {
                return None;
            }
            let next = g.neighbors(v).iter().copied().find(|&t| t != end)?;
            (!on_path[next]).then_some((v, next))
        })
    };
    while let Some((v, next)) = extend(*path.back().expect("nonempty"), &on_path) {
        on_path[v] = true;
        on_path[next] = true;
        path.push_back(v);
        path.push_back(next);
    }
    while let Some((v, next)) = extend(*path.front().expect("nonempty"), &on_path) {
        on_path[v] = true;
        on_path[next] = true;
        path.push_front(v);
        path.push_front(next);
    }
    path.into()
}
