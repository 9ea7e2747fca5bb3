//! Single-source augmenting path search with blossom contraction.
//!
//! This is the primitive behind the maximum matching solver and the
//! alternating-cycle detector: an `M`-alternating cycle through a matched
//! edge `ab` exists exactly when `b` is reachable from `a` by an
//! `(M - ab)`-augmenting path that avoids the edge `ab`.

use crate::graph::{Edge, Graph, Vertex};

pub(crate) const NONE: usize = usize::MAX;

pub(crate) struct AugmentingSearch<'a, F> {
    graph: &'a Graph,
    mate: &'a [usize],
    allowed: F,
    forbidden: Option<Edge>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: Vec<Vertex>,
}

impl<'a, F: Fn(Vertex) -> bool> AugmentingSearch<'a, F> {
    /// `allowed` restricts the search to an induced subgraph; `forbidden`
    /// removes a single edge.
    pub(crate) fn new(graph: &'a Graph, mate: &'a [usize], allowed: F, forbidden: Option<Edge>) -> Self {
        let n = graph.order();
        AugmentingSearch {
            graph,
            mate,
            allowed,
            forbidden,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: Vec::new(),
        }
    }

    fn lca(&self, mut a: Vertex, mut b: Vertex) -> Vertex {
        let mut on_path = vec![false; self.graph.order()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: Vertex, b: Vertex, mut child: Vertex) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Returns an augmenting path `[end, .., root]` from the exposed `root`
    /// to another exposed allowed vertex, if one exists.
    pub(crate) fn run(mut self, root: Vertex) -> Option<Vec<Vertex>> {
        self.used[root] = true;
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &to in self.graph.neighbors(v) {
                if !(self.allowed)(to) || self.forbidden == Some(Edge::new(v, to)) {
                    continue;
                }
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let current = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, current, to);
                    self.mark_path(to, current, v);
                    for i in 0..self.graph.order() {
                        if self.blossom[self.base[i]] {
                            self.base[i] = current;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(self.trace(to));
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        None
    }

    fn trace(&self, end: Vertex) -> Vec<Vertex> {
        let mut path = Vec::new();
        let mut v = end;
        while v != NONE {
            let pv = self.parent[v];
            path.push(v);
            path.push(pv);
            v = self.mate[pv];
        }
        path
    }
}

/// Flips the matching along an augmenting path returned by
/// [`AugmentingSearch::run`].
pub(crate) fn augment(mate: &mut [usize], path: &[Vertex]) {
    for pair in path.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        mate[a] = b;
        mate[b] = a;
    }
}
