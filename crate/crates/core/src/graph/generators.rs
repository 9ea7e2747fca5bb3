//! Named families and seeded random graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Edge, Graph, GraphError, Vertex};

pub fn path(n: usize) -> Graph {
    Graph::from_edge_set(n, (1..n).map(|i| Edge::new(i - 1, i)).collect::<Vec<_>>())
}

/// Cycle on `n >= 3` vertices; smaller `n` yields a path.
pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    Graph::from_edge_set(n, (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect::<Vec<_>>())
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::InvalidParameter(format!(
            "complete bipartite sides must be positive, got ({a}, {b})"
        )));
    }
    let edges = (0..a).flat_map(|i| (a..a + b).map(move |j| Edge::new(i, j)));
    Ok(Graph::from_edge_set(a + b, edges.collect::<Vec<_>>()))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| Edge::new(i, (i + 1) % 5));
    let spokes = (0..5).map(|i| Edge::new(i, i + 5));
    let inner = (0..5).map(|i| Edge::new(5 + i, 5 + (i + 2) % 5));
    Graph::from_edge_set(10, outer.chain(spokes).chain(inner).collect::<Vec<_>>())
}

/// The (4,5)-cage on 19 vertices: a Hamiltonian cycle plus one chord per
/// vertex with offsets from its LCF-style notation.
pub fn robertson() -> Graph {
    const JUMPS: [usize; 19] = [8, 4, 7, 4, 8, 5, 7, 4, 7, 8, 4, 5, 7, 8, 4, 8, 4, 8, 4];
    let ring = (0..19).map(|i| Edge::new(i, (i + 1) % 19));
    let chords = JUMPS.iter().enumerate().map(|(i, &j)| Edge::new(i, (i + j) % 19));
    Graph::from_edge_set(19, ring.chain(chords).collect::<Vec<_>>())
}

/// The tightness gadget `G_k`: connector vertices `u(1..=k)` at `0..k`,
/// then `2k+1` copies of `K_{2,3}`, copy `j` occupying `k+5(j-1)..k+5j`
/// with its two degree-3 vertices first. Connector `u(i)` sends one edge
/// to each of copies `2i-1`, `2i`, `2i+1`, landing on the lowest-indexed
/// degree-2 vertex of the copy that has not yet received an attachment.
pub fn gk_gadget(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::InvalidParameter("G_k needs k >= 1".into()));
    }
    let copies = 2 * k + 1;
    let n = k + 5 * copies;
    let mut edges = Vec::with_capacity(15 * k + 6);
    for c in 0..copies {
        let base = k + 5 * c;
        for a in 0..2 {
            for b in 2..5 {
                edges.push(Edge::new(base + a, base + b));
            }
        }
    }
    let mut attached = vec![0usize; copies];
    for i in 1..=k {
        for copy in [2 * i - 1, 2 * i, 2 * i + 1] {
            let c = copy - 1;
            let target = k + 5 * c + 2 + attached[c];
            attached[c] += 1;
            edges.push(Edge::new(i - 1, target));
        }
    }
    Ok(Graph::from_edge_set(n, edges))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerationError {
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("no graph satisfying the constraints found after {attempts} attempts")]
    Infeasible { attempts: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomGraphParams {
    pub n: usize,
    pub max_degree: usize,
    pub min_girth: Option<usize>,
    /// Stop adding edges once this many are present; `None` saturates.
    pub edge_target: Option<usize>,
    pub connected: bool,
    pub attempts: usize,
}

impl RandomGraphParams {
    pub fn new(n: usize, max_degree: usize, min_girth: Option<usize>) -> Self {
        RandomGraphParams {
            n,
            max_degree,
            min_girth,
            edge_target: None,
            connected: false,
            attempts: 64,
        }
    }

    pub fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    pub fn edges(mut self, target: usize) -> Self {
        self.edge_target = Some(target);
        self
    }
}

/// Seeded random graph with maximum degree at most `max_degree` and girth at
/// least `min_girth`. Edges are added in random order whenever they respect
/// both constraints, so the result is maximal with respect to them.
pub fn random_graph(
    n: usize,
    max_degree: usize,
    min_girth: Option<usize>,
    seed: u64,
) -> Result<Graph, GenerationError> {
    random_graph_with(&RandomGraphParams::new(n, max_degree, min_girth), seed)
}

pub fn random_graph_with(params: &RandomGraphParams, seed: u64) -> Result<Graph, GenerationError> {
    if params.n == 0 {
        return Err(GenerationError::InvalidParameters("n must be at least 1".into()));
    }
    if let Some(g) = params.min_girth {
        if g < 3 {
            return Err(GenerationError::InvalidParameters(format!(
                "minimum girth must be at least 3, got {g}"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = params.attempts.max(1);
    for _ in 0..attempts {
        if let Some(g) = attempt(params, &mut rng) {
            debug_assert!(g.max_degree() <= params.max_degree);
            debug_assert!(params.min_girth.is_none_or(|b| g.girth().is_at_least(b)));
            return Ok(g);
        }
    }
    Err(GenerationError::Infeasible { attempts })
}

fn attempt(params: &RandomGraphParams, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n = params.n;
    let cap = params.max_degree;
    let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    let target = params.edge_target.unwrap_or(usize::MAX);

    if params.connected && n > 1 {
        let mut order: Vec<Vertex> = (0..n).collect();
        order.shuffle(rng);
        for i in 1..n {
            let open: Vec<Vertex> = order[..i]
                .iter()
                .copied()
                .filter(|&v| adjacency[v].len() < cap)
                .collect();
            if open.is_empty() {
                return None;
            }
            let parent = open[rng.gen_range(0..open.len())];
            let child = order[i];
            adjacency[parent].push(child);
            adjacency[child].push(parent);
            edges.push(Edge::new(parent, child));
        }
    }

    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        if edges.len() >= target {
            break;
        }
        if adjacency[u].len() >= cap || adjacency[v].len() >= cap || adjacency[u].contains(&v) {
            continue;
        }
        if let Some(g) = params.min_girth {
            // the new edge closes a cycle of length dist(u, v) + 1
            if within(&adjacency, u, v, g - 2) {
                continue;
            }
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
        edges.push(Edge::new(u, v));
    }
    if params.edge_target.is_some_and(|t| edges.len() < t) {
        return None;
    }
    Some(Graph::from_edge_set(n, edges))
}

/// Whether `target` is reachable from `source` in at most `limit` steps.
fn within(adjacency: &[Vec<Vertex>], source: Vertex, target: Vertex, limit: usize) -> bool {
    let mut frontier = vec![source];
    let mut seen = vec![false; adjacency.len()];
    seen[source] = true;
    for _ in 0..limit {
        let mut next = Vec::new();
        for v in frontier {
            for &w in &adjacency[v] {
                if w == target {
                    return true;
                }
                if !seen[w] {
                    seen[w] = true;
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    false
}

/// Largest order accepted by [`degree_sorted_connected_graphs`].
pub const ENUMERATION_LIMIT: usize = 7;

/// One connected graph on `n` vertices per isomorphism class, labeled so
/// that degrees are non-increasing in vertex order. Among the degree-sorted
/// labelings of a class the one with the smallest edge bitmask is kept.
/// Output is in increasing bitmask order.
pub fn degree_sorted_connected_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > ENUMERATION_LIMIT {
        return Err(GraphError::InvalidParameter(format!(
            "enumeration is limited to {ENUMERATION_LIMIT} vertices"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let mut adj = [0u32; ENUMERATION_LIMIT];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        if adj[..n].windows(2).any(|w| w[0].count_ones() < w[1].count_ones()) {
            continue;
        }
        let mut reached = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let next = (0..n).filter(|v| frontier >> v & 1 == 1).fold(0, |acc, v| acc | adj[v]);
            frontier = next & !reached;
            reached |= next;
        }
        if reached.count_ones() as usize != n {
            continue;
        }
        if !is_least_labeling(mask, &adj[..n], &pairs) {
            continue;
        }
        let edges: Vec<Edge> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &(u, v))| Edge::new(u, v))
            .collect();
        out.push(Graph::from_edge_set(n, edges));
    }
    Ok(out)
}

/// Whether no degree-preserving relabeling maps the edge bitmask below
/// `mask`. Vertices are only permuted within runs of equal degree, which
/// covers every isomorphism between degree-sorted labelings.
fn is_least_labeling(mask: u32, adj: &[u32], pairs: &[(Vertex, Vertex)]) -> bool {
    let n = adj.len();
    let mut index = [[0usize; ENUMERATION_LIMIT]; ENUMERATION_LIMIT];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        index[u][v] = i;
        index[v][u] = i;
    }
    let degree: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut perm = [usize::MAX; ENUMERATION_LIMIT];
    let mut used = 0u32;
    fn extend(
        v: usize,
        n: usize,
        degree: &[u32],
        perm: &mut [usize; ENUMERATION_LIMIT],
        used: &mut u32,
        check: &mut dyn FnMut(&[usize; ENUMERATION_LIMIT]) -> bool,
    ) -> bool {
        if v == n {
            return check(perm);
        }
        for w in 0..n {
            if *used >> w & 1 == 0 && degree[w] == degree[v] {
                perm[v] = w;
                *used |= 1 << w;
                let ok = extend(v + 1, n, degree, perm, used, check);
                *used &= !(1 << w);
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut check = |p: &[usize; ENUMERATION_LIMIT]| {
        let mut image = 0u32;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                image |= 1 << index[p[u]][p[v]];
            }
        }
        image >= mask
    };
    extend(0, n, &degree, &mut perm, &mut used, &mut check)
}
