//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use urmatch::audit::{conjecture1_scan, conjecture2_scan, trend, AuditConfig, Conjecture1Config};
use urmatch::constructive::{ceil, construct_theorem1, construct_theorem2, construct_theorem3, ReductionTrace};
use urmatch::graph::{
    complete_bipartite, cycle, degree_sorted_connected_graphs, gk_gadget, parse_graph6, path, petersen,
    random_graph_with, robertson, Edge, Graph, RandomGraphParams, ENUMERATION_LIMIT,
};
use urmatch::matching::{
    exhaustive_acyclic_partition, is_uniquely_restricted_fast, is_uniquely_restricted_oracle, partition_into_acyclic,
    ExhaustivePartition, Matching, PartitionOutcome,
};
use urmatch::solvers::{max_matching, nu_ac_exact, nu_ur_exact, DEFAULT_BUDGET};
use urmatch::Rational64;

// Independent oracles. Nothing below calls into the library's checkers.

fn all_matchings(g: &Graph) -> Vec<Vec<Edge>> {
    let edges: Vec<Edge> = g.edges().collect();
    let mut out = Vec::new();
    let mut used = vec![false; g.order()];
    let mut cur = Vec::new();
    fn rec(i: usize, edges: &[Edge], used: &mut [bool], cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if i == edges.len() {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, edges, used, cur, out);
        let (u, v) = edges[i].endpoints();
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            cur.push(edges[i]);
            rec(i + 1, edges, used, cur, out);
            cur.pop();
            used[u] = false;
            used[v] = false;
        }
    }
    rec(0, &edges, &mut used, &mut cur, &mut out);
    out
}

fn covered(m: &[Edge]) -> Vec<usize> {
    let mut vs: Vec<usize> = m.iter().flat_map(|e| [e.low(), e.high()]).collect();
    vs.sort_unstable();
    vs
}

/// Perfect matchings of `g[vs]`, counted up to 2.
fn perfect_matchings_capped(g: &Graph, vs: &[usize]) -> u8 {
    assert!(vs.len() <= 64);
    let k = vs.len();
    let adj: Vec<u64> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| g.has_edge(vs[i], vs[j]))
                .fold(0u64, |a, j| a | 1 << j)
        })
        .collect();
    fn count(rest: u64, adj: &[u64], memo: &mut HashMap<u64, u8>) -> u8 {
        if rest == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(&rest) {
            return c;
        }
        let i = rest.trailing_zeros() as usize;
        let mut options = adj[i] & rest & !(1 << i);
        let mut total = 0u8;
        while options != 0 && total < 2 {
            let j = options.trailing_zeros() as usize;
            options &= options - 1;
            total = (total + count(rest & !(1 << i) & !(1 << j), adj, memo)).min(2);
        }
        memo.insert(rest, total);
        total
    }
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    count(full, &adj, &mut HashMap::new())
}

/// A matching is uniquely restricted when it is the only perfect matching
/// of the subgraph induced by its vertices.
fn ur_oracle(g: &Graph, m: &[Edge]) -> bool {
    perfect_matchings_capped(g, &covered(m)) == 1
}

fn induces_forest(g: &Graph, vs: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..g.order()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let inside: Vec<bool> = (0..g.order()).map(|v| vs.contains(&v)).collect();
    for e in g.edges() {
        let (u, v) = e.endpoints();
        if inside[u] && inside[v] {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}

fn ac_oracle(g: &Graph, m: &[Edge]) -> bool {
    induces_forest(g, &covered(m))
}

struct Brute {
    nu: usize,
    nu_ur: usize,
    nu_ac: usize,
}

fn brute(g: &Graph) -> Brute {
    let mut b = Brute {
        nu: 0,
        nu_ur: 0,
        nu_ac: 0,
    };
    for m in all_matchings(g) {
        b.nu = b.nu.max(m.len());
        if m.len() > b.nu_ur && ur_oracle(g, &m) {
            b.nu_ur = m.len();
        }
        if m.len() > b.nu_ac && ac_oracle(g, &m) {
            b.nu_ac = m.len();
        }
    }
    b
}

/// Complete bipartite, tested directly: two-colourable with every
/// cross pair adjacent.
fn is_complete_bipartite(g: &Graph) -> bool {
    let n = g.order();
    if n < 2 {
        return false;
    }
    let mut colour = vec![usize::MAX; n];
    colour[0] = 0;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if colour[w] == usize::MAX {
                colour[w] = 1 - colour[v];
                stack.push(w);
            } else if colour[w] == colour[v] {
                return false;
            }
        }
    }
    if colour.contains(&usize::MAX) {
        return false;
    }
    let a = colour.iter().filter(|&&c| c == 0).count();
    g.size() == a * (n - a)
}

fn r(num: i64, den: i64) -> Rational64 {
    Rational64::new(num, den)
}

fn int(v: usize) -> Rational64 {
    Rational64::from_integer(v as i64)
}

fn corpus_up_to(limit: usize) -> Vec<Graph> {
    (1..=limit.min(ENUMERATION_LIMIT))
        .flat_map(|n| degree_sorted_connected_graphs(n).unwrap())
        .collect()
}

/// Every intermediate matching made only of edges of `g` must be UR in
/// `g`, and the final one must be a matching of `g`.
fn check_trace(g: &Graph, trace: &ReductionTrace) -> Result<(), String> {
    trace.verify(g)?;
    let mut current: Vec<Edge> = Vec::new();
    for (i, step) in trace.steps.iter().enumerate().rev() {
        current.retain(|e| !step.dropped_edges.contains(e));
        current.extend(step.lifted_edges.iter().copied());
        let real = current
            .iter()
            .all(|e| e.high() < g.order() && g.has_edge(e.low(), e.high()));
        if real && !ur_oracle(g, &current) {
            return Err(format!("matching after lifting step {i} ({:?}) is not UR", step.rule));
        }
    }
    let mut fin: Vec<Edge> = trace.final_matching.iter().collect();
    fin.sort();
    current.sort();
    if fin != current {
        return Err("stepwise replay differs from the final matching".into());
    }
    Matching::new(g, fin.iter().copied()).map_err(|e| e.to_string())?;
    if !ur_oracle(g, &fin) {
        return Err("final matching is not UR".into());
    }
    Ok(())
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn criterion1() -> Outcome {
    let mut notes = Vec::new();
    for k in [1usize, 2] {
        let g = gk_gadget(k).unwrap();
        let start = Instant::now();
        let s = nu_ur_exact(&g, u64::MAX);
        let took = start.elapsed();
        if !s.optimal || s.value != 3 * k + 1 {
            return Err(format!("k = {k}: nu_ur = {} (optimal {})", s.value, s.optimal));
        }
        if took > Duration::from_secs(60) {
            return Err(format!("k = {k}: {took:?} exceeds 60 s"));
        }
        let witness: Vec<Edge> = s.witness.iter().collect();
        if witness.len() != 3 * k + 1 || !ur_oracle(&g, &witness) {
            return Err(format!("k = {k}: solver witness rejected by the oracle"));
        }
        let (n, m) = (g.order() as i64, g.size() as i64);
        let expected = r(n, 2) - r(1, 2) - r(m, 6);
        if expected != int(3 * k + 1) {
            return Err(format!("k = {k}: bound arithmetic gives {expected}"));
        }
        let trace = construct_theorem2(&g).map_err(|e| e.to_string())?;
        if trace.guarantee != int(3 * k + 1) || trace.size() != 3 * k + 1 {
            return Err(format!("k = {k}: guarantee {} size {}", trace.guarantee, trace.size()));
        }
        check_trace(&g, &trace).map_err(|e| format!("k = {k}: {e}"))?;
        notes.push(format!("k={k}: {} in {:.2?}", s.value, took));
    }
    Ok(notes.join(", "))
}

fn criterion2(corpus: &[Graph]) -> Outcome {
    let mut equalities = 0;
    for g in corpus {
        let d = g.max_degree();
        if d == 0 {
            continue;
        }
        let (n, m, di) = (g.order() as i64, g.size() as i64, d as i64);
        let bound = r(n, di) - r(m, di * di);
        let nu_ur = brute(g).nu_ur;
        let exact = nu_ur_exact(g, DEFAULT_BUDGET);
        if !exact.optimal || exact.value != nu_ur {
            return Err(format!("{g:?}: solver {} vs brute force {nu_ur}", exact.value));
        }
        if int(nu_ur) < bound {
            return Err(format!("{g:?}: nu_ur = {nu_ur} below {bound}"));
        }
        let equal = int(nu_ur) == bound;
        if equal != is_complete_bipartite(g) {
            return Err(format!(
                "{g:?}: equality {equal} disagrees with the complete bipartite test"
            ));
        }
        equalities += usize::from(equal);
        let trace = construct_theorem1(g, d).map_err(|e| e.to_string())?;
        if trace.guarantee != bound || int(trace.size()) < bound {
            return Err(format!(
                "{g:?}: construction size {} guarantee {}",
                trace.size(),
                trace.guarantee
            ));
        }
        check_trace(g, &trace)?;
    }
    Ok(format!("{} graphs, {equalities} attain equality", corpus.len()))
}

fn subcubic_corpus() -> (Vec<Graph>, Vec<Graph>) {
    let mut random = Vec::new();
    let mut seed = 0u64;
    while random.len() < 10_000 {
        seed += 1;
        let n = 2 + (seed as usize * 7919) % 11;
        let max_edges = 3 * n / 2;
        let target = n - 1 + (seed as usize / 11) % (max_edges - n + 2);
        let params = RandomGraphParams::new(n, 3, None)
            .connected()
            .edges(target.min(max_edges));
        if let Ok(g) = random_graph_with(&params, seed) {
            random.push(g);
        }
    }
    let prism = Graph::from_edges(
        6,
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap();
    let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let mut families = vec![
        gk_gadget(1).unwrap(),
        gk_gadget(2).unwrap(),
        petersen(),
        prism,
        k4,
        complete_bipartite(3, 3).unwrap(),
    ];
    for n in 2..=12 {
        families.push(path(n));
        if n >= 3 {
            families.push(cycle(n));
        }
        if n <= 4 {
            families.push(complete_bipartite(3, n - 1).unwrap());
        }
    }
    (random, families)
}

fn criterion3(random: &[Graph], families: &[Graph]) -> Outcome {
    let mut exact_checked = 0;
    for g in random.iter().chain(families) {
        let (n, m, c) = (g.order() as i64, g.size() as i64, g.component_count() as i64);
        let bound = r(n - c, 2) - r(m, 6);
        if g.order() <= 12 {
            let nu_ur = brute(g).nu_ur;
            if int(nu_ur) < bound {
                return Err(format!("{g:?}: nu_ur = {nu_ur} below {bound}"));
            }
            exact_checked += 1;
        }
        let trace = construct_theorem2(g).map_err(|e| format!("{g:?}: {e}"))?;
        if !trace.guaranteed {
            return Err(format!("{g:?}: guarantee not certified"));
        }
        if trace.guarantee != bound || (trace.size() as i64) < ceil(bound) {
            return Err(format!("{g:?}: size {} guarantee {}", trace.size(), trace.guarantee));
        }
        check_trace(g, &trace).map_err(|e| format!("{g:?}: {e}"))?;
    }
    Ok(format!(
        "{} random + {} structured graphs, {exact_checked} with brute-force nu_ur",
        random.len(),
        families.len()
    ))
}

fn criterion4() -> Outcome {
    let mut graphs = Vec::new();
    let mut seed = 0u64;
    let mut failures = 0;
    while graphs.len() < 500 {
        seed += 1;
        let n = 5 + (seed as usize * 31) % 36;
        match random_graph_with(&RandomGraphParams::new(n, 4, Some(5)), seed) {
            Ok(g) => graphs.push(g),
            Err(_) => failures += 1,
        }
    }
    let mut min_slack = i64::MAX;
    for g in &graphs {
        if !g.girth().is_at_least(5) || g.max_degree() > 4 {
            return Err(format!("generator returned {g:?}"));
        }
        let trace = construct_theorem3(g, 4).map_err(|e| format!("{g:?}: {e}"))?;
        let need = ceil(r(g.order() as i64 - g.component_count() as i64, 4));
        if (trace.size() as i64) < need {
            return Err(format!("{g:?}: size {} below {need}", trace.size()));
        }
        min_slack = min_slack.min(trace.size() as i64 - need);
        check_trace(g, &trace).map_err(|e| format!("{g:?}: {e}"))?;
    }
    let rob = robertson();
    let trace = construct_theorem3(&rob, 4).map_err(|e| e.to_string())?;
    if trace.size() < 5 {
        return Err(format!("Robertson graph: size {}", trace.size()));
    }
    check_trace(&rob, &trace)?;
    Ok(format!(
        "500 graphs ({failures} generation retries), min slack {min_slack}, Robertson size {}",
        trace.size()
    ))
}

fn criterion5(corpus: &[Graph]) -> Outcome {
    let (mut total, mut negatives) = (0usize, 0usize);
    for g in corpus {
        for edges in all_matchings(g) {
            let m = Matching::new(g, edges.iter().copied()).map_err(|e| e.to_string())?;
            let fast = is_uniquely_restricted_fast(g, &m).map_err(|e| e.to_string())?;
            let oracle = is_uniquely_restricted_oracle(g, &m).map_err(|e| e.to_string())?;
            let mine = ur_oracle(g, &edges);
            if fast.is_uniquely_restricted() != oracle || oracle != mine {
                return Err(format!("{g:?} {edges:?}: fast {fast:?}, oracle {oracle}, brute {mine}"));
            }
            if let Some(w) = fast.witness() {
                negatives += 1;
                w.validate(g, &m)?;
                alternating_cycle_ok(g, &edges, &w.cycle)?;
            }
            total += 1;
        }
    }
    Ok(format!("{total} matchings, {negatives} witnesses validated"))
}

fn alternating_cycle_ok(g: &Graph, m: &[Edge], cycle: &[usize]) -> Result<(), String> {
    let k = cycle.len();
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if k < 4 || k % 2 == 1 || sorted.len() != k {
        return Err(format!("malformed cycle {cycle:?}"));
    }
    let on_cycle: Vec<bool> = (0..k)
        .map(|i| m.contains(&Edge::new(cycle[i], cycle[(i + 1) % k])))
        .collect();
    let edges_ok = (0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k]));
    let alternates = (0..k).all(|i| on_cycle[i] != on_cycle[(i + 1) % k]);
    if edges_ok && alternates {
        Ok(())
    } else {
        Err(format!("cycle {cycle:?} does not alternate in the graph"))
    }
}

fn criterion6(corpus: &[Graph]) -> Outcome {
    for g in corpus {
        let d = g.max_degree();
        if d == 0 {
            continue;
        }
        let b = brute(g);
        let di = d as i64;
        let lower = r(g.size() as i64, di * di).max(r(b.nu as i64, di));
        if !(b.nu >= b.nu_ur && b.nu_ur >= b.nu_ac && int(b.nu_ac) >= lower) {
            return Err(format!(
                "{g:?}: nu {} nu_ur {} nu_ac {} lower {lower}",
                b.nu, b.nu_ur, b.nu_ac
            ));
        }
        if d >= 2 && g.is_regular(d) && int(b.nu_ac) > r(di * g.order() as i64 - 2, 4 * di - 4) {
            return Err(format!("{g:?}: nu_ac {} above the regular upper bound", b.nu_ac));
        }
        let solved = (
            max_matching(g).value,
            nu_ur_exact(g, DEFAULT_BUDGET),
            nu_ac_exact(g, DEFAULT_BUDGET),
        );
        if solved.0 != b.nu || solved.1.value != b.nu_ur || solved.2.value != b.nu_ac {
            return Err(format!("{g:?}: solvers disagree with brute force"));
        }
    }
    for d in 2..=4 {
        let g = complete_bipartite(d, d).unwrap();
        let b = brute(&g);
        let di = d as i64;
        if b.nu_ac != 1 || r(g.size() as i64, di * di) != int(1) || nu_ac_exact(&g, DEFAULT_BUDGET).value != 1 {
            return Err(format!("K_{{{d},{d}}}: nu_ac = {}", b.nu_ac));
        }
    }
    Ok(format!("{} graphs, K_{{d,d}} tight for d = 2..4", corpus.len()))
}

fn criterion7(small: &[Graph]) -> Outcome {
    let mut corpus = small.to_vec();
    let mut seed = 0;
    while corpus.len() < small.len() + 600 {
        seed += 1;
        let n = 8 + seed as usize % 3;
        let delta = 2 + (seed as usize / 3) % 4;
        if let Ok(g) = random_graph_with(&RandomGraphParams::new(n, delta, None), seed) {
            corpus.push(g);
        }
    }
    let mut matchings = 0;
    for g in &corpus {
        let d = g.max_degree().max(1);
        let all = all_matchings(g);
        let nu = all.iter().map(Vec::len).max().unwrap_or(0);
        for edges in all.into_iter().filter(|m| m.len() == nu) {
            let m = Matching::new(g, edges.iter().copied()).map_err(|e| e.to_string())?;
            let PartitionOutcome::Partitioned(p) = partition_into_acyclic(g, &m, d) else {
                return Err(format!("{g:?}: no partition of {edges:?} into {d} classes"));
            };
            if p.classes.len() > d {
                return Err(format!("{g:?}: {} classes", p.classes.len()));
            }
            let mut union: Vec<Edge> = p.classes.iter().flat_map(|c| c.iter()).collect();
            union.sort();
            let mut want = edges.clone();
            want.sort();
            if union != want {
                return Err(format!("{g:?}: classes do not partition {edges:?}"));
            }
            for class in &p.classes {
                let es: Vec<Edge> = class.iter().collect();
                if !ac_oracle(g, &es) {
                    return Err(format!("{g:?}: class {es:?} is not acyclic"));
                }
            }
            matchings += 1;
        }
    }
    Ok(format!("{} graphs, {matchings} maximum matchings", corpus.len()))
}

fn criterion8(corpus: &[Graph], random: &[Graph], families: &[Graph]) -> Outcome {
    let mut checked = 0;
    for g in corpus.iter().chain(random).chain(families) {
        if g.order() > 12 || g.max_degree() > 3 || !g.is_connected() {
            continue;
        }
        let nu_ur = brute(g).nu_ur;
        if int(nu_ur) < r(g.order() as i64 - 2, 4) {
            return Err(format!("{g:?}: nu_ur = {nu_ur}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} connected subcubic graphs"))
}

fn criterion9() -> Outcome {
    let one = int(1);
    let zero = int(0);
    let config = Conjecture1Config::default();
    let s1 = conjecture1_scan(3, 100, 20, 1, &config).map_err(|e| e.to_string())?;
    if s1.samples + s1.generation_failures != 100 {
        return Err(format!("conjecture 1: {} samples", s1.samples));
    }
    if let Some(g6) = &s1.counterexample {
        let g = parse_graph6(g6).map_err(|e| format!("reproducer {g6}: {e}"))?;
        let m = max_matching(&g).witness;
        if !matches!(
            exhaustive_acyclic_partition(&g, &m, 2, u64::MAX),
            ExhaustivePartition::Impossible
        ) {
            return Err(format!("reproducer {g6} does not reproduce"));
        }
    }
    let stats =
        conjecture2_scan(3, &[3, 4, 5, 6, 7, 9, 30], 40, 16, 7, &AuditConfig::default()).map_err(|e| e.to_string())?;
    for s in &stats {
        let (Some(min), Some(mean)) = (s.min_ratio, s.mean_ratio) else {
            return Err(format!("girth {}: no samples", s.girth_bucket));
        };
        if !(min > zero && min <= one && mean >= min && mean <= one) {
            return Err(format!("girth {}: ratios {min} {mean}", s.girth_bucket));
        }
        if !s.forest_ratio_one {
            return Err(format!("girth {}: a forest has ratio below 1", s.girth_bucket));
        }
        if s.girth_bucket > s.n && (s.note.is_none() || s.forest_samples != s.samples) {
            return Err(format!("girth {}: expected only forests", s.girth_bucket));
        }
        serde_json::to_string(s).map_err(|e| e.to_string())?;
    }
    Ok(format!(
        "conjecture 1: {} samples, {} greedy failures, {} inconclusive, counterexample {}; conjecture 2 trend {:?}",
        s1.samples,
        s1.greedy_failures,
        s1.inconclusive,
        s1.counterexample.as_deref().unwrap_or("none"),
        trend(&stats)
    ))
}

fn main() {
    // `cargo test -- <filter>` style arguments are accepted and ignored.
    let corpus = corpus_up_to(7);
    let (random, families) = subcubic_corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 G_k tightness", Box::new(criterion1)),
        ("2 first bound and equality", Box::new(|| criterion2(&corpus))),
        (
            "3 subcubic bound and traces",
            Box::new(|| criterion3(&random, &families)),
        ),
        ("4 girth five bound", Box::new(criterion4)),
        ("5 characterization equivalence", Box::new(|| criterion5(&corpus))),
        ("6 inequality chain", Box::new(|| criterion6(&corpus))),
        ("7 acyclic partition", Box::new(|| criterion7(&corpus))),
        (
            "8 subcubic base bound",
            Box::new(|| criterion8(&corpus, &random, &families)),
        ),
        ("9 conjecture scans", Box::new(criterion9)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail}) [{took:.1?}]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail}) [{took:.1?}]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
