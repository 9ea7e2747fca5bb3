use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{opt_ratio, AuditConfig, AuditError};
use crate::graph::{random_graph_with, write_graph6, Graph, RandomGraphParams};
use crate::matching::{
    exhaustive_acyclic_partition, is_uniquely_restricted_fast, partition_into_acyclic, ExhaustivePartition,
    PartitionOutcome,
};
use crate::solvers::{greedy_maximal, max_matching, nu_ur_exact, Objective};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureStats {
    pub conjecture: u8,
    pub girth_bucket: usize,
    pub delta: usize,
    pub n: usize,
    /// Graphs evaluated.
    pub samples: usize,
    pub generation_failures: usize,
    /// Smallest and mean `ν_ur/ν`; an edgeless sample counts as 1.
    #[serde(serialize_with = "opt_ratio")]
    pub min_ratio: Option<Rational64>,
    #[serde(serialize_with = "opt_ratio")]
    pub mean_ratio: Option<Rational64>,
    /// `ν_ur` came from a greedy matching, so ratios are lower bounds.
    pub heuristic: bool,
    pub forest_samples: usize,
    pub forest_ratio_one: bool,
    pub greedy_failures: usize,
    pub inconclusive: usize,
    pub counterexample: Option<String>,
    pub note: Option<String>,
}

impl ConjectureStats {
    fn new(conjecture: u8, girth_bucket: usize, delta: usize, n: usize) -> Self {
        ConjectureStats {
            conjecture,
            girth_bucket,
            delta,
            n,
            samples: 0,
            generation_failures: 0,
            min_ratio: None,
            mean_ratio: None,
            heuristic: false,
            forest_samples: 0,
            forest_ratio_one: true,
            greedy_failures: 0,
            inconclusive: 0,
            counterexample: None,
            note: None,
        }
    }
}

/// One CSV row per bucket.
pub fn stats_to_csv(stats: &[ConjectureStats]) -> Result<String, AuditError> {
    let out = |e: csv::Error| AuditError::Output(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "conjecture",
        "girth_bucket",
        "delta",
        "n",
        "samples",
        "generation_failures",
        "min_ratio",
        "mean_ratio",
        "heuristic",
        "forest_samples",
        "forest_ratio_one",
        "greedy_failures",
        "inconclusive",
        "counterexample",
        "note",
    ])
    .map_err(out)?;
    let ratio = |r: Option<Rational64>| r.map_or(String::new(), |r| r.to_string());
    for s in stats {
        w.write_record([
            s.conjecture.to_string(),
            s.girth_bucket.to_string(),
            s.delta.to_string(),
            s.n.to_string(),
            s.samples.to_string(),
            s.generation_failures.to_string(),
            ratio(s.min_ratio),
            ratio(s.mean_ratio),
            s.heuristic.to_string(),
            s.forest_samples.to_string(),
            s.forest_ratio_one.to_string(),
            s.greedy_failures.to_string(),
            s.inconclusive.to_string(),
            s.counterexample.clone().unwrap_or_default(),
            s.note.clone().unwrap_or_default(),
        ])
        .map_err(out)?;
    }
    let bytes = w.into_inner().map_err(|e| AuditError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| AuditError::Output(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    NonDecreasing,
    NonIncreasing,
    Constant,
    Mixed,
    Insufficient,
}

/// Direction of the mean ratio across buckets, in the given order.
pub fn trend(stats: &[ConjectureStats]) -> Trend {
    let means: Vec<Rational64> = stats.iter().filter_map(|s| s.mean_ratio).collect();
    if means.len() < 2 {
        return Trend::Insufficient;
    }
    let up = means.windows(2).all(|w| w[0] <= w[1]);
    let down = means.windows(2).all(|w| w[0] >= w[1]);
    match (up, down) {
        (true, true) => Trend::Constant,
        (true, false) => Trend::NonDecreasing,
        (false, true) => Trend::NonIncreasing,
        (false, false) => Trend::Mixed,
    }
}

fn bucket_rng(seed: u64, bucket: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (bucket as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `ν_ur/ν` with a flag for whether `ν_ur` is exact. The ratio is exactly 1
/// whenever a maximum matching is already UR.
fn ur_ratio(g: &Graph, config: &AuditConfig) -> (Rational64, bool) {
    let best = max_matching(g);
    let nu = best.value;
    // covers edgeless graphs and forests, where every matching is UR
    if is_uniquely_restricted_fast(g, &best.witness).is_ok_and(|s| s.is_uniquely_restricted()) {
        return (Rational64::from_integer(1), true);
    }
    let (ur, exact) = if g.order() <= config.exact_threshold {
        let r = nu_ur_exact(g, config.budget);
        (r.value, r.optimal)
    } else {
        (greedy_maximal(g, Objective::UniquelyRestricted).len(), false)
    };
    (Rational64::new(ur as i64, nu as i64), exact)
}

fn record_ratio(stats: &mut ConjectureStats, sum: &mut Rational64, g: &Graph, config: &AuditConfig) {
    let (ratio, exact) = ur_ratio(g, config);
    stats.heuristic |= !exact;
    stats.samples += 1;
    *sum += ratio;
    stats.min_ratio = Some(stats.min_ratio.map_or(ratio, |m| m.min(ratio)));
    if g.is_forest() {
        stats.forest_samples += 1;
        if ratio != Rational64::from_integer(1) {
            stats.forest_ratio_one = false;
        }
    }
}

/// Samples maximal random graphs of maximum degree at most `delta` and
/// girth at least each bucket value, and reports `ν_ur/ν`. Trends are only
/// reported, never asserted.
pub fn conjecture2_scan(
    delta: usize,
    girth_values: &[usize],
    samples_per_bucket: usize,
    n: usize,
    seed: u64,
    config: &AuditConfig,
) -> Result<Vec<ConjectureStats>, AuditError> {
    if delta < 3 {
        return Err(AuditError::Parameters(format!("delta {delta} is below 3")));
    }
    let mut out = Vec::new();
    for &g in girth_values {
        let mut stats = ConjectureStats::new(2, g, delta, n);
        let mut rng = bucket_rng(seed, g);
        let mut sum = Rational64::from_integer(0);
        let girth = (g > 3).then_some(g);
        for _ in 0..samples_per_bucket {
            match random_graph_with(&RandomGraphParams::new(n, delta, girth), rng.gen()) {
                Ok(graph) => record_ratio(&mut stats, &mut sum, &graph, config),
                Err(_) => stats.generation_failures += 1,
            }
        }
        if stats.samples > 0 {
            stats.mean_ratio = Some(sum / Rational64::from_integer(stats.samples as i64));
        }
        if g > n {
            stats.note = Some(format!(
                "no cycle of length at least {g} fits on {n} vertices; only forests occur"
            ));
        } else if stats.samples == 0 {
            stats.note = Some("no graph could be generated for this bucket".into());
        }
        out.push(stats);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conjecture1Config {
    pub audit: AuditConfig,
    /// Node limit for the exhaustive partition search after a greedy failure.
    pub node_guard: u64,
    pub girth: usize,
}

impl Default for Conjecture1Config {
    fn default() -> Self {
        Conjecture1Config {
            audit: AuditConfig {
                exact_threshold: 20,
                ..AuditConfig::default()
            },
            node_guard: 1_000_000,
            girth: 7,
        }
    }
}

/// Tries to split a maximum matching of each sample into `delta − 1`
/// acyclic matchings. A greedy failure is followed by an exhaustive search;
/// only an exhausted search is a counterexample.
pub fn conjecture1_scan(
    delta: usize,
    samples: usize,
    n: usize,
    seed: u64,
    config: &Conjecture1Config,
) -> Result<ConjectureStats, AuditError> {
    if delta < 3 {
        return Err(AuditError::Parameters(format!("delta {delta} is below 3")));
    }
    let mut stats = ConjectureStats::new(1, config.girth, delta, n);
    let mut rng = bucket_rng(seed, config.girth);
    let mut sum = Rational64::from_integer(0);
    for _ in 0..samples {
        let g = match random_graph_with(&RandomGraphParams::new(n, delta, Some(config.girth)), rng.gen()) {
            Ok(g) => g,
            Err(_) => {
                stats.generation_failures += 1;
                continue;
            }
        };
        record_ratio(&mut stats, &mut sum, &g, &config.audit);
        let m = max_matching(&g).witness;
        if let PartitionOutcome::Failed { .. } = partition_into_acyclic(&g, &m, delta - 1) {
            stats.greedy_failures += 1;
            match exhaustive_acyclic_partition(&g, &m, delta - 1, config.node_guard) {
                ExhaustivePartition::Found(_) => {}
                ExhaustivePartition::Impossible => {
                    if stats.counterexample.is_none() {
                        stats.counterexample = write_graph6(&g).ok();
                    }
                }
                ExhaustivePartition::GuardExceeded => stats.inconclusive += 1,
            }
        }
    }
    if stats.samples > 0 {
        stats.mean_ratio = Some(sum / Rational64::from_integer(stats.samples as i64));
    }
    Ok(stats)
}
