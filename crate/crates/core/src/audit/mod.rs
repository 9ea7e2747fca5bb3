//! Bound checking over single graphs and corpora, and experimental scans of
//! the two open conjectures.
//!
//! All comparisons use exact rationals. A value that could not be computed
//! exactly is reported as unknown and any check that needs it is skipped.

mod conjecture;
mod corpus;

use num_rational::Rational64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::constructive::{construct_theorem1, construct_theorem2, construct_theorem3, ReductionTrace};
use crate::graph::{write_graph6, Girth, Graph, Vertex};
use crate::solvers::{max_matching, nu_ac_exact, nu_ur_exact, DEFAULT_BUDGET};

pub use conjecture::{
    conjecture1_scan, conjecture2_scan, stats_to_csv, trend, Conjecture1Config, ConjectureStats, Trend,
};
pub use corpus::{audit_corpus, audit_graphs, parse_corpus, parse_generator_spec, AuditReport, CorpusEntry, LineError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid generator spec {spec:?}: {message}")]
    Spec { spec: String, message: String },
    #[error("invalid scan parameters: {0}")]
    Parameters(String),
    #[error("could not serialize report: {0}")]
    Output(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AuditConfig {
    /// Largest order for which `ν_ur` and `ν_ac` are computed exactly.
    pub exact_threshold: usize,
    pub budget: u64,
    /// Also run the constructors and check their certificates.
    pub constructive: bool,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            exact_threshold: 14,
            budget: DEFAULT_BUDGET,
            constructive: true,
        }
    }
}

/// An exact matching number or `"unknown"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exact {
    Known(usize),
    Unknown,
}

impl Exact {
    pub fn known(self) -> Option<usize> {
        match self {
            Exact::Known(v) => Some(v),
            Exact::Unknown => None,
        }
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Exact::Known(v) => s.serialize_u64(*v as u64),
            Exact::Unknown => s.serialize_str("unknown"),
        }
    }
}

fn opt_ratio<S: Serializer>(r: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => crate::constructive::ratio_json(r, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceSummary {
    pub theorem: u8,
    pub size: usize,
    #[serde(serialize_with = "crate::constructive::ratio_json")]
    pub guarantee: Rational64,
    pub guaranteed: bool,
}

impl From<&ReductionTrace> for TraceSummary {
    fn from(t: &ReductionTrace) -> Self {
        TraceSummary {
            theorem: t.theorem,
            size: t.size(),
            guarantee: t.guarantee,
            guaranteed: t.guaranteed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub girth: Girth,
    pub nu: Exact,
    pub nu_ur: Exact,
    pub nu_ac: Exact,
    #[serde(serialize_with = "opt_ratio")]
    pub bound_thm1: Option<Rational64>,
    #[serde(serialize_with = "opt_ratio")]
    pub bound_thm2: Option<Rational64>,
    #[serde(serialize_with = "opt_ratio")]
    pub bound_thm3: Option<Rational64>,
    #[serde(serialize_with = "opt_ratio")]
    pub bound_mdelta2: Option<Rational64>,
    #[serde(serialize_with = "opt_ratio")]
    pub bound_nu_over_delta: Option<Rational64>,
    #[serde(serialize_with = "opt_ratio")]
    pub bound_ac_upper: Option<Rational64>,
    /// `(n − 2)/4`, for connected subcubic graphs.
    #[serde(serialize_with = "opt_ratio")]
    pub bound_subcubic: Option<Rational64>,
    /// Whether `ν_ur` equals the first bound; unknown when either is.
    pub thm1_equality: Option<bool>,
    pub is_extremal_family: bool,
    pub traces: Vec<TraceSummary>,
    pub violations: Vec<String>,
}

fn ratio(num: i64, den: i64) -> Rational64 {
    Rational64::new(num, den)
}

fn int(v: usize) -> Rational64 {
    Rational64::from_integer(v as i64)
}

/// Whether every component is `K_{delta,r}` for some `1 ≤ r ≤ delta`.
pub fn is_extremal_family(g: &Graph, delta: usize) -> bool {
    g.components().iter().all(|block| is_k_delta_r(g, block, delta))
}

fn is_k_delta_r(g: &Graph, block: &[Vertex], delta: usize) -> bool {
    if block.len() < 2 {
        return false;
    }
    let h = g.induced(block);
    let Some(side) = h.bipartition() else {
        return false;
    };
    let a = side.iter().filter(|&&s| s).count();
    let b = h.order() - a;
    let (big, small) = (a.max(b), a.min(b));
    big == delta && small >= 1 && h.size() == a * b
}

pub fn audit_graph(g: &Graph, config: &AuditConfig) -> AuditRecord {
    let (n, m, c) = (g.order(), g.size(), g.component_count());
    let delta = g.max_degree();
    let exact = n <= config.exact_threshold;
    let nu = max_matching(g).value;
    let solve = |f: fn(&Graph, u64) -> crate::solvers::SolveResult| {
        if !exact {
            return Exact::Unknown;
        }
        let r = f(g, config.budget);
        if r.optimal {
            Exact::Known(r.value)
        } else {
            Exact::Unknown
        }
    };
    let nu_ur = solve(nu_ur_exact);
    let nu_ac = solve(nu_ac_exact);

    let d = delta as i64;
    let has_isolated = g.vertices().any(|v| g.degree(v) == 0);
    let positive = delta >= 1;
    let bound_thm1 = (positive && !has_isolated && n > 0).then(|| ratio(n as i64, d) - ratio(m as i64, d * d));
    let bound_thm2 = (delta <= 3).then(|| ratio((n - c) as i64, 2) - ratio(m as i64, 6));
    let bound_thm3 = (delta >= 4 && g.girth().is_at_least(5)).then(|| ratio((n - c) as i64, d));
    let bound_mdelta2 = positive.then(|| ratio(m as i64, d * d));
    let bound_nu_over_delta = positive.then(|| ratio(nu as i64, d));
    let bound_ac_upper = (delta >= 2 && g.is_regular(delta)).then(|| ratio(d * n as i64 - 2, 4 * d - 4));
    let bound_subcubic = (delta <= 3 && c == 1).then(|| ratio(n as i64 - 2, 4));
    let extremal = positive && is_extremal_family(g, delta);

    let mut violations = Vec::new();
    let mut lower = |name: &str, value: Exact, bound: Option<Rational64>| {
        if let (Some(v), Some(b)) = (value.known(), bound) {
            if int(v) < b {
                violations.push(format!("{name} = {v} is below {b}"));
            }
        }
    };
    lower("nu_ur", nu_ur, bound_thm1);
    lower("nu_ur", nu_ur, bound_thm2);
    lower("nu_ur", nu_ur, bound_thm3);
    lower("nu_ac", nu_ac, bound_mdelta2);
    lower("nu_ac", nu_ac, bound_nu_over_delta);
    lower("nu_ur", nu_ur, bound_subcubic);
    lower("nu_ac", nu_ac, bound_subcubic);
    if let (Some(ur), Some(ac)) = (nu_ur.known(), nu_ac.known()) {
        if ac > ur {
            violations.push(format!("nu_ac = {ac} exceeds nu_ur = {ur}"));
        }
    }
    if let Some(ur) = nu_ur.known() {
        if ur > nu {
            violations.push(format!("nu_ur = {ur} exceeds nu = {nu}"));
        }
    }
    if let (Some(ac), Some(b)) = (nu_ac.known(), bound_ac_upper) {
        if int(ac) > b {
            violations.push(format!("nu_ac = {ac} exceeds {b}"));
        }
    }
    let thm1_equality = match (nu_ur.known(), bound_thm1) {
        (Some(v), Some(b)) => Some(int(v) == b),
        _ => None,
    };
    if let Some(eq) = thm1_equality {
        if eq != extremal {
            violations.push(format!(
                "first bound equality is {eq} but membership in the extremal family is {extremal}"
            ));
        }
    }

    let mut traces = Vec::new();
    if config.constructive {
        let mut run = |label: &str, result: Result<ReductionTrace, crate::constructive::ConstructError>| match result {
            Ok(t) => {
                if let Err(e) = t.verify(g) {
                    violations.push(format!("{label} certificate: {e}"));
                }
                traces.push(TraceSummary::from(&t));
            }
            Err(e) => violations.push(format!("{label} construction: {e}")),
        };
        if bound_thm1.is_some() {
            run("theorem 1", construct_theorem1(g, delta));
        }
        if bound_thm2.is_some() {
            run("theorem 2", construct_theorem2(g));
        }
        if bound_thm3.is_some() {
            run("theorem 3", construct_theorem3(g, delta));
        }
        if let Some(ur) = nu_ur.known() {
            for t in &traces {
                if t.size > ur {
                    violations.push(format!("construction of size {} beats nu_ur = {ur}", t.size));
                }
            }
        }
    }

    AuditRecord {
        graph_id: write_graph6(g).unwrap_or_default(),
        n,
        m,
        c,
        max_degree: delta,
        min_degree: g.min_degree(),
        girth: g.girth(),
        nu: Exact::Known(nu),
        nu_ur,
        nu_ac,
        bound_thm1,
        bound_thm2,
        bound_thm3,
        bound_mdelta2,
        bound_nu_over_delta,
        bound_ac_upper,
        bound_subcubic,
        thm1_equality,
        is_extremal_family: extremal,
        traces,
        violations,
    }
}
